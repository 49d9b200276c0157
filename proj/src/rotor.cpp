#include "banbury/rotor.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace banbury::enigma {

RotorSpec::RotorSpec(std::string name_, Permutation wiring_, std::vector<int> turnovers_)
    : name(std::move(name_)), wiring(std::move(wiring_)), turnovers(std::move(turnovers_)) {
    if (turnovers.empty())
        throw std::invalid_argument("rotor '" + name + "' has no turnover");
    for (int t : turnovers)
        if (t < 0 || t >= wiring.size())
            throw std::invalid_argument("rotor '" + name + "' turnover outside alphabet");
    std::sort(turnovers.begin(), turnovers.end());
    turnovers.erase(std::unique(turnovers.begin(), turnovers.end()), turnovers.end());
}

ReflectorSpec::ReflectorSpec(std::string name_, Permutation wiring_)
    : name(std::move(name_)), wiring(std::move(wiring_)) {
    if (!wiring.is_involution() || wiring.has_fixed_point())
        throw std::invalid_argument("reflector '" + name + "' must be a fixed-point-free involution");
}

Plugboard::Plugboard(int alphabet_size) : map_(static_cast<size_t>(alphabet_size)) {
    for (int i = 0; i < alphabet_size; ++i)
        map_[static_cast<size_t>(i)] = i;
}

Plugboard::Plugboard(const std::vector<std::pair<int, int>>& pairs, int alphabet_size)
    : Plugboard(alphabet_size) {
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= alphabet_size || b >= alphabet_size)
            throw std::invalid_argument("plug letter outside alphabet");
        if (a == b)
            throw std::invalid_argument("plug pair maps a letter to itself");
        if (map_[static_cast<size_t>(a)] != a || map_[static_cast<size_t>(b)] != b)
            throw std::invalid_argument("plug letter used twice");
        map_[static_cast<size_t>(a)] = b;
        map_[static_cast<size_t>(b)] = a;
    }
}

int Plugboard::pair_count() const {
    int n = 0;
    for (int i = 0; i < size(); ++i)
        if (map_[static_cast<size_t>(i)] > i)
            ++n;
    return n;
}

std::vector<std::pair<int, int>> Plugboard::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
        if (map_[static_cast<size_t>(i)] > i)
            out.emplace_back(i, map_[static_cast<size_t>(i)]);
    return out;
}

namespace {

Permutation wiring_from_letters(const std::string& letters, const Alphabet& alphabet) {
    if (static_cast<int>(letters.size()) != alphabet.size())
        throw std::invalid_argument("wiring length does not match alphabet");
    std::vector<int> f;
    f.reserve(letters.size());
    for (char c : letters)
        f.push_back(alphabet.index(c));
    return Permutation(std::move(f));
}

} // namespace

Catalogue Catalogue::standard() {
    Catalogue c;
    const Alphabet& a = Alphabet::latin26();
    struct Row {
        const char* name;
        const char* wiring;
        const char* notches;
    };
    // the five wheels issued with the 1938 army machine, plus reflectors B and C
    static const Row kRotors[] = {
        {"I", "EKMFLGDQVZNTOWYHXUSPAIBRCJ", "Q"},
        {"II", "AJDKSIRUXBLHWTMCQGZNPYFVOE", "E"},
        {"III", "BDFHJLCPRTXVZNYEIWGAKMUSQO", "V"},
        {"IV", "ESOVPZJAYQUIRHXLNFTGKDCMWB", "J"},
        {"V", "VZBRGITYUPSDNHLXAWMJQOFECK", "Z"},
    };
    for (const Row& r : kRotors) {
        std::vector<int> notches;
        for (const char* p = r.notches; *p; ++p)
            notches.push_back(a.index(*p));
        c.add_rotor(RotorSpec(r.name, wiring_from_letters(r.wiring, a), std::move(notches)));
    }
    c.add_reflector(ReflectorSpec("B", wiring_from_letters("YRUHQSLDPXNGOKMIEBFZCWVJAT", a)));
    c.add_reflector(ReflectorSpec("C", wiring_from_letters("FVPJIAOYEDRZXWGCTKUQSBNMHL", a)));
    return c;
}

Catalogue Catalogue::load(const std::string& path, const Alphabet& alphabet) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open catalogue: " + path);
    Catalogue c;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream row(line);
        std::string name, wiring, notches;
        if (!std::getline(row, name, '\t') || !std::getline(row, wiring, '\t') || !std::getline(row, notches))
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected NAME<TAB>WIRING<TAB>NOTCHES");
        try {
            if (notches == "-") {
                c.add_reflector(ReflectorSpec(name, wiring_from_letters(wiring, alphabet)));
            } else {
                std::vector<int> turnovers;
                for (char n : notches)
                    turnovers.push_back(alphabet.index(n));
                c.add_rotor(RotorSpec(name, wiring_from_letters(wiring, alphabet), std::move(turnovers)));
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return c;
}

void Catalogue::store(const std::string& path, const Alphabet& alphabet) const {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write catalogue: " + path);
    auto letters_of = [&](const Permutation& p) {
        std::string s;
        for (int i = 0; i < p.size(); ++i)
            s.push_back(alphabet.letter(p.apply(i)));
        return s;
    };
    for (const RotorSpec& r : rotors_) {
        std::string notches;
        for (int t : r.turnovers)
            notches.push_back(alphabet.letter(t));
        out << r.name << '\t' << letters_of(r.wiring) << '\t' << notches << '\n';
    }
    for (const ReflectorSpec& r : reflectors_)
        out << r.name << '\t' << letters_of(r.wiring) << "\t-\n";
}

void Catalogue::add_rotor(RotorSpec rotor) {
    if (has_rotor(rotor.name))
        throw std::invalid_argument("duplicate rotor name '" + rotor.name + "'");
    rotors_.push_back(std::move(rotor));
}

void Catalogue::add_reflector(ReflectorSpec reflector) {
    for (const ReflectorSpec& r : reflectors_)
        if (r.name == reflector.name)
            throw std::invalid_argument("duplicate reflector name '" + reflector.name + "'");
    reflectors_.push_back(std::move(reflector));
}

const RotorSpec& Catalogue::rotor(const std::string& name) const {
    for (const RotorSpec& r : rotors_)
        if (r.name == name)
            return r;
    throw std::invalid_argument("unknown rotor '" + name + "'");
}

const ReflectorSpec& Catalogue::reflector(const std::string& name) const {
    for (const ReflectorSpec& r : reflectors_)
        if (r.name == name)
            return r;
    throw std::invalid_argument("unknown reflector '" + name + "'");
}

bool Catalogue::has_rotor(const std::string& name) const {
    for (const RotorSpec& r : rotors_)
        if (r.name == name)
            return true;
    return false;
}

} // namespace banbury::enigma
