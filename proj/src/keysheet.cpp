#include "banbury/keysheet.hpp"

#include "banbury/alphabet.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace banbury::keysheet {

namespace {

const Alphabet& latin() {
    return Alphabet::latin26();
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string w;
    while (in >> w)
        out.push_back(w);
    return out;
}

void require_trigram(std::string_view s, const char* what) {
    if (s.size() != 3)
        throw std::invalid_argument(std::string(what) + " must be three letters");
    for (char c : s)
        if (!latin().contains(c))
            throw std::invalid_argument(std::string(what) + " has a letter outside the alphabet");
}

} // namespace

DailyKey parse_daily_key(std::string_view text) {
    DailyKey key;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool saw_rotors = false, saw_rings = false, saw_grund = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'field: values'");
        std::string field = line.substr(0, colon);
        std::string rest = line.substr(colon + 1);
        if (field == "rotors") {
            key.walzenlage = split_words(rest);
            saw_rotors = true;
        } else if (field == "rings") {
            key.ringstellung.clear();
            for (const std::string& w : split_words(rest)) {
                if (w.size() != 1)
                    throw std::invalid_argument("line " + std::to_string(line_no) + ": ring must be one letter");
                key.ringstellung.push_back(w[0]);
            }
            saw_rings = true;
        } else if (field == "grund") {
            auto words = split_words(rest);
            if (words.size() != 1)
                throw std::invalid_argument("line " + std::to_string(line_no) + ": grund must be one trigram");
            key.grundstellung = words[0];
            saw_grund = true;
        } else if (field == "plugs") {
            key.steckerverbindungen.clear();
            for (const std::string& w : split_words(rest)) {
                if (w.size() != 2)
                    throw std::invalid_argument("line " + std::to_string(line_no) + ": plug must be a letter pair");
                key.steckerverbindungen.emplace_back(w[0], w[1]);
            }
        } else if (field == "reflector") {
            auto words = split_words(rest);
            if (words.size() != 1)
                throw std::invalid_argument("line " + std::to_string(line_no) + ": reflector must be one name");
            key.reflector = words[0];
        } else {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown field '" + field + "'");
        }
    }
    if (!saw_rotors || !saw_rings || !saw_grund)
        throw std::invalid_argument("key sheet must define rotors, rings and grund");
    if (key.walzenlage.size() != key.ringstellung.size() ||
        key.walzenlage.size() != key.grundstellung.size())
        throw std::invalid_argument("rotors, rings and grund disagree on rotor count");
    for (size_t i = 0; i < key.walzenlage.size(); ++i)
        for (size_t j = i + 1; j < key.walzenlage.size(); ++j)
            if (key.walzenlage[i] == key.walzenlage[j])
                throw std::invalid_argument("rotor '" + key.walzenlage[i] + "' listed twice");
    return key;
}

std::string serialize_daily_key(const DailyKey& key) {
    std::ostringstream out;
    out << "rotors:";
    for (const std::string& r : key.walzenlage)
        out << ' ' << r;
    out << "\nrings:";
    for (char r : key.ringstellung)
        out << ' ' << r;
    out << "\ngrund: " << key.grundstellung << "\nplugs:";
    for (auto [a, b] : key.steckerverbindungen)
        out << ' ' << a << b;
    out << "\nreflector: " << key.reflector << '\n';
    return out.str();
}

DailyKey load_daily_key(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open key sheet: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_daily_key(buf.str());
}

void store_daily_key(const std::string& path, const DailyKey& key) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write key sheet: " + path);
    out << serialize_daily_key(key);
}

enigma::MachineState machine_for(const DailyKey& key, const enigma::Catalogue& catalogue,
                                 std::string_view positions) {
    if (positions.size() != key.walzenlage.size())
        throw std::invalid_argument("position trigram does not match rotor count");
    enigma::MachineState state;
    for (size_t i = 0; i < key.walzenlage.size(); ++i) {
        enigma::RotorSlot slot;
        slot.spec = catalogue.rotor(key.walzenlage[i]);
        slot.ring = latin().index(key.ringstellung[i]);
        slot.position = latin().index(positions[i]);
        state.rotors.push_back(std::move(slot));
    }
    state.reflector = catalogue.reflector(key.reflector);
    std::vector<std::pair<int, int>> plugs;
    for (auto [a, b] : key.steckerverbindungen)
        plugs.emplace_back(latin().index(a), latin().index(b));
    state.plugboard = enigma::Plugboard(plugs, 26);
    return state;
}

namespace {

std::string encipher_text(const enigma::MachineState& state, std::string_view text) {
    auto [out, end] = enigma::encipher_message(state, latin().indices(text));
    (void)end;
    return latin().letters(out);
}

} // namespace

Intercept transmit(const DailyKey& key, const enigma::Catalogue& catalogue,
                   std::string_view message_key, std::string_view plaintext,
                   bool doubled, std::string id, std::string timestamp) {
    require_trigram(message_key, "message key");
    require_trigram(key.grundstellung, "grundstellung");
    if (plaintext.empty())
        throw std::invalid_argument("empty message");

    enigma::MachineState at_grund = machine_for(key, catalogue, key.grundstellung);
    std::string to_encipher(message_key);
    if (doubled)
        to_encipher += message_key;

    Intercept intercept;
    intercept.id = std::move(id);
    intercept.timestamp = std::move(timestamp);
    intercept.doubled = doubled;
    intercept.indicator = encipher_text(at_grund, to_encipher);
    intercept.body = encipher_text(machine_for(key, catalogue, message_key), plaintext);
    return intercept;
}

std::string receive(const DailyKey& key, const enigma::Catalogue& catalogue,
                    const Intercept& intercept) {
    if (intercept.indicator.size() != (intercept.doubled ? 6u : 3u))
        throw std::invalid_argument("indicator length does not match the doubling flag");
    if (intercept.body.empty())
        throw std::invalid_argument("empty message");

    enigma::MachineState at_grund = machine_for(key, catalogue, key.grundstellung);
    std::string deciphered = encipher_text(at_grund, intercept.indicator);
    std::string message_key = deciphered.substr(0, 3);
    if (intercept.doubled && deciphered.substr(3, 3) != message_key)
        throw std::runtime_error("indicator mismatch");
    return encipher_text(machine_for(key, catalogue, message_key), intercept.body);
}

namespace {

std::string grouped(std::string_view letters) {
    std::string out;
    out.reserve(letters.size() + letters.size() / 5);
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i > 0 && i % 5 == 0)
            out.push_back(' ');
        out.push_back(letters[i]);
    }
    return out;
}

std::string ungrouped(std::string_view text) {
    std::string out;
    for (char c : text)
        if (c != ' ')
            out.push_back(c);
    return out;
}

} // namespace

std::vector<Intercept> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open corpus: " + path);
    std::vector<Intercept> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream row(line);
        std::string id, indicator, body;
        if (!std::getline(row, id, '\t') || !std::getline(row, indicator, '\t') || !std::getline(row, body))
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected ID<TAB>INDICATOR<TAB>CIPHERTEXT");
        Intercept intercept;
        intercept.id = id;
        intercept.indicator = ungrouped(indicator);
        intercept.body = ungrouped(body);
        if (intercept.indicator.size() != 3 && intercept.indicator.size() != 6)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": indicator must be 3 or 6 letters");
        intercept.doubled = intercept.indicator.size() == 6;
        if (intercept.body.empty())
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": empty ciphertext");
        for (char c : intercept.indicator + intercept.body)
            if (!latin().contains(c))
                throw std::runtime_error(path + ":" + std::to_string(line_no) + ": letter outside alphabet");
        out.push_back(std::move(intercept));
    }
    return out;
}

void store_corpus(const std::string& path, const std::vector<Intercept>& corpus) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write corpus: " + path);
    for (const Intercept& intercept : corpus)
        out << intercept.id << '\t' << intercept.indicator << '\t' << grouped(intercept.body) << '\n';
}

} // namespace banbury::keysheet
