#include "banbury/classical.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace banbury::classical {

FrequencyTable::FrequencyTable(const Alphabet& alphabet, std::vector<double> fractions)
    : alphabet_(&alphabet), fractions_(std::move(fractions)) {
    if (static_cast<int>(fractions_.size()) != alphabet.size())
        throw std::invalid_argument("frequency table size does not match alphabet");
    double sum = 0.0;
    for (double f : fractions_) {
        if (f < 0.0)
            throw std::invalid_argument("negative frequency");
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("frequencies do not sum to 1");
}

double FrequencyTable::fraction(char letter) const {
    return fractions_[static_cast<size_t>(alphabet_->index(letter))];
}

double FrequencyTable::coincidence_rate() const {
    double s = 0.0;
    for (double f : fractions_)
        s += f * f;
    return s;
}

FrequencyTable FrequencyTable::load(const std::string& path, const Alphabet& alphabet) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open frequency table: " + path);
    std::vector<double> fractions(static_cast<size_t>(alphabet.size()), 0.0);
    std::string line;
    int line_no = 0;
    double sum = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string letter, value;
        if (!std::getline(row, letter, '\t') || !std::getline(row, value))
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected LETTER<TAB>fraction");
        if (letter.size() != 1 || !alphabet.contains(letter[0]))
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": unknown letter '" + letter + "'");
        double f = std::stod(value);
        if (f < 0.0)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": negative fraction");
        fractions[static_cast<size_t>(alphabet.index(letter[0]))] = f;
        sum += f;
    }
    if (sum <= 0.0)
        throw std::runtime_error(path + ": table is empty");
    for (double& f : fractions)
        f /= sum; // printed tables round; normalize to a proper distribution
    return FrequencyTable(alphabet, std::move(fractions));
}

void FrequencyTable::store(const std::string& path) const {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write frequency table: " + path);
    for (int i = 0; i < alphabet_->size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%c\t%.10g\n", alphabet_->letter(i), fractions_[static_cast<size_t>(i)]);
        out << buf;
    }
}

const FrequencyTable& italian_frequencies() {
    static const FrequencyTable table = [] {
        // the printed reference table: 21 letters, percentages
        const std::vector<std::pair<char, double>> rows = {
            {'A', 11.74}, {'B', 0.92}, {'C', 4.50}, {'D', 3.73}, {'E', 11.79},
            {'F', 0.95},  {'G', 1.64}, {'H', 1.54}, {'I', 11.28}, {'L', 6.51},
            {'M', 2.51},  {'N', 6.88}, {'O', 9.83}, {'P', 3.05},  {'Q', 0.51},
            {'R', 6.37},  {'S', 4.98}, {'T', 5.62}, {'U', 3.01},  {'V', 2.10},
            {'Z', 0.49},
        };
        const Alphabet& a = Alphabet::latin26();
        std::vector<double> fractions(26, 0.0);
        double sum = 0.0;
        for (auto [letter, pct] : rows) {
            fractions[static_cast<size_t>(a.index(letter))] = pct;
            sum += pct;
        }
        for (double& f : fractions)
            f /= sum;
        return FrequencyTable(a, std::move(fractions));
    }();
    return table;
}

std::string scytale_encipher(std::string_view plaintext, int width) {
    if (plaintext.empty())
        throw std::invalid_argument("empty message");
    if (width < 1)
        throw std::invalid_argument("invalid width");
    const size_t len = plaintext.size();
    const size_t w = static_cast<size_t>(width);
    std::string out;
    out.reserve(len);
    for (size_t col = 0; col < w; ++col)
        for (size_t pos = col; pos < len; pos += w)
            out.push_back(plaintext[pos]);
    return out;
}

std::string scytale_decipher(std::string_view ciphertext, int width) {
    if (ciphertext.empty())
        throw std::invalid_argument("empty message");
    if (width < 1)
        throw std::invalid_argument("invalid width");
    const size_t len = ciphertext.size();
    const size_t w = static_cast<size_t>(width);
    std::string out(len, '\0');
    size_t read = 0;
    for (size_t col = 0; col < w; ++col)
        for (size_t pos = col; pos < len; pos += w)
            out[pos] = ciphertext[read++];
    return out;
}

std::string mono_encipher(std::string_view plaintext, const SubstitutionKey& key, const Alphabet& alphabet) {
    std::string out;
    out.reserve(plaintext.size());
    for (size_t i = 0; i < plaintext.size(); ++i) {
        if (!alphabet.contains(plaintext[i]))
            throw std::invalid_argument("letter outside alphabet at position " + std::to_string(i));
        out.push_back(alphabet.letter(key.mapping.apply(alphabet.index(plaintext[i]))));
    }
    return out;
}

std::string mono_decipher(std::string_view ciphertext, const SubstitutionKey& key, const Alphabet& alphabet) {
    std::string out;
    out.reserve(ciphertext.size());
    for (size_t i = 0; i < ciphertext.size(); ++i) {
        if (!alphabet.contains(ciphertext[i]))
            throw std::invalid_argument("letter outside alphabet at position " + std::to_string(i));
        out.push_back(alphabet.letter(key.mapping.apply_inverse(alphabet.index(ciphertext[i]))));
    }
    return out;
}

SubstitutionKey caesar_key(int shift, const Alphabet& alphabet) {
    const int n = alphabet.size();
    shift = ((shift % n) + n) % n;
    std::vector<int> f(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        f[static_cast<size_t>(i)] = (i + shift) % n;
    return SubstitutionKey{Permutation(std::move(f))};
}

SubstitutionKey atbash_key(const Alphabet& alphabet) {
    const int n = alphabet.size();
    std::vector<int> f(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        f[static_cast<size_t>(i)] = n - 1 - i;
    return SubstitutionKey{Permutation(std::move(f))};
}

SubstitutionKey albam_key(const Alphabet& alphabet) {
    return caesar_key(alphabet.size() / 2, alphabet);
}

std::string vigenere_encipher(std::string_view plaintext, std::string_view key, const Alphabet& alphabet) {
    if (key.empty())
        throw std::invalid_argument("empty key");
    const int n = alphabet.size();
    std::vector<int> shifts = alphabet.indices(key);
    std::string out;
    out.reserve(plaintext.size());
    for (size_t i = 0; i < plaintext.size(); ++i) {
        int p = alphabet.index(plaintext[i]);
        out.push_back(alphabet.letter((p + shifts[i % shifts.size()]) % n));
    }
    return out;
}

std::string vigenere_decipher(std::string_view ciphertext, std::string_view key, const Alphabet& alphabet) {
    if (key.empty())
        throw std::invalid_argument("empty key");
    const int n = alphabet.size();
    std::vector<int> shifts = alphabet.indices(key);
    std::string out;
    out.reserve(ciphertext.size());
    for (size_t i = 0; i < ciphertext.size(); ++i) {
        int c = alphabet.index(ciphertext[i]);
        out.push_back(alphabet.letter((c - shifts[i % shifts.size()] + n) % n));
    }
    return out;
}

FrequencyTable letter_frequencies(std::string_view text, const Alphabet& alphabet) {
    if (text.empty())
        throw std::invalid_argument("empty message");
    std::vector<double> counts(static_cast<size_t>(alphabet.size()), 0.0);
    for (char c : text)
        counts[static_cast<size_t>(alphabet.index(c))] += 1.0;
    for (double& c : counts)
        c /= static_cast<double>(text.size());
    return FrequencyTable(alphabet, std::move(counts));
}

std::vector<KasiskiCandidate> kasiski_candidates(std::string_view ciphertext, int min_ngram) {
    if (min_ngram < 3)
        throw std::invalid_argument("min_ngram must be at least 3");
    if (ciphertext.size() < 2 * static_cast<size_t>(min_ngram))
        throw std::invalid_argument("ciphertext too short for kasiski examination");

    std::map<std::string_view, std::vector<size_t>> occurrences;
    for (size_t i = 0; i + static_cast<size_t>(min_ngram) <= ciphertext.size(); ++i)
        occurrences[ciphertext.substr(i, static_cast<size_t>(min_ngram))].push_back(i);

    std::map<int, int> votes;
    for (const auto& [ngram, positions] : occurrences) {
        for (size_t a = 0; a < positions.size(); ++a) {
            for (size_t b = a + 1; b < positions.size(); ++b) {
                int distance = static_cast<int>(positions[b] - positions[a]);
                for (int d = 2; d <= distance; ++d)
                    if (distance % d == 0)
                        ++votes[d];
            }
        }
    }

    std::vector<KasiskiCandidate> out;
    out.reserve(votes.size());
    for (auto [length, count] : votes)
        out.push_back({length, count});
    std::stable_sort(out.begin(), out.end(), [](const KasiskiCandidate& x, const KasiskiCandidate& y) {
        if (x.votes != y.votes)
            return x.votes > y.votes;
        return x.key_length < y.key_length;
    });
    return out;
}

} // namespace banbury::classical
