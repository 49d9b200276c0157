#pragma once

#include "banbury/alphabet.hpp"
#include "banbury/permutation.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace banbury::classical {

/// Relative letter frequencies over an alphabet. Entries are >= 0 and sum to
/// 1 (loaders normalize, since printed tables round).
class FrequencyTable {
public:
    FrequencyTable(const Alphabet& alphabet, std::vector<double> fractions);

    const Alphabet& alphabet() const { return *alphabet_; }
    double fraction(char letter) const;
    const std::vector<double>& fractions() const { return fractions_; }

    /// Sum of squared fractions: the same-letter coincidence rate of the
    /// language this table models.
    double coincidence_rate() const;

    static FrequencyTable load(const std::string& path, const Alphabet& alphabet = Alphabet::latin26());
    void store(const std::string& path) const;

private:
    const Alphabet* alphabet_;
    std::vector<double> fractions_;
};

/// The Italian reference table (21 letters as printed, normalized).
const FrequencyTable& italian_frequencies();

struct SubstitutionKey {
    Permutation mapping; // over the alphabet, plain index -> cipher index
};

std::string scytale_encipher(std::string_view plaintext, int width);
std::string scytale_decipher(std::string_view ciphertext, int width);

std::string mono_encipher(std::string_view plaintext, const SubstitutionKey& key,
                          const Alphabet& alphabet = Alphabet::latin26());
std::string mono_decipher(std::string_view ciphertext, const SubstitutionKey& key,
                          const Alphabet& alphabet = Alphabet::latin26());

SubstitutionKey caesar_key(int shift, const Alphabet& alphabet = Alphabet::latin26());
SubstitutionKey atbash_key(const Alphabet& alphabet = Alphabet::latin26());
SubstitutionKey albam_key(const Alphabet& alphabet = Alphabet::latin26());

std::string vigenere_encipher(std::string_view plaintext, std::string_view key,
                              const Alphabet& alphabet = Alphabet::latin26());
std::string vigenere_decipher(std::string_view ciphertext, std::string_view key,
                              const Alphabet& alphabet = Alphabet::latin26());

FrequencyTable letter_frequencies(std::string_view text, const Alphabet& alphabet = Alphabet::latin26());

struct KasiskiCandidate {
    int key_length = 0;
    int votes = 0;
};

/// Key-length candidates from repeated n-grams: every divisor > 1 of the
/// distance between two occurrences gets one vote per (n-gram, occurrence
/// pair). Sorted by votes, ties to the smaller length.
std::vector<KasiskiCandidate> kasiski_candidates(std::string_view ciphertext, int min_ngram = 3);

} // namespace banbury::classical
