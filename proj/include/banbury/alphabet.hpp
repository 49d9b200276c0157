#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace banbury {

/// An ordered alphabet of distinct uppercase symbols. Letters are handled as
/// indices into the alphabet everywhere below; this is the only place that
/// maps characters to indices and back.
class Alphabet {
public:
    static const Alphabet& latin26();
    static const Alphabet& toy6(); // {A,C,I,O,S,T}, the reduced demo alphabet

    explicit Alphabet(std::string_view letters);

    int size() const { return static_cast<int>(letters_.size()); }
    char letter(int index) const { return letters_[static_cast<size_t>(index)]; }
    bool contains(char c) const { return index_of_[uc(c)] >= 0; }

    /// Index of a letter; throws std::invalid_argument for foreign symbols.
    int index(char c) const;

    std::vector<int> indices(std::string_view text) const;
    std::string letters(const std::vector<int>& indices) const;

    bool operator==(const Alphabet& other) const { return letters_ == other.letters_; }

private:
    static unsigned char uc(char c) { return static_cast<unsigned char>(c); }

    std::string letters_;
    int index_of_[256];
};

/// Uppercases and strips everything that is not an ASCII letter.
std::string normalize_text(std::string_view raw);

} // namespace banbury
