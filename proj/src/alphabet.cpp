#include "banbury/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace banbury {

Alphabet::Alphabet(std::string_view letters) : letters_(letters) {
    if (letters_.size() < 2)
        throw std::invalid_argument("alphabet needs at least 2 symbols");
    std::fill(std::begin(index_of_), std::end(index_of_), -1);
    for (size_t i = 0; i < letters_.size(); ++i) {
        unsigned char c = uc(letters_[i]);
        if (index_of_[c] >= 0)
            throw std::invalid_argument("alphabet has duplicate symbol");
        index_of_[c] = static_cast<int>(i);
    }
}

const Alphabet& Alphabet::latin26() {
    static const Alphabet a("ABCDEFGHIJKLMNOPQRSTUVWXYZ");
    return a;
}

const Alphabet& Alphabet::toy6() {
    static const Alphabet a("ACIOST");
    return a;
}

int Alphabet::index(char c) const {
    int i = index_of_[uc(c)];
    if (i < 0)
        throw std::invalid_argument(std::string("letter '") + c + "' is not in the alphabet");
    return i;
}

std::vector<int> Alphabet::indices(std::string_view text) const {
    std::vector<int> out;
    out.reserve(text.size());
    for (char c : text)
        out.push_back(index(c));
    return out;
}

std::string Alphabet::letters(const std::vector<int>& indices) const {
    std::string out;
    out.reserve(indices.size());
    for (int i : indices)
        out.push_back(letter(i));
    return out;
}

std::string normalize_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalpha(u))
            out.push_back(static_cast<char>(std::toupper(u)));
    }
    return out;
}

} // namespace banbury
