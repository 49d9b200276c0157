#include "banbury/permutation.hpp"

#include "banbury/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace banbury {

Permutation::Permutation(std::vector<int> forward) : forward_(std::move(forward)) {
    const int n = size();
    inverse_.assign(forward_.size(), -1);
    for (int i = 0; i < n; ++i) {
        int y = forward_[static_cast<size_t>(i)];
        if (y < 0 || y >= n || inverse_[static_cast<size_t>(y)] != -1)
            throw std::invalid_argument("permutation is not a bijection");
        inverse_[static_cast<size_t>(y)] = i;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> f(static_cast<size_t>(n));
    std::iota(f.begin(), f.end(), 0);
    return Permutation(std::move(f));
}

Permutation Permutation::random(int n, Rng& rng) {
    std::vector<int> f(static_cast<size_t>(n));
    std::iota(f.begin(), f.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(f[static_cast<size_t>(i)], f[rng.below(static_cast<std::uint32_t>(i + 1))]);
    return Permutation(std::move(f));
}

Permutation Permutation::inverse() const {
    return Permutation(inverse_);
}

Permutation Permutation::compose(const Permutation& other) const {
    if (size() != other.size())
        throw std::invalid_argument("size mismatch in composition");
    std::vector<int> f(forward_.size());
    for (int i = 0; i < size(); ++i)
        f[static_cast<size_t>(i)] = apply(other.apply(i));
    return Permutation(std::move(f));
}

bool Permutation::is_involution() const {
    for (int i = 0; i < size(); ++i)
        if (apply(apply(i)) != i)
            return false;
    return true;
}

bool Permutation::has_fixed_point() const {
    for (int i = 0; i < size(); ++i)
        if (apply(i) == i)
            return true;
    return false;
}

} // namespace banbury
