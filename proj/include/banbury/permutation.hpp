#pragma once

#include <cstdint>
#include <vector>

namespace banbury {

class Rng;

/// A bijection on {0..N-1} with its inverse cached.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> forward);

    static Permutation identity(int n);
    static Permutation random(int n, Rng& rng);

    int size() const { return static_cast<int>(forward_.size()); }
    int apply(int x) const { return forward_[static_cast<size_t>(x)]; }
    int apply_inverse(int y) const { return inverse_[static_cast<size_t>(y)]; }

    Permutation inverse() const;
    /// this ∘ other: apply `other` first, then this.
    Permutation compose(const Permutation& other) const;

    bool is_involution() const;
    bool has_fixed_point() const;

    const std::vector<int>& forward() const { return forward_; }
    bool operator==(const Permutation& other) const { return forward_ == other.forward_; }

private:
    std::vector<int> forward_;
    std::vector<int> inverse_;
};

} // namespace banbury
