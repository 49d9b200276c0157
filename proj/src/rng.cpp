#include "banbury/rng.hpp"

#include <stdexcept>

namespace banbury {

std::uint64_t Rng::next() {
    // splitmix64 (Steele, Lea, Flood 2014), public-domain reference constants
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint32_t Rng::below(std::uint32_t n) {
    if (n == 0)
        throw std::invalid_argument("Rng::below(0)");
    // rejection sampling keeps the draw exactly uniform
    std::uint64_t limit = ~0ULL - (~0ULL % n);
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return static_cast<std::uint32_t>(x % n);
}

double Rng::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

int Rng::discrete(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights)
        total += w;
    if (total <= 0.0)
        throw std::invalid_argument("discrete distribution has no mass");
    double r = unit() * total;
    double acc = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (r < acc)
            return static_cast<int>(i);
    }
    return static_cast<int>(weights.size() - 1);
}

std::uint64_t SeedSplitter::derive(std::string_view stream_name) const {
    // FNV-1a over the stream name, folded into the root seed
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : stream_name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    Rng mix(root_ ^ h);
    return mix.next();
}

} // namespace banbury
