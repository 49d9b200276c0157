#pragma once

#include "banbury/alphabet.hpp"
#include "banbury/rotor.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace banbury::scritchmus {

/// One Banburismus conclusion: the message whose third indicator letter is
/// `letter_a` sits `offset` end-wheel steps after the one with `letter_b`
/// (a = b + offset, offset in 1..25), with its evidence weight in decibans.
struct Deduction {
    int letter_a = 0;
    int letter_b = 0;
    int offset = 0;
    double weight_db = 0.0;
};

/// Letters pinned to relative end-wheel positions. `covered` is the set of
/// turnover boundaries (position p to p+1, as a bit per p in chain
/// coordinates) that the supporting evidence proves turnover-free. Chains
/// built from deductions carry the exact union of the deduction arcs; bare
/// chains default to the whole span.
struct Chain {
    struct Element {
        int letter = 0;
        int position = 0;
    };
    std::vector<Element> elements; // ascending positions, first is 0
    int span = 0;
    double weight_db = 0.0;
    std::uint32_t covered = 0;

    static Chain bare(std::vector<Element> elements, double weight_db = 0.0);
};

struct BuildResult {
    std::vector<Chain> chains;
    std::vector<Deduction> dropped; // contradictory, removed weakest-first
};

/// Union-find over shared letters; relative positions accumulate offsets
/// mod 26 and are re-anchored so the span is minimal.
BuildResult build_chains(std::vector<Deduction> deductions, double min_weight_db);

/// A partial cipher alphabet: symmetric, fixed-point-free, at most one
/// partner per letter.
class AlphabetHypothesis {
public:
    AlphabetHypothesis();

    int partner(int letter) const { return partner_[static_cast<size_t>(letter)]; }
    bool can_pair(int a, int b) const;
    std::optional<AlphabetHypothesis> with_pair(int a, int b) const;

    int pair_count() const;
    bool complete() const { return pair_count() == 13; }
    bool is_valid() const; // symmetry + non-identity, for assertions

    /// 26 characters under the A..Z header, '-' where unknown.
    std::string grid() const;
    static AlphabetHypothesis from_grid(std::string_view grid);

    bool operator==(const AlphabetHypothesis& other) const { return partner_ == other.partner_; }

private:
    std::array<std::int8_t, 26> partner_;
};

struct Placement {
    int offset = 0;
    AlphabetHypothesis extended;
};

/// Every offset at which the chain letters can be written under the alphabet
/// header without breaking non-identity or symmetry; the symmetric
/// completions are already applied.
std::vector<Placement> placements(const Chain& chain, const AlphabetHypothesis& hypothesis);

struct Enumerated {
    AlphabetHypothesis hypothesis;
    std::vector<int> offsets; // per chain, in the order given
};

struct EnumerationResult {
    std::vector<Enumerated> hypotheses;
    std::size_t nodes = 0;
    bool truncated = false;
};

/// Depth-first placement of the chains (heaviest first), backtracking on
/// contradiction. Returns every hypothesis that places all chains.
EnumerationResult enumerate_alphabets(std::vector<Chain> chains, const AlphabetHypothesis& seed,
                                      std::size_t node_budget = 1u << 20);

struct PlacedChain {
    Chain chain;
    int offset = 0;
};

/// Rotors whose turnover boundaries avoid every chain's covered interval.
std::vector<std::string> compatible_rotors(const std::vector<PlacedChain>& placed,
                                           const enigma::Catalogue& catalogue);

struct DeduceConfig {
    double min_weight_db = 7.0;
    int max_retry_rounds = 5;
    std::size_t node_budget = 1u << 20;
};

struct DeduceResult {
    std::vector<Chain> chains;
    std::vector<Enumerated> alphabets;
    std::vector<std::string> rotor_shortlist;
    std::vector<Deduction> dropped;
    int rounds = 1;
};

/// The full Scritchmus round: build chains, enumerate alphabets, shortlist
/// rotors; on failure drop the weakest deduction and retry.
DeduceResult deduce(std::vector<Deduction> deductions, const enigma::Catalogue& catalogue,
                    const DeduceConfig& config);

} // namespace banbury::scritchmus
