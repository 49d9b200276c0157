#pragma once

#include "banbury/alphabet.hpp"
#include "banbury/keysheet.hpp"
#include "banbury/rotor.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace banbury::bombe {

/// A guessed plaintext fragment aligned against its ciphertext window.
/// Aligned letters must never coincide; a coincidence disproves the anchoring.
struct Crib {
    std::vector<int> plain;
    std::vector<int> cipher;
    int anchor = 0; // 0-based offset of the window in the message body

    int length() const { return static_cast<int>(plain.size()); }

    static Crib make(std::string_view plain, std::string_view cipher, int anchor,
                     const Alphabet& alphabet = Alphabet::latin26());
    static Crib from_intercept(const keysheet::Intercept& intercept, std::string_view plain,
                               int anchor, const Alphabet& alphabet = Alphabet::latin26());
};

struct CribEdge {
    int a = 0;
    int b = 0;
    int position = 0; // 1-based crib column
};

struct CribGraph {
    int alphabet_size = 26;
    std::vector<CribEdge> edges;
    std::vector<int> nodes; // letters present, ascending

    std::vector<std::vector<std::pair<int, int>>> adjacency() const; // letter -> (other, position)
    int edge_multiplicity(int a, int b) const;
};

CribGraph build_crib_graph(const Crib& crib, int alphabet_size = 26);

struct Loop {
    std::vector<int> letters;   // canonical cycle, no repeated node
    std::vector<int> positions; // one edge position per hop
};

/// All simple cycles up to `max_length`, deduplicated up to rotation and
/// reflection. Parallel edges make 2-cycles.
std::vector<Loop> find_loops(const CribGraph& graph, int max_length = 8);

/// A partial stecker assignment; self-stecker (letter paired with itself) is
/// allowed, unlike rotor alphabets.
struct SteckerHypothesis {
    std::array<std::int8_t, 26> partner;
    int test_letter = 0;
    int test_partner = 0;

    SteckerHypothesis() { partner.fill(-1); }
    std::vector<std::pair<int, int>> pairs() const;
};

struct TestOutcome {
    bool rejected = true;
    int test_letter = 0;
    std::vector<SteckerHypothesis> survivors;
};

/// The letter the test register is wired to: the crib letter of highest
/// degree, ties resolved alphabetically.
int pick_test_register(const CribGraph& graph);

using RotorOrder = std::array<std::string, 3>; // left, middle, right

/// Try every stecker partner of the test register at one rotor order and one
/// start position (the rotor positions at the message's first keypress) and
/// propagate through the crib; survivors carry their implied partner sets.
TestOutcome bombe_test(const Crib& crib, const RotorOrder& order, const std::vector<int>& start_position,
                       const enigma::Catalogue& catalogue, const std::string& reflector = "B",
                       bool diagonal = true, const Alphabet& alphabet = Alphabet::latin26());

struct Candidate {
    std::uint32_t order_index = 0;
    RotorOrder order;
    std::uint64_t position_index = 0;
    std::vector<int> position;
    int survivor_count = 0;
    std::vector<SteckerHypothesis> survivors;
};

struct SearchConfig {
    int jobs = 1;
    long block = 4096;            // positions per work unit
    std::string checkpoint_path;  // empty: no checkpointing
    std::uint64_t position_begin = 0;
    std::uint64_t position_end = 0; // 0: full N^3 range
    bool diagonal = true;
    std::string reflector = "B";
};

struct SearchResult {
    std::vector<Candidate> candidates; // fewest survivors first, then order, then position
    std::uint64_t positions_tested = 0;
    std::uint64_t units_skipped = 0; // resumed from checkpoint
};

SearchResult bombe_search(const Crib& crib, const enigma::Catalogue& catalogue,
                          const std::vector<RotorOrder>& orders, const SearchConfig& config,
                          const Alphabet& alphabet = Alphabet::latin26());

/// Expand a right-rotor shortlist into full orders over the catalogue.
std::vector<RotorOrder> orders_for_shortlist(const std::vector<std::string>& right_rotors,
                                             const enigma::Catalogue& catalogue);

/// Position index <-> rotor positions for the plain odometer, counting steps
/// from the all-zero position.
std::vector<int> decode_position(std::uint64_t index, const std::vector<const enigma::RotorSpec*>& rotors,
                                 int alphabet_size);

} // namespace banbury::bombe
