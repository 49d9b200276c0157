#include "banbury/scritchmus.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace banbury::scritchmus {

namespace {

constexpr std::uint32_t kAllBoundaries = (1u << 26) - 1;

int mod26(int x) {
    return ((x % 26) + 26) % 26;
}

std::uint32_t arc_bits(int from, int length) {
    std::uint32_t bits = 0;
    for (int t = 0; t < length; ++t)
        bits |= 1u << mod26(from + t);
    return bits;
}

std::uint32_t rotate_bits(std::uint32_t bits, int by) {
    std::uint32_t out = 0;
    for (int i = 0; i < 26; ++i)
        if (bits & (1u << i))
            out |= 1u << mod26(i + by);
    return out;
}

/// Re-anchor residues so that the largest circular gap falls outside the
/// chain; ties pick the smallest anchor.
int canonical_anchor(const std::vector<int>& residues) {
    if (residues.size() == 1)
        return residues[0];
    std::vector<int> sorted = residues;
    std::sort(sorted.begin(), sorted.end());
    int best_gap = -1, anchor = sorted[0];
    for (size_t i = 0; i < sorted.size(); ++i) {
        int next = sorted[(i + 1) % sorted.size()];
        int gap = mod26(next - sorted[i]);
        if (gap == 0)
            gap = 26; // single distinct residue
        if (gap > best_gap || (gap == best_gap && next < anchor)) {
            best_gap = gap;
            anchor = next;
        }
    }
    return anchor;
}

} // namespace

Chain Chain::bare(std::vector<Element> elements, double weight_db) {
    if (elements.empty())
        throw std::invalid_argument("chain needs at least one letter");
    std::sort(elements.begin(), elements.end(),
              [](const Element& a, const Element& b) { return a.position < b.position; });
    if (elements.front().position != 0)
        throw std::invalid_argument("chain must have a letter at position 0");
    for (size_t i = 1; i < elements.size(); ++i)
        if (elements[i].position == elements[i - 1].position)
            throw std::invalid_argument("chain has two letters at one position");
    Chain chain;
    chain.span = elements.back().position;
    if (chain.span > 25)
        throw std::invalid_argument("chain span exceeds the alphabet");
    chain.elements = std::move(elements);
    chain.weight_db = weight_db;
    chain.covered = chain.span >= 25 ? kAllBoundaries : arc_bits(0, chain.span);
    return chain;
}

BuildResult build_chains(std::vector<Deduction> deductions, double min_weight_db) {
    BuildResult result;
    std::vector<Deduction> active;
    for (const Deduction& d : deductions) {
        if (d.letter_a < 0 || d.letter_a >= 26 || d.letter_b < 0 || d.letter_b >= 26)
            throw std::invalid_argument("deduction letter outside alphabet");
        if (d.offset < 1 || d.offset > 25)
            throw std::invalid_argument("deduction offset must be in 1..25");
        if (d.letter_a == d.letter_b)
            throw std::invalid_argument("deduction relates a letter to itself");
        if (d.weight_db >= min_weight_db)
            active.push_back(d);
    }

    for (;;) {
        // assign relative positions letter by letter, weakest-first removal on conflict
        std::array<int, 26> root_of{};
        root_of.fill(-1);
        std::array<int, 26> rel{};
        int component_count = 0;

        bool conflict = false;
        size_t conflict_component = 0;

        // iterative BFS per component over the deduction graph
        std::vector<std::vector<size_t>> edges_of(26);
        for (size_t e = 0; e < active.size(); ++e) {
            edges_of[static_cast<size_t>(active[e].letter_a)].push_back(e);
            edges_of[static_cast<size_t>(active[e].letter_b)].push_back(e);
        }
        for (int start = 0; start < 26 && !conflict; ++start) {
            if (root_of[static_cast<size_t>(start)] != -1 || edges_of[static_cast<size_t>(start)].empty())
                continue;
            int component = component_count++;
            root_of[static_cast<size_t>(start)] = component;
            rel[static_cast<size_t>(start)] = 0;
            std::vector<int> queue{start};
            while (!queue.empty() && !conflict) {
                int x = queue.back();
                queue.pop_back();
                for (size_t e : edges_of[static_cast<size_t>(x)]) {
                    const Deduction& d = active[e];
                    int other = d.letter_a == x ? d.letter_b : d.letter_a;
                    int offset = d.letter_a == x ? -d.offset : d.offset; // pos(a) = pos(b) + offset
                    int want = mod26(rel[static_cast<size_t>(x)] - offset);
                    if (root_of[static_cast<size_t>(other)] == -1) {
                        root_of[static_cast<size_t>(other)] = component;
                        rel[static_cast<size_t>(other)] = want;
                        queue.push_back(other);
                    } else if (rel[static_cast<size_t>(other)] != want) {
                        conflict = true;
                        conflict_component = static_cast<size_t>(component);
                        break;
                    }
                }
            }
        }

        // two letters at one relative position also contradict single-image
        for (int c = 0; c < component_count && !conflict; ++c) {
            std::array<bool, 26> seen{};
            for (int letter = 0; letter < 26; ++letter) {
                if (root_of[static_cast<size_t>(letter)] != c)
                    continue;
                int r = rel[static_cast<size_t>(letter)];
                if (seen[static_cast<size_t>(r)]) {
                    conflict = true;
                    conflict_component = static_cast<size_t>(c);
                    break;
                }
                seen[static_cast<size_t>(r)] = true;
            }
        }

        if (conflict) {
            // drop the weakest deduction of the contradicted component, rebuild
            size_t weakest = active.size();
            for (size_t e = 0; e < active.size(); ++e) {
                int root = root_of[static_cast<size_t>(active[e].letter_a)];
                if (root != static_cast<int>(conflict_component))
                    continue;
                if (weakest == active.size() || active[e].weight_db < active[weakest].weight_db)
                    weakest = e;
            }
            result.dropped.push_back(active[weakest]);
            active.erase(active.begin() + static_cast<long>(weakest));
            continue;
        }

        // components are consistent: canonicalize each into a chain
        std::vector<Chain> chains(static_cast<size_t>(component_count));
        std::vector<std::vector<int>> residues(static_cast<size_t>(component_count));
        for (int letter = 0; letter < 26; ++letter)
            if (root_of[static_cast<size_t>(letter)] != -1)
                residues[static_cast<size_t>(root_of[static_cast<size_t>(letter)])].push_back(
                    rel[static_cast<size_t>(letter)]);
        std::vector<int> anchor(static_cast<size_t>(component_count));
        for (int c = 0; c < component_count; ++c)
            anchor[static_cast<size_t>(c)] = canonical_anchor(residues[static_cast<size_t>(c)]);
        for (int letter = 0; letter < 26; ++letter) {
            int c = root_of[static_cast<size_t>(letter)];
            if (c == -1)
                continue;
            chains[static_cast<size_t>(c)].elements.push_back(
                {letter, mod26(rel[static_cast<size_t>(letter)] - anchor[static_cast<size_t>(c)])});
        }
        for (const Deduction& d : active) {
            int c = root_of[static_cast<size_t>(d.letter_b)];
            int from = mod26(rel[static_cast<size_t>(d.letter_b)] - anchor[static_cast<size_t>(c)]);
            chains[static_cast<size_t>(c)].covered |= arc_bits(from, d.offset);
            chains[static_cast<size_t>(c)].weight_db += d.weight_db;
        }
        for (Chain& chain : chains) {
            std::sort(chain.elements.begin(), chain.elements.end(),
                      [](const Chain::Element& a, const Chain::Element& b) { return a.position < b.position; });
            chain.span = chain.elements.back().position;
        }
        std::stable_sort(chains.begin(), chains.end(),
                         [](const Chain& a, const Chain& b) { return a.weight_db > b.weight_db; });
        result.chains = std::move(chains);
        return result;
    }
}

AlphabetHypothesis::AlphabetHypothesis() {
    partner_.fill(-1);
}

bool AlphabetHypothesis::can_pair(int a, int b) const {
    if (a == b)
        return false; // non-identity
    int pa = partner_[static_cast<size_t>(a)];
    int pb = partner_[static_cast<size_t>(b)];
    return (pa == -1 || pa == b) && (pb == -1 || pb == a);
}

std::optional<AlphabetHypothesis> AlphabetHypothesis::with_pair(int a, int b) const {
    if (!can_pair(a, b))
        return std::nullopt;
    AlphabetHypothesis out = *this;
    out.partner_[static_cast<size_t>(a)] = static_cast<std::int8_t>(b);
    out.partner_[static_cast<size_t>(b)] = static_cast<std::int8_t>(a);
    return out;
}

int AlphabetHypothesis::pair_count() const {
    int n = 0;
    for (int i = 0; i < 26; ++i)
        if (partner_[static_cast<size_t>(i)] > i)
            ++n;
    return n;
}

bool AlphabetHypothesis::is_valid() const {
    for (int i = 0; i < 26; ++i) {
        int p = partner_[static_cast<size_t>(i)];
        if (p == -1)
            continue;
        if (p == i || partner_[static_cast<size_t>(p)] != i)
            return false;
    }
    return true;
}

std::string AlphabetHypothesis::grid() const {
    std::string out(26, '-');
    for (int i = 0; i < 26; ++i)
        if (partner_[static_cast<size_t>(i)] != -1)
            out[static_cast<size_t>(i)] = static_cast<char>('A' + partner_[static_cast<size_t>(i)]);
    return out;
}

AlphabetHypothesis AlphabetHypothesis::from_grid(std::string_view grid) {
    if (grid.size() != 26)
        throw std::invalid_argument("grid must have 26 columns");
    AlphabetHypothesis out;
    for (int i = 0; i < 26; ++i) {
        char c = grid[static_cast<size_t>(i)];
        if (c == '-')
            continue;
        auto next = out.with_pair(i, c - 'A');
        if (!next)
            throw std::invalid_argument("grid is not a partial fixed-point-free involution");
        out = *next;
    }
    return out;
}

std::vector<Placement> placements(const Chain& chain, const AlphabetHypothesis& hypothesis) {
    std::vector<Placement> out;
    for (int offset = 0; offset < 26; ++offset) {
        AlphabetHypothesis extended = hypothesis;
        bool ok = true;
        for (const Chain::Element& element : chain.elements) {
            int column = mod26(offset + element.position);
            auto next = extended.with_pair(column, element.letter);
            if (!next) {
                ok = false;
                break;
            }
            extended = *next;
        }
        if (ok)
            out.push_back({offset, std::move(extended)});
    }
    return out;
}

namespace {

void enumerate_rec(const std::vector<Chain>& chains, size_t depth, const AlphabetHypothesis& current,
                   std::vector<int>& offsets, EnumerationResult& result, std::size_t node_budget) {
    if (result.truncated)
        return;
    if (++result.nodes > node_budget) {
        result.truncated = true;
        return;
    }
    if (depth == chains.size()) {
        result.hypotheses.push_back({current, offsets});
        return;
    }
    for (const Placement& placement : placements(chains[depth], current)) {
        offsets.push_back(placement.offset);
        enumerate_rec(chains, depth + 1, placement.extended, offsets, result, node_budget);
        offsets.pop_back();
    }
}

} // namespace

EnumerationResult enumerate_alphabets(std::vector<Chain> chains, const AlphabetHypothesis& seed,
                                      std::size_t node_budget) {
    std::stable_sort(chains.begin(), chains.end(),
                     [](const Chain& a, const Chain& b) { return a.weight_db > b.weight_db; });
    EnumerationResult result;
    std::vector<int> offsets;
    enumerate_rec(chains, 0, seed, offsets, result, node_budget);
    return result;
}

std::vector<std::string> compatible_rotors(const std::vector<PlacedChain>& placed,
                                           const enigma::Catalogue& catalogue) {
    std::uint32_t forbidden = 0;
    for (const PlacedChain& pc : placed)
        forbidden |= rotate_bits(pc.chain.covered, pc.offset);
    std::vector<std::string> out;
    for (const enigma::RotorSpec& rotor : catalogue.rotors()) {
        bool ok = true;
        for (int notch : rotor.turnovers)
            ok = ok && !(forbidden & (1u << notch));
        if (ok)
            out.push_back(rotor.name);
    }
    return out;
}

DeduceResult deduce(std::vector<Deduction> deductions, const enigma::Catalogue& catalogue,
                    const DeduceConfig& config) {
    DeduceResult result;
    for (int round = 1;; ++round) {
        result.rounds = round;
        BuildResult built = build_chains(deductions, config.min_weight_db);
        for (const Deduction& d : built.dropped)
            result.dropped.push_back(d);
        result.chains = built.chains;

        EnumerationResult enumerated = enumerate_alphabets(built.chains, AlphabetHypothesis(),
                                                           config.node_budget);
        result.alphabets = enumerated.hypotheses;

        // shortlist: a rotor survives if some surviving alphabet admits it
        std::vector<std::string> shortlist;
        for (const Enumerated& hypothesis : enumerated.hypotheses) {
            std::vector<PlacedChain> placed;
            // enumerate_alphabets sorts heaviest-first; rebuild that order
            std::vector<Chain> sorted = built.chains;
            std::stable_sort(sorted.begin(), sorted.end(),
                             [](const Chain& a, const Chain& b) { return a.weight_db > b.weight_db; });
            for (size_t i = 0; i < sorted.size(); ++i)
                placed.push_back({sorted[i], hypothesis.offsets[i]});
            for (const std::string& name : compatible_rotors(placed, catalogue))
                if (std::find(shortlist.begin(), shortlist.end(), name) == shortlist.end())
                    shortlist.push_back(name);
        }
        result.rotor_shortlist = shortlist;

        bool failed = enumerated.hypotheses.empty() || shortlist.empty();
        if (!failed || round >= config.max_retry_rounds)
            return result;

        // drop the weakest surviving deduction and try again
        size_t weakest = deductions.size();
        for (size_t i = 0; i < deductions.size(); ++i) {
            if (deductions[i].weight_db < config.min_weight_db)
                continue;
            if (weakest == deductions.size() || deductions[i].weight_db < deductions[weakest].weight_db)
                weakest = i;
        }
        if (weakest == deductions.size())
            return result;
        result.dropped.push_back(deductions[weakest]);
        deductions.erase(deductions.begin() + static_cast<long>(weakest));
    }
}

} // namespace banbury::scritchmus
