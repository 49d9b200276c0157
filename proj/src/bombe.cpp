#include "banbury/bombe.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace banbury::bombe {

Crib Crib::make(std::string_view plain, std::string_view cipher, int anchor, const Alphabet& alphabet) {
    if (plain.size() != cipher.size())
        throw std::invalid_argument("crib rows differ in length");
    if (plain.empty())
        throw std::invalid_argument("empty crib");
    if (anchor < 0)
        throw std::invalid_argument("negative crib anchor");
    Crib crib;
    crib.anchor = anchor;
    crib.plain = alphabet.indices(plain);
    crib.cipher = alphabet.indices(cipher);
    for (size_t i = 0; i < crib.plain.size(); ++i)
        if (crib.plain[i] == crib.cipher[i])
            throw std::invalid_argument("crib misaligned");
    return crib;
}

Crib Crib::from_intercept(const keysheet::Intercept& intercept, std::string_view plain, int anchor,
                          const Alphabet& alphabet) {
    if (anchor < 0 || anchor + plain.size() > intercept.body.size())
        throw std::invalid_argument("crib window exceeds message bounds");
    return make(plain, std::string_view(intercept.body).substr(static_cast<size_t>(anchor), plain.size()),
                anchor, alphabet);
}

std::vector<std::vector<std::pair<int, int>>> CribGraph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(alphabet_size));
    for (const CribEdge& e : edges) {
        adj[static_cast<size_t>(e.a)].emplace_back(e.b, e.position);
        adj[static_cast<size_t>(e.b)].emplace_back(e.a, e.position);
    }
    return adj;
}

int CribGraph::edge_multiplicity(int a, int b) const {
    int n = 0;
    for (const CribEdge& e : edges)
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a))
            ++n;
    return n;
}

CribGraph build_crib_graph(const Crib& crib, int alphabet_size) {
    CribGraph graph;
    graph.alphabet_size = alphabet_size;
    std::vector<bool> present(static_cast<size_t>(alphabet_size), false);
    for (size_t i = 0; i < crib.plain.size(); ++i) {
        if (crib.plain[i] == crib.cipher[i])
            throw std::invalid_argument("crib misaligned");
        graph.edges.push_back({crib.plain[i], crib.cipher[i], static_cast<int>(i) + 1});
        present[static_cast<size_t>(crib.plain[i])] = true;
        present[static_cast<size_t>(crib.cipher[i])] = true;
    }
    for (int letter = 0; letter < alphabet_size; ++letter)
        if (present[static_cast<size_t>(letter)])
            graph.nodes.push_back(letter);
    return graph;
}

namespace {

struct LoopCollector {
    const CribGraph* graph;
    std::vector<std::vector<std::pair<int, int>>> adj;
    int max_length;
    std::vector<Loop> loops;
    std::vector<int> path;
    std::vector<bool> on_path;

    void collect_two_cycles() {
        for (size_t i = 0; i < graph->nodes.size(); ++i) {
            for (size_t j = i + 1; j < graph->nodes.size(); ++j) {
                int a = graph->nodes[i], b = graph->nodes[j];
                std::vector<int> positions;
                for (const CribEdge& e : graph->edges)
                    if ((e.a == a && e.b == b) || (e.a == b && e.b == a))
                        positions.push_back(e.position);
                if (positions.size() >= 2) {
                    std::sort(positions.begin(), positions.end());
                    loops.push_back({{a, b}, {positions[0], positions[1]}});
                }
            }
        }
    }

    void dfs(int start, int current) {
        for (const auto& [next, position] : adj[static_cast<size_t>(current)]) {
            if (next == start && path.size() >= 3) {
                // dedup: fix the smallest node first and the direction by the
                // second node being smaller than the last
                if (path[1] < path.back()) {
                    Loop loop;
                    loop.letters = path;
                    for (size_t i = 0; i < path.size(); ++i)
                        loop.positions.push_back(smallest_edge(path[i], path[(i + 1) % path.size()]));
                    loops.push_back(std::move(loop));
                }
                continue;
            }
            if (next <= start || on_path[static_cast<size_t>(next)])
                continue;
            if (static_cast<int>(path.size()) >= max_length)
                continue;
            path.push_back(next);
            on_path[static_cast<size_t>(next)] = true;
            dfs(start, next);
            on_path[static_cast<size_t>(next)] = false;
            path.pop_back();
        }
    }

    int smallest_edge(int a, int b) const {
        int best = 0;
        for (const CribEdge& e : graph->edges)
            if (((e.a == a && e.b == b) || (e.a == b && e.b == a)) && (best == 0 || e.position < best))
                best = e.position;
        return best;
    }
};

} // namespace

std::vector<Loop> find_loops(const CribGraph& graph, int max_length) {
    LoopCollector collector;
    collector.graph = &graph;
    collector.adj = graph.adjacency();
    collector.max_length = max_length;
    collector.on_path.assign(static_cast<size_t>(graph.alphabet_size), false);
    collector.collect_two_cycles();
    for (int start : graph.nodes) {
        collector.path = {start};
        collector.on_path[static_cast<size_t>(start)] = true;
        collector.dfs(start, start);
        collector.on_path[static_cast<size_t>(start)] = false;
    }
    std::stable_sort(collector.loops.begin(), collector.loops.end(), [](const Loop& a, const Loop& b) {
        if (a.letters.size() != b.letters.size())
            return a.letters.size() < b.letters.size();
        return a.letters < b.letters;
    });
    return collector.loops;
}

std::vector<std::pair<int, int>> SteckerHypothesis::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < 26; ++i) {
        int p = partner[static_cast<size_t>(i)];
        if (p >= 0 && p >= i)
            out.emplace_back(i, p);
    }
    return out;
}

int pick_test_register(const CribGraph& graph) {
    std::vector<int> degree(static_cast<size_t>(graph.alphabet_size), 0);
    for (const CribEdge& e : graph.edges) {
        ++degree[static_cast<size_t>(e.a)];
        ++degree[static_cast<size_t>(e.b)];
    }
    int best = -1;
    for (int letter = 0; letter < graph.alphabet_size; ++letter)
        if (best == -1 || degree[static_cast<size_t>(letter)] > degree[static_cast<size_t>(best)])
            if (degree[static_cast<size_t>(letter)] > 0 &&
                (best == -1 || degree[static_cast<size_t>(letter)] > degree[static_cast<size_t>(best)]))
                best = letter;
    if (best == -1)
        throw std::invalid_argument("crib graph has no edges");
    return best;
}

namespace {

/// Rotor stack at fixed rotor choice, ring-0 positions, used by the scans.
struct OrderContext {
    std::vector<const enigma::RotorSpec*> rotors; // left to right
    const Permutation* reflector = nullptr;
    int n = 26;

    void step(std::vector<int>& pos) const {
        bool carry = true;
        for (size_t i = pos.size(); i-- > 0 && carry;) {
            carry = false;
            for (int t : rotors[i]->turnovers)
                carry = carry || pos[i] == t;
            pos[i] = pos[i] + 1 == n ? 0 : pos[i] + 1;
        }
    }

    void scrambler(const std::vector<int>& pos, std::int8_t* out) const {
        for (int c = 0; c < n; ++c) {
            int x = c;
            for (size_t i = pos.size(); i-- > 0;) {
                int shifted = x + pos[i];
                if (shifted >= n)
                    shifted -= n;
                x = rotors[i]->wiring.apply(shifted) - pos[i];
                if (x < 0)
                    x += n;
            }
            x = reflector->apply(x);
            for (size_t i = 0; i < pos.size(); ++i) {
                int shifted = x + pos[i];
                if (shifted >= n)
                    shifted -= n;
                x = rotors[i]->wiring.apply_inverse(shifted) - pos[i];
                if (x < 0)
                    x += n;
            }
            out[c] = static_cast<std::int8_t>(x);
        }
    }
};

OrderContext make_context(const RotorOrder& order, const enigma::Catalogue& catalogue,
                          const std::string& reflector, int alphabet_size) {
    OrderContext ctx;
    ctx.n = alphabet_size;
    for (const std::string& name : order) {
        const enigma::RotorSpec& spec = catalogue.rotor(name);
        if (spec.wiring.size() != alphabet_size)
            throw std::invalid_argument("rotor '" + name + "' does not match the alphabet");
        ctx.rotors.push_back(&spec);
    }
    if (ctx.rotors.size() != 3)
        throw std::invalid_argument("bombe expects three rotors");
    const enigma::ReflectorSpec& ref = catalogue.reflector(reflector);
    if (ref.wiring.size() != alphabet_size)
        throw std::invalid_argument("reflector does not match the alphabet");
    ctx.reflector = &ref.wiring;
    return ctx;
}

struct Propagator {
    int n = 26;
    int test_letter = 0;
    bool diagonal = true;
    // adjacency as flat arrays for speed
    struct Arc {
        std::int8_t other;
        std::int16_t slot;
    };
    std::vector<Arc> arcs;
    std::vector<int> arc_begin; // per letter, into arcs

    void build(const CribGraph& graph) {
        n = graph.alphabet_size;
        std::vector<std::vector<Arc>> adj(static_cast<size_t>(n));
        for (const CribEdge& e : graph.edges) {
            adj[static_cast<size_t>(e.a)].push_back({static_cast<std::int8_t>(e.b),
                                                     static_cast<std::int16_t>(e.position - 1)});
            adj[static_cast<size_t>(e.b)].push_back({static_cast<std::int8_t>(e.a),
                                                     static_cast<std::int16_t>(e.position - 1)});
        }
        arc_begin.assign(static_cast<size_t>(n) + 1, 0);
        for (int i = 0; i < n; ++i)
            arc_begin[static_cast<size_t>(i) + 1] =
                arc_begin[static_cast<size_t>(i)] + static_cast<int>(adj[static_cast<size_t>(i)].size());
        arcs.clear();
        for (int i = 0; i < n; ++i)
            arcs.insert(arcs.end(), adj[static_cast<size_t>(i)].begin(), adj[static_cast<size_t>(i)].end());
    }

    /// Tables: per crib slot, the scrambler map. Returns survivors for the
    /// given start hypothesis set (all partners of the test letter).
    template <typename OnSurvivor>
    bool try_all(const std::int8_t* const* tables, OnSurvivor&& on_survivor) const {
        bool any = false;
        std::int8_t partner[26];
        int queue[26];
        for (int p = 0; p < n; ++p) {
            std::memset(partner, -1, sizeof partner);
            int queue_len = 0;
            bool dead = false;
            auto assign = [&](int a, int b) {
                if (partner[a] >= 0) {
                    if (partner[a] != b)
                        dead = true;
                    return;
                }
                partner[a] = static_cast<std::int8_t>(b);
                queue[queue_len++] = a;
                if (diagonal) {
                    if (partner[b] >= 0) {
                        if (partner[b] != a)
                            dead = true;
                        return;
                    }
                    partner[b] = static_cast<std::int8_t>(a);
                    queue[queue_len++] = b;
                }
            };
            assign(test_letter, p);
            for (int q = 0; q < queue_len && !dead; ++q) {
                int x = queue[q];
                int u = partner[x];
                for (int k = arc_begin[static_cast<size_t>(x)]; k < arc_begin[static_cast<size_t>(x) + 1];
                     ++k) {
                    int v = tables[arcs[static_cast<size_t>(k)].slot][u];
                    assign(arcs[static_cast<size_t>(k)].other, v);
                    if (dead)
                        break;
                }
            }
            if (!dead) {
                any = true;
                on_survivor(p, partner);
            }
        }
        return any;
    }
};

std::uint64_t fnv64(std::uint64_t h, const void* data, size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t search_hash(const Crib& crib, const std::vector<RotorOrder>& orders,
                          const SearchConfig& config, int alphabet_size) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv64(h, crib.plain.data(), crib.plain.size() * sizeof(int));
    h = fnv64(h, crib.cipher.data(), crib.cipher.size() * sizeof(int));
    h = fnv64(h, &crib.anchor, sizeof crib.anchor);
    for (const RotorOrder& order : orders)
        for (const std::string& name : order)
            h = fnv64(h, name.data(), name.size());
    h = fnv64(h, config.reflector.data(), config.reflector.size());
    h = fnv64(h, &config.block, sizeof config.block);
    h = fnv64(h, &config.position_begin, sizeof config.position_begin);
    h = fnv64(h, &config.position_end, sizeof config.position_end);
    h = fnv64(h, &config.diagonal, sizeof config.diagonal);
    h = fnv64(h, &alphabet_size, sizeof alphabet_size);
    return h;
}

struct CheckpointState {
    std::uint64_t hash = 0;
    std::vector<std::uint8_t> unit_done;
    std::vector<Candidate> candidates;
};

constexpr std::uint32_t kCheckpointMagic = 0x424e424bu; // "BNBK"

void save_checkpoint(const std::string& path, const CheckpointState& state,
                     const std::vector<RotorOrder>& orders) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write checkpoint: " + path);
    auto put32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    auto put64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    put32(kCheckpointMagic);
    put32(1);
    put64(state.hash);
    put32(static_cast<std::uint32_t>(state.unit_done.size()));
    out.write(reinterpret_cast<const char*>(state.unit_done.data()),
              static_cast<std::streamsize>(state.unit_done.size()));
    put32(static_cast<std::uint32_t>(state.candidates.size()));
    for (const Candidate& c : state.candidates) {
        put32(c.order_index);
        put64(c.position_index);
        put32(static_cast<std::uint32_t>(c.position.size()));
        for (int p : c.position)
            put32(static_cast<std::uint32_t>(p));
        put32(static_cast<std::uint32_t>(c.survivors.size()));
        for (const SteckerHypothesis& s : c.survivors) {
            put32(static_cast<std::uint32_t>(s.test_letter));
            put32(static_cast<std::uint32_t>(s.test_partner));
            out.write(reinterpret_cast<const char*>(s.partner.data()), 26);
        }
    }
    (void)orders;
}

bool load_checkpoint(const std::string& path, std::uint64_t expected_hash, size_t unit_count,
                     CheckpointState& state) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return false;
    auto get32 = [&]() {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    auto get64 = [&]() {
        std::uint64_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    if (get32() != kCheckpointMagic || get32() != 1)
        throw std::runtime_error("bad checkpoint file: " + path);
    if (get64() != expected_hash)
        throw std::runtime_error("checkpoint does not match this search: " + path);
    std::uint32_t units = get32();
    if (units != unit_count)
        throw std::runtime_error("checkpoint unit count mismatch: " + path);
    state.unit_done.assign(units, 0);
    in.read(reinterpret_cast<char*>(state.unit_done.data()), units);
    std::uint32_t n_candidates = get32();
    state.candidates.clear();
    for (std::uint32_t i = 0; i < n_candidates; ++i) {
        Candidate c;
        c.order_index = get32();
        c.position_index = get64();
        std::uint32_t n_pos = get32();
        for (std::uint32_t k = 0; k < n_pos; ++k)
            c.position.push_back(static_cast<int>(get32()));
        std::uint32_t n_surv = get32();
        for (std::uint32_t k = 0; k < n_surv; ++k) {
            SteckerHypothesis s;
            s.test_letter = static_cast<int>(get32());
            s.test_partner = static_cast<int>(get32());
            in.read(reinterpret_cast<char*>(s.partner.data()), 26);
            c.survivors.push_back(s);
        }
        c.survivor_count = static_cast<int>(c.survivors.size());
        state.candidates.push_back(std::move(c));
    }
    if (!in)
        throw std::runtime_error("truncated checkpoint: " + path);
    return true;
}

} // namespace

std::vector<int> decode_position(std::uint64_t index, const std::vector<const enigma::RotorSpec*>& rotors,
                                 int alphabet_size) {
    auto crossings = [&](std::uint64_t steps, const std::vector<int>& notches) {
        std::uint64_t total = 0;
        for (int d : notches)
            if (steps > static_cast<std::uint64_t>(d))
                total += (steps - 1 - static_cast<std::uint64_t>(d)) / static_cast<std::uint64_t>(alphabet_size) + 1;
        return total;
    };
    std::uint64_t n = static_cast<std::uint64_t>(alphabet_size);
    std::vector<int> pos(rotors.size(), 0);
    std::uint64_t steps = index;
    for (size_t i = rotors.size(); i-- > 0;) {
        pos[i] = static_cast<int>(steps % n);
        steps = crossings(steps, rotors[i]->turnovers);
    }
    return pos;
}

TestOutcome bombe_test(const Crib& crib, const RotorOrder& order, const std::vector<int>& start_position,
                       const enigma::Catalogue& catalogue, const std::string& reflector, bool diagonal,
                       const Alphabet& alphabet) {
    OrderContext ctx = make_context(order, catalogue, reflector, alphabet.size());
    if (start_position.size() != 3)
        throw std::invalid_argument("start position must cover three rotors");
    for (int p : start_position)
        if (p < 0 || p >= ctx.n)
            throw std::invalid_argument("start position outside alphabet");

    CribGraph graph = build_crib_graph(crib, ctx.n);
    Propagator prop;
    prop.build(graph);
    prop.test_letter = pick_test_register(graph);
    prop.diagonal = diagonal;

    const int length = crib.length();
    std::vector<std::array<std::int8_t, 26>> tables(static_cast<size_t>(length));
    std::vector<const std::int8_t*> table_ptr(static_cast<size_t>(length));
    std::vector<int> pos = start_position;
    for (int i = 0; i < crib.anchor + 1; ++i)
        ctx.step(pos);
    for (int i = 0; i < length; ++i) {
        ctx.scrambler(pos, tables[static_cast<size_t>(i)].data());
        table_ptr[static_cast<size_t>(i)] = tables[static_cast<size_t>(i)].data();
        ctx.step(pos);
    }

    TestOutcome outcome;
    outcome.test_letter = prop.test_letter;
    prop.try_all(table_ptr.data(), [&](int p, const std::int8_t* partner) {
        SteckerHypothesis s;
        s.test_letter = prop.test_letter;
        s.test_partner = p;
        std::memcpy(s.partner.data(), partner, 26);
        outcome.survivors.push_back(s);
    });
    outcome.rejected = outcome.survivors.empty();
    return outcome;
}

std::vector<RotorOrder> orders_for_shortlist(const std::vector<std::string>& right_rotors,
                                             const enigma::Catalogue& catalogue) {
    std::vector<RotorOrder> out;
    for (const std::string& right : right_rotors) {
        (void)catalogue.rotor(right);
        for (const enigma::RotorSpec& left : catalogue.rotors()) {
            if (left.name == right)
                continue;
            for (const enigma::RotorSpec& middle : catalogue.rotors()) {
                if (middle.name == right || middle.name == left.name)
                    continue;
                out.push_back({left.name, middle.name, right});
            }
        }
    }
    return out;
}

SearchResult bombe_search(const Crib& crib, const enigma::Catalogue& catalogue,
                          const std::vector<RotorOrder>& orders, const SearchConfig& config,
                          const Alphabet& alphabet) {
    SearchResult result;
    if (orders.empty())
        return result;
    const int n = alphabet.size();
    const std::uint64_t full = static_cast<std::uint64_t>(n) * n * n;
    const std::uint64_t begin = config.position_begin;
    const std::uint64_t end = config.position_end == 0 ? full : config.position_end;
    if (begin >= end || end > full)
        throw std::invalid_argument("bad position range");
    if (config.block < 1)
        throw std::invalid_argument("bad block size");

    const std::uint64_t span = end - begin;
    const std::uint64_t blocks_per_order =
        (span + static_cast<std::uint64_t>(config.block) - 1) / static_cast<std::uint64_t>(config.block);
    const size_t unit_count = orders.size() * blocks_per_order;

    CheckpointState state;
    state.hash = search_hash(crib, orders, config, n);
    state.unit_done.assign(unit_count, 0);
    if (!config.checkpoint_path.empty())
        load_checkpoint(config.checkpoint_path, state.hash, unit_count, state);

    CribGraph graph = build_crib_graph(crib, n);
    Propagator prop;
    prop.build(graph);
    prop.test_letter = pick_test_register(graph);
    prop.diagonal = config.diagonal;

    std::vector<OrderContext> contexts;
    contexts.reserve(orders.size());
    for (const RotorOrder& order : orders)
        contexts.push_back(make_context(order, catalogue, config.reflector, n));

    std::mutex merge_mutex;
    std::atomic<size_t> next_unit{0};
    std::atomic<std::uint64_t> tested{0};
    std::atomic<std::uint64_t> skipped{0};
    std::atomic<size_t> since_flush{0};

    auto worker = [&]() {
        const int length = crib.length();
        std::vector<std::array<std::int8_t, 26>> tables(static_cast<size_t>(length));
        std::vector<const std::int8_t*> window(static_cast<size_t>(length));
        for (;;) {
            size_t unit = next_unit.fetch_add(1);
            if (unit >= unit_count)
                return;
            if (state.unit_done[unit]) {
                skipped.fetch_add(1);
                continue;
            }
            const size_t order_index = unit / blocks_per_order;
            const std::uint64_t block_index = unit % blocks_per_order;
            const OrderContext& ctx = contexts[order_index];
            const std::uint64_t first = begin + block_index * static_cast<std::uint64_t>(config.block);
            const std::uint64_t last = std::min(end, first + static_cast<std::uint64_t>(config.block));

            std::vector<int> start = decode_position(first, ctx.rotors, n);
            std::vector<int> probe = start;
            for (int i = 0; i < crib.anchor + 1; ++i)
                ctx.step(probe);
            int head = 0;
            for (int i = 0; i < length; ++i) {
                ctx.scrambler(probe, tables[static_cast<size_t>(i)].data());
                ctx.step(probe);
            }

            std::vector<Candidate> found;
            for (std::uint64_t k = first; k < last; ++k) {
                for (int i = 0; i < length; ++i)
                    window[static_cast<size_t>(i)] =
                        tables[static_cast<size_t>((head + i) % length)].data();
                Candidate candidate;
                bool any = prop.try_all(window.data(), [&](int p, const std::int8_t* partner) {
                    SteckerHypothesis s;
                    s.test_letter = prop.test_letter;
                    s.test_partner = p;
                    std::memcpy(s.partner.data(), partner, 26);
                    candidate.survivors.push_back(s);
                });
                if (any) {
                    candidate.order_index = static_cast<std::uint32_t>(order_index);
                    candidate.order = orders[order_index];
                    candidate.position_index = k;
                    candidate.position = start;
                    candidate.survivor_count = static_cast<int>(candidate.survivors.size());
                    found.push_back(std::move(candidate));
                }
                // slide the scrambler window one keypress forward
                ctx.scrambler(probe, tables[static_cast<size_t>(head)].data());
                ctx.step(probe);
                head = (head + 1) % length;
                ctx.step(start);
            }
            tested.fetch_add(last - first);

            std::lock_guard<std::mutex> lock(merge_mutex);
            state.unit_done[unit] = 1;
            for (Candidate& c : found)
                state.candidates.push_back(std::move(c));
            if (!config.checkpoint_path.empty() && ++since_flush >= 64) {
                since_flush = 0;
                save_checkpoint(config.checkpoint_path, state, orders);
            }
        }
    };

    int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }

    if (!config.checkpoint_path.empty())
        save_checkpoint(config.checkpoint_path, state, orders);

    std::sort(state.candidates.begin(), state.candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.survivor_count != b.survivor_count)
            return a.survivor_count < b.survivor_count;
        if (a.order_index != b.order_index)
            return a.order_index < b.order_index;
        return a.position_index < b.position_index;
    });
    result.candidates = std::move(state.candidates);
    result.positions_tested = tested.load();
    result.units_skipped = skipped.load();
    return result;
}

} // namespace banbury::bombe
