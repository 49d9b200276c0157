#include "banbury/pipeline.hpp"

#include "banbury/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace banbury::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

const Alphabet& latin() {
    return Alphabet::latin26();
}

struct GeneratedDay {
    keysheet::DailyKey key;
    std::vector<keysheet::Intercept> corpus;
    std::string crib_message_id;
};

GeneratedDay generate_day(const PipelineConfig& config, const enigma::Catalogue& catalogue,
                          const SeedSplitter& seeds) {
    GeneratedDay day;
    Rng keygen = seeds.stream("keygen");
    day.key = keysheet::random_daily_key(catalogue, config.day.plug_pairs, config.day.random_rings,
                                         keygen, config.day.reflector);

    Rng rng = seeds.stream("traffic");
    std::string day_prefix;
    day_prefix.push_back(latin().letter(static_cast<int>(rng.below(26))));
    day_prefix.push_back(latin().letter(static_cast<int>(rng.below(26))));

    keysheet::TrafficModel model = keysheet::TrafficModel::fitted(classical::italian_frequencies());
    const CribPlan& crib = config.crib;
    if (crib.message_index < 0 ||
        (config.traffic.messages > 0 && crib.message_index >= config.traffic.messages))
        throw PipelineError("traffic", "crib message index outside the day's traffic");

    for (int m = 0; m < config.traffic.messages; ++m) {
        int span = config.traffic.length.max_length - config.traffic.length.min_length + 1;
        int length = config.traffic.length.min_length + static_cast<int>(rng.below(static_cast<std::uint32_t>(span)));
        std::string message_key =
            keysheet::sample_message_key(config.traffic.cluster_fraction, day_prefix, rng);
        std::string plaintext = model.sample_plaintext(length, rng);
        if (m == crib.message_index) {
            int needed = crib.anchor + static_cast<int>(crib.text.size());
            if (static_cast<int>(plaintext.size()) < needed + 5)
                plaintext += model.sample_plaintext(needed + 5 - static_cast<int>(plaintext.size()), rng);
            plaintext.replace(static_cast<size_t>(crib.anchor), crib.text.size(), crib.text);
        }
        char id[16];
        std::snprintf(id, sizeof id, "M%04d", m + 1);
        day.corpus.push_back(keysheet::transmit(day.key, catalogue, message_key, plaintext,
                                                config.traffic.doubled, id));
        if (m == crib.message_index)
            day.crib_message_id = day.corpus.back().id;
    }
    return day;
}

/// Top-ranked shift per candidate pair, merged into Scritchmus deductions.
/// Rows witnessing the same letter relation add their weights; per unordered
/// letter pair only the strongest orientation survives.
std::vector<scritchmus::Deduction> deductions_from_evidence(
    const std::vector<keysheet::Intercept>& corpus, const std::vector<banburismus::EvidenceRow>& rows,
    double min_weight_db) {
    std::map<std::string, size_t> by_id;
    for (size_t i = 0; i < corpus.size(); ++i)
        by_id[corpus[i].id] = i;

    std::map<std::tuple<int, int, int>, double> weight_of; // (a, b, offset) -> summed db
    std::string last_pair;
    for (const banburismus::EvidenceRow& row : rows) {
        if (row.pair_id == last_pair)
            continue; // only the top-ranked shift of each pair
        last_pair = row.pair_id;
        if (row.weight_db < min_weight_db)
            continue;
        auto plus = row.pair_id.find('+');
        if (plus == std::string::npos)
            continue;
        auto first = by_id.find(row.pair_id.substr(0, plus));
        auto second = by_id.find(row.pair_id.substr(plus + 1));
        if (first == by_id.end() || second == by_id.end())
            continue;
        int third1 = latin().index(corpus[first->second].indicator[2]);
        int third2 = latin().index(corpus[second->second].indicator[2]);
        // positive shift: the second message started |shift| steps later
        int a = row.shift > 0 ? third2 : third1;
        int b = row.shift > 0 ? third1 : third2;
        int offset = row.shift > 0 ? row.shift : -row.shift;
        weight_of[{a, b, offset}] += row.weight_db;
    }

    std::map<std::pair<int, int>, scritchmus::Deduction> best; // unordered letter pair
    for (const auto& [key, weight] : weight_of) {
        auto [a, b, offset] = key;
        std::pair<int, int> letters = std::minmax(a, b);
        auto it = best.find(letters);
        if (it == best.end() || weight > it->second.weight_db)
            best[letters] = scritchmus::Deduction{a, b, offset, weight};
    }

    std::vector<scritchmus::Deduction> out;
    for (const auto& [letters, deduction] : best)
        out.push_back(deduction);
    std::stable_sort(out.begin(), out.end(),
                     [](const scritchmus::Deduction& x, const scritchmus::Deduction& y) {
                         return x.weight_db > y.weight_db;
                     });
    return out;
}

/// Scrambler series for the grundstellung scan, stepping as the machine does.
struct GrundScan {
    std::vector<const enigma::RotorSpec*> rotors;
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
                x = rotors[i]->wiring.apply((x + pos[i]) % n) - pos[i];
                if (x < 0)
                    x += n;
            }
            x = reflector->apply(x);
            for (size_t i = 0; i < pos.size(); ++i) {
                x = rotors[i]->wiring.apply_inverse((x + pos[i]) % n) - pos[i];
                if (x < 0)
                    x += n;
            }
            out[c] = static_cast<std::int8_t>(x);
        }
    }
};

/// Can the partial stecker fragment be extended so the indicator letters are
/// the message key enciphered at this grund? Exact check over the few unknown
/// plug partners.
bool indicator_consistent(const std::int8_t* const* tables, int table_count,
                          const std::array<std::int8_t, 26>& fragment, const std::vector<int>& mk,
                          const std::vector<int>& indicator, int* determined_out) {
    std::int8_t partner[26];
    std::memcpy(partner, fragment.data(), 26);

    int determined = 0;
    bool unknown_key_letter[3] = {false, false, false};
    for (int k = 0; k < table_count; ++k) {
        int m = mk[static_cast<size_t>(k % 3)];
        int i = indicator[static_cast<size_t>(k)];
        if (partner[m] >= 0 && partner[i] >= 0) {
            if (tables[k][partner[m]] != partner[i])
                return false;
            ++determined;
        } else if (partner[m] < 0) {
            unknown_key_letter[k % 3] = true;
        }
    }
    if (determined_out)
        *determined_out = determined;

    // branch over the unknown key-letter partners; everything else is forced
    std::vector<int> branch_letters;
    for (int j = 0; j < 3; ++j)
        if (unknown_key_letter[j] && partner[mk[static_cast<size_t>(j)]] < 0) {
            bool seen = false;
            for (int b : branch_letters)
                seen = seen || b == mk[static_cast<size_t>(j)];
            if (!seen)
                branch_letters.push_back(mk[static_cast<size_t>(j)]);
        }

    struct Undo {
        int letter;
    };
    std::vector<Undo> trail;
    auto set_pair = [&](int a, int b) {
        if (partner[a] >= 0)
            return partner[a] == b;
        if (partner[b] >= 0)
            return partner[b] == a;
        partner[a] = static_cast<std::int8_t>(b);
        trail.push_back({a});
        if (a != b) {
            partner[b] = static_cast<std::int8_t>(a);
            trail.push_back({b});
        }
        return true;
    };

    std::function<bool(size_t)> solve = [&](size_t depth) -> bool {
        if (depth == branch_letters.size()) {
            // verify every constraint under the current assignment
            for (int k = 0; k < table_count; ++k) {
                int m = mk[static_cast<size_t>(k % 3)];
                int i = indicator[static_cast<size_t>(k)];
                if (partner[m] >= 0) {
                    int v = tables[k][partner[m]];
                    if (!set_pair(i, v))
                        return false;
                } else {
                    return false; // unreachable: every unknown key letter branches
                }
            }
            return true;
        }
        int letter = branch_letters[depth];
        if (partner[letter] >= 0)
            return solve(depth + 1);
        for (int u = 0; u < 26; ++u) {
            size_t mark = trail.size();
            if (set_pair(letter, u)) {
                bool ok = true;
                for (int k = 0; k < table_count && ok; ++k) {
                    if (mk[static_cast<size_t>(k % 3)] != letter)
                        continue;
                    int v = tables[k][u];
                    ok = set_pair(indicator[static_cast<size_t>(k)], v);
                }
                if (ok && solve(depth + 1))
                    return true;
            }
            while (trail.size() > mark) {
                partner[trail.back().letter] = -1;
                trail.pop_back();
            }
        }
        return false;
    };
    return solve(0);
}

} // namespace

PipelineReport run_pipeline(const PipelineConfig& config) {
    PipelineReport report;
    report.seed = config.seed;
    report.crib_text = config.crib.text;
    report.crib_anchor = config.crib.anchor;

    enigma::Catalogue catalogue = enigma::Catalogue::standard();
    SeedSplitter seeds(config.seed);

    auto timed = [&report](const char* stage, auto&& body) {
        auto start = Clock::now();
        try {
            body();
        } catch (const PipelineError&) {
            throw;
        } catch (const std::exception& e) {
            throw PipelineError(stage, e.what());
        }
        report.timings.push_back(
            {stage, std::chrono::duration<double>(Clock::now() - start).count()});
    };

    GeneratedDay day;
    timed("traffic", [&] { day = generate_day(config, catalogue, seeds); });
    report.true_key = day.key;
    report.intercepts = day.corpus.size();
    report.crib_message_id = day.crib_message_id;

    std::vector<banburismus::EvidenceRow> evidence;
    timed("banburismus", [&] {
        if (day.corpus.empty())
            throw PipelineError("banburismus", "no intercepts to score");
        report.candidate_pairs = banburismus::pair_candidates(day.corpus).size();
        evidence = banburismus::score_corpus(day.corpus, config.score);
    });

    scritchmus::DeduceResult deduced;
    timed("scritchmus", [&] {
        report.deductions =
            deductions_from_evidence(day.corpus, evidence, config.deduce.min_weight_db);
        deduced = scritchmus::deduce(report.deductions, catalogue, config.deduce);
        report.chains = deduced.chains;
        report.alphabet_count = deduced.alphabets.size();
        for (size_t i = 0; i < deduced.alphabets.size() && i < 16; ++i)
            report.alphabet_grids.push_back(deduced.alphabets[i].hypothesis.grid());
        report.rotor_shortlist = deduced.rotor_shortlist;
        report.dropped_deductions = deduced.dropped.size();
    });

    // the planted truth, for success accounting
    const std::string true_right = day.key.walzenlage.back();
    report.shortlist_hit = std::find(report.rotor_shortlist.begin(), report.rotor_shortlist.end(),
                                     true_right) != report.rotor_shortlist.end();

    bombe::SearchResult search;
    bombe::Crib crib;
    timed("bombe", [&] {
        if (report.rotor_shortlist.empty())
            throw PipelineError("bombe", "empty rotor shortlist");
        const keysheet::Intercept& target = day.corpus[static_cast<size_t>(config.crib.message_index)];
        crib = bombe::Crib::from_intercept(target, config.crib.text, config.crib.anchor);
        bombe::SearchConfig search_config;
        search_config.jobs = config.jobs;
        search_config.block = config.bombe_block;
        search_config.checkpoint_path = config.checkpoint_path;
        search_config.reflector = config.day.reflector;
        search = bombe::bombe_search(crib, catalogue,
                                     bombe::orders_for_shortlist(report.rotor_shortlist, catalogue),
                                     search_config);
        report.bombe_positions_tested = search.positions_tested;
        report.bombe_candidates = search.candidates;
        if (report.bombe_candidates.size() > 50)
            report.bombe_candidates.resize(50);
    });

    timed("grund", [&] {
        const keysheet::Intercept& target = day.corpus[static_cast<size_t>(config.crib.message_index)];
        std::vector<int> indicator = latin().indices(target.indicator);
        const int table_count = static_cast<int>(indicator.size());

        // group candidates by rotor order so one grund sweep serves them all
        std::map<std::uint32_t, std::vector<size_t>> by_order;
        for (size_t i = 0; i < search.candidates.size(); ++i)
            by_order[search.candidates[i].order_index].push_back(i);

        for (const auto& [order_index, candidate_ids] : by_order) {
            const bombe::Candidate& first = search.candidates[candidate_ids.front()];
            GrundScan scan;
            scan.n = 26;
            for (const std::string& name : first.order)
                scan.rotors.push_back(&catalogue.rotor(name));
            scan.reflector = &catalogue.reflector(config.day.reflector).wiring;

            std::vector<std::array<std::int8_t, 26>> tables(static_cast<size_t>(table_count));
            std::vector<const std::int8_t*> window(static_cast<size_t>(table_count));
            std::vector<int> grund_pos(3, 0);
            std::vector<int> probe(3, 0);
            scan.step(probe);
            int head = 0;
            for (int i = 0; i < table_count; ++i) {
                scan.scrambler(probe, tables[static_cast<size_t>(i)].data());
                scan.step(probe);
            }

            const std::uint64_t total = 26ull * 26 * 26;
            for (std::uint64_t g = 0; g < total; ++g) {
                for (int i = 0; i < table_count; ++i)
                    window[static_cast<size_t>(i)] =
                        tables[static_cast<size_t>((head + i) % table_count)].data();
                for (size_t id : candidate_ids) {
                    const bombe::Candidate& candidate = search.candidates[id];
                    for (const bombe::SteckerHypothesis& survivor : candidate.survivors) {
                        int determined = 0;
                        if (indicator_consistent(window.data(), table_count, survivor.partner,
                                                 candidate.position, indicator, &determined)) {
                            GrundCandidate gc;
                            gc.candidate_rank = id;
                            gc.order = candidate.order;
                            for (int p : candidate.position)
                                gc.message_key.push_back(latin().letter(p));
                            for (int p : grund_pos)
                                gc.grund.push_back(latin().letter(p));
                            gc.determined_constraints = determined;
                            report.grund_candidates.push_back(std::move(gc));
                            break; // one surviving stecker extension is enough
                        }
                    }
                }
                scan.scrambler(probe, tables[static_cast<size_t>(head)].data());
                scan.step(probe);
                head = (head + 1) % table_count;
                scan.step(grund_pos);
            }
        }

        std::stable_sort(report.grund_candidates.begin(), report.grund_candidates.end(),
                         [](const GrundCandidate& a, const GrundCandidate& b) {
                             if (a.determined_constraints != b.determined_constraints)
                                 return a.determined_constraints > b.determined_constraints;
                             return a.candidate_rank < b.candidate_rank;
                         });
        report.grund_recovered = false;
        for (const GrundCandidate& gc : report.grund_candidates)
            if (gc.grund == day.key.grundstellung)
                report.grund_recovered = true;
        if (report.grund_candidates.size() > 50)
            report.grund_candidates.resize(50);
    });

    report.success = report.shortlist_hit && report.grund_recovered;
    return report;
}

namespace {

std::string order_string(const bombe::RotorOrder& order) {
    return order[0] + " " + order[1] + " " + order[2];
}

} // namespace

void PipelineReport::write_tsv(std::ostream& out) const {
    out << "section\tfield\tvalue\n";
    out << "run\tseed\t" << seed << "\n";
    out << "run\tintercepts\t" << intercepts << "\n";
    out << "run\tcandidate_pairs\t" << candidate_pairs << "\n";
    out << "run\tcrib_text\t" << crib_text << "\n";
    out << "run\tcrib_anchor\t" << crib_anchor << "\n";
    out << "run\tcrib_message\t" << crib_message_id << "\n";
    out << "truth\tkey_sheet\t";
    {
        std::string sheet = keysheet::serialize_daily_key(true_key);
        for (char& c : sheet)
            if (c == '\n')
                c = ';';
        out << sheet << "\n";
    }
    char buf[64];
    for (const scritchmus::Deduction& d : deductions) {
        std::snprintf(buf, sizeof buf, "%.4f", d.weight_db);
        out << "deduction\t" << static_cast<char>('A' + d.letter_a) << "="
            << static_cast<char>('A' + d.letter_b) << "+" << d.offset << "\t" << buf << "\n";
    }
    for (const scritchmus::Chain& chain : chains) {
        out << "chain\t";
        for (size_t i = 0; i < chain.elements.size(); ++i) {
            if (i)
                out << ' ';
            out << static_cast<char>('A' + chain.elements[i].letter) << '@' << chain.elements[i].position;
        }
        std::snprintf(buf, sizeof buf, "%.4f", chain.weight_db);
        out << "\t" << buf << "\n";
    }
    out << "scritchmus\talphabets\t" << alphabet_count << "\n";
    for (const std::string& grid : alphabet_grids)
        out << "alphabet\tgrid\t" << grid << "\n";
    out << "scritchmus\tdropped\t" << dropped_deductions << "\n";
    {
        out << "scritchmus\tshortlist\t";
        for (size_t i = 0; i < rotor_shortlist.size(); ++i)
            out << (i ? " " : "") << rotor_shortlist[i];
        out << "\n";
    }
    out << "bombe\tpositions_tested\t" << bombe_positions_tested << "\n";
    for (const bombe::Candidate& c : bombe_candidates) {
        out << "bombe_candidate\t" << order_string(c.order) << "\t";
        for (int p : c.position)
            out << static_cast<char>('A' + p);
        out << " survivors=" << c.survivor_count << "\n";
    }
    for (const GrundCandidate& g : grund_candidates)
        out << "grund_candidate\t" << order_string(g.order) << "\t" << g.message_key << " "
            << g.grund << " determined=" << g.determined_constraints << "\n";
    out << "result\tshortlist_hit\t" << (shortlist_hit ? 1 : 0) << "\n";
    out << "result\tgrund_recovered\t" << (grund_recovered ? 1 : 0) << "\n";
    out << "result\tsuccess\t" << (success ? 1 : 0) << "\n";
}

std::string PipelineReport::summary() const {
    std::ostringstream out;
    out << "seed " << seed << ": " << intercepts << " intercepts, " << candidate_pairs
        << " comparable pairs, " << deductions.size() << " deductions, " << chains.size()
        << " chains, " << alphabet_count << " alphabets\n";
    out << "rotor shortlist:";
    for (const std::string& r : rotor_shortlist)
        out << ' ' << r;
    out << (shortlist_hit ? "  (contains the true right-hand rotor)\n"
                          : "  (true right-hand rotor missing)\n");
    out << "bombe: " << bombe_positions_tested << " positions tested, " << bombe_candidates.size()
        << " candidates kept\n";
    out << "ground setting " << (grund_recovered ? "recovered" : "not recovered");
    if (!grund_candidates.empty())
        out << "; best candidate " << order_string(grund_candidates.front().order) << " key "
            << grund_candidates.front().message_key << " grund " << grund_candidates.front().grund;
    out << "\n";
    out << (success ? "pipeline SUCCESS\n" : "pipeline FAILURE\n");
    for (const StageTiming& t : timings) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", t.seconds);
        out << "  " << t.stage << ": " << buf << "s\n";
    }
    return out.str();
}

} // namespace banbury::pipeline
