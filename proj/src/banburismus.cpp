#include "banbury/banburismus.hpp"

#include "banbury/alphabet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace banbury::banburismus {

ScoreConfig ScoreConfig::defaults(int alphabet_size) {
    ScoreConfig cfg;
    cfg.kappa_lang = 1.0 / 17.0;
    cfg.kappa_rand = 1.0 / static_cast<double>(alphabet_size);
    // +3 db per extra letter in a run, capped at +12 db per run
    cfg.bonus_by_run.assign(64, 0.0);
    for (int r = 2; r < 64; ++r)
        cfg.bonus_by_run[static_cast<size_t>(r)] = std::min(3.0 * (r - 1), 12.0);
    // the log-odds cost of a middle-rotor turnover inside the offset arc
    cfg.malus_by_shift.assign(static_cast<size_t>(alphabet_size), 0.0);
    for (int s = 1; s < alphabet_size; ++s)
        cfg.malus_by_shift[static_cast<size_t>(s)] =
            -10.0 * std::log10(1.0 - static_cast<double>(s) / alphabet_size);
    cfg.min_overlap = 10;
    return cfg;
}

double ScoreConfig::bonus(int run_length) const {
    if (run_length < 0 || bonus_by_run.empty())
        return 0.0;
    size_t i = std::min(static_cast<size_t>(run_length), bonus_by_run.size() - 1);
    return bonus_by_run[i];
}

double ScoreConfig::malus(int abs_shift) const {
    if (abs_shift < 0 || malus_by_shift.empty())
        return 0.0;
    size_t i = std::min(static_cast<size_t>(abs_shift), malus_by_shift.size() - 1);
    return malus_by_shift[i];
}

double ShiftEvidence::factor() const {
    return std::pow(10.0, weight_db / 10.0);
}

OverlapCount count_matches(std::string_view m1, std::string_view m2, int shift) {
    if (shift == 0)
        throw std::invalid_argument("zero shift is excluded: the third key letters differ");
    // m1[i] aligns with m2[i - shift]
    long lo = std::max<long>(0, shift);
    long hi = std::min<long>(static_cast<long>(m1.size()), static_cast<long>(m2.size()) + shift);
    if (hi <= lo)
        throw std::invalid_argument("no overlap at this shift");

    OverlapCount out;
    out.shift = shift;
    out.overlap = static_cast<int>(hi - lo);
    int run = 0;
    for (long i = lo; i < hi; ++i) {
        if (m1[static_cast<size_t>(i)] == m2[static_cast<size_t>(i - shift)]) {
            ++run;
        } else if (run > 0) {
            out.runs.push_back(run);
            out.matches += run;
            run = 0;
        }
    }
    if (run > 0) {
        out.runs.push_back(run);
        out.matches += run;
    }
    return out;
}

double weight_of_evidence(const OverlapCount& count, const ScoreConfig& config) {
    double per_match = 10.0 * std::log10(config.kappa_lang / config.kappa_rand);
    double per_miss = 10.0 * std::log10((1.0 - config.kappa_lang) / (1.0 - config.kappa_rand));
    double w = count.matches * per_match + (count.overlap - count.matches) * per_miss;
    for (int run : count.runs)
        w += config.bonus(run);
    w -= config.malus(std::abs(count.shift));
    return w;
}

std::vector<ShiftEvidence> rank_shifts(std::string_view m1, std::string_view m2,
                                       const ScoreConfig& config) {
    std::vector<ShiftEvidence> out;
    for (int shift = -25; shift <= 25; ++shift) {
        if (shift == 0)
            continue;
        long lo = std::max<long>(0, shift);
        long hi = std::min<long>(static_cast<long>(m1.size()), static_cast<long>(m2.size()) + shift);
        long overlap = hi - lo;
        if (overlap < std::max(1, config.min_overlap))
            continue;
        ShiftEvidence ev;
        ev.count = count_matches(m1, m2, shift);
        ev.weight_db = weight_of_evidence(ev.count, config);
        out.push_back(std::move(ev));
    }
    std::stable_sort(out.begin(), out.end(), [](const ShiftEvidence& a, const ShiftEvidence& b) {
        if (a.weight_db != b.weight_db)
            return a.weight_db > b.weight_db;
        if (std::abs(a.count.shift) != std::abs(b.count.shift))
            return std::abs(a.count.shift) < std::abs(b.count.shift);
        return a.count.shift > b.count.shift;
    });
    return out;
}

std::vector<PairCandidate> pair_candidates(const std::vector<keysheet::Intercept>& corpus) {
    std::vector<PairCandidate> out;
    for (size_t i = 0; i < corpus.size(); ++i) {
        for (size_t j = i + 1; j < corpus.size(); ++j) {
            const std::string& a = corpus[i].indicator;
            const std::string& b = corpus[j].indicator;
            if (a.size() < 3 || b.size() < 3)
                continue;
            if (a[0] == b[0] && a[1] == b[1] && a[2] != b[2])
                out.push_back({i, j});
        }
    }
    return out;
}

std::string render_banbury_sheet(const keysheet::Intercept& intercept) {
    const Alphabet& alphabet = Alphabet::latin26();
    const std::string& body = intercept.body;
    std::string out;
    out.reserve(static_cast<size_t>(alphabet.size()) * (body.size() + 1));
    for (int row = 0; row < alphabet.size(); ++row) {
        for (char c : body)
            out.push_back(c == alphabet.letter(row) ? 'O' : '.');
        out.push_back('\n');
    }
    return out;
}

std::string format_runs(const std::vector<int>& runs) {
    if (runs.empty())
        return "-";
    std::string out;
    for (size_t i = 0; i < runs.size(); ++i) {
        if (i > 0)
            out += ",";
        out += std::to_string(runs[i]);
    }
    return out;
}

std::vector<EvidenceRow> score_corpus(const std::vector<keysheet::Intercept>& corpus,
                                      const ScoreConfig& config) {
    std::vector<EvidenceRow> rows;
    for (const PairCandidate& pair : pair_candidates(corpus)) {
        const keysheet::Intercept& m1 = corpus[pair.first];
        const keysheet::Intercept& m2 = corpus[pair.second];
        for (const ShiftEvidence& ev : rank_shifts(m1.body, m2.body, config)) {
            EvidenceRow row;
            row.pair_id = m1.id + "+" + m2.id;
            row.shift = ev.count.shift;
            row.runs = format_runs(ev.count.runs);
            row.matches = ev.count.matches;
            row.overlap = ev.count.overlap;
            row.weight_db = ev.weight_db;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_evidence_tsv(const std::string& path, const std::vector<EvidenceRow>& rows) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write evidence table: " + path);
    out << "pair_id\tshift\truns\tM\tN\tweight_db\n";
    char buf[64];
    for (const EvidenceRow& row : rows) {
        std::snprintf(buf, sizeof buf, "%.4f", row.weight_db);
        out << row.pair_id << '\t' << row.shift << '\t' << row.runs << '\t' << row.matches << '\t'
            << row.overlap << '\t' << buf << '\n';
    }
}

std::vector<EvidenceRow> read_evidence_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open evidence table: " + path);
    std::vector<EvidenceRow> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.rfind("pair_id", 0) == 0)
            continue;
        std::istringstream row(line);
        EvidenceRow r;
        std::string shift, matches, overlap, weight;
        if (!std::getline(row, r.pair_id, '\t') || !std::getline(row, shift, '\t') ||
            !std::getline(row, r.runs, '\t') || !std::getline(row, matches, '\t') ||
            !std::getline(row, overlap, '\t') || !std::getline(row, weight))
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad evidence row");
        r.shift = std::stoi(shift);
        r.matches = std::stoi(matches);
        r.overlap = std::stoi(overlap);
        r.weight_db = std::stod(weight);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace banbury::banburismus
