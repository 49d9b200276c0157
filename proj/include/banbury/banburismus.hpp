#pragma once

#include "banbury/keysheet.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace banbury::banburismus {

/// Coincidence pattern of two messages at one relative shift: the maximal
/// runs of equal letters in equal aligned positions, their total, and the
/// overlap length.
struct OverlapCount {
    int shift = 0;
    std::vector<int> runs;
    int matches = 0;
    int overlap = 0;
};

struct ScoreConfig {
    double kappa_lang = 1.0 / 17.0;
    double kappa_rand = 1.0 / 26.0;
    /// Deciban bonus per run, indexed by run length (entries 0 and 1 unused).
    std::vector<double> bonus_by_run;
    /// Deciban penalty indexed by |shift|.
    std::vector<double> malus_by_shift;
    int min_overlap = 10;

    static ScoreConfig defaults(int alphabet_size = 26);

    double bonus(int run_length) const;
    double malus(int abs_shift) const;
};

struct ShiftEvidence {
    OverlapCount count;
    double weight_db = 0.0;
    double factor() const;
};

/// Positive shift slides the second message to the right. Shift 0 is invalid
/// by construction (the third key letters differ), as is an alignment with no
/// overlap.
OverlapCount count_matches(std::string_view m1, std::string_view m2, int shift);

/// 10*log10 of the Bayes-Turing factor for the observed pattern, plus the run
/// bonuses, minus the shift penalty.
double weight_of_evidence(const OverlapCount& count, const ScoreConfig& config);

/// All scoreable shifts in [-25, 25] \ {0}, best weight first; ties go to the
/// smaller |shift|, then to the positive one.
std::vector<ShiftEvidence> rank_shifts(std::string_view m1, std::string_view m2,
                                       const ScoreConfig& config);

struct PairCandidate {
    size_t first = 0;
    size_t second = 0;
};

/// Unordered intercept pairs whose indicators agree on the first two letters
/// and differ on the third.
std::vector<PairCandidate> pair_candidates(const std::vector<keysheet::Intercept>& corpus);

/// ASCII rendering of a punched message strip: one row per alphabet letter,
/// one column per message position, 'O' marking the letter at that position.
std::string render_banbury_sheet(const keysheet::Intercept& intercept);

struct EvidenceRow {
    std::string pair_id; // "<id1>+<id2>"
    int shift = 0;
    std::string runs; // comma-joined run lengths, "-" when none
    int matches = 0;
    int overlap = 0;
    double weight_db = 0.0;
};

std::string format_runs(const std::vector<int>& runs);

/// Scores every candidate pair of the corpus; rows grouped per pair, ranked
/// within the group.
std::vector<EvidenceRow> score_corpus(const std::vector<keysheet::Intercept>& corpus,
                                      const ScoreConfig& config);

void write_evidence_tsv(const std::string& path, const std::vector<EvidenceRow>& rows);
std::vector<EvidenceRow> read_evidence_tsv(const std::string& path);

} // namespace banbury::banburismus
