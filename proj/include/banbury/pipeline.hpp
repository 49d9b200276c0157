#pragma once

#include "banbury/banburismus.hpp"
#include "banbury/bombe.hpp"
#include "banbury/scritchmus.hpp"
#include "banbury/traffic.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace banbury::pipeline {

struct DayConfig {
    int plug_pairs = 10;
    bool random_rings = false; // the search holds rings at the reference value
    std::string reflector = "B";
};

struct CribPlan {
    std::string text = "WETTERVORHERSAGENORD";
    int message_index = 0;
    int anchor = 25;
};

struct PipelineConfig {
    std::uint64_t seed = 42;
    int jobs = 1;
    DayConfig day;
    keysheet::TrafficConfig traffic;
    CribPlan crib;
    banburismus::ScoreConfig score = banburismus::ScoreConfig::defaults();
    scritchmus::DeduceConfig deduce;
    long bombe_block = 4096;
    std::string checkpoint_path;

    PipelineConfig() {
        traffic.messages = 200;
        traffic.length = {120, 240};
        traffic.cluster_fraction = 0.3;
        traffic.doubled = true;
    }
};

struct PipelineError : std::runtime_error {
    std::string stage;
    PipelineError(std::string stage_, const std::string& cause)
        : std::runtime_error("stage " + stage_ + ": " + cause), stage(std::move(stage_)) {}
};

struct GrundCandidate {
    std::size_t candidate_rank = 0; // into the bombe candidate list
    bombe::RotorOrder order;
    std::string message_key;
    std::string grund;
    int determined_constraints = 0;
};

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct PipelineReport {
    std::uint64_t seed = 0;
    keysheet::DailyKey true_key;
    std::string crib_text;
    int crib_anchor = 0;
    std::string crib_message_id;

    std::size_t intercepts = 0;
    std::size_t candidate_pairs = 0;
    std::vector<scritchmus::Deduction> deductions; // merged, strongest first
    std::vector<scritchmus::Chain> chains;
    std::size_t alphabet_count = 0;
    std::vector<std::string> alphabet_grids; // capped sample
    std::vector<std::string> rotor_shortlist;
    std::size_t dropped_deductions = 0;

    std::uint64_t bombe_positions_tested = 0;
    std::vector<bombe::Candidate> bombe_candidates; // ranked
    std::vector<GrundCandidate> grund_candidates;   // ranked

    bool shortlist_hit = false;  // true right-hand rotor is in the shortlist
    bool grund_recovered = false;
    bool success = false;

    std::vector<StageTiming> timings; // summary only, never serialized

    /// Canonical, byte-reproducible serialization (no timings).
    void write_tsv(std::ostream& out) const;
    /// Human-readable account, including timings.
    std::string summary() const;
};

PipelineReport run_pipeline(const PipelineConfig& config);

} // namespace banbury::pipeline
