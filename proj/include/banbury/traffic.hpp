#pragma once

#include "banbury/classical.hpp"
#include "banbury/keysheet.hpp"
#include "banbury/rng.hpp"

#include <string>
#include <vector>

namespace banbury::keysheet {

/// Plaintext source for synthetic traffic. The default is an order-0 letter
/// model blended between a language table and the uniform distribution so
/// that the same-letter coincidence rate hits the target exactly.
class TrafficModel {
public:
    static TrafficModel fitted(const classical::FrequencyTable& language,
                               double coincidence_target = 1.0 / 17.0);
    /// Corpus-driven mode: messages are slices of the normalized corpus text
    /// (uppercased, umlauts expanded, X for spaces, spelled-out digits).
    static TrafficModel from_corpus(const std::string& path);

    std::string sample_plaintext(int length, Rng& rng) const;
    double coincidence_rate() const;
    const std::vector<double>& letter_weights() const { return weights_; }

private:
    TrafficModel() = default;
    std::vector<double> weights_; // empty in corpus mode
    std::string corpus_;
};

/// Uppercase, map umlauts/ß to their spelled forms, replace spaces with X,
/// spell out digits (EINS, ZWEI, ...), drop everything else.
std::string germanize(std::string_view raw);

struct LengthDistribution {
    int min_length = 120;
    int max_length = 240;
};

struct TrafficConfig {
    int messages = 200;
    LengthDistribution length;
    /// Fraction of message keys that reuse the day's two-letter prefix, so
    /// the corpus contains comparable pairs.
    double cluster_fraction = 0.3;
    bool doubled = false;
};

std::string sample_message_key(double cluster_fraction, std::string_view day_prefix, Rng& rng);

std::vector<Intercept> generate_day_traffic(const DailyKey& key, const enigma::Catalogue& catalogue,
                                            const TrafficModel& model, const TrafficConfig& config,
                                            Rng& rng);

/// A fresh daily key drawn from the catalogue (3 rotors, `plug_pairs` plugs).
DailyKey random_daily_key(const enigma::Catalogue& catalogue, int plug_pairs, bool random_rings,
                          Rng& rng, const std::string& reflector = "B");

} // namespace banbury::keysheet
