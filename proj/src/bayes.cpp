#include "banbury/bayes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace banbury::bayes {

double to_odds(double probability) {
    if (probability < 0.0 || probability > 1.0)
        throw std::invalid_argument("probability outside [0, 1]");
    if (probability == 1.0)
        return std::numeric_limits<double>::infinity();
    return probability / (1.0 - probability);
}

double to_probability(double odds) {
    if (odds < 0.0)
        throw std::invalid_argument("negative odds");
    if (std::isinf(odds))
        return 1.0;
    return odds / (1.0 + odds);
}

double decibans_from_factor(double factor) {
    if (factor < 0.0)
        throw std::invalid_argument("negative factor");
    return 10.0 * std::log10(factor);
}

double factor_from_decibans(double decibans) {
    return std::pow(10.0, decibans / 10.0);
}

double posterior(double prior, double likelihood_true, double likelihood_false) {
    if (prior < 0.0 || prior > 1.0 || likelihood_true < 0.0 || likelihood_true > 1.0 ||
        likelihood_false < 0.0 || likelihood_false > 1.0)
        throw std::invalid_argument("probabilities must be in [0, 1]");
    double denominator = likelihood_true * prior + likelihood_false * (1.0 - prior);
    if (denominator == 0.0)
        throw std::domain_error("impossible evidence");
    return likelihood_true * prior / denominator;
}

double sequential_update(double prior, const std::vector<Evidence>& evidence) {
    if (prior < 0.0 || prior > 1.0)
        throw std::invalid_argument("probabilities must be in [0, 1]");
    if (prior == 0.0 || prior == 1.0) {
        double p = prior;
        for (const Evidence& e : evidence)
            p = posterior(p, e.likelihood_true, e.likelihood_false);
        return p;
    }
    // log-odds accumulation, with the certain outcomes handled exactly
    double log_odds = std::log10(prior / (1.0 - prior));
    for (const Evidence& e : evidence) {
        if (e.likelihood_true < 0.0 || e.likelihood_true > 1.0 || e.likelihood_false < 0.0 ||
            e.likelihood_false > 1.0)
            throw std::invalid_argument("probabilities must be in [0, 1]");
        if (e.likelihood_true == 0.0 && e.likelihood_false == 0.0)
            throw std::domain_error("impossible evidence");
        if (e.likelihood_true == 0.0)
            return 0.0;
        if (e.likelihood_false == 0.0)
            return 1.0;
        log_odds += std::log10(e.likelihood_true / e.likelihood_false);
    }
    double odds = std::pow(10.0, log_odds);
    if (std::isinf(odds))
        return 1.0;
    return odds / (1.0 + odds);
}

double odds_update(double odds, double bayes_factor) {
    if (odds < 0.0 || bayes_factor < 0.0)
        throw std::invalid_argument("odds and factors are non-negative");
    return odds * bayes_factor;
}

std::vector<CoinStep> coin_trajectory(std::string_view flips, double prior) {
    std::vector<CoinStep> out;
    double p = prior;
    for (char flip : flips) {
        Evidence e;
        if (flip == 'H' || flip == 'h') {
            e = {0.5, 1.0}; // heads: certain for the double-headed coin
        } else if (flip == 'T' || flip == 't') {
            e = {0.5, 0.0}; // tails: impossible for the double-headed coin
        } else {
            throw std::invalid_argument("flips must be H or T");
        }
        p = posterior(p, e.likelihood_true, e.likelihood_false);
        out.push_back({flip, p});
    }
    return out;
}

} // namespace banbury::bayes
