#pragma once

#include <string_view>
#include <vector>

namespace banbury::bayes {

/// odds = p / (1 - p); decibans = 10 * log10(factor). Weights add where
/// factors multiply, which is why everything downstream scores in decibans.
double to_odds(double probability);
double to_probability(double odds);
double decibans_from_factor(double factor);
double factor_from_decibans(double decibans);

struct Evidence {
    double likelihood_true = 1.0;
    double likelihood_false = 1.0;
};

/// P(A|B) = Lt*p / (Lt*p + Lf*(1-p)); a zero denominator is "impossible
/// evidence".
double posterior(double prior, double likelihood_true, double likelihood_false);

/// Left fold of `posterior`, accumulated as log-odds so long evidence chains
/// neither underflow nor overflow.
double sequential_update(double prior, const std::vector<Evidence>& evidence);

double odds_update(double odds, double bayes_factor);

struct CoinStep {
    char flip = 'H';
    double posterior_fair = 0.0;
};

/// The fair-vs-double-headed coin experiment: posterior that the coin is fair
/// after each flip ('H' or 'T'), starting from the given prior.
std::vector<CoinStep> coin_trajectory(std::string_view flips, double prior = 0.5);

} // namespace banbury::bayes
