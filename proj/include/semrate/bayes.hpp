#pragma once

#include <optional>
#include <span>
#include <vector>

#include "semrate/channel.hpp"
#include "semrate/distribution.hpp"

namespace semrate {

struct BayesResult {
    // P(y_j) = sum_i P(x_i) P(y_j|x_i)
    ProbVector marginal;
    // P(x|y_j), normalized; empty (nullopt) when P(y_j) = 0.
    std::vector<std::optional<ProbVector>> posteriors;
};

BayesResult bayes_update(const Distribution& prior, const Channel& channel);

struct SemanticBayesResult {
    double logical_prob;   // T(theta) = sum_i P(x_i) T_i
    ProbVector posterior;  // P(x_i|theta) = T_i P(x_i) / T(theta)
};

// Semantic Bayes: update the prior through a truth function instead of a
// conditional probability.
SemanticBayesResult semantic_bayes(const Distribution& prior, std::span<const double> truth);

struct TruthRecovery {
    std::vector<double> truth;  // T_i in [0,1]
    double logical_prob;        // T(theta) = 1 / global_max_ratio
};

// Inverse of semantic_bayes: recover a truth function from a likelihood.
// global_max_ratio is max over all (x, y) of P(x|theta)/P(x), supplied by
// the caller so the same normalization can span several labels.
TruthRecovery truth_from_likelihood(const Distribution& prior, const ProbVector& likelihood,
                                    double global_max_ratio);

}  // namespace semrate
