#include "semrate/bayes.hpp"

#include <string>

namespace semrate {

BayesResult bayes_update(const Distribution& prior, const Channel& channel) {
    const std::size_t m = prior.size();
    const std::size_t n = channel.labels();
    if (channel.instances() != m)
        throw DimensionMismatch("prior has " + std::to_string(m) + " points, channel has " +
                                std::to_string(channel.instances()) + " rows");

    std::vector<double> marginal(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double px = prior[i];
        for (std::size_t j = 0; j < n; ++j) marginal[j] += px * channel(i, j);
    }

    std::vector<std::optional<ProbVector>> posteriors(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (marginal[j] <= 0.0) continue;  // undefined posterior, flagged by absence
        std::vector<double> post(m);
        for (std::size_t i = 0; i < m; ++i) post[i] = prior[i] * channel(i, j);
        posteriors[j] = ProbVector::normalized(std::move(post));
    }
    return {ProbVector::normalized(std::move(marginal)), std::move(posteriors)};
}

SemanticBayesResult semantic_bayes(const Distribution& prior, std::span<const double> truth) {
    const std::size_t m = prior.size();
    if (truth.size() != m)
        throw DimensionMismatch("truth vector size " + std::to_string(truth.size()) +
                                " does not match grid size " + std::to_string(m));
    double t_theta = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(truth[i] >= 0.0) || truth[i] > 1.0)
            throw BadParams("truth value outside [0,1] at index " + std::to_string(i));
        t_theta += prior[i] * truth[i];
    }
    if (t_theta <= 0.0) throw ZeroLogicalProbability();

    std::vector<double> post(m);
    for (std::size_t i = 0; i < m; ++i) post[i] = truth[i] * prior[i];
    return {t_theta, ProbVector::normalized(std::move(post))};
}

TruthRecovery truth_from_likelihood(const Distribution& prior, const ProbVector& likelihood,
                                    double global_max_ratio) {
    const std::size_t m = prior.size();
    if (likelihood.size() != m) throw DimensionMismatch("likelihood size does not match grid");
    if (!(global_max_ratio > 0.0)) throw BadParams("global_max_ratio must be positive");

    const double t_theta = 1.0 / global_max_ratio;
    std::vector<double> truth(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (likelihood[i] == 0.0) continue;
        if (prior[i] <= 0.0) throw ZeroPrior(i);
        const double t = t_theta * likelihood[i] / prior[i];
        if (t > 1.0 + 1e-9)
            throw BadParams("global_max_ratio below the observed likelihood/prior ratio at index " +
                            std::to_string(i));
        truth[i] = t < 1.0 ? t : 1.0;
    }
    return {std::move(truth), t_theta};
}

}  // namespace semrate
