#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "semrate/channel.hpp"
#include "semrate/distribution.hpp"
#include "semrate/matrix.hpp"
#include "semrate/truth.hpp"

namespace semrate {

// One feature f_k(x, y) with its bound F_k and multiplier alpha_k. The
// multipliers are caller-supplied; no fitting happens here.
struct FeatureConstraint {
    Matrix feature;
    double bound = 0.0;
    double multiplier = 0.0;
};

// Gibbs channel P(y|x_i) = exp(sum_k alpha_k f_k(x_i, y)) / Z_i. With no
// features the channel is uniform 1/n. Throws OverflowGuard on non-finite
// exponents; finite ones are max-shifted.
Channel maxent_channel(std::span<const FeatureConstraint> features, std::size_t instances,
                       std::size_t labels);

// P(y|x_i) = T(y|x_i)^|s| / sum_k T(y_k|x_i)^|s|; identical to an mmi_step
// with a uniform label marginal.
Channel truth_constrained_maxent(const SemanticChannel& sc, double s_abs);

struct EntropyDecomposition {
    double joint_entropy_bits;     // H(X,Y)
    double instance_entropy_bits;  // H(X)
    double label_entropy_bits;     // log2 n (the extreme value of H(Y))
    double semantic_mi_bits;       // I(Y;X_theta) from the NEF weights
    // |H(X,Y) - (H(X) + H(Y) - I(Y;X_theta))|
    double residual() const;
};

// Decompose the joint entropy of a maxent channel built with a uniform
// label marginal. log_weights holds ln of the NEF entries (sum_k alpha_k f_k
// or |s| ln T).
EntropyDecomposition entropy_decomposition(const Distribution& prior, const Channel& channel,
                                           const Matrix& log_weights);
EntropyDecomposition entropy_decomposition(const Distribution& prior, const Channel& channel,
                                           std::span<const FeatureConstraint> features);
EntropyDecomposition entropy_decomposition(const Distribution& prior, const Channel& channel,
                                           const SemanticChannel& sc, double s_abs);

}  // namespace semrate
