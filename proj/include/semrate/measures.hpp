#pragma once

#include <span>
#include <vector>

#include "semrate/bayes.hpp"
#include "semrate/bits.hpp"
#include "semrate/channel.hpp"
#include "semrate/distribution.hpp"
#include "semrate/truth.hpp"

namespace semrate {

// H(p) = -sum p log2 p, with 0 log 0 = 0.
Bits shannon_entropy(const ProbVector& p);
Bits shannon_entropy(std::span<const double> p);

struct MutualInformationReport {
    Bits value;                // sum_ij P(x,y) log2[P(y|x)/P(y)]
    Bits label_entropy;        // H(Y)
    Bits conditional_entropy;  // H(Y|X); value == label_entropy - conditional_entropy (1e-9)
};

MutualInformationReport mutual_information(const Distribution& prior, const Channel& channel);

// KL(p||q) in bits; returns +infinity (flagged) when q lacks support where
// p has mass.
Bits kl_divergence(const ProbVector& p, const ProbVector& q);

// Point semantic information log2(T(theta|x) / T(theta)). Negative when the
// label deviates more than its logical probability warrants; -infinity when
// the truth value is 0.
Bits semantic_info_point(double truth_at_x, double logical_prob);

// Generalized KL: sum_i P(x_i|y) log2[T_i / T(theta)]. The overload taking a
// prior computes T(theta) from it; the raw overload takes T(theta) directly.
Bits generalized_kl(const ProbVector& sampling, std::span<const double> truth,
                    double logical_prob);
Bits generalized_kl(const ProbVector& sampling, std::span<const double> truth,
                    const Distribution& prior);

struct SemanticMIReport {
    Bits smi;               // I(X;Y_theta)
    Bits semantic_entropy;  // H(Y_theta) = -sum_j P(y_j) log2 T(theta_j)
    Bits fuzzy_entropy;     // H(Y_theta|X) = -sum_ij P(x_i,y_j) log2 T(y_j|x_i)
};

// smi = semantic_entropy - fuzzy_entropy within 1e-9 (or exactly, in the
// extended arithmetic sense, when a zero-truth cell carries mass).
SemanticMIReport semantic_mutual_information(const Distribution& prior, const Channel& channel,
                                             const SemanticChannel& sc);
// Raw form with caller-supplied truth table and logical probabilities
// (supports partition functions that do not come from the prior).
SemanticMIReport semantic_mutual_information(const Distribution& prior, const Channel& channel,
                                             const Matrix& truth,
                                             std::span<const double> logical_probs);

enum class FuzzyIntersection { product, minimum };

// Semantic information between two labels, given the conditional
// distribution P(x|y_j,y_k): sum_i P(x_i|y_j,y_k) log2[T_and(x_i) / (T(theta_j) T(theta_k))].
Bits label_pair_semantic_info(const ProbVector& cond, std::span<const double> truth_j,
                              std::span<const double> truth_k, const Distribution& prior,
                              FuzzyIntersection rule = FuzzyIntersection::product);

// Companion distortion in nats: sum_i P(x_i|y_j,y_k) ln[1 / T_and(x_i)].
// +infinity when conditional mass sits where the intersection vanishes.
double label_pair_distortion_nats(const ProbVector& cond, std::span<const double> truth_j,
                                  std::span<const double> truth_k,
                                  FuzzyIntersection rule = FuzzyIntersection::product);

// Explicit three-way table P(x_i, y_j, y_k); no independence assumed.
class LabelPairJoint {
public:
    LabelPairJoint(std::size_t instances, std::size_t labels, std::vector<double> p);

    std::size_t instances() const { return m_; }
    std::size_t labels() const { return n_; }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return p_[(i * n_ + j) * n_ + k];
    }

private:
    std::size_t m_, n_;
    std::vector<double> p_;
};

// Averaged label-pair information over P(x, y_j, y_k).
Bits label_pair_semantic_info_avg(const LabelPairJoint& joint, const SemanticChannel& sc,
                                  const Distribution& prior,
                                  FuzzyIntersection rule = FuzzyIntersection::product);

}  // namespace semrate
