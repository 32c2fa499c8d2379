#include "semrate/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace semrate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// -sum p ln p in nats, 0 ln 0 = 0.
double entropy_nats(std::span<const double> p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

double intersect(double a, double b, FuzzyIntersection rule) {
    return rule == FuzzyIntersection::product ? a * b : std::min(a, b);
}

}  // namespace

Bits shannon_entropy(std::span<const double> p) { return Bits(bits_from_nats(entropy_nats(p))); }

Bits shannon_entropy(const ProbVector& p) { return shannon_entropy(p.values()); }

MutualInformationReport mutual_information(const Distribution& prior, const Channel& channel) {
    const std::size_t m = prior.size();
    const std::size_t n = channel.labels();
    if (channel.instances() != m) throw DimensionMismatch("prior/channel grid size mismatch");

    std::vector<double> marginal(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) marginal[j] += prior[i] * channel(i, j);

    double mi = 0.0;           // sum P(x,y) ln[P(y|x)/P(y)]
    double h_cond = 0.0;       // -sum P(x,y) ln P(y|x)
    for (std::size_t i = 0; i < m; ++i) {
        const double px = prior[i];
        if (px == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const double c = channel(i, j);
            if (c == 0.0) continue;
            const double joint = px * c;
            mi += joint * std::log(c / marginal[j]);
            h_cond -= joint * std::log(c);
        }
    }
    if (mi < 0.0 && mi > -1e-9) mi = 0.0;  // summation noise on a degenerate channel
    return {Bits(bits_from_nats(mi)), Bits(bits_from_nats(entropy_nats(marginal))),
            Bits(bits_from_nats(h_cond))};
}

Bits kl_divergence(const ProbVector& p, const ProbVector& q) {
    if (p.size() != q.size()) throw DimensionMismatch("kl_divergence: size mismatch");
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return Bits::pos_infinity();  // absolute continuity violated
        kl += p[i] * std::log(p[i] / q[i]);
    }
    return Bits(bits_from_nats(kl));
}

Bits semantic_info_point(double truth_at_x, double logical_prob) {
    if (!(logical_prob > 0.0) || logical_prob > 1.0)
        throw ZeroLogicalProbability("logical probability must lie in (0,1]");
    if (!(truth_at_x >= 0.0) || truth_at_x > 1.0) throw BadParams("truth value outside [0,1]");
    if (truth_at_x == 0.0) return Bits::neg_infinity();
    return Bits(std::log2(truth_at_x / logical_prob));
}

Bits generalized_kl(const ProbVector& sampling, std::span<const double> truth,
                    double logical_prob) {
    if (sampling.size() != truth.size()) throw DimensionMismatch("generalized_kl: size mismatch");
    if (!(logical_prob > 0.0)) throw ZeroLogicalProbability();
    double acc = 0.0;
    for (std::size_t i = 0; i < sampling.size(); ++i) {
        if (sampling[i] == 0.0) continue;
        if (truth[i] == 0.0) return Bits::neg_infinity();
        acc += sampling[i] * std::log(truth[i] / logical_prob);
    }
    return Bits(bits_from_nats(acc));
}

Bits generalized_kl(const ProbVector& sampling, std::span<const double> truth,
                    const Distribution& prior) {
    if (prior.size() != truth.size()) throw DimensionMismatch("generalized_kl: size mismatch");
    double t_theta = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) t_theta += prior[i] * truth[i];
    return generalized_kl(sampling, truth, t_theta);
}

SemanticMIReport semantic_mutual_information(const Distribution& prior, const Channel& channel,
                                             const Matrix& truth,
                                             std::span<const double> logical_probs) {
    const std::size_t m = prior.size();
    const std::size_t n = channel.labels();
    if (truth.rows() != m || truth.cols() != n)
        throw DimensionMismatch("semantic_mutual_information: truth table shape mismatch");
    if (logical_probs.size() != n)
        throw DimensionMismatch("semantic_mutual_information: logical probability count mismatch");

    std::vector<double> marginal(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) marginal[j] += prior[i] * channel(i, j);

    double h_sem = 0.0;  // -sum_j P(y_j) ln T(theta_j)
    for (std::size_t j = 0; j < n; ++j) {
        if (marginal[j] == 0.0) continue;
        if (!(logical_probs[j] > 0.0)) throw ZeroLogicalProbability();
        h_sem -= marginal[j] * std::log(logical_probs[j]);
    }

    double h_fuzzy = 0.0;  // -sum_ij P(x,y) ln T(y_j|x_i)
    bool fuzzy_infinite = false;
    for (std::size_t i = 0; i < m; ++i) {
        const double px = prior[i];
        if (px == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const double joint = px * channel(i, j);
            if (joint == 0.0) continue;
            if (truth(i, j) == 0.0) {
                fuzzy_infinite = true;  // mass on an impossible cell
                continue;
            }
            h_fuzzy -= joint * std::log(truth(i, j));
        }
    }

    if (fuzzy_infinite)
        return {Bits::neg_infinity(), Bits(bits_from_nats(h_sem)), Bits::pos_infinity()};
    return {Bits(bits_from_nats(h_sem - h_fuzzy)), Bits(bits_from_nats(h_sem)),
            Bits(bits_from_nats(h_fuzzy))};
}

SemanticMIReport semantic_mutual_information(const Distribution& prior, const Channel& channel,
                                             const SemanticChannel& sc) {
    return semantic_mutual_information(prior, channel, sc.truth(),
                                       sc.logical_probabilities(prior));
}

Bits label_pair_semantic_info(const ProbVector& cond, std::span<const double> truth_j,
                              std::span<const double> truth_k, const Distribution& prior,
                              FuzzyIntersection rule) {
    const std::size_t m = prior.size();
    if (cond.size() != m || truth_j.size() != m || truth_k.size() != m)
        throw DimensionMismatch("label_pair_semantic_info: size mismatch");
    double tj = 0.0, tk = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        tj += prior[i] * truth_j[i];
        tk += prior[i] * truth_k[i];
    }
    if (!(tj > 0.0) || !(tk > 0.0)) throw ZeroLogicalProbability();

    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (cond[i] == 0.0) continue;
        const double t_and = intersect(truth_j[i], truth_k[i], rule);
        if (t_and == 0.0) return Bits::neg_infinity();  // contradictory labels
        acc += cond[i] * std::log(t_and / (tj * tk));
    }
    return Bits(bits_from_nats(acc));
}

double label_pair_distortion_nats(const ProbVector& cond, std::span<const double> truth_j,
                                  std::span<const double> truth_k, FuzzyIntersection rule) {
    if (cond.size() != truth_j.size() || cond.size() != truth_k.size())
        throw DimensionMismatch("label_pair_distortion: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < cond.size(); ++i) {
        if (cond[i] == 0.0) continue;
        const double t_and = intersect(truth_j[i], truth_k[i], rule);
        if (t_and == 0.0) return kInf;
        acc -= cond[i] * std::log(t_and);
    }
    return acc;
}

LabelPairJoint::LabelPairJoint(std::size_t instances, std::size_t labels, std::vector<double> p)
    : m_(instances), n_(labels), p_(std::move(p)) {
    if (p_.size() != m_ * n_ * n_)
        throw DimensionMismatch("label-pair joint table has wrong size");
    double sum = 0.0;
    for (double v : p_) {
        if (!(v >= 0.0)) throw InvalidDistribution("label-pair joint: negative or NaN entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > ProbVector::kSumTolerance)
        throw InvalidDistribution("label-pair joint sums to " + std::to_string(sum));
    for (double& v : p_) v /= sum;
}

Bits label_pair_semantic_info_avg(const LabelPairJoint& joint, const SemanticChannel& sc,
                                  const Distribution& prior, FuzzyIntersection rule) {
    if (joint.instances() != sc.instances() || joint.labels() != sc.label_count())
        throw DimensionMismatch("label-pair joint does not match the semantic channel");
    const auto t_theta = sc.logical_probabilities(prior);
    for (double t : t_theta)
        if (!(t > 0.0)) throw ZeroLogicalProbability();

    double acc = 0.0;
    for (std::size_t i = 0; i < joint.instances(); ++i)
        for (std::size_t j = 0; j < joint.labels(); ++j)
            for (std::size_t k = 0; k < joint.labels(); ++k) {
                const double w = joint(i, j, k);
                if (w == 0.0) continue;
                const double t_and = intersect(sc(i, j), sc(i, k), rule);
                if (t_and == 0.0) return Bits::neg_infinity();
                acc += w * std::log(t_and / (t_theta[j] * t_theta[k]));
            }
    return Bits(bits_from_nats(acc));
}

}  // namespace semrate
