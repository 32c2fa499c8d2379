#include "semrate/maxent.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "semrate/bits.hpp"
#include "semrate/kernel.hpp"
#include "semrate/solver.hpp"

namespace semrate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix feature_exponents(std::span<const FeatureConstraint> features, std::size_t m,
                         std::size_t n) {
    Matrix e(m, n, 0.0);
    for (const auto& f : features) {
        if (f.feature.rows() != m || f.feature.cols() != n)
            throw DimensionMismatch("feature matrix shape mismatch");
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) e(i, j) += f.multiplier * f.feature(i, j);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(e(i, j)))
                throw OverflowGuard("non-finite exponent at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    return e;
}

}  // namespace

Channel maxent_channel(std::span<const FeatureConstraint> features, std::size_t instances,
                       std::size_t labels) {
    if (instances == 0 || labels == 0) throw BadParams("empty channel shape");
    const Matrix e = feature_exponents(features, instances, labels);
    Matrix rows(instances, labels);
    for (std::size_t i = 0; i < instances; ++i) {
        double rowmax = -kInf;
        for (std::size_t j = 0; j < labels; ++j) rowmax = std::max(rowmax, e(i, j));
        double z = 0.0;
        for (std::size_t j = 0; j < labels; ++j) {
            const double w = std::exp(e(i, j) - rowmax);
            rows(i, j) = w;
            z += w;
        }
        for (std::size_t j = 0; j < labels; ++j) rows(i, j) /= z;
    }
    return Channel(std::move(rows));
}

Channel truth_constrained_maxent(const SemanticChannel& sc, double s_abs) {
    // same formula as the constraint step with P(y) = 1/n
    return mmi_step(ProbVector::uniform(sc.label_count()), build_rtheta_kernel(sc, s_abs)).channel;
}

double EntropyDecomposition::residual() const {
    return std::abs(joint_entropy_bits -
                    (instance_entropy_bits + label_entropy_bits - semantic_mi_bits));
}

EntropyDecomposition entropy_decomposition(const Distribution& prior, const Channel& channel,
                                           const Matrix& log_weights) {
    const std::size_t m = channel.instances();
    const std::size_t n = channel.labels();
    if (prior.size() != m) throw DimensionMismatch("prior grid does not match channel");
    if (log_weights.rows() != m || log_weights.cols() != n)
        throw DimensionMismatch("weight table shape mismatch");

    double h_x = 0.0;
    for (double v : prior.values())
        if (v > 0.0) h_x -= v * std::log(v);

    double h_y_given_x = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double px = prior[i];
        if (px == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const double c = channel(i, j);
            if (c == 0.0) continue;
            h_y_given_x -= px * c * std::log(c);
        }
    }

    // I(Y;X_theta): weights as truth functions of x over the label universe,
    // logical probability T(x_i) = (1/n) sum_j W_ij
    const double log_n = std::log(static_cast<double>(n));
    double smi = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double px = prior[i];
        if (px == 0.0) continue;
        double rowmax = -kInf;
        for (std::size_t j = 0; j < n; ++j) rowmax = std::max(rowmax, log_weights(i, j));
        if (rowmax == -kInf) throw ZeroPartition(i);
        double z = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double lw = log_weights(i, j);
            if (lw > -kInf) z += std::exp(lw - rowmax);
        }
        const double log_t_x = rowmax + std::log(z) - log_n;
        for (std::size_t j = 0; j < n; ++j) {
            const double c = channel(i, j);
            if (c == 0.0) continue;
            if (log_weights(i, j) == -kInf)
                throw Error("channel has mass where the weight table vanishes");
            smi += px * c * (log_weights(i, j) - log_t_x);
        }
    }

    return {bits_from_nats(h_x + h_y_given_x), bits_from_nats(h_x),
            bits_from_nats(log_n), bits_from_nats(smi)};
}

EntropyDecomposition entropy_decomposition(const Distribution& prior, const Channel& channel,
                                           std::span<const FeatureConstraint> features) {
    return entropy_decomposition(prior, channel,
                                 feature_exponents(features, channel.instances(), channel.labels()));
}

EntropyDecomposition entropy_decomposition(const Distribution& prior, const Channel& channel,
                                           const SemanticChannel& sc, double s_abs) {
    Matrix log_w(sc.instances(), sc.label_count());
    for (std::size_t i = 0; i < sc.instances(); ++i)
        for (std::size_t j = 0; j < sc.label_count(); ++j)
            log_w(i, j) = sc(i, j) == 0.0 ? -kInf : s_abs * std::log(sc(i, j));
    return entropy_decomposition(prior, channel, log_w);
}

}  // namespace semrate
