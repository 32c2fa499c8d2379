#include "semrate/distribution.hpp"

#include <cmath>

namespace semrate {

namespace {

double checked_sum(const std::vector<double>& p, const char* what) {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) throw InvalidDistribution(std::string(what) + ": negative or NaN entry");
        sum += v;
    }
    return sum;
}

}  // namespace

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw InvalidDistribution("probability vector is empty");
    const double sum = checked_sum(p_, "probability vector");
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw InvalidDistribution("probability vector sums to " + std::to_string(sum));
    for (double& v : p_) v /= sum;  // exact renormalization
}

ProbVector ProbVector::normalized(std::vector<double> weights) {
    if (weights.empty()) throw InvalidDistribution("weight vector is empty");
    const double sum = checked_sum(weights, "weights");
    if (sum == 0.0) throw AllZeroWeights();
    ProbVector out;
    out.p_ = std::move(weights);
    for (double& v : out.p_) v /= sum;
    return out;
}

ProbVector ProbVector::uniform(std::size_t n) {
    if (n == 0) throw InvalidDistribution("uniform distribution over zero outcomes");
    ProbVector out;
    out.p_.assign(n, 1.0 / static_cast<double>(n));
    return out;
}

ProbVector normalize(std::span<const double> weights) {
    return ProbVector::normalized(std::vector<double>(weights.begin(), weights.end()));
}

Distribution::Distribution(Grid grid, ProbVector p) : grid_(std::move(grid)), p_(std::move(p)) {
    if (grid_.size() != p_.size())
        throw DimensionMismatch("distribution has " + std::to_string(p_.size()) +
                                " masses over a grid of " + std::to_string(grid_.size()));
}

JointDistribution::JointDistribution(Matrix p) : p_(std::move(p)) {
    if (p_.empty()) throw InvalidDistribution("joint table is empty");
    double sum = 0.0;
    for (double v : p_.data()) {
        if (!(v >= 0.0)) throw InvalidDistribution("joint table: negative or NaN entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > ProbVector::kSumTolerance)
        throw InvalidDistribution("joint table sums to " + std::to_string(sum));
    for (double& v : p_.data()) v /= sum;
}

std::vector<double> JointDistribution::instance_marginal() const {
    std::vector<double> out(p_.rows(), 0.0);
    for (std::size_t i = 0; i < p_.rows(); ++i)
        for (std::size_t j = 0; j < p_.cols(); ++j) out[i] += p_(i, j);
    return out;
}

std::vector<double> JointDistribution::label_marginal() const {
    std::vector<double> out(p_.cols(), 0.0);
    for (std::size_t i = 0; i < p_.rows(); ++i)
        for (std::size_t j = 0; j < p_.cols(); ++j) out[j] += p_(i, j);
    return out;
}

}  // namespace semrate
