#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "semrate/grid.hpp"
#include "semrate/matrix.hpp"

namespace semrate {

// Nonnegative vector summing to 1. Construction checks the sum is within
// 1e-12 of 1, then renormalizes exactly.
class ProbVector {
public:
    // point mass on a single outcome; the placeholder for result structs
    ProbVector() : p_{1.0} {}
    explicit ProbVector(std::vector<double> p);

    // Divide nonnegative weights by their sum. Throws AllZeroWeights.
    static ProbVector normalized(std::vector<double> weights);
    static ProbVector uniform(std::size_t n);

    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    std::span<const double> values() const { return p_; }
    const std::vector<double>& vec() const { return p_; }

    bool operator==(const ProbVector&) const = default;

    static constexpr double kSumTolerance = 1e-12;

private:
    std::vector<double> p_;
};

ProbVector normalize(std::span<const double> weights);

// Probability distribution over a Grid.
class Distribution {
public:
    Distribution(Grid grid, ProbVector p);
    Distribution(Grid grid, std::vector<double> p) : Distribution(std::move(grid), ProbVector(std::move(p))) {}

    const Grid& grid() const { return grid_; }
    const ProbVector& prob() const { return p_; }
    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    std::span<const double> values() const { return p_.values(); }

    bool operator==(const Distribution&) const = default;

private:
    Grid grid_;
    ProbVector p_;
};

// Joint table P(x_i, y_j): nonnegative, total mass 1 within 1e-12,
// renormalized exactly.
class JointDistribution {
public:
    explicit JointDistribution(Matrix p);

    std::size_t instances() const { return p_.rows(); }
    std::size_t labels() const { return p_.cols(); }
    double operator()(std::size_t i, std::size_t j) const { return p_(i, j); }
    const Matrix& table() const { return p_; }

    std::vector<double> instance_marginal() const;  // P(x)
    std::vector<double> label_marginal() const;     // P(y)

private:
    Matrix p_;
};

}  // namespace semrate
