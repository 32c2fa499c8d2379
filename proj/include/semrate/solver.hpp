#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semrate/channel.hpp"
#include "semrate/distribution.hpp"
#include "semrate/kernel.hpp"

namespace semrate {

struct StepResult {
    Channel channel;                   // P(y_j|x_i) = P(y_j) K_ij / Z_i
    std::vector<double> log_partition; // ln Z_i per row
};

// One channel update at a fixed label marginal.
StepResult mmi_step(const ProbVector& label_marginal, const ConstraintKernel& kernel);

struct SolveOptions {
    double tol = 1e-8;           // L1 distance between successive marginals
    std::size_t max_iter = 10000;
    std::optional<ProbVector> initial_marginal;  // defaults to uniform 1/n
    bool record_trace = true;
};

struct TracePoint {
    double rate_bits;           // I(X;Y) of the iteration's channel
    double label_entropy_bits;  // H(Y) of the updated marginal
    double constraint;          // variant units (nats for rd/rtheta, bits for rg)
    std::vector<double> marginal;
};

struct SolverResult {
    Channel channel;
    ProbVector label_marginal;
    double rate_bits;    // direct mutual information of the converged channel
    double constraint;   // mean distortion / fuzzy entropy (nats) or G (bits)
    std::vector<double> log_partition;  // ln Z_i; robust at extreme s
    std::size_t iterations = 0;
    bool converged = false;  // false: max_iter hit, best-so-far returned
    std::vector<TracePoint> trace;
    Variant variant{};
    double s = 0.0;

    // Z_i = 1/lambda_i per row (may underflow to 0 where ln Z_i is very negative)
    std::vector<double> partition_values() const;
};

// Alternate mmi_step and the marginal update from a uniform (or supplied)
// start until the marginal stops moving.
SolverResult mmi_iterate(const Distribution& prior, const ConstraintKernel& kernel,
                         const SolveOptions& options = {});

struct RatePoint {
    double rate_bits;   // signed_s * mean(q) - sum_i P(x_i) ln Z_i, in bits
    double constraint;  // mean(q) in variant units
};

// Closed parametric rate at a converged solve. Agrees with the direct
// mutual information of the converged channel to 1e-9 bits.
RatePoint rate_point_parametric(const Distribution& prior, const ConstraintKernel& kernel,
                                const SolverResult& result);

// Rate via the label-side truth decomposition H(X_th) - H(X_th|Y), an
// independent route to the same number for rtheta kernels.
double rtheta_rate_semantic_bits(const Distribution& prior, const Channel& channel,
                                 const SemanticChannel& sc, double s_abs,
                                 const ProbVector& label_marginal);

using KernelFactory = std::function<ConstraintKernel(double s)>;

struct SweepPoint {
    double s = 0.0;
    double rate_bits = 0.0;
    double constraint = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::string error;  // nonempty when this point failed; sweep continues
};

struct SweepOptions {
    SolveOptions solve;
    bool warm_start = true;  // forces sequential execution
    unsigned jobs = 1;       // >1 runs cold-start points concurrently
};

std::vector<SweepPoint> sweep_curve(const Distribution& prior, const KernelFactory& kernel_for_s,
                                    std::vector<double> s_values, const SweepOptions& options = {});

// Invert the parametric family: bisect on s until the converged constraint
// hits the target within 1e-6 * max(1, |target|). The bracket endpoints must
// straddle the target; throws TargetOutOfRange otherwise.
SolverResult solve_for_target(const Distribution& prior, const KernelFactory& kernel_for_s,
                              double target, double s_lo, double s_hi,
                              const SolveOptions& options = {});

}  // namespace semrate
