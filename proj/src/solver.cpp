#include "semrate/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "semrate/bits.hpp"
#include "semrate/measures.hpp"

namespace semrate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// below this the shifted linear partition sum loses too much precision and
// the row is redone in the log domain
constexpr double kLinearFloor = 1e-280;

struct RawStep {
    Matrix channel;
    std::vector<double> log_partition;
};

RawStep raw_step(std::span<const double> marginal, const ConstraintKernel& kernel) {
    const std::size_t m = kernel.instances();
    const std::size_t n = kernel.labels();
    if (marginal.size() != n) throw DimensionMismatch("marginal size does not match kernel labels");

    Matrix ch(m, n);
    std::vector<double> log_z(m);
    std::vector<double> log_marginal;  // built on first log-domain fallback

    const Matrix& shifted = kernel.shifted_kernel();
    const Matrix& log_k = kernel.log_kernel();

    for (std::size_t i = 0; i < m; ++i) {
        double z = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double w = marginal[j] * shifted(i, j);
            ch(i, j) = w;
            z += w;
        }
        if (z >= kLinearFloor) {
            for (std::size_t j = 0; j < n; ++j) ch(i, j) /= z;
            log_z[i] = kernel.row_shift(i) + std::log(z);
            continue;
        }

        // log-domain fallback: the marginal's support misses the row max
        if (log_marginal.empty()) {
            log_marginal.resize(n);
            for (std::size_t j = 0; j < n; ++j)
                log_marginal[j] = marginal[j] > 0.0 ? std::log(marginal[j]) : -kInf;
        }
        double rowmax = -kInf;
        for (std::size_t j = 0; j < n; ++j)
            rowmax = std::max(rowmax, log_marginal[j] + log_k(i, j));
        if (rowmax == -kInf) throw ZeroPartition(i);
        double zs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double t = log_marginal[j] + log_k(i, j);
            const double w = t == -kInf ? 0.0 : std::exp(t - rowmax);
            ch(i, j) = w;
            zs += w;
        }
        for (std::size_t j = 0; j < n; ++j) ch(i, j) /= zs;
        log_z[i] = rowmax + std::log(zs);
    }
    return {std::move(ch), std::move(log_z)};
}

// sum_ij P(x_i) ch_ij q_ij with zero-mass cells skipped (0 * inf := 0)
double mean_quantity_nats(const Distribution& prior, const Matrix& channel,
                          const ConstraintKernel& kernel) {
    double acc = 0.0;
    for (std::size_t i = 0; i < channel.rows(); ++i) {
        const double px = prior[i];
        if (px == 0.0) continue;
        for (std::size_t j = 0; j < channel.cols(); ++j) {
            const double c = channel(i, j);
            if (c == 0.0) continue;
            acc += px * c * kernel.quantity()(i, j);
        }
    }
    return acc;
}

double mi_nats(const Distribution& prior, const Matrix& channel,
               std::span<const double> marginal) {
    double acc = 0.0;
    for (std::size_t i = 0; i < channel.rows(); ++i) {
        const double px = prior[i];
        if (px == 0.0) continue;
        for (std::size_t j = 0; j < channel.cols(); ++j) {
            const double c = channel(i, j);
            if (c == 0.0) continue;
            acc += px * c * std::log(c / marginal[j]);
        }
    }
    if (acc < 0.0 && acc > -1e-9) acc = 0.0;  // summation noise at rate zero
    return acc;
}

double entropy_bits(std::span<const double> p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

}  // namespace

std::vector<double> SolverResult::partition_values() const {
    std::vector<double> z(log_partition.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::exp(log_partition[i]);
    return z;
}

StepResult mmi_step(const ProbVector& label_marginal, const ConstraintKernel& kernel) {
    auto raw = raw_step(label_marginal.values(), kernel);
    return {Channel(std::move(raw.channel)), std::move(raw.log_partition)};
}

SolverResult mmi_iterate(const Distribution& prior, const ConstraintKernel& kernel,
                         const SolveOptions& options) {
    const std::size_t m = kernel.instances();
    const std::size_t n = kernel.labels();
    if (prior.size() != m) throw DimensionMismatch("prior grid does not match kernel rows");
    if (!(options.tol > 0.0)) throw BadParams("tolerance must be positive");
    if (options.max_iter == 0) throw BadParams("max_iter must be at least 1");

    std::vector<double> marginal =
        options.initial_marginal ? std::vector<double>(options.initial_marginal->values().begin(),
                                                       options.initial_marginal->values().end())
                                 : std::vector<double>(n, 1.0 / static_cast<double>(n));
    if (marginal.size() != n) throw DimensionMismatch("initial marginal size mismatch");

    SolverResult out;
    out.variant = kernel.variant();
    out.s = kernel.s();

    RawStep step;
    std::vector<double> updated(n);
    bool converged = false;
    std::size_t it = 0;
    double rate_nats = 0.0;
    double mean_q = 0.0;

    while (it < options.max_iter) {
        ++it;
        step = raw_step(marginal, kernel);

        std::fill(updated.begin(), updated.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double px = prior[i];
            for (std::size_t j = 0; j < n; ++j) updated[j] += px * step.channel(i, j);
        }

        rate_nats = mi_nats(prior, step.channel, updated);
        mean_q = mean_quantity_nats(prior, step.channel, kernel);
        if (options.record_trace)
            out.trace.push_back({bits_from_nats(rate_nats), entropy_bits(updated),
                                 kernel.constraint_from_mean(mean_q), updated});

        double l1 = 0.0;
        for (std::size_t j = 0; j < n; ++j) l1 += std::abs(updated[j] - marginal[j]);
        marginal = updated;
        if (l1 < options.tol) {
            converged = true;
            break;
        }
    }

    out.channel = Channel(std::move(step.channel));
    out.label_marginal = ProbVector::normalized(std::move(marginal));
    out.rate_bits = bits_from_nats(rate_nats);
    out.constraint = kernel.constraint_from_mean(mean_q);
    out.log_partition = std::move(step.log_partition);
    out.iterations = it;
    out.converged = converged;
    return out;
}

RatePoint rate_point_parametric(const Distribution& prior, const ConstraintKernel& kernel,
                                const SolverResult& result) {
    const double mean_q = mean_quantity_nats(prior, result.channel.matrix(), kernel);
    double log_z_term = 0.0;
    for (std::size_t i = 0; i < prior.size(); ++i)
        log_z_term += prior[i] * result.log_partition[i];
    const double rate_nats = kernel.signed_s() * mean_q - log_z_term;
    return {bits_from_nats(rate_nats), kernel.constraint_from_mean(mean_q)};
}

double rtheta_rate_semantic_bits(const Distribution& prior, const Channel& channel,
                                 const SemanticChannel& sc, double s_abs,
                                 const ProbVector& label_marginal) {
    const std::size_t m = sc.instances();
    const std::size_t n = sc.label_count();
    if (prior.size() != m || channel.instances() != m || channel.labels() != n ||
        label_marginal.size() != n)
        throw DimensionMismatch("rtheta_rate_semantic_bits: shape mismatch");

    // T(x_i) = sum_j P(y_j) T(x_i|y_j)^|s|, using the truth table symmetry
    double h_x_theta = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double t_x = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            t_x += label_marginal[j] * std::pow(sc(i, j), s_abs);
        if (prior[i] == 0.0) continue;
        if (!(t_x > 0.0)) throw ZeroPartition(i);
        h_x_theta -= prior[i] * std::log(t_x);
    }

    double h_x_theta_given_y = 0.0;  // -sum_ij P(x,y) |s| ln T
    for (std::size_t i = 0; i < m; ++i) {
        const double px = prior[i];
        if (px == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const double joint = px * channel(i, j);
            if (joint == 0.0) continue;
            h_x_theta_given_y -= joint * s_abs * std::log(sc(i, j));
        }
    }
    return bits_from_nats(h_x_theta - h_x_theta_given_y);
}

std::vector<SweepPoint> sweep_curve(const Distribution& prior, const KernelFactory& kernel_for_s,
                                    std::vector<double> s_values, const SweepOptions& options) {
    std::vector<SweepPoint> points(s_values.size());

    // warm starts are pulled slightly toward uniform: a label absorbed to
    // ~zero at the previous point could otherwise fake convergence at the
    // next one (its regrowth moves the marginal less than tol per step)
    auto soften = [](const ProbVector& warm) {
        constexpr double kMix = 1e-3;
        std::vector<double> mixed(warm.size());
        const double u = 1.0 / static_cast<double>(warm.size());
        for (std::size_t j = 0; j < warm.size(); ++j)
            mixed[j] = (1.0 - kMix) * warm[j] + kMix * u;
        return ProbVector::normalized(std::move(mixed));
    };

    auto run_point = [&](std::size_t idx, const std::optional<ProbVector>& warm) {
        SweepPoint& p = points[idx];
        p.s = s_values[idx];
        try {
            const ConstraintKernel kernel = kernel_for_s(s_values[idx]);
            SolveOptions solve = options.solve;
            solve.record_trace = false;
            if (warm && warm->size() == kernel.labels()) solve.initial_marginal = soften(*warm);
            const SolverResult r = mmi_iterate(prior, kernel, solve);
            p.rate_bits = r.rate_bits;
            p.constraint = r.constraint;
            p.iterations = r.iterations;
            p.converged = r.converged;
            return std::optional<ProbVector>(r.label_marginal);
        } catch (const Error& e) {
            p.error = e.what();
            p.converged = false;
            return std::optional<ProbVector>();
        }
    };

    if (options.warm_start || options.jobs <= 1) {
        // warm starts chain point to point, so this path is sequential
        std::optional<ProbVector> warm;
        for (std::size_t idx = 0; idx < s_values.size(); ++idx) {
            auto next = run_point(idx, options.warm_start ? warm : std::nullopt);
            if (options.warm_start && next) warm = std::move(next);
        }
        return points;
    }

    const unsigned jobs = std::min<unsigned>(options.jobs, std::max<std::size_t>(1, s_values.size()));
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
            for (std::size_t idx = w; idx < s_values.size(); idx += jobs)
                run_point(idx, std::nullopt);
        });
    for (auto& t : workers) t.join();
    return points;
}

SolverResult solve_for_target(const Distribution& prior, const KernelFactory& kernel_for_s,
                              double target, double s_lo, double s_hi,
                              const SolveOptions& options) {
    if (!(s_hi > s_lo)) throw BadParams("solve_for_target: empty bracket");

    auto solve_at = [&](double s) { return mmi_iterate(prior, kernel_for_s(s), options); };

    SolverResult lo = solve_at(s_lo);
    SolverResult hi = solve_at(s_hi);
    const double tol = 1e-6 * std::max(1.0, std::abs(target));

    if (std::abs(lo.constraint - target) <= tol) return lo;
    if (std::abs(hi.constraint - target) <= tol) return hi;

    const bool increasing = hi.constraint > lo.constraint;
    const double cmin = std::min(lo.constraint, hi.constraint);
    const double cmax = std::max(lo.constraint, hi.constraint);
    if (target < cmin - tol || target > cmax + tol)
        throw TargetOutOfRange("target " + std::to_string(target) + " outside achievable range [" +
                               std::to_string(cmin) + ", " + std::to_string(cmax) + "]");

    double a = s_lo, b = s_hi;
    SolverResult best = std::abs(lo.constraint - target) < std::abs(hi.constraint - target)
                            ? std::move(lo)
                            : std::move(hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        SolverResult r = solve_at(mid);
        if (std::abs(r.constraint - target) < std::abs(best.constraint - target)) best = r;
        if (std::abs(r.constraint - target) <= tol) return best;
        if ((r.constraint < target) == increasing)
            a = mid;
        else
            b = mid;
        if (b - a < 1e-14 * std::max(1.0, std::abs(a))) break;
    }
    if (std::abs(best.constraint - target) <= tol) return best;
    throw TargetOutOfRange("bisection exhausted at |constraint - target| = " +
                           std::to_string(std::abs(best.constraint - target)));
}

}  // namespace semrate
