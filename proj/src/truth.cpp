#include "semrate/truth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "semrate/bits.hpp"

namespace semrate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logistic_rise_at(double x, double center, double steepness) {
    return 1.0 / (1.0 + std::exp(-steepness * (x - center)));
}

double int_pow(double base, int power) {
    double acc = 1.0;
    for (int k = 0; k < power; ++k) acc *= base;
    return acc;
}

double bump_at(double x, double mu, double sigma2, int power) {
    const double z = (x - mu) * (x - mu) / (2.0 * sigma2);
    return 1.0 - int_pow(1.0 - std::exp(-z), power);
}

}  // namespace

std::vector<double> eval_spec(const TruthSpec& spec, const Grid& grid) {
    std::vector<double> out(grid.size());
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, LogisticRise>) {
                if (!(s.steepness >= 0.0)) throw BadParams("logistic steepness must be >= 0");
                for (std::size_t i = 0; i < out.size(); ++i)
                    out[i] = logistic_rise_at(grid[i], s.center, s.steepness);
            } else if constexpr (std::is_same_v<T, LogisticFall>) {
                if (!(s.steepness >= 0.0)) throw BadParams("logistic steepness must be >= 0");
                for (std::size_t i = 0; i < out.size(); ++i)
                    out[i] = 1.0 - logistic_rise_at(grid[i], s.center, s.steepness);
            } else if constexpr (std::is_same_v<T, BumpComplementPow>) {
                if (!(s.sigma2 > 0.0)) throw BadParams("bump sigma2 must be positive");
                if (s.power < 1) throw BadParams("bump power must be a positive integer");
                for (std::size_t i = 0; i < out.size(); ++i)
                    out[i] = bump_at(grid[i], s.mu, s.sigma2, s.power);
            } else {  // TruthTable
                if (s.values.size() != grid.size())
                    throw BadParams("truth table size does not match grid");
                for (std::size_t i = 0; i < out.size(); ++i) {
                    if (!(s.values[i] >= 0.0) || s.values[i] > 1.0)
                        throw BadParams("truth table value outside [0,1]");
                    out[i] = s.values[i];
                }
            }
        },
        spec);
    return out;
}

SemanticChannel::SemanticChannel(Grid grid, LabelSet labels, Matrix truth)
    : grid_(std::move(grid)), labels_(std::move(labels)), truth_(std::move(truth)) {
    if (truth_.rows() != grid_.size() || truth_.cols() != labels_.size())
        throw DimensionMismatch("semantic channel shape does not match grid/labels");
    for (std::size_t j = 0; j < truth_.cols(); ++j) {
        double colmax = 0.0;
        for (std::size_t i = 0; i < truth_.rows(); ++i) {
            double& v = truth_(i, j);
            if (!(v >= 0.0) || v > 1.0 + 1e-12)
                throw BadParams("truth value outside [0,1] for label " + labels_[j]);
            v = std::min(v, 1.0);
            colmax = std::max(colmax, v);
        }
        if (colmax == 0.0)
            throw BadParams("truth function for label " + labels_[j] + " is identically zero");
    }
}

SemanticChannel SemanticChannel::from_specs(Grid grid, LabelSet labels,
                                            const std::vector<TruthSpec>& specs) {
    if (specs.size() != labels.size())
        throw DimensionMismatch("one truth spec required per label");
    Matrix truth(grid.size(), labels.size());
    for (std::size_t j = 0; j < specs.size(); ++j) {
        const auto col = eval_spec(specs[j], grid);
        for (std::size_t i = 0; i < col.size(); ++i) truth(i, j) = col[i];
    }
    return SemanticChannel(std::move(grid), std::move(labels), std::move(truth));
}

std::vector<double> SemanticChannel::truth_column(std::size_t j) const {
    std::vector<double> col(truth_.rows());
    for (std::size_t i = 0; i < truth_.rows(); ++i) col[i] = truth_(i, j);
    return col;
}

std::vector<double> SemanticChannel::logical_probabilities(const Distribution& prior) const {
    if (prior.size() != truth_.rows())
        throw DimensionMismatch("prior grid does not match semantic channel");
    std::vector<double> t_theta(truth_.cols(), 0.0);
    for (std::size_t i = 0; i < truth_.rows(); ++i)
        for (std::size_t j = 0; j < truth_.cols(); ++j) t_theta[j] += prior[i] * truth_(i, j);
    return t_theta;
}

DistortionMatrix::DistortionMatrix(Matrix d) : d_(std::move(d)) {
    if (d_.empty()) throw BadParams("distortion matrix is empty");
    for (double v : d_.data())
        if (std::isnan(v) || v < 0.0) throw BadParams("distortion entries must be >= 0");
}

DistortionMatrix truth_to_distortion(const SemanticChannel& sc) {
    Matrix d(sc.instances(), sc.label_count());
    for (std::size_t i = 0; i < sc.instances(); ++i)
        for (std::size_t j = 0; j < sc.label_count(); ++j)
            d(i, j) = sc(i, j) == 0.0 ? kInf : -std::log(sc(i, j));
    return DistortionMatrix(std::move(d));
}

SemanticChannel distortion_to_truth(const DistortionMatrix& d, Grid grid, LabelSet labels) {
    Matrix truth(d.instances(), d.labels());
    for (std::size_t i = 0; i < d.instances(); ++i)
        for (std::size_t j = 0; j < d.labels(); ++j)
            truth(i, j) = std::isinf(d(i, j)) ? 0.0 : std::exp(-d(i, j));
    return SemanticChannel(std::move(grid), std::move(labels), std::move(truth));
}

SemanticChannel learn_truth_empirical(const JointDistribution& joint, Grid grid, LabelSet labels,
                                      TruthNormalization norm) {
    const std::size_t m = joint.instances();
    const std::size_t n = joint.labels();
    const auto px = joint.instance_marginal();
    const auto py = joint.label_marginal();
    for (std::size_t i = 0; i < m; ++i)
        if (px[i] == 0.0) throw ZeroMarginal("P(x) vanishes at index " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j)
        if (py[j] == 0.0) throw ZeroMarginal("P(y) vanishes for label " + labels[j]);

    Matrix ratio(m, n);
    double global_max = 0.0;
    std::vector<double> col_max(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double r = joint(i, j) / (px[i] * py[j]);
            ratio(i, j) = r;
            global_max = std::max(global_max, r);
            col_max[j] = std::max(col_max[j], r);
        }

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            ratio(i, j) /= norm == TruthNormalization::global ? global_max : col_max[j];
    return SemanticChannel(std::move(grid), std::move(labels), std::move(ratio));
}

namespace {

TruthSpec make_spec(TruthFamily family, double p0, double p1, int bump_power) {
    switch (family) {
        case TruthFamily::logistic_rise: return LogisticRise{p0, p1};
        case TruthFamily::logistic_fall: return LogisticFall{p0, p1};
        case TruthFamily::bump_complement_pow: return BumpComplementPow{p0, p1, bump_power};
    }
    throw BadParams("unknown truth family");
}

// Generalized-KL fit objective in nats: sum_i s_i ln[T(x_i)/T(theta)].
double fit_objective_nats(const ProbVector& sampling, const Distribution& prior,
                          const std::vector<double>& truth) {
    double t_theta = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) t_theta += prior[i] * truth[i];
    if (!(t_theta > 0.0)) return -kInf;
    double acc = 0.0;
    for (std::size_t i = 0; i < sampling.size(); ++i) {
        if (sampling[i] == 0.0) continue;
        if (truth[i] == 0.0) return -kInf;
        acc += sampling[i] * std::log(truth[i] / t_theta);
    }
    return acc;
}

}  // namespace

TruthFit learn_truth_parametric(const ProbVector& sampling, const Distribution& prior,
                                TruthFamily family, const SearchConfig& cfg) {
    if (sampling.size() != prior.size())
        throw DimensionMismatch("sampling distribution does not match prior grid");
    if (cfg.ranges.size() != 2)
        throw BadParams("this family takes exactly two search ranges");
    if (cfg.points_per_axis < 2 || cfg.levels < 1) throw BadParams("degenerate search config");
    for (const auto& r : cfg.ranges)
        if (!(r.hi > r.lo)) throw BadParams("empty search range");

    const int pts = cfg.points_per_axis;
    double lo0 = cfg.ranges[0].lo, hi0 = cfg.ranges[0].hi;
    double lo1 = cfg.ranges[1].lo, hi1 = cfg.ranges[1].hi;

    double best0 = lo0, best1 = lo1;
    double best_obj = -kInf;
    double step0 = 0.0, step1 = 0.0;

    for (int level = 0; level < cfg.levels; ++level) {
        step0 = (hi0 - lo0) / (pts - 1);
        step1 = (hi1 - lo1) / (pts - 1);
        for (int a = 0; a < pts; ++a) {
            // exact endpoints so a pegged parameter lands on the bound itself
            const double p0 = a == pts - 1 ? hi0 : lo0 + a * step0;
            for (int b = 0; b < pts; ++b) {
                const double p1 = b == pts - 1 ? hi1 : lo1 + b * step1;
                const auto truth = eval_spec(make_spec(family, p0, p1, cfg.bump_power),
                                             prior.grid());
                const double obj = fit_objective_nats(sampling, prior, truth);
                // strict improvement only: ties keep the smaller tuple
                if (obj > best_obj) {
                    best_obj = obj;
                    best0 = p0;
                    best1 = p1;
                }
            }
        }
        if (best_obj == -kInf) throw DegenerateSample();
        // refine around the incumbent, clamped to the original ranges
        lo0 = std::max(cfg.ranges[0].lo, best0 - step0);
        hi0 = std::min(cfg.ranges[0].hi, best0 + step0);
        lo1 = std::max(cfg.ranges[1].lo, best1 - step1);
        hi1 = std::min(cfg.ranges[1].hi, best1 + step1);
    }

    const bool at_bound = best0 == cfg.ranges[0].lo || best0 == cfg.ranges[0].hi ||
                          best1 == cfg.ranges[1].lo || best1 == cfg.ranges[1].hi;
    return {make_spec(family, best0, best1, cfg.bump_power), bits_from_nats(best_obj), at_bound};
}

}  // namespace semrate
