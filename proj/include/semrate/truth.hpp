#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "semrate/distribution.hpp"
#include "semrate/grid.hpp"
#include "semrate/matrix.hpp"

namespace semrate {

// Parametric truth-function families.

// 1 / (1 + exp(-steepness * (x - center)))
struct LogisticRise {
    double center;
    double steepness;
};

// Complement of LogisticRise; evaluates as 1 - rise so the pair sums to 1
// exactly at every grid point.
struct LogisticFall {
    double center;
    double steepness;
};

// 1 - (1 - exp(-(x-mu)^2 / (2 sigma2)))^power : a rounded bump that
// plateaus near mu and decays like a trapezoid with soft corners.
struct BumpComplementPow {
    double mu;
    double sigma2;
    int power;
};

// Explicit per-grid-point values.
struct TruthTable {
    std::vector<double> values;
};

using TruthSpec = std::variant<LogisticRise, LogisticFall, BumpComplementPow, TruthTable>;

// Evaluate a spec on a grid. Values are always in [0,1]. Throws BadParams
// for sigma2 <= 0, power < 1, steepness < 0, or a table of the wrong size.
std::vector<double> eval_spec(const TruthSpec& spec, const Grid& grid);

// A group of truth functions T(y_j | x) over a common grid: the semantic
// channel. Columns are labels. Entries must lie in [0,1]; a column that is
// identically zero is rejected.
class SemanticChannel {
public:
    SemanticChannel(Grid grid, LabelSet labels, Matrix truth);

    static SemanticChannel from_specs(Grid grid, LabelSet labels,
                                      const std::vector<TruthSpec>& specs);

    const Grid& grid() const { return grid_; }
    const LabelSet& labels() const { return labels_; }
    const Matrix& truth() const { return truth_; }
    std::size_t instances() const { return truth_.rows(); }
    std::size_t label_count() const { return truth_.cols(); }
    double operator()(std::size_t i, std::size_t j) const { return truth_(i, j); }

    std::vector<double> truth_column(std::size_t j) const;

    // T(theta_j) = sum_i P(x_i) T(y_j|x_i) for each label.
    std::vector<double> logical_probabilities(const Distribution& prior) const;

private:
    Grid grid_;
    LabelSet labels_;
    Matrix truth_;
};

// Distortion table d(x_i, y_j) in nats; entries >= 0, +infinity permitted.
class DistortionMatrix {
public:
    explicit DistortionMatrix(Matrix d);

    std::size_t instances() const { return d_.rows(); }
    std::size_t labels() const { return d_.cols(); }
    double operator()(std::size_t i, std::size_t j) const { return d_(i, j); }
    const Matrix& table() const { return d_; }

private:
    Matrix d_;
};

// d = ln(1/T) elementwise; T = 0 maps to +infinity.
DistortionMatrix truth_to_distortion(const SemanticChannel& sc);
// T = exp(-d) elementwise; mutual inverse of the above on finite entries.
SemanticChannel distortion_to_truth(const DistortionMatrix& d, Grid grid, LabelSet labels);

enum class TruthNormalization {
    global,     // divide all ratios by the single max over (x, y); symmetric
    per_label,  // divide each column by its own max
};

// Optimized truth functions from a joint sample:
// T*(y_j|x_i) = [P(x_i,y_j) / (P(x_i)P(y_j))] / max(ratio).
// Throws ZeroMarginal if any P(x_i) or P(y_j) is zero.
SemanticChannel learn_truth_empirical(const JointDistribution& joint, Grid grid, LabelSet labels,
                                      TruthNormalization norm = TruthNormalization::global);

enum class TruthFamily { logistic_rise, logistic_fall, bump_complement_pow };

struct ParamRange {
    double lo;
    double hi;
};

struct SearchConfig {
    std::vector<ParamRange> ranges;  // one per free parameter of the family
    int levels = 3;                  // nested refinement passes
    int points_per_axis = 32;
    int bump_power = 2;              // fixed power when fitting the bump family
};

struct TruthFit {
    TruthSpec spec;
    double objective_bits;  // sum_i P(x_i|y) log2[T(x_i)/T(theta)] at the optimum
    bool at_bound;          // some fitted parameter sits on a search-range edge
};

// Fit a parametric truth function to a sampling distribution by maximizing
// the generalized KL objective over a deterministic coarse-to-fine grid
// search. Ties break toward the lexicographically smaller parameter tuple.
TruthFit learn_truth_parametric(const ProbVector& sampling, const Distribution& prior,
                                TruthFamily family, const SearchConfig& cfg);

}  // namespace semrate
