#pragma once

#include <cstddef>
#include <string>

#include "semrate/distribution.hpp"
#include "semrate/matrix.hpp"
#include "semrate/truth.hpp"

namespace semrate {

enum class Variant { rd, rtheta, rg };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

// The single nonnegative matrix the MMI iteration consumes. Unifies the
// three constraint regimes through K_ij = exp(signed_s * q_ij):
//   rd:     q = d_ij (nats),            signed_s = s <= 0
//   rtheta: q = -ln T(y_j|x_i),         signed_s = -|s|
//   rg:     q = ln[T(y_j|x_i)/T(y_j)],  signed_s = s >= 0
class ConstraintKernel {
public:
    Variant variant() const { return variant_; }
    // The user-facing parameter: s for rd/rg, |s| for rtheta.
    double s() const { return s_; }
    // The exponent sign actually applied to the quantity matrix.
    double signed_s() const { return signed_s_; }

    std::size_t instances() const { return log_kernel_.rows(); }
    std::size_t labels() const { return log_kernel_.cols(); }

    // ln K_ij; -infinity marks excluded (x, y) pairs.
    const Matrix& log_kernel() const { return log_kernel_; }
    // The constrained quantity q_ij; +/-infinity only where K_ij = 0.
    const Matrix& quantity() const { return quantity_; }
    // exp(ln K_ij - rowmax_i): each row's max entry is 1.
    const Matrix& shifted_kernel() const { return shifted_kernel_; }
    double row_shift(std::size_t i) const { return row_shift_[i]; }

    // Mean of q over a joint weight table (zero-mass cells skipped), in the
    // variant's reporting unit: nats for rd/rtheta, bits for rg.
    double constraint_from_mean(double mean_q_nats) const;

    friend ConstraintKernel build_rd_kernel(const DistortionMatrix& d, double s);
    friend ConstraintKernel build_rtheta_kernel(const SemanticChannel& sc, double s_abs);
    friend ConstraintKernel build_rg_kernel(const SemanticChannel& sc, const Distribution& prior,
                                            double s);

private:
    ConstraintKernel() = default;
    void finish();  // derive shifted kernel, check AllZeroRow

    Variant variant_{};
    double s_ = 0.0;
    double signed_s_ = 0.0;
    Matrix log_kernel_;
    Matrix quantity_;
    Matrix shifted_kernel_;
    std::vector<double> row_shift_;
};

// K_ij = exp(s d_ij); s <= 0. Infinite distortion maps to K = 0 exactly.
ConstraintKernel build_rd_kernel(const DistortionMatrix& d, double s);

// K_ij = T(y_j|x_i)^|s|.
ConstraintKernel build_rtheta_kernel(const SemanticChannel& sc, double s_abs);

// K_ij = [T(y_j|x_i)/T(theta_j)]^s with T(theta_j) computed once from the
// fixed prior; s >= 0.
ConstraintKernel build_rg_kernel(const SemanticChannel& sc, const Distribution& prior, double s);

}  // namespace semrate
