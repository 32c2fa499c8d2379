#include "semrate/kernel.hpp"

#include <cmath>
#include <limits>

#include "semrate/bits.hpp"

namespace semrate {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::rd: return "rd";
        case Variant::rtheta: return "rtheta";
        case Variant::rg: return "rg";
    }
    return "?";
}

Variant variant_from_string(const std::string& s) {
    if (s == "rd") return Variant::rd;
    if (s == "rtheta") return Variant::rtheta;
    if (s == "rg") return Variant::rg;
    throw ConfigError("unknown variant: " + s + " (expected rd, rtheta, or rg)");
}

void ConstraintKernel::finish() {
    const std::size_t m = log_kernel_.rows();
    const std::size_t n = log_kernel_.cols();
    shifted_kernel_ = Matrix(m, n);
    row_shift_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double rowmax = -kInf;
        for (std::size_t j = 0; j < n; ++j) rowmax = std::max(rowmax, log_kernel_(i, j));
        if (rowmax == -kInf) throw AllZeroRow(i);
        row_shift_[i] = rowmax;
        for (std::size_t j = 0; j < n; ++j)
            shifted_kernel_(i, j) = std::exp(log_kernel_(i, j) - rowmax);
    }
}

double ConstraintKernel::constraint_from_mean(double mean_q_nats) const {
    return variant_ == Variant::rg ? bits_from_nats(mean_q_nats) : mean_q_nats;
}

ConstraintKernel build_rd_kernel(const DistortionMatrix& d, double s) {
    if (!(s <= 0.0)) throw BadParams("rd kernel requires s <= 0");
    ConstraintKernel k;
    k.variant_ = Variant::rd;
    k.s_ = s;
    k.signed_s_ = s;
    k.quantity_ = d.table();
    k.log_kernel_ = Matrix(d.instances(), d.labels());
    for (std::size_t i = 0; i < d.instances(); ++i)
        for (std::size_t j = 0; j < d.labels(); ++j)
            // infinite distortion is an exact exclusion at every s
            k.log_kernel_(i, j) = std::isinf(d(i, j)) ? -kInf : s * d(i, j);
    k.finish();
    return k;
}

ConstraintKernel build_rtheta_kernel(const SemanticChannel& sc, double s_abs) {
    if (!(s_abs >= 0.0)) throw BadParams("rtheta kernel requires |s| >= 0");
    ConstraintKernel k;
    k.variant_ = Variant::rtheta;
    k.s_ = s_abs;
    k.signed_s_ = -s_abs;
    k.quantity_ = Matrix(sc.instances(), sc.label_count());
    k.log_kernel_ = Matrix(sc.instances(), sc.label_count());
    for (std::size_t i = 0; i < sc.instances(); ++i)
        for (std::size_t j = 0; j < sc.label_count(); ++j) {
            const double t = sc(i, j);
            if (t == 0.0) {
                k.quantity_(i, j) = kInf;
                k.log_kernel_(i, j) = -kInf;
            } else {
                const double log_t = std::log(t);
                k.quantity_(i, j) = -log_t;
                k.log_kernel_(i, j) = s_abs * log_t;
            }
        }
    k.finish();
    return k;
}

ConstraintKernel build_rg_kernel(const SemanticChannel& sc, const Distribution& prior, double s) {
    if (!(s >= 0.0)) throw BadParams("rg kernel requires s >= 0");
    const auto t_theta = sc.logical_probabilities(prior);
    for (std::size_t j = 0; j < t_theta.size(); ++j)
        if (!(t_theta[j] > 0.0)) throw ZeroLogicalProbability();

    ConstraintKernel k;
    k.variant_ = Variant::rg;
    k.s_ = s;
    k.signed_s_ = s;
    k.quantity_ = Matrix(sc.instances(), sc.label_count());
    k.log_kernel_ = Matrix(sc.instances(), sc.label_count());
    for (std::size_t i = 0; i < sc.instances(); ++i)
        for (std::size_t j = 0; j < sc.label_count(); ++j) {
            const double t = sc(i, j);
            if (t == 0.0) {
                k.quantity_(i, j) = -kInf;  // information of an impossible label
                k.log_kernel_(i, j) = -kInf;
            } else {
                const double info = std::log(t) - std::log(t_theta[j]);
                k.quantity_(i, j) = info;
                k.log_kernel_(i, j) = s * info;
            }
        }
    k.finish();
    return k;
}

}  // namespace semrate
