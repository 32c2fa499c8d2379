#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "semrate/errors.hpp"

namespace semrate {

// An information quantity in bits (log base 2). May hold an explicit
// +/- infinity where an operation documents it; never NaN.
class Bits {
public:
    explicit Bits(double value) : v_(value) {
        if (std::isnan(v_)) throw Error("Bits: NaN is not a representable quantity");
    }

    static Bits pos_infinity() { return Bits(std::numeric_limits<double>::infinity()); }
    static Bits neg_infinity() { return Bits(-std::numeric_limits<double>::infinity()); }

    double value() const { return v_; }
    bool is_finite() const { return std::isfinite(v_); }

    friend auto operator<=>(const Bits&, const Bits&) = default;

private:
    double v_;
};

inline constexpr double kLn2 = 0.6931471805599453094172321214581766;

inline double bits_from_nats(double nats) { return nats / kLn2; }
inline double nats_from_bits(double bits) { return bits * kLn2; }

}  // namespace semrate
