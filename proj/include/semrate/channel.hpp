#pragma once

#include <cstddef>
#include <span>

#include "semrate/matrix.hpp"

namespace semrate {

// Shannon channel: row-stochastic matrix P(y_j | x_i). Each row must sum
// to 1 within 1e-12 at construction and is renormalized exactly.
class Channel {
public:
    // 1x1 identity; the placeholder for result structs
    Channel() : rows_(1, 1, {1.0}) {}
    explicit Channel(Matrix rows);

    static Channel identity(std::size_t m);
    // Every row equal to the given probability vector (x independent of y).
    static Channel constant_rows(std::size_t m, std::span<const double> row);

    std::size_t instances() const { return rows_.rows(); }
    std::size_t labels() const { return rows_.cols(); }
    double operator()(std::size_t i, std::size_t j) const { return rows_(i, j); }
    std::span<const double> row(std::size_t i) const { return rows_.row(i); }
    const Matrix& matrix() const { return rows_; }

    bool operator==(const Channel&) const = default;

private:
    Matrix rows_;
};

}  // namespace semrate
