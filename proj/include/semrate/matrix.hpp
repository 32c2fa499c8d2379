#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "semrate/errors.hpp"

namespace semrate {

// Dense row-major matrix of doubles. Just enough for finite probability
// tables; no linear algebra.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_)
            throw DimensionMismatch("matrix data size does not match rows*cols");
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        Matrix m;
        m.rows_ = rows.size();
        m.cols_ = rows.size() ? rows.begin()->size() : 0;
        m.data_.reserve(m.rows_ * m.cols_);
        for (const auto& r : rows) {
            if (r.size() != m.cols_)
                throw DimensionMismatch("ragged row in matrix literal");
            m.data_.insert(m.data_.end(), r.begin(), r.end());
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace semrate
