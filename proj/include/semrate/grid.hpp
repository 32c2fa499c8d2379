#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "semrate/errors.hpp"

namespace semrate {

// Finite instance universe: an ordered list of real-valued points.
class Grid {
public:
    explicit Grid(std::vector<double> points);

    // Evenly spaced points min, min+step, ..., up to and including max
    // (within half a step of it).
    static Grid regular(double min, double max, double step = 1.0);

    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    std::span<const double> points() const { return points_; }

    bool operator==(const Grid&) const = default;

private:
    std::vector<double> points_;  // strictly increasing, size >= 1
};

// Ordered set of unique label names.
class LabelSet {
public:
    explicit LabelSet(std::vector<std::string> names);

    // y1, y2, ..., yn
    static LabelSet numbered(std::size_t n, const std::string& prefix = "y");

    std::size_t size() const { return names_.size(); }
    const std::string& operator[](std::size_t j) const { return names_[j]; }
    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const LabelSet&) const = default;

private:
    std::vector<std::string> names_;
};

}  // namespace semrate
