#include "semrate/grid.hpp"

#include <cmath>
#include <unordered_set>

namespace semrate {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) throw BadParams("grid needs at least one point");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i])) throw BadParams("grid points must be finite");
        if (i > 0 && points_[i] <= points_[i - 1])
            throw BadParams("grid points must be strictly increasing");
    }
}

Grid Grid::regular(double min, double max, double step) {
    if (step <= 0.0) throw BadParams("grid step must be positive");
    if (max < min) throw BadParams("grid max below min");
    std::vector<double> pts;
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 0.5)) + 1;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pts.push_back(min + static_cast<double>(i) * step);
    return Grid(std::move(pts));
}

LabelSet::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw BadParams("label set needs at least one label");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_)
        if (!seen.insert(n).second) throw BadParams("duplicate label name: " + n);
}

LabelSet LabelSet::numbered(std::size_t n, const std::string& prefix) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t j = 0; j < n; ++j) names.push_back(prefix + std::to_string(j + 1));
    return LabelSet(std::move(names));
}

}  // namespace semrate
