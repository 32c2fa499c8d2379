#include "semrate/channel.hpp"

#include <cmath>
#include <string>

#include "semrate/distribution.hpp"

namespace semrate {

Channel::Channel(Matrix rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw InvalidDistribution("channel matrix is empty");
    for (std::size_t i = 0; i < rows_.rows(); ++i) {
        double sum = 0.0;
        for (double v : rows_.row(i)) {
            if (!(v >= 0.0))
                throw InvalidDistribution("channel row " + std::to_string(i) +
                                          ": negative or NaN entry");
            sum += v;
        }
        if (std::abs(sum - 1.0) > ProbVector::kSumTolerance)
            throw InvalidDistribution("channel row " + std::to_string(i) + " sums to " +
                                      std::to_string(sum));
        for (double& v : rows_.row(i)) v /= sum;
    }
}

Channel Channel::identity(std::size_t m) {
    Matrix rows(m, m, 0.0);
    for (std::size_t i = 0; i < m; ++i) rows(i, i) = 1.0;
    return Channel(std::move(rows));
}

Channel Channel::constant_rows(std::size_t m, std::span<const double> row) {
    Matrix rows(m, row.size());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < row.size(); ++j) rows(i, j) = row[j];
    return Channel(std::move(rows));
}

}  // namespace semrate
