#include "refl/grid.hpp"

#include "refl/error.hpp"

#include <algorithm>
#include <cmath>

namespace refl {

SymmetricGrid::SymmetricGrid(double half_width, int intervals)
    : T_(half_width), n_(intervals), h_(2.0 * half_width / intervals) {
    if (!(half_width > 0.0)) throw InputError("grid half-width must be positive");
    if (intervals < 2 || intervals % 2 != 0) throw InputError("grid needs an even number of intervals");
    nodes_.resize(static_cast<std::size_t>(n_) + 1);
    const int half = n_ / 2;
    // Built from the centre outwards so the mirror identity holds bit-for-bit.
    nodes_[static_cast<std::size_t>(half)] = 0.0;
    for (int i = 1; i <= half; ++i) {
        const double x = T_ * static_cast<double>(i) / static_cast<double>(half);
        nodes_[static_cast<std::size_t>(half + i)] = x;
        nodes_[static_cast<std::size_t>(half - i)] = -x;
    }
}

std::vector<double> cumulative_integral_4th(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 4) throw InputError("fourth-order cumulative integral needs at least four samples");
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        double panel;
        if (j == 0) {
            panel = 9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3];
        } else if (j + 2 == n) {
            panel = f[j - 2] - 5.0 * f[j - 1] + 19.0 * f[j] + 9.0 * f[j + 1];
        } else {
            panel = -f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2];
        }
        out[j + 1] = out[j] + h * panel / 24.0;
    }
    return out;
}

GridInterpolant::GridInterpolant(double lo, double step, std::vector<double> values, bool split_at_zero)
    : lo_(lo), step_(step), values_(std::move(values)) {
    if (values_.size() < 6) throw InputError("interpolation table needs at least six samples");
    if (split_at_zero) {
        const double idx = -lo_ / step_;
        const double r = std::round(idx);
        if (std::fabs(idx - r) < 1e-9 && r > 0 && r < static_cast<double>(values_.size() - 1))
            split_index_ = static_cast<long>(r);
    }
}

double GridInterpolant::operator()(double t) const {
    const long n = static_cast<long>(values_.size());
    const double x = (t - lo_) / step_;
    long k = static_cast<long>(std::floor(x));
    k = std::clamp(k, 0L, n - 2);

    long first = 0;
    long last = n - 1;
    if (split_index_ >= 0) {
        if (k < split_index_) last = split_index_;
        else first = split_index_;
    }
    constexpr long kPoints = 6;
    const long width = std::min(kPoints, last - first + 1);
    long start = k - (width / 2 - 1);
    start = std::clamp(start, first, last - width + 1);

    double sum = 0.0;
    for (long i = start; i < start + width; ++i) {
        double w = 1.0;
        const double xi = static_cast<double>(i);
        for (long j = start; j < start + width; ++j) {
            if (j == i) continue;
            w *= (x - static_cast<double>(j)) / (xi - static_cast<double>(j));
        }
        sum += w * values_[static_cast<std::size_t>(i)];
    }
    return sum;
}

}  // namespace refl
