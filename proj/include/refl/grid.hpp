#pragma once

#include <span>
#include <vector>

namespace refl {

/// Symmetric uniform grid t_i = -T + 2 T i / N, i = 0..N, with N even so that
/// -t_i = t_{N-i} and t_{N/2} = 0 exactly.
class SymmetricGrid {
public:
    SymmetricGrid(double half_width, int intervals);

    int intervals() const noexcept { return n_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double half_width() const noexcept { return T_; }
    double step() const noexcept { return h_; }
    double operator[](std::size_t i) const noexcept { return nodes_[i]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    /// Index of the node mirrored through 0.
    std::size_t mirror(std::size_t i) const noexcept { return static_cast<std::size_t>(n_) - i; }

private:
    double T_;
    int n_;
    double h_;
    std::vector<double> nodes_;
};

/// Fourth-order cumulative integral of uniformly sampled values: out[i] = integral from
/// node 0 to node i, integrating the local cubic through four neighbouring samples.
std::vector<double> cumulative_integral_4th(std::span<const double> values, double step);

/// Piecewise Lagrange interpolation (six-point stencils) of samples on a uniform grid.
/// Stencils never straddle `split` when it coincides with a node, so a kink there is kept.
class GridInterpolant {
public:
    GridInterpolant() = default;
    GridInterpolant(double lo, double step, std::vector<double> values, bool split_at_zero = false);

    double operator()(double t) const;
    std::span<const double> values() const noexcept { return values_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return lo_ + step_ * static_cast<double>(values_.size() - 1); }

private:
    double lo_ = 0.0;
    double step_ = 1.0;
    std::vector<double> values_;
    long split_index_ = -1;
};

}  // namespace refl
