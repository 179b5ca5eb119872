#pragma once

#include "refl/problem.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace support {

inline refl::ProblemSpec problem(double T, const char* a, const char* b, const char* h) {
    return refl::make_problem(T, a, b, h);
}

/// Kernel for a = cos(pi t), b = sinh(t), T = 3/2, written out in closed form.
inline double example_kernel(double t, double s) {
    constexpr double pi = std::numbers::pi;
    const double T = 1.5;
    const double St = std::sin(pi * t) / pi, Ss = std::sin(pi * s) / pi, ST = std::sin(pi * T) / pi;
    double v;
    if (std::fabs(t) < s)
        v = std::sin(Ss - St - ST) + std::cos(Ss + St - ST);
    else if (std::fabs(t) < -s)
        v = std::sin(Ss - St + ST) + std::cos(Ss + St + ST);
    else if (std::fabs(s) < t)
        v = std::sin(Ss - St + ST) + std::cos(Ss + St - ST);
    else
        v = std::sin(Ss - St - ST) + std::cos(Ss + St + ST);
    return std::exp(std::cosh(s) - std::cosh(t)) * v / (2.0 * std::sin(ST));
}

/// Constant-coefficient trigonometric kernel with b = 0, written region by region.
inline double region_kernel(double a, double T, double t, double s) {
    const double w = a;
    double v;
    if (t > std::fabs(s))
        v = a * std::cos(w * (s + t - T)) + w * std::sin(w * (s - t + T));
    else if (s > std::fabs(t))
        v = a * std::cos(w * (s + t - T)) - w * std::sin(w * (-s + t + T));
    else if (-t > std::fabs(s))
        v = a * std::cos(w * (s + t + T)) - w * std::sin(w * (-s + t + T));
    else
        v = a * std::cos(w * (s + t + T)) + w * std::sin(w * (s - t + T));
    return v / (2.0 * w * std::sin(w * T));
}

/// Periodic kernel of x'' + w^2 x = 0 on [-T, T].
inline double oscillator_kernel(double w, double T, double t, double s) {
    return std::cos(w * (std::fabs(t - s) - T)) / (2.0 * w * std::sin(w * T));
}

inline std::mt19937_64 rng(unsigned seed = 20240601u) { return std::mt19937_64(seed); }

}  // namespace support

namespace support {

struct Bench {
    const char* name;
    double T;
    const char* a;
    const char* b;
};

/// Problems of cases C1, C2 and C3 used across the kernel and oracle tests.
inline const std::vector<Bench>& kernel_benchmarks() {
    static const std::vector<Bench> list{
        {"example", 1.5, "cos(pi*t)", "sinh(t)"},
        {"const-c1", 1.0, "1", "0"},
        {"const-c1-b", 1.0, "1", "0.5"},
        {"var-c1", 1.0, "2+t^2", "1+t^2/2+t"},
        {"const-c2", 1.0, "1", "3"},
        {"var-c2-neg", 1.0, "1+t^2", "-2-2*t^2+t"},
        {"const-c3", 1.0, "1", "1"},
        {"var-c3", 1.0, "cos(t)", "cos(t)+sin(t)"},
    };
    return list;
}

}  // namespace support
