#pragma once

// Adaptive composite Gauss-Legendre integration used by the potential-theory code.

#include "akhsylv/errors.hpp"
#include "akhsylv/linalg.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace akhsylv::detail {

struct PanelEstimate {
    std::complex<double> value;
    double magnitude;  // integral of |f|, used as the error scale
};

template <class F>
PanelEstimate gl_panel(const F& f, double a, double b, const GaussLegendre& rule) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    PanelEstimate e{0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const std::complex<double> v = f(mid + half * rule.nodes[i]);
        e.value += rule.weights[i] * v;
        e.magnitude += rule.weights[i] * std::abs(v);
    }
    e.value *= half;
    e.magnitude *= std::abs(half);
    return e;
}

/// Integrates f over [a, b], halving panels until the two-level estimates agree to
/// rel_tol relative to the integral of |f|.
template <class F>
std::complex<double> integrate(const F& f, double a, double b, double rel_tol = 1e-12,
                               int max_depth = 48) {
    const GaussLegendre rule = gauss_legendre(16);
    // coarse pass to fix the absolute error scale
    const int coarse = 8;
    double scale = 0.0;
    std::vector<std::pair<double, double>> panels;
    for (int i = 0; i < coarse; ++i) {
        const double lo = a + (b - a) * i / coarse, hi = a + (b - a) * (i + 1) / coarse;
        scale += gl_panel(f, lo, hi, rule).magnitude;
        panels.emplace_back(lo, hi);
    }
    const double tol = rel_tol * std::max(scale, 1e-300);

    std::complex<double> total = 0.0;
    struct Item {
        double lo, hi;
        int depth;
    };
    std::vector<Item> stack;
    long splits = 0;
    for (auto it = panels.rbegin(); it != panels.rend(); ++it) stack.push_back({it->first, it->second, 0});
    while (!stack.empty()) {
        const Item item = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (item.lo + item.hi);
        const auto whole = gl_panel(f, item.lo, item.hi, rule);
        const auto left = gl_panel(f, item.lo, mid, rule);
        const auto right = gl_panel(f, mid, item.hi, rule);
        const std::complex<double> refined = left.value + right.value;
        const double width_share = std::abs(item.hi - item.lo) / std::abs(b - a);
        // second clause: the difference is at the rounding level of the panel sums
        const double noise = 64 * std::numeric_limits<double>::epsilon() * (left.magnitude + right.magnitude);
        if (std::abs(refined - whole.value) <= std::max(tol * width_share, noise)) {
            total += refined;
            continue;
        }
        if (item.depth >= max_depth || ++splits > 200000)
            throw AccuracyError("adaptive quadrature: panel budget exhausted");
        stack.push_back({mid, item.hi, item.depth + 1});
        stack.push_back({item.lo, mid, item.depth + 1});
    }
    return total;
}

}  // namespace akhsylv::detail
