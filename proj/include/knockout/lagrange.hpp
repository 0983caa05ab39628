#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "knockout/contract.hpp"
#include "knockout/jacobi.hpp"

namespace knockout {

/// Interpolation grid: the n+1 roots of J_{n+1}^{(a,b)} shifted from
/// (-1, 1) onto (0, theta), with precomputed barycentric weights.
///
/// Immutable after construction; all evaluations are read-only.
struct NodeGrid {
    JacobiParams params;
    int degree = 0;                ///< polynomial degree n (n+1 nodes)
    double theta = 0.0;            ///< corridor width; nodes live in (0, theta)
    std::vector<double> standard;  ///< ascending roots in (-1, 1)
    std::vector<double> nodes;     ///< shifted nodes x_i in (0, theta)
    std::vector<double> weights;   ///< barycentric weights (common scale arbitrary)

    std::size_t size() const { return nodes.size(); }
};

/// Builds the grid for polynomial degree n on [0, theta].
///
/// Barycentric weights are the inverse difference products with each
/// difference scaled by 4/theta (the inverse capacity of the interval),
/// which keeps the products in range through n = 128 and beyond.
inline NodeGrid build_grid(const JacobiParams& p, int degree, double theta) {
    p.validate();
    if (degree < 0) throw ValidationError("build_grid: degree must be >= 0");
    if (!(theta > 0.0)) throw ValidationError("build_grid: theta must be positive");

    NodeGrid g;
    g.params = p;
    g.degree = degree;
    g.theta = theta;
    g.standard = jacobi_roots(p, degree + 1);
    g.nodes.resize(g.standard.size());
    for (std::size_t i = 0; i < g.standard.size(); ++i)
        g.nodes[i] = theta * (g.standard[i] + 1.0) / 2.0;

    const std::size_t m = g.nodes.size();
    const double scale = 4.0 / theta;
    g.weights.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double prod = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            prod *= (g.nodes[i] - g.nodes[j]) * scale;
        }
        g.weights[i] = 1.0 / prod;
    }
    const double wmax = std::abs(*std::max_element(
        g.weights.begin(), g.weights.end(),
        [](double u, double v) { return std::abs(u) < std::abs(v); }));
    for (double& w : g.weights) w /= wmax;
    return g;
}

/// Evaluates the cardinal basis function L_i at x (second barycentric
/// form). Exactly delta_ij when x coincides with a stored node.
inline double basis_eval(const NodeGrid& g, std::size_t i, double x) {
    for (std::size_t j = 0; j < g.size(); ++j)
        if (x == g.nodes[j]) return i == j ? 1.0 : 0.0;
    double denom = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) denom += g.weights[j] / (x - g.nodes[j]);
    return (g.weights[i] / (x - g.nodes[i])) / denom;
}

/// Evaluates all n+1 basis functions at x into `out`. Matches basis_eval
/// term by term, so the two paths agree bitwise.
inline void basis_eval_all(const NodeGrid& g, double x, std::span<double> out) {
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (x == g.nodes[j]) {
            for (std::size_t k = 0; k < g.size(); ++k) out[k] = (k == j) ? 1.0 : 0.0;
            return;
        }
    }
    double denom = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        out[j] = g.weights[j] / (x - g.nodes[j]);
        denom += out[j];
    }
    for (std::size_t j = 0; j < g.size(); ++j) out[j] /= denom;
}

/// Value at x of the interpolant through (x_i, values_i).
inline double interpolate(const NodeGrid& g, std::span<const double> values, double x) {
    if (values.size() != g.size())
        throw ValidationError("interpolate: value count must equal node count");
    for (std::size_t j = 0; j < g.size(); ++j)
        if (x == g.nodes[j]) return values[j];
    double num = 0.0, denom = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double t = g.weights[j] / (x - g.nodes[j]);
        num += t * values[j];
        denom += t;
    }
    return num / denom;
}

}  // namespace knockout
