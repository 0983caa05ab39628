#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "knockout/contract.hpp"
#include "knockout/jacobi.hpp"
#include "knockout/lagrange.hpp"
#include "knockout/transform.hpp"

namespace knockout {

/// Panel layout for the heat-kernel x basis-function integrals.
///
/// Widths are expressed in units of c*sqrt(tau), the kernel's natural
/// length, so the layout tracks the kernel as the monitoring interval
/// shrinks.
struct QuadConfig {
    int panel_order = 40;          ///< Gauss-Legendre points per panel
    double peak_window = 8.0;      ///< fine-panel half-width around the kernel center
    double fine_panel_width = 1.0; ///< width of each fine panel
    double target_rel_error = 1e-12;

    void validate() const {
        if (panel_order < 2) throw ValidationError("quad: panel order must be >= 2");
        if (!(peak_window > 0.0) || !(fine_panel_width > 0.0))
            throw ValidationError("quad: panel widths must be positive");
    }
};

/// Gauss-Legendre rule of fixed order, reusable across panels.
class GaussLegendreRule {
public:
    explicit GaussLegendreRule(int order) {
        if (order < 1) throw ValidationError("gauss_legendre: order must be >= 1");
        const JacobiParams legendre{0.0, 0.0};
        nodes_ = jacobi_roots(legendre, order);
        weights_.resize(nodes_.size());
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            const auto [v, dv] = eval_jacobi_with_derivative(legendre, order, nodes_[k]);
            (void)v;
            weights_[k] = 2.0 / ((1.0 - nodes_[k] * nodes_[k]) * dv * dv);
        }
    }

    int order() const { return static_cast<int>(nodes_.size()); }

    /// Estimate of the integral of f over [a, b]; exact for polynomials of
    /// degree <= 2*order - 1.
    template <typename F>
    double integrate(F&& f, double a, double b) const {
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        double acc = 0.0;
        for (std::size_t k = 0; k < nodes_.size(); ++k)
            acc += weights_[k] * f(mid + half * nodes_[k]);
        return acc * half;
    }

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// One-shot Gauss-Legendre estimate of the integral of f over [a, b].
template <typename F>
inline double gauss_legendre_panel(F&& f, double a, double b, int order) {
    if (!(a <= b)) throw ValidationError("gauss_legendre_panel: bounds must satisfy a <= b");
    return GaussLegendreRule(order).integrate(f, a, b);
}

/// Closed form of the kernel-exponential moment
///   integral over [lo, hi] of k(x - xi, tau) e^{lambda xi} d xi
/// = e^{lambda x + lambda^2 c2 tau}
///   * (erf((hi - x - 2 lambda c2 tau) / (2 c sqrt(tau)))
///      - erf((lo - x - 2 lambda c2 tau) / (2 c sqrt(tau)))) / 2,
/// obtained by completing the square. Infinite bounds are accepted.
/// The erf difference switches to the complementary form in the right
/// tail so both tails retain full absolute accuracy.
inline double gaussian_exp_moment(double x, double lambda, double lo, double hi, double tau,
                                  double c2) {
    if (!(tau > 0.0)) throw ValidationError("gaussian_exp_moment: tau must be positive");
    if (!(c2 > 0.0)) throw ValidationError("gaussian_exp_moment: c2 must be positive");
    if (!(lo <= hi)) throw ValidationError("gaussian_exp_moment: bounds must satisfy lo <= hi");
    if (lo == hi) return 0.0;
    const double denom = 2.0 * std::sqrt(c2 * tau);
    const double shift = 2.0 * lambda * c2 * tau;
    const double hi_arg = (hi - x - shift) / denom;
    const double lo_arg = (lo - x - shift) / denom;
    double diff;
    if (hi_arg + lo_arg > 0.0)
        diff = std::erfc(lo_arg) - std::erfc(hi_arg);
    else
        diff = std::erf(hi_arg) - std::erf(lo_arg);
    return std::exp(lambda * (x + lambda * c2 * tau)) * 0.5 * diff;
}

/// Panel edges for integrating k(center - xi, tau) * L_j(xi) over [0, theta].
///
/// Edges combine the grid nodes (so every panel sees each basis function as
/// a single smooth lobe), a fine ladder of spacing fine_panel_width * c
/// sqrt(tau) across the kernel peak, and a cap of four fine widths on any
/// remaining gap.
inline std::vector<double> convolution_panels(const NodeGrid& grid, double center, double tau,
                                              double c2, const QuadConfig& cfg) {
    cfg.validate();
    if (!(tau > 0.0) || !(c2 > 0.0))
        throw ValidationError("convolution_panels: tau and c2 must be positive");
    const double theta = grid.theta;
    const double s = std::sqrt(c2 * tau);
    const double fine = cfg.fine_panel_width * s;

    std::vector<double> edges{0.0, theta};
    edges.insert(edges.end(), grid.nodes.begin(), grid.nodes.end());
    const int steps = static_cast<int>(std::ceil(cfg.peak_window / cfg.fine_panel_width));
    for (int m = -steps; m <= steps; ++m) {
        const double e = center + m * fine;
        if (e > 0.0 && e < theta) edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
    const double dedupe = 1e-13 * std::max(theta, 1.0);
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [&](double u, double v) { return v - u < dedupe; }),
                edges.end());
    edges.back() = theta;
    edges.front() = 0.0;

    const double cap = 4.0 * fine;
    std::vector<double> out;
    out.reserve(edges.size());
    out.push_back(edges.front());
    for (std::size_t k = 1; k < edges.size(); ++k) {
        const double gap = edges[k] - edges[k - 1];
        const int pieces = std::max(1, static_cast<int>(std::ceil(gap / cap)));
        for (int piece = 1; piece <= pieces; ++piece)
            out.push_back(edges[k - 1] + gap * piece / pieces);
        out.back() = edges[k];
    }
    return out;
}

/// Row i of the transition-matrix integrals: out[j] receives
/// integral over [0, theta] of k(x_i - xi, tau) L_j(xi) d xi.
/// All basis functions share one pass over the panel points.
inline void kernel_basis_row(const NodeGrid& grid, std::size_t i, double tau, double c2,
                             const QuadConfig& cfg, const GaussLegendreRule& rule,
                             std::span<double> out) {
    if (i >= grid.size()) throw ValidationError("kernel_basis_row: node index out of range");
    const std::vector<double> edges = convolution_panels(grid, grid.nodes[i], tau, c2, cfg);
    const std::size_t m = grid.size();
    std::vector<double> basis(m);
    std::vector<double> acc(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = 0.0;
    for (std::size_t k = 1; k < edges.size(); ++k) {
        const double half = 0.5 * (edges[k] - edges[k - 1]);
        const double mid = 0.5 * (edges[k] + edges[k - 1]);
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t q = 0; q < rule.nodes().size(); ++q) {
            const double xi = mid + half * rule.nodes()[q];
            const double kw = rule.weights()[q] * heat_kernel(grid.nodes[i] - xi, tau, c2);
            basis_eval_all(grid, xi, basis);
            for (std::size_t j = 0; j < m; ++j) acc[j] += kw * basis[j];
        }
        for (std::size_t j = 0; j < m; ++j) out[j] += acc[j] * half;
    }
}

/// Single transition-matrix entry k_ij. Shares the row path, so whole-row
/// and per-entry computations agree bitwise.
inline double kernel_basis_integral(const NodeGrid& grid, std::size_t i, std::size_t j,
                                    double tau, double c2, const QuadConfig& cfg) {
    if (j >= grid.size()) throw ValidationError("kernel_basis_integral: basis index out of range");
    const GaussLegendreRule rule(cfg.panel_order);
    std::vector<double> row(grid.size());
    kernel_basis_row(grid, i, tau, c2, cfg, rule, row);
    return row[j];
}

}  // namespace knockout
