#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "knockout/contract.hpp"
#include "knockout/jacobi.hpp"
#include "knockout/lagrange.hpp"
#include "knockout/quadrature.hpp"
#include "knockout/transform.hpp"

namespace knockout {

/// Dense matrix form of the interpolation-projected convolution operator:
/// entry (i, j) integrates the heat kernel centered at node x_i against
/// basis function L_j over the corridor. One monitoring step maps the
/// interpolant's node values v to K v.
struct TransitionMatrix {
    NodeGrid grid;
    double tau = 0.0;
    double c2 = 0.0;
    std::vector<double> entries;  ///< row-major, (n+1) x (n+1)

    std::size_t size() const { return grid.size(); }
    double operator()(std::size_t i, std::size_t j) const { return entries[i * size() + j]; }
};

/// Node values of the first convolution of the terminal payoff,
/// a_i = integral over [delta, theta] of k(x_i - xi, tau) g0(xi) d xi.
struct InitialVector {
    std::vector<double> entries;
    double theta = 0.0;  ///< provenance echo
    double delta = 0.0;
    double tau = 0.0;
};

/// Wall-clock seconds per pricing phase.
struct PhaseTimings {
    double build_matrix = 0.0;
    double build_vector = 0.0;
    double propagate = 0.0;
    double evaluate = 0.0;

    double total() const { return build_matrix + build_vector + propagate + evaluate; }
};

/// A priced contract with diagnostics.
struct PriceResult {
    double price = 0.0;
    OptionContract contract;  ///< echo of the contract actually priced
    int degree = 0;           ///< interpolation degree n (n+1 nodes)
    JacobiParams params;
    PhaseTimings timings;
    double z0 = 0.0;
    double theta = 0.0;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace detail

/// Builds the (n+1) x (n+1) transition matrix for one monitoring interval.
inline TransitionMatrix build_matrix(const NodeGrid& grid, const HeatProblem& hp,
                                     const QuadConfig& cfg = {}) {
    if (!(hp.tau > 0.0)) throw ValidationError("build_matrix: tau must be positive");
    cfg.validate();
    TransitionMatrix K;
    K.grid = grid;
    K.tau = hp.tau;
    K.c2 = hp.c2;
    const std::size_t m = grid.size();
    K.entries.resize(m * m);
    const GaussLegendreRule rule(cfg.panel_order);
    for (std::size_t i = 0; i < m; ++i)
        kernel_basis_row(grid, i, hp.tau, hp.c2, cfg, rule,
                         std::span<double>(K.entries.data() + i * m, m));
    for (double e : K.entries)
        if (!std::isfinite(e)) throw NumericalError("build_matrix: non-finite entry");
    return K;
}

/// Builds the initial coefficient vector from the closed-form kernel
/// moments of the payoff's two exponential pieces. Empty payoff corridor
/// (delta >= theta) yields the zero vector.
inline InitialVector build_initial_vector(const NodeGrid& grid, const HeatProblem& hp) {
    InitialVector g1;
    g1.theta = hp.theta;
    g1.delta = hp.delta;
    g1.tau = hp.tau;
    g1.entries.assign(grid.size(), 0.0);
    if (hp.delta >= hp.theta) return g1;
    const double strike_factor = std::exp(hp.log_strike);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes[i];
        const double rising =
            gaussian_exp_moment(x, 1.0 - hp.alpha, hp.delta, hp.theta, hp.tau, hp.c2);
        const double flat = gaussian_exp_moment(x, -hp.alpha, hp.delta, hp.theta, hp.tau, hp.c2);
        g1.entries[i] = hp.lower * (rising - strike_factor * flat);
    }
    return g1;
}

/// Applies K^(monitors-1) to the initial vector by repeated matrix-vector
/// products. monitors == 1 returns the initial vector unchanged.
inline std::vector<double> propagate(const TransitionMatrix& K, const InitialVector& g1,
                                     int monitors) {
    if (monitors < 1) throw ValidationError("propagate: monitoring count must be >= 1");
    if (g1.entries.size() != K.size())
        throw ValidationError("propagate: vector length must match matrix size");
    std::vector<double> v = g1.entries;
    std::vector<double> w(v.size());
    const std::size_t m = K.size();
    for (int step = 1; step < monitors; ++step) {
        for (std::size_t i = 0; i < m; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) acc += K.entries[i * m + j] * v[j];
            w[i] = acc;
        }
        v.swap(w);
    }
    return v;
}

/// Prices a knock-out call by the operational-matrix method with n+1
/// interpolation nodes (degree n).
inline PriceResult price(const OptionContract& c, int degree, const JacobiParams& p,
                         const QuadConfig& cfg = {}) {
    c.validate();
    const HeatProblem hp = to_heat(c);

    PriceResult res;
    res.contract = c;
    res.degree = degree;
    res.params = p;
    res.z0 = hp.z0;
    res.theta = hp.theta;

    auto t = detail::Clock::now();
    const NodeGrid grid = build_grid(p, degree, hp.theta);
    TransitionMatrix K;
    if (c.monitors > 1) K = build_matrix(grid, hp, cfg);
    res.timings.build_matrix = detail::seconds_since(t);

    t = detail::Clock::now();
    const InitialVector g1 = build_initial_vector(grid, hp);
    res.timings.build_vector = detail::seconds_since(t);

    t = detail::Clock::now();
    const std::vector<double> gm =
        (c.monitors > 1) ? propagate(K, g1, c.monitors) : g1.entries;
    res.timings.propagate = detail::seconds_since(t);

    t = detail::Clock::now();
    const double g_at_z0 = interpolate(grid, gm, hp.z0);
    res.price = assemble_price(g_at_z0, hp, c.expiry);
    res.timings.evaluate = detail::seconds_since(t);

    if (!std::isfinite(res.price)) throw NumericalError("price: non-finite result");
    return res;
}

/// Prices one contract template across several spots. The matrix, the
/// initial vector and the propagation are shared; only the evaluation
/// point changes per spot, so the sweep costs one pricing run.
inline std::vector<PriceResult> price_curve(const OptionContract& tmpl,
                                            std::span<const double> spots, int degree,
                                            const JacobiParams& p, const QuadConfig& cfg = {}) {
    OptionContract base = tmpl;
    if (!spots.empty()) base.spot = spots.front();
    base.validate();
    for (double s : spots)
        if (!(base.lower <= s && s <= base.upper))
            throw ValidationError("price_curve: spot outside the barrier corridor");
    const HeatProblem hp = to_heat(base);

    PhaseTimings timings;
    auto t = detail::Clock::now();
    const NodeGrid grid = build_grid(p, degree, hp.theta);
    TransitionMatrix K;
    if (base.monitors > 1) K = build_matrix(grid, hp, cfg);
    timings.build_matrix = detail::seconds_since(t);

    t = detail::Clock::now();
    const InitialVector g1 = build_initial_vector(grid, hp);
    timings.build_vector = detail::seconds_since(t);

    t = detail::Clock::now();
    const std::vector<double> gm =
        (base.monitors > 1) ? propagate(K, g1, base.monitors) : g1.entries;
    timings.propagate = detail::seconds_since(t);

    std::vector<PriceResult> out;
    out.reserve(spots.size());
    for (double s : spots) {
        t = detail::Clock::now();
        PriceResult res;
        res.contract = base;
        res.contract.spot = s;
        res.degree = degree;
        res.params = p;
        res.theta = hp.theta;
        res.z0 = std::log(s / base.lower);
        HeatProblem hp_spot = hp;
        hp_spot.z0 = res.z0;
        const double g_at_z0 = interpolate(grid, gm, res.z0);
        res.price = assemble_price(g_at_z0, hp_spot, base.expiry);
        res.timings = timings;
        res.timings.evaluate = detail::seconds_since(t);
        if (!std::isfinite(res.price)) throw NumericalError("price_curve: non-finite result");
        out.push_back(res);
    }
    return out;
}

/// Maximum absolute pricing difference against a caller-supplied reference
/// curve over a spot grid.
inline double max_error_study(const OptionContract& c, int degree, const JacobiParams& p,
                              std::span<const double> spots,
                              std::span<const double> reference_prices,
                              const QuadConfig& cfg = {}) {
    if (spots.size() != reference_prices.size())
        throw ValidationError("max_error_study: spot and reference counts must match");
    const std::vector<PriceResult> curve = price_curve(c, spots, degree, p, cfg);
    double err = 0.0;
    for (std::size_t k = 0; k < curve.size(); ++k)
        err = std::max(err, std::abs(curve[k].price - reference_prices[k]));
    return err;
}

/// As above with the default reference: the same method at 100 nodes
/// (degree 99) and a = b = -1/2.
inline double max_error_study(const OptionContract& c, int degree, const JacobiParams& p,
                              std::span<const double> spots, const QuadConfig& cfg = {}) {
    const JacobiParams ref_params{-0.5, -0.5};
    const std::vector<PriceResult> ref = price_curve(c, spots, 99, ref_params, cfg);
    std::vector<double> ref_prices;
    ref_prices.reserve(ref.size());
    for (const PriceResult& r : ref) ref_prices.push_back(r.price);
    return max_error_study(c, degree, p, spots, ref_prices, cfg);
}

/// Uniform spot grid on [lo, hi], inclusive of both ends.
inline std::vector<double> spot_grid(double lo, double hi, int count) {
    if (count < 2 || !(lo < hi)) throw ValidationError("spot_grid: need count >= 2 and lo < hi");
    std::vector<double> s(count);
    for (int k = 0; k < count; ++k) s[k] = lo + (hi - lo) * k / (count - 1);
    return s;
}

}  // namespace knockout
