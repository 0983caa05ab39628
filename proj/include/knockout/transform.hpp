#pragma once

#include <cmath>

#include "knockout/contract.hpp"

namespace knockout {

/// The knock-out pricing problem mapped to heat-equation form.
///
/// Substituting S = L e^z and P = e^{alpha z + beta t} g(z, t) into the
/// Black-Scholes equation (t measured as time remaining) removes the first-
/// and zeroth-order terms and leaves g_t = c2 g_zz on the log-corridor
/// [0, theta]. Monitoring dates become truncated heat-kernel convolutions.
struct HeatProblem {
    double theta = 0.0;       ///< log-width of the corridor, ln(U/L)
    double log_strike = 0.0;  ///< log-strike E* = ln(E/L)
    double delta = 0.0;       ///< payoff cutoff max(E*, 0)
    double mu = 0.0;          ///< log drift r - sigma^2/2
    double alpha = 0.0;       ///< space exponent -mu/sigma^2
    double beta = 0.0;        ///< time exponent -(r + mu^2/(2 sigma^2))
    double c2 = 0.0;          ///< diffusion constant sigma^2/2
    double tau = 0.0;         ///< monitoring interval T/M
    double z0 = 0.0;          ///< log-spot ln(S0/L)
    double lower = 0.0;       ///< L, retained as the payoff prefactor
};

/// Maps a validated contract to its heat-equation form.
inline HeatProblem to_heat(const OptionContract& c) {
    c.validate();
    HeatProblem hp;
    hp.theta = std::log(c.upper / c.lower);
    hp.log_strike = std::log(c.strike / c.lower);  // -inf for strike == 0
    hp.delta = std::max(hp.log_strike, 0.0);
    hp.mu = c.rate - 0.5 * c.vol * c.vol;
    hp.alpha = -hp.mu / (c.vol * c.vol);
    hp.beta = -(c.rate + hp.mu * hp.mu / (2.0 * c.vol * c.vol));
    hp.c2 = 0.5 * c.vol * c.vol;
    hp.tau = c.expiry / c.monitors;
    hp.z0 = std::log(c.spot / c.lower);
    hp.lower = c.lower;
    return hp;
}

/// Transformed terminal payoff: L e^{-alpha z} (e^z - e^{E*}) on
/// [delta, theta], zero elsewhere. Total function of real z.
inline double payoff_g0(double z, const HeatProblem& hp) {
    if (z < hp.delta || z > hp.theta) return 0.0;
    return hp.lower * std::exp(-hp.alpha * z) * (std::exp(z) - std::exp(hp.log_strike));
}

/// Gaussian heat kernel (4 pi c2 t)^{-1/2} exp(-z^2 / (4 c2 t)).
inline double heat_kernel(double z, double t, double c2) {
    if (!(t > 0.0)) throw ValidationError("heat_kernel: t must be positive");
    if (!(c2 > 0.0)) throw ValidationError("heat_kernel: c2 must be positive");
    const double four_c2_t = 4.0 * c2 * t;
    return std::exp(-z * z / four_c2_t) / std::sqrt(four_c2_t * std::acos(-1.0));
}

/// Undoes the exponential substitution at the valuation point:
/// price = e^{alpha z0 + beta T} g(z0).
inline double assemble_price(double g_at_z0, const HeatProblem& hp, double expiry) {
    return std::exp(hp.alpha * hp.z0 + hp.beta * expiry) * g_at_z0;
}

}  // namespace knockout
