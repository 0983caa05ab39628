#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "knockout/contract.hpp"
#include "knockout/pricer.hpp"

namespace knockout {

/// Monte Carlo settings. Paths are simulated in deterministic substreams
/// keyed by path index, so a given seed reproduces the estimate exactly.
struct McConfig {
    std::uint64_t paths = 1'000'000;
    std::uint64_t seed = 0;
    bool antithetic = true;
};

/// Monte Carlo estimate with its standard error.
struct McEstimate {
    double price = 0.0;
    double std_error = 0.0;
    std::uint64_t paths = 0;  ///< paths actually simulated
};

/// Stateless counter-based uniform draw in (0, 1): the SplitMix64 output
/// function applied to seed + counter * golden-gamma.
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

/// Inverse standard normal CDF (Wichura's PPND16 rational approximations),
/// accurate to ~1e-15 over (0, 1).
inline double inverse_normal_cdf(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw ValidationError("inverse_normal_cdf: argument must lie in (0, 1)");
    const double q = u - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            q * (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                      6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                    1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                  1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
        return num / den;
    }
    double r = std::sqrt(-std::log(std::min(u, 1.0 - u)));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return (q < 0.0) ? -value : value;
}

/// Standard normal CDF via the complementary error function.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Black-Scholes European call value (upper bound for any knockout call).
inline double bs_vanilla_call(double spot, double strike, double rate, double vol,
                              double expiry) {
    if (!(vol > 0.0)) throw ValidationError("bs_vanilla_call: volatility must be positive");
    if (!(expiry > 0.0)) throw ValidationError("bs_vanilla_call: expiry must be positive");
    if (strike <= 0.0) return spot;  // payoff degenerates to S_T
    const double sq = vol * std::sqrt(expiry);
    const double d1 = (std::log(spot / strike) + (rate + 0.5 * vol * vol) * expiry) / sq;
    const double d2 = d1 - sq;
    return spot * normal_cdf(d1) - strike * std::exp(-rate * expiry) * normal_cdf(d2);
}

namespace detail {

/// Discounted payoff of one knock-out path, simulated exactly at the
/// monitoring dates. `sign` flips the normal draws for antithetic pairs.
inline double knockout_path_payoff(const OptionContract& c, std::uint64_t seed,
                                   std::uint64_t base_counter, double drift, double volstep,
                                   double sign) {
    double s = c.spot;
    for (int m = 1; m <= c.monitors; ++m) {
        const double z = inverse_normal_cdf(counter_uniform(seed, base_counter + m - 1));
        s *= std::exp(drift + volstep * sign * z);
        if (m < c.monitors) {
            if (s < c.lower || s > c.upper) return 0.0;  // knocked out
        }
    }
    // Terminal gate: barrier check at expiry folded into the payoff.
    if (s < std::max(c.strike, c.lower) || s > c.upper) return 0.0;
    return s - c.strike;
}

}  // namespace detail

/// Monte Carlo price of the same contract the matrix method prices:
/// barrier checks at the interior monitoring dates, terminal payoff gated
/// by max(E, L) <= S_T <= U. Identical output for identical seed.
inline McEstimate mc_price(const OptionContract& c, const McConfig& cfg) {
    c.validate();
    if (cfg.paths < 1) throw ValidationError("mc_price: need at least one path");
    const double tau = c.expiry / c.monitors;
    const double drift = (c.rate - 0.5 * c.vol * c.vol) * tau;
    const double volstep = c.vol * std::sqrt(tau);

    const std::uint64_t samples = cfg.antithetic ? std::max<std::uint64_t>(1, cfg.paths / 2)
                                                 : cfg.paths;
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t idx = 0; idx < samples; ++idx) {
        const std::uint64_t base = idx * static_cast<std::uint64_t>(c.monitors);
        double v = detail::knockout_path_payoff(c, cfg.seed, base, drift, volstep, 1.0);
        if (cfg.antithetic) {
            v = 0.5 * (v + detail::knockout_path_payoff(c, cfg.seed, base, drift, volstep, -1.0));
        }
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / samples;
    double variance = 0.0;
    if (samples > 1) variance = std::max(0.0, (sumsq - samples * mean * mean) / (samples - 1.0));
    const double discount = std::exp(-c.rate * c.expiry);

    McEstimate est;
    est.price = discount * mean;
    est.std_error = discount * std::sqrt(variance / samples);
    est.paths = cfg.antithetic ? 2 * samples : samples;
    return est;
}

/// Prices a discrete down-and-out call (lower barrier only) through the
/// double-barrier pricer by planting a synthetic upper barrier at 2.5x the
/// strike, far enough that crossing it before expiry has negligible
/// probability. The synthetic barrier is echoed in the result's contract.
inline PriceResult single_barrier_price(double spot, double strike, double lower, double rate,
                                        double vol, double expiry, int monitors, int degree,
                                        const JacobiParams& p, const QuadConfig& cfg = {}) {
    OptionContract c;
    c.spot = spot;
    c.strike = strike;
    c.lower = lower;
    c.upper = 2.5 * strike;
    c.rate = rate;
    c.vol = vol;
    c.expiry = expiry;
    c.monitors = monitors;
    return price(c, degree, p, cfg);
}

/// Barrier shift linking discrete and continuous monitoring: the
/// continuous down-and-out price at barrier L is approximated by the
/// discrete price at L * exp(0.5826 sigma sqrt(dt)).
inline double continuity_correction(double lower, double vol, double dt) {
    if (!(lower > 0.0 && vol > 0.0 && dt > 0.0))
        throw ValidationError("continuity_correction: arguments must be positive");
    constexpr double kBarrierShift = 0.5826;
    return lower * std::exp(kBarrierShift * vol * std::sqrt(dt));
}

/// Continuous down-and-out estimate: discrete single-barrier price at the
/// shifted barrier.
inline PriceResult corrected_down_out_price(double spot, double strike, double lower,
                                            double rate, double vol, double expiry, int monitors,
                                            int degree, const JacobiParams& p,
                                            const QuadConfig& cfg = {}) {
    const double shifted = continuity_correction(lower, vol, expiry / monitors);
    return single_barrier_price(spot, strike, shifted, rate, vol, expiry, monitors, degree, p,
                                cfg);
}

}  // namespace knockout
