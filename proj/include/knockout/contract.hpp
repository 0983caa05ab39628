#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace knockout {

/// Thrown when an input violates a documented precondition or invariant.
/// The message names the violated condition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative scheme fails to reach its tolerance, or a
/// computed quantity comes out non-finite.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Market and contract parameters of a discretely monitored knock-out call.
///
/// The option pays (S_T - strike)+ at expiry unless the asset price leaves
/// the corridor [lower, upper] at one of the `monitors` equally spaced
/// monitoring dates t_m = m * expiry / monitors.
struct OptionContract {
    double spot = 0.0;    ///< initial asset price S0
    double strike = 0.0;  ///< exercise price E
    double lower = 0.0;   ///< lower knock-out barrier L
    double upper = 0.0;   ///< upper knock-out barrier U
    double rate = 0.0;    ///< risk-free rate r, per year
    double vol = 0.0;     ///< volatility sigma, per sqrt-year
    double expiry = 0.0;  ///< time to maturity T in years
    int monitors = 0;     ///< number of monitoring dates M >= 1

    /// Checks all contract invariants; throws ValidationError naming the
    /// first violated one.
    void validate() const {
        if (!(lower > 0.0))
            throw ValidationError("contract: lower barrier must satisfy 0 < L");
        if (!(lower < upper))
            throw ValidationError("contract: barriers must satisfy L < U");
        if (!(lower <= spot && spot <= upper))
            throw ValidationError("contract: spot must satisfy L <= S0 <= U");
        if (!(strike >= 0.0))
            throw ValidationError("contract: strike must satisfy E >= 0");
        if (!(vol > 0.0))
            throw ValidationError("contract: volatility must satisfy sigma > 0");
        if (!(expiry > 0.0))
            throw ValidationError("contract: expiry must satisfy T > 0");
        if (monitors < 1)
            throw ValidationError("contract: monitoring count must satisfy M >= 1");
        if (!std::isfinite(spot) || !std::isfinite(strike) || !std::isfinite(upper) ||
            !std::isfinite(rate) || !std::isfinite(vol) || !std::isfinite(expiry))
            throw ValidationError("contract: all parameters must be finite");
    }
};

}  // namespace knockout
