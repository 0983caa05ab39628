#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "knockout/contract.hpp"

namespace knockout {

/// Weight exponents of the Jacobi family J_i^{(a,b)}, orthogonal on [-1,1]
/// under w(x) = (1-x)^a (1+x)^b. Both exponents must exceed -1 for the
/// weight to be integrable.
struct JacobiParams {
    double a = -0.5;
    double b = -0.5;

    void validate() const {
        if (!(a > -1.0) || !(b > -1.0))
            throw ValidationError("jacobi: weight exponents must satisfy a > -1 and b > -1");
    }
};

/// Coefficients of the three-term recurrence
/// J_{i+1}(x) = (a x - b) J_i(x) - c J_{i-1}(x).
struct RecurrenceCoeffs {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Recurrence coefficients for advancing from degree i (>= 1) to i+1.
inline RecurrenceCoeffs recurrence_coeffs(const JacobiParams& p, int i) {
    if (i < 1) throw ValidationError("recurrence_coeffs: degree index must satisfy i >= 1");
    const double s = p.a + p.b;
    const double common = 2.0 * (i + 1) * (i + s + 1);
    // 2i + a + b = 0 would need a + b <= -2, excluded by a, b > -1.
    RecurrenceCoeffs rc;
    rc.a = (2.0 * i + s + 1.0) * (2.0 * i + s + 2.0) / common;
    rc.b = (p.b * p.b - p.a * p.a) * (2.0 * i + s + 1.0) / (common * (2.0 * i + s));
    rc.c = 2.0 * (i + p.a) * (i + p.b) * (2.0 * i + s + 2.0) / (common * (2.0 * i + s));
    return rc;
}

/// Value of J_degree^{(a,b)} at x via the three-term recurrence.
inline double eval_jacobi(const JacobiParams& p, int degree, double x) {
    if (degree < 0) throw ValidationError("eval_jacobi: degree must be non-negative");
    if (degree == 0) return 1.0;
    double prev = 1.0;
    double cur = 0.5 * (p.a + p.b + 2.0) * x + 0.5 * (p.a - p.b);
    for (int i = 1; i < degree; ++i) {
        const RecurrenceCoeffs rc = recurrence_coeffs(p, i);
        const double next = (rc.a * x - rc.b) * cur - rc.c * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Value and first derivative of J_degree^{(a,b)} at x, from the same
/// recurrence run once with its term-wise derivative.
inline std::pair<double, double> eval_jacobi_with_derivative(const JacobiParams& p, int degree,
                                                             double x) {
    if (degree < 0) throw ValidationError("eval_jacobi: degree must be non-negative");
    if (degree == 0) return {1.0, 0.0};
    double prev = 1.0, dprev = 0.0;
    double cur = 0.5 * (p.a + p.b + 2.0) * x + 0.5 * (p.a - p.b);
    double dcur = 0.5 * (p.a + p.b + 2.0);
    for (int i = 1; i < degree; ++i) {
        const RecurrenceCoeffs rc = recurrence_coeffs(p, i);
        const double next = (rc.a * x - rc.b) * cur - rc.c * prev;
        const double dnext = rc.a * cur + (rc.a * x - rc.b) * dcur - rc.c * dprev;
        prev = cur;
        dprev = dcur;
        cur = next;
        dcur = dnext;
    }
    return {cur, dcur};
}

namespace detail {

/// Safeguarded Newton iteration for a root of J_degree inside (lo, hi),
/// where the bracket endpoints carry opposite signs. Falls back to
/// bisection whenever a Newton step leaves the bracket, and runs until the
/// bracket collapses to adjacent doubles so the extreme roots are located
/// to the last ulp.
inline double refine_root(const JacobiParams& p, int degree, double lo, double hi, double guess) {
    double flo = eval_jacobi(p, degree, lo);
    double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    for (int iter = 0; iter < 100; ++iter) {
        const auto [f, df] = eval_jacobi_with_derivative(p, degree, x);
        if (f == 0.0) return x;
        // Shrink the bracket around the sign change.
        if ((f > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = f;
        } else {
            hi = x;
        }
        if (!(std::nextafter(lo, hi) < hi)) break;  // no interior double remains
        double next = (df != 0.0) ? x - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisect
        if (next == x) break;
        x = next;
    }
    // The root is pinched between lo and hi; return the better endpoint.
    const double fhi = eval_jacobi(p, degree, hi);
    flo = eval_jacobi(p, degree, lo);
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

}  // namespace detail

/// Ascending roots of J_count^{(a,b)} in the open interval (-1, 1).
///
/// Roots are located degree by degree: the roots of J_d strictly interlace
/// those of J_{d+1}, so each degree supplies guaranteed brackets for the
/// next, and every root is polished by safeguarded Newton started from the
/// Chebyshev-angle guess for its index. Throws NumericalError if any final
/// residual exceeds 1e-12 relative to max |J_count| on [-1, 1].
inline std::vector<double> jacobi_roots(const JacobiParams& p, int count) {
    p.validate();
    if (count < 1) throw ValidationError("jacobi_roots: root count must be >= 1");

    std::vector<double> roots{(p.b - p.a) / (p.a + p.b + 2.0)};  // J_1 root
    std::vector<double> next;
    for (int d = 2; d <= count; ++d) {
        next.clear();
        next.reserve(d);
        for (int k = 0; k < d; ++k) {
            const double lo = (k == 0) ? -1.0 : roots[k - 1];
            const double hi = (k == d - 1) ? 1.0 : roots[k];
            const double guess = std::cos(M_PI * (2.0 * (d - 1 - k) + 1.0) / (2.0 * d));
            next.push_back(detail::refine_root(p, d, lo, hi, guess));
        }
        roots.swap(next);
    }

    // Residual acceptance: compare against the sampled sup norm.
    double sup = 0.0;
    const int samples = 8 * count + 1;
    for (int s = 0; s <= samples; ++s) {
        const double x = std::cos(M_PI * s / samples);
        sup = std::max(sup, std::abs(eval_jacobi(p, count, x)));
    }
    for (double r : roots) {
        if (!(std::abs(eval_jacobi(p, count, r)) <= 1e-12 * sup))
            throw NumericalError("jacobi_roots: root refinement did not reach tolerance");
    }
    return roots;
}

/// Integral of f(x) against the Jacobi weight on [-1, 1], computed after
/// the substitution x = cos(phi). End panels where the weight is singular
/// are flattened by an additional power substitution and graded dyadically,
/// so the result is accurate to ~1e-12 absolute for a, b in (-1, 1].
/// `degree_hint` bounds the polynomial degree of f and sizes the panels.
template <typename F>
inline double jacobi_weighted_integral(const JacobiParams& p, F&& f, int points_per_panel,
                                       int degree_hint) {
    p.validate();
    const int q = std::max(points_per_panel, 24);

    // Gauss-Legendre rule on [-1, 1], built locally from Legendre roots.
    const JacobiParams legendre{0.0, 0.0};
    const std::vector<double> gx = jacobi_roots(legendre, q);
    std::vector<double> gw(gx.size());
    for (std::size_t k = 0; k < gx.size(); ++k) {
        const auto [v, dv] = eval_jacobi_with_derivative(legendre, q, gx[k]);
        (void)v;
        gw[k] = 2.0 / ((1.0 - gx[k] * gx[k]) * dv * dv);
    }

    // Half-angle form keeps the weight factors exact down to phi near 0:
    // (1 - cos phi)^a (1 + cos phi)^b sin phi
    //   = (2 sin^2(phi/2))^a (2 cos^2(phi/2))^b 2 sin(phi/2) cos(phi/2).
    const auto core = [&](double sh, double ch, double x) {
        const double w = std::pow(2.0 * sh * sh, p.a) * std::pow(2.0 * ch * ch, p.b);
        return f(x) * w * 2.0 * sh * ch;
    };
    const auto integrand = [&](double phi) {
        return core(std::sin(0.5 * phi), std::cos(0.5 * phi), std::cos(phi));
    };
    const auto panel = [&](auto&& g, double lo, double hi) {
        const double half = 0.5 * (hi - lo), mid = 0.5 * (lo + hi);
        double acc = 0.0;
        for (std::size_t k = 0; k < gx.size(); ++k) acc += gw[k] * g(mid + half * gx[k]);
        return acc * half;
    };

    double total = 0.0;
    // Middle region [pi/8, 7 pi/8]: analytic, split for oscillation only.
    const double lo_edge = M_PI / 8.0, hi_edge = M_PI - M_PI / 8.0;
    const int mid_panels = std::max(4, (degree_hint + 5) / 6);
    for (int m = 0; m < mid_panels; ++m) {
        const double a = lo_edge + (hi_edge - lo_edge) * m / mid_panels;
        const double b = lo_edge + (hi_edge - lo_edge) * (m + 1) / mid_panels;
        total += panel(integrand, a, b);
    }
    // End regions: substitute phi = edge * t^pw so the weight singularity
    // (phi^{2a+1} near 0, mirrored near pi) becomes t^{pw(2a+2)-1} with a
    // comfortably positive exponent, then grade dyadically toward t = 0.
    // Both ends are parameterized by the distance phi_local from their own
    // endpoint, which stays exact however small it gets; near pi the
    // half-angle factors swap and x = -cos(phi_local). The substitution
    // compresses f's oscillation toward t = 1, so the top octave is
    // subdivided in proportion to pw * degree.
    for (int side = 0; side < 2; ++side) {
        const double expo = (side == 0) ? p.a : p.b;
        const int pw = std::max(1, static_cast<int>(std::ceil(3.0 / (1.0 + expo))));
        const auto end_integrand = [&](double t) {
            const double phi_local = lo_edge * std::pow(t, pw);
            if (phi_local == 0.0) return 0.0;  // underflow guard; true limit
            const double jac = lo_edge * pw * std::pow(t, pw - 1);
            const double sh = std::sin(0.5 * phi_local), ch = std::cos(0.5 * phi_local);
            const double v = (side == 0) ? core(sh, ch, std::cos(phi_local))
                                         : core(ch, sh, -std::cos(phi_local));
            return v * jac;
        };
        double hi = 1.0;
        for (int level = 0; level < 12; ++level) {
            const double lo = (level == 11) ? 0.0 : hi * 0.5;
            const int sub = (level == 0) ? std::max(2, (pw * (degree_hint + 2)) / 30) : 1;
            for (int m = 0; m < sub; ++m)
                total += panel(end_integrand, lo + (hi - lo) * m / sub,
                               lo + (hi - lo) * (m + 1) / sub);
            hi = lo;
        }
    }
    return total;
}

/// Weighted inner product of J_i and J_j; near zero for i != j.
/// `order` is the Gauss point count per quadrature panel and must be large
/// enough for the combined degree i + j (at least (i + j)/2 + 1).
inline double orthogonality_residual(const JacobiParams& p, int i, int j, int order) {
    if (i < 0 || j < 0) throw ValidationError("orthogonality_residual: degrees must be >= 0");
    const int q = std::max(order, (i + j) / 2 + 12);
    return jacobi_weighted_integral(
        p, [&](double x) { return eval_jacobi(p, i, x) * eval_jacobi(p, j, x); }, q, i + j);
}

}  // namespace knockout
