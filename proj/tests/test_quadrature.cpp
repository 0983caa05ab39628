#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "knockout/quadrature.hpp"
#include "oracle_helpers.hpp"

using namespace knockout;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
// Example 1 geometry: L=95, U=120, sigma=0.25, M=125.
struct Example1Setup {
    double theta = std::log(120.0 / 95.0);
    double c2 = 0.5 * 0.25 * 0.25;
    double tau = 0.5 / 125.0;
    NodeGrid grid = build_grid(JacobiParams{-0.5, -0.5}, 24, theta);
};
}  // namespace

TEST_CASE("Gauss-Legendre panel basics", "[quad]") {
    CHECK_THAT(gauss_legendre_panel([](double) { return 1.0; }, 0.0, 1.0, 12),
               WithinAbs(1.0, 1e-15));
    CHECK_THAT(gauss_legendre_panel([](double x) { return x * x * x; }, -1.0, 1.0, 8),
               WithinAbs(0.0, 1e-15));
    // order 40 is exact through degree 79
    CHECK_THAT(gauss_legendre_panel([](double x) { return std::pow(x, 79.0); }, 0.0, 1.0, 40),
               WithinRel(1.0 / 80.0, 1e-13));
    CHECK_THROWS_AS(gauss_legendre_panel([](double) { return 1.0; }, 1.0, 0.0, 8),
                    ValidationError);
    CHECK_THROWS_AS(GaussLegendreRule(0), ValidationError);
}

TEST_CASE("kernel-exponential moment closed form", "[quad]") {
    const double c2 = 0.03125, tau = 0.1;
    SECTION("normalization over the real line") {
        const double inf = std::numeric_limits<double>::infinity();
        CHECK_THAT(gaussian_exp_moment(0.3, 0.0, -inf, inf, tau, c2), WithinAbs(1.0, 1e-15));
    }
    SECTION("symmetric window mass") {
        const double w = 0.17, x = 0.4;
        const double expected = std::erf(w / (2.0 * std::sqrt(c2 * tau)));
        CHECK_THAT(gaussian_exp_moment(x, 0.0, x - w, x + w, tau, c2),
                   WithinRel(expected, 1e-14));
    }
    SECTION("exponential tilt against brute-force panels") {
        const double x = 0.2, lam = 1.0, lo = 0.0, hi = std::log(1.5);
        const double brute = oracle::brute_integral(
            [&](double xi) { return heat_kernel(x - xi, tau, c2) * std::exp(lam * xi); }, lo, hi,
            10, 40);
        CHECK_THAT(gaussian_exp_moment(x, lam, lo, hi, tau, c2), WithinRel(brute, 1e-10));
    }
    SECTION("random-parameter sweep against brute-force panels") {
        const double cases[][4] = {
            {1.3, 0.05, 0.0513, 0.2336}, {-0.3, 0.9, 0.0, 0.4}, {2.7, -0.1, 0.1, 0.25}};
        for (const auto& cs : cases) {
            const double lam = cs[0], x = cs[1], lo = cs[2], hi = cs[3];
            const double brute = oracle::brute_integral(
                [&](double xi) { return heat_kernel(x - xi, 0.004, c2) * std::exp(lam * xi); },
                lo, hi, 40, 40);
            CHECK_THAT(gaussian_exp_moment(x, lam, lo, hi, 0.004, c2), WithinRel(brute, 1e-10));
        }
    }
    SECTION("additivity in the interval") {
        const double x = 0.1, lam = 0.7, lo = 0.0, mid = 0.19, hi = 0.35;
        const double whole = gaussian_exp_moment(x, lam, lo, hi, tau, c2);
        const double split = gaussian_exp_moment(x, lam, lo, mid, tau, c2) +
                             gaussian_exp_moment(x, lam, mid, hi, tau, c2);
        CHECK_THAT(split, WithinRel(whole, 1e-12));
    }
    SECTION("domain errors") {
        CHECK_THROWS_AS(gaussian_exp_moment(0.0, 0.0, 0.0, 1.0, 0.0, c2), ValidationError);
        CHECK_THROWS_AS(gaussian_exp_moment(0.0, 0.0, 0.0, 1.0, -0.1, c2), ValidationError);
        CHECK_THROWS_AS(gaussian_exp_moment(0.0, 0.0, 1.0, 0.0, tau, c2), ValidationError);
        CHECK(gaussian_exp_moment(0.0, 0.3, 0.2, 0.2, tau, c2) == 0.0);
    }
}

TEST_CASE("kernel-basis integrals: row sums collapse to the erf mass", "[quad]") {
    const Example1Setup ex;
    const GaussLegendreRule rule(40);
    std::vector<double> row(ex.grid.size());
    for (std::size_t i = 0; i < ex.grid.size(); ++i) {
        kernel_basis_row(ex.grid, i, ex.tau, ex.c2, QuadConfig{}, rule, row);
        double sum = 0.0;
        for (double v : row) sum += v;
        const double mass =
            gaussian_exp_moment(ex.grid.nodes[i], 0.0, 0.0, ex.theta, ex.tau, ex.c2);
        CHECK_THAT(sum, WithinAbs(mass, 1e-10));
    }
}

TEST_CASE("kernel-basis integrals vanish for huge tau", "[quad]") {
    const Example1Setup ex;
    const double tau = 1e6;
    const double sup = 1.0 / std::sqrt(4.0 * M_PI * ex.c2 * tau);
    for (std::size_t j = 0; j < ex.grid.size(); j += 6) {
        const double kij = kernel_basis_integral(ex.grid, 3, j, tau, ex.c2, QuadConfig{});
        CHECK(std::abs(kij) <= ex.theta * sup);
    }
}

TEST_CASE("degree-zero grid reduces the entry to the erf mass", "[quad]") {
    const Example1Setup ex;
    const NodeGrid g0 = build_grid(JacobiParams{-0.5, -0.5}, 0, ex.theta);
    const double k00 = kernel_basis_integral(g0, 0, 0, ex.tau, ex.c2, QuadConfig{});
    const double mass = gaussian_exp_moment(g0.nodes[0], 0.0, 0.0, ex.theta, ex.tau, ex.c2);
    CHECK_THAT(k00, WithinRel(mass, 1e-12));
}

TEST_CASE("small-degree entries match the monomial-expansion oracle", "[quad]") {
    // Expand L_j in monomials (exact for n <= 5) and integrate each monomial
    // against the kernel in closed form.
    const double theta = 0.31, c2 = 0.02, tau = 0.01;
    for (int n : {2, 5}) {
        const NodeGrid grid = build_grid(JacobiParams{-0.3, 0.4}, n, theta);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto moments =
                oracle::kernel_monomial_moments(grid.nodes[i], theta, tau, c2, n);
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const auto coef = oracle::lagrange_monomial_coeffs(grid, j);
                double expected = 0.0;
                for (std::size_t m = 0; m < coef.size(); ++m) expected += coef[m] * moments[m];
                const double kij = kernel_basis_integral(grid, i, j, tau, c2, QuadConfig{});
                CHECK_THAT(kij, WithinAbs(expected, 1e-12 + 1e-9 * std::abs(expected)));
            }
        }
    }
}

TEST_CASE("doubling the panel order barely moves the entries", "[quad]") {
    const Example1Setup ex;
    QuadConfig doubled;
    doubled.panel_order = 80;
    for (auto [i, j] : std::vector<std::pair<std::size_t, std::size_t>>{
             {0, 0}, {3, 17}, {12, 12}, {24, 1}}) {
        const double base = kernel_basis_integral(ex.grid, i, j, ex.tau, ex.c2, QuadConfig{});
        const double fine = kernel_basis_integral(ex.grid, i, j, ex.tau, ex.c2, doubled);
        CHECK_THAT(fine, WithinAbs(base, 1e-11 * (1.0 + std::abs(base))));
    }
}

TEST_CASE("per-entry and whole-row paths agree bitwise", "[quad]") {
    const Example1Setup ex;
    const GaussLegendreRule rule(QuadConfig{}.panel_order);
    std::vector<double> row(ex.grid.size());
    kernel_basis_row(ex.grid, 7, ex.tau, ex.c2, QuadConfig{}, rule, row);
    for (std::size_t j = 0; j < ex.grid.size(); ++j)
        CHECK(row[j] == kernel_basis_integral(ex.grid, 7, j, ex.tau, ex.c2, QuadConfig{}));
}

TEST_CASE("panel layout covers the corridor exactly", "[quad]") {
    const Example1Setup ex;
    const auto edges = convolution_panels(ex.grid, ex.grid.nodes[10], ex.tau, ex.c2, QuadConfig{});
    REQUIRE(edges.size() >= 2);
    CHECK(edges.front() == 0.0);
    CHECK(edges.back() == ex.theta);
    const double cap = 4.0 * std::sqrt(ex.c2 * ex.tau) + 1e-12;
    for (std::size_t k = 1; k < edges.size(); ++k) {
        CHECK(edges[k] > edges[k - 1]);
        CHECK(edges[k] - edges[k - 1] <= cap);
    }
    CHECK_THROWS_AS([&] {
        QuadConfig bad;
        bad.panel_order = 1;
        bad.validate();
    }(), ValidationError);
}
