#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "knockout/lagrange.hpp"

using namespace knockout;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("degree zero grid holds the single shifted root", "[lagrange]") {
    const JacobiParams p{0.2, -0.4};
    const double theta = 0.7;
    const NodeGrid grid = build_grid(p, 0, theta);
    REQUIRE(grid.size() == 1);
    const double root = (p.b - p.a) / (p.a + p.b + 2.0);
    CHECK_THAT(grid.nodes[0], WithinAbs(theta * (root + 1.0) / 2.0, 1e-15));
}

TEST_CASE("a=b=-1/2 grid is shifted Chebyshev points", "[lagrange]") {
    const double theta = std::log(1.5);
    const NodeGrid grid = build_grid(JacobiParams{-0.5, -0.5}, 24, theta);
    REQUIRE(grid.size() == 25);
    for (int i = 0; i < 25; ++i) {
        const double angle = M_PI * (2.0 * (24 - i) + 1.0) / 50.0;
        CHECK_THAT(grid.nodes[i], WithinAbs(theta * (std::cos(angle) + 1.0) / 2.0, 1e-14));
    }
}

TEST_CASE("shifted nodes stay strictly inside (0, theta)", "[lagrange]") {
    for (double theta : {0.01, 0.4, 2.3}) {
        const NodeGrid grid = build_grid(JacobiParams{-0.8, 0.8}, 40, theta);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(grid.nodes[i] > 0.0);
            CHECK(grid.nodes[i] < theta);
            if (i > 0) CHECK(grid.nodes[i] > grid.nodes[i - 1]);
        }
    }
}

TEST_CASE("weights survive high degree without overflow", "[lagrange]") {
    const NodeGrid grid = build_grid(JacobiParams{-0.5, -0.5}, 128, 0.18);
    for (double w : grid.weights) {
        CHECK(std::isfinite(w));
        CHECK(w != 0.0);
        CHECK(std::abs(w) <= 1.0);  // normalized by the largest weight
    }
}

TEST_CASE("cardinal property holds exactly at nodes", "[lagrange]") {
    const NodeGrid grid = build_grid(JacobiParams{-0.5, 0.5}, 12, 1.1);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j)
            CHECK(basis_eval(grid, i, grid.nodes[j]) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("partition of unity", "[lagrange]") {
    const NodeGrid grid = build_grid(JacobiParams{-0.5, -0.5}, 24, std::log(1.5));
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> u(0.0, grid.theta);
    std::vector<double> basis(grid.size());
    for (int trial = 0; trial < 100; ++trial) {
        const double x = u(rng);
        basis_eval_all(grid, x, basis);
        double sum = 0.0;
        for (double b : basis) sum += b;
        CHECK_THAT(sum, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("constant values interpolate to one everywhere", "[lagrange]") {
    const NodeGrid grid = build_grid(JacobiParams{0.0, 0.0}, 9, 0.65);
    const std::vector<double> ones(grid.size(), 1.0);
    for (double x : {0.0, 0.01, 0.3, 0.649, 0.65}) CHECK(interpolate(grid, ones, x) == 1.0);
}

TEST_CASE("monomials up to the grid degree reproduce exactly", "[lagrange]") {
    for (int n : {5, 15, 30}) {
        const NodeGrid grid = build_grid(JacobiParams{-0.5, -0.5}, n, 0.4);
        std::vector<double> samples(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = std::pow(grid.nodes[i], n);
        for (int k = 1; k < 20; ++k) {
            const double x = 0.4 * k / 20.0 + 0.007;  // off-node points
            CHECK_THAT(interpolate(grid, samples, x), WithinRel(std::pow(x, n), 1e-10));
        }
    }
}

TEST_CASE("general low-degree polynomial reproduces exactly", "[lagrange]") {
    const NodeGrid grid = build_grid(JacobiParams{0.3, -0.2}, 7, 1.3);
    const auto poly = [](double x) {
        return ((2.0 * x - 1.1) * x + 0.4) * x * x - 0.9 * x + 3.0;  // degree 4
    };
    std::vector<double> samples(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = poly(grid.nodes[i]);
    for (double x : {0.05, 0.33, 0.71, 1.02, 1.29})
        CHECK_THAT(interpolate(grid, samples, x), WithinRel(poly(x), 1e-12));
}

TEST_CASE("unit vectors interpolate to the matching basis function", "[lagrange]") {
    const NodeGrid grid = build_grid(JacobiParams{-0.5, -0.5}, 6, 0.8);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        std::vector<double> unit(grid.size(), 0.0);
        unit[k] = 1.0;
        for (double x : {0.11, 0.37, 0.52, 0.78})
            CHECK(interpolate(grid, unit, x) == basis_eval(grid, k, x));
    }
}

TEST_CASE("interpolation is idempotent at nodes bit for bit", "[lagrange]") {
    const NodeGrid grid = build_grid(JacobiParams{-0.2, 0.6}, 11, 0.35);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = std::sin(7.0 * grid.nodes[i]);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(interpolate(grid, values, grid.nodes[i]) == values[i]);
}

TEST_CASE("interpolation is linear in the values", "[lagrange]") {
    const NodeGrid grid = build_grid(JacobiParams{-0.5, -0.5}, 14, 0.9);
    std::vector<double> u(grid.size()), v(grid.size()), combo(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        u[i] = std::cos(3.0 * grid.nodes[i]);
        v[i] = std::exp(grid.nodes[i]);
        combo[i] = 2.5 * u[i] - 1.75 * v[i];
    }
    for (double x : {0.04, 0.41, 0.88}) {
        const double direct = interpolate(grid, combo, x);
        const double split = 2.5 * interpolate(grid, u, x) - 1.75 * interpolate(grid, v, x);
        CHECK_THAT(direct, WithinRel(split, 1e-13));
    }
}

TEST_CASE("full-basis evaluation matches single-basis evaluation bitwise", "[lagrange]") {
    const NodeGrid grid = build_grid(JacobiParams{0.8, -0.8}, 19, 0.55);
    std::vector<double> basis(grid.size());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, grid.theta);
    for (int trial = 0; trial < 25; ++trial) {
        const double x = u(rng);
        basis_eval_all(grid, x, basis);
        for (std::size_t i = 0; i < grid.size(); ++i) CHECK(basis[i] == basis_eval(grid, i, x));
    }
}

TEST_CASE("Lebesgue-function probe stays moderate on Chebyshev-type nodes", "[lagrange]") {
    // Stability diagnostic, logged rather than pinned to a sharp bound.
    for (int n : {8, 16, 32}) {
        const NodeGrid grid = build_grid(JacobiParams{-0.5, -0.5}, n, 1.0);
        std::vector<double> basis(grid.size());
        double lebesgue = 0.0;
        for (int k = 0; k <= 1000; ++k) {
            basis_eval_all(grid, k / 1000.0, basis);
            double sum = 0.0;
            for (double b : basis) sum += std::abs(b);
            lebesgue = std::max(lebesgue, sum);
        }
        UNSCOPED_INFO("Lebesgue estimate n=" << n << ": " << lebesgue);
        CHECK(lebesgue < 10.0);  // ~ (2/pi) log n + 1 for Chebyshev-type nodes
    }
}

TEST_CASE("grid construction rejects bad arguments", "[lagrange]") {
    CHECK_THROWS_AS(build_grid(JacobiParams{-0.5, -0.5}, -1, 1.0), ValidationError);
    CHECK_THROWS_AS(build_grid(JacobiParams{-0.5, -0.5}, 3, 0.0), ValidationError);
    const NodeGrid grid = build_grid(JacobiParams{-0.5, -0.5}, 3, 1.0);
    const std::vector<double> wrong(3, 1.0);
    CHECK_THROWS_AS(interpolate(grid, wrong, 0.5), ValidationError);
}
