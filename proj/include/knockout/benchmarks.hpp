#pragma once

#include <chrono>
#include <cstdio>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "knockout/oracles.hpp"
#include "knockout/pricer.hpp"
#include "knockout/tables.hpp"

namespace knockout {

/// One benchmark comparison: a computed value against an embedded target.
/// Unscored cases are reported but excluded from the pass/fail verdict
/// (known breakdowns of the continuity correction near the spot).
struct BenchmarkCase {
    std::string label;
    double computed = std::numeric_limits<double>::quiet_NaN();
    double target = std::numeric_limits<double>::quiet_NaN();
    double tolerance = 0.0;
    bool pass = false;
    bool scored = true;
    std::string note;
};

struct BenchmarkRun {
    int table_id = 0;
    std::string description;
    std::vector<BenchmarkCase> cases;
    double seconds = 0.0;

    bool all_scored_pass() const {
        for (const auto& c : cases)
            if (c.scored && !c.pass) return false;
        return true;
    }
    double max_scored_deviation() const {
        double d = 0.0;
        for (const auto& c : cases)
            if (c.scored && std::isfinite(c.computed))
                d = std::max(d, std::abs(c.computed - c.target));
        return d;
    }
};

namespace detail {

inline std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return std::string(buf);
}

inline BenchmarkCase make_case(std::string label, double computed, double target, double tol) {
    BenchmarkCase c;
    c.label = std::move(label);
    c.computed = computed;
    c.target = target;
    c.tolerance = tol;
    c.pass = std::isfinite(computed) && std::abs(computed - target) <= tol;
    return c;
}

}  // namespace detail

/// Table 1: max-error robustness across the Jacobi weight-exponent grid at
/// 25 nodes, against the 100-node a=b=-1/2 reference. A case passes when
/// the computed error stays below 5e-4; the embedded value is the reported
/// error, echoed for comparison.
inline BenchmarkRun run_table1(const QuadConfig& cfg = {}) {
    const auto start = std::chrono::steady_clock::now();
    BenchmarkRun run;
    run.table_id = 1;
    run.description = "weight-exponent robustness, max error over spot (25 nodes, L=95, M=125)";
    const OptionContract contract{100.0, 100.0, 95.0, 120.0, 0.05, 0.25, 0.5, 125};
    const std::vector<double> spots = spot_grid(95.0, 120.0, 50);
    const auto ref_curve = price_curve(contract, spots, 99, JacobiParams{-0.5, -0.5}, cfg);
    std::vector<double> ref;
    ref.reserve(ref_curve.size());
    for (const auto& r : ref_curve) ref.push_back(r.price);
    for (const auto& row : benchmark_table(1)) {
        const JacobiParams p{row[0], row[1]};
        const double err = max_error_study(contract, 24, p, spots, ref, cfg);
        BenchmarkCase c;
        c.label = "a=" + detail::fmt_num(row[0]) + " b=" + detail::fmt_num(row[1]);
        c.computed = err;
        c.target = row[2];
        c.tolerance = 5e-4;
        c.pass = err <= 5e-4;
        run.cases.push_back(std::move(c));
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

/// Table 2: the 15 (M, L) double-barrier prices at 25 nodes, 5e-4 absolute.
inline BenchmarkRun run_table2(const QuadConfig& cfg = {}) {
    const auto start = std::chrono::steady_clock::now();
    BenchmarkRun run;
    run.table_id = 2;
    run.description = "double-barrier prices across (M, L) (25 nodes)";
    for (const auto& row : benchmark_table(2)) {
        const int monitors = static_cast<int>(row[0]);
        const OptionContract c{100.0, 100.0, row[1], 120.0, 0.05, 0.25, 0.5, monitors};
        const double computed = price(c, 24, JacobiParams{-0.5, -0.5}, cfg).price;
        run.cases.push_back(detail::make_case(
            "M=" + detail::fmt_num(monitors) + " L=" + detail::fmt_num(row[1]), computed, row[2],
            5e-4));
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

/// Table 3: the 9-spot sweep at 25 nodes, 2e-5 absolute.
inline BenchmarkRun run_table3(const QuadConfig& cfg = {}) {
    const auto start = std::chrono::steady_clock::now();
    BenchmarkRun run;
    run.table_id = 3;
    run.description = "double-barrier prices across spot (25 nodes, M=5, L=95, U=110)";
    const auto rows = benchmark_table(3);
    std::vector<double> spots;
    spots.reserve(rows.size());
    for (const auto& row : rows) spots.push_back(row[0]);
    OptionContract tmpl{100.0, 100.0, 95.0, 110.0, 0.05, 0.25, 0.5, 5};
    const auto curve = price_curve(tmpl, spots, 24, JacobiParams{-0.5, -0.5}, cfg);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        run.cases.push_back(detail::make_case("S0=" + detail::fmt_num(spots[k]), curve[k].price,
                                              rows[k][1], 2e-5));
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

/// Table 4: single-barrier embedding at 50 nodes, 2e-4 absolute. The
/// (L=99.9, M=125) row reports the method's converged value, which sits
/// 4.7e-4 from the published benchmark; it is scored and fails honestly.
inline BenchmarkRun run_table4(const QuadConfig& cfg = {}) {
    const auto start = std::chrono::steady_clock::now();
    BenchmarkRun run;
    run.table_id = 4;
    run.description = "single-barrier embedding via U=2.5E (50 nodes)";
    for (const auto& row : benchmark_table(4)) {
        const int monitors = static_cast<int>(row[1]);
        const PriceResult r = single_barrier_price(100.0, 100.0, row[0], 0.1, 0.2, 0.5, monitors,
                                                   49, JacobiParams{-0.5, -0.5}, cfg);
        BenchmarkCase c = detail::make_case(
            "L=" + detail::fmt_num(row[0]) + " M=" + detail::fmt_num(monitors), r.price, row[2],
            2e-4);
        if (!c.pass && row[0] == 99.9 && monitors == 125)
            c.note = "method converges to 1.5102126; published benchmark differs by 4.7e-4";
        run.cases.push_back(std::move(c));
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

/// Table 5: continuity-corrected single-barrier prices against the
/// continuous-monitoring values at 50 nodes, 8e-3 absolute for L <= 97.
/// The L=99 rows document the correction's near-spot breakdown and are not
/// scored; at M=50 the shifted barrier exceeds the spot, so that cell has
/// no admissible contract at all.
inline BenchmarkRun run_table5(const QuadConfig& cfg = {}) {
    const auto start = std::chrono::steady_clock::now();
    BenchmarkRun run;
    run.table_id = 5;
    run.description = "continuity correction vs continuous monitoring (50 nodes)";
    for (const auto& row : benchmark_table(5)) {
        for (int monitors : {50, 125}) {
            const double lower = row[0];
            const std::string label =
                "L=" + detail::fmt_num(lower) + " M=" + detail::fmt_num(monitors);
            const double shifted = continuity_correction(lower, 0.3, 0.2 / monitors);
            if (shifted >= 100.0) {
                BenchmarkCase c;
                c.label = label;
                c.target = row[1];
                c.tolerance = 8e-3;
                c.scored = false;
                c.note = "known breakdown: adjusted barrier above the spot";
                run.cases.push_back(std::move(c));
                continue;
            }
            const PriceResult r = corrected_down_out_price(100.0, 100.0, lower, 0.1, 0.3, 0.2,
                                                           monitors, 49, JacobiParams{-0.5, -0.5},
                                                           cfg);
            BenchmarkCase c = detail::make_case(label, r.price, row[1], 8e-3);
            if (lower >= 99.0) {
                c.scored = false;
                c.note = "known breakdown near the spot";
            }
            run.cases.push_back(std::move(c));
        }
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

inline BenchmarkRun run_table(int id, const QuadConfig& cfg = {}) {
    switch (id) {
        case 1: return run_table1(cfg);
        case 2: return run_table2(cfg);
        case 3: return run_table3(cfg);
        case 4: return run_table4(cfg);
        case 5: return run_table5(cfg);
        default: throw ValidationError("run_table: table id must be 1..5");
    }
}

}  // namespace knockout
