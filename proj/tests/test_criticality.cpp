#include <doctest.h>

#include <cmath>
#include <random>

#include "otoclab/criticality.hpp"

using namespace otoc;

TEST_CASE("asymptotic average closed form") {
    CHECK(asymptotic_fbar(1.0, 1.0) == doctest::Approx(0.32).epsilon(1e-15));
    CHECK(asymptotic_fbar(2.0 * std::sqrt(2.0), 1.0) ==
          doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    CHECK(std::abs(asymptotic_fbar(std::sqrt(2.0), 1.0)) <= 1e-15);
    CHECK(asymptotic_fbar(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> wd(0.0, 10.0);
    for (int k = 0; k < 20; ++k) {
        const double w = wd(rng);
        CHECK(asymptotic_fbar(w, 1.0) == doctest::Approx(asymptotic_fbar(-w, 1.0)).epsilon(1e-14));
        CHECK(asymptotic_fbar(w, 1.0) <= 1.0);
        CHECK(asymptotic_fbar(w, 1.0) >= -1.0 / 3.0 - 1e-12);
    }

    // minimum at w = 2 sqrt(2) j_a: derivative changes sign there
    const double wmin = 2.0 * std::sqrt(2.0);
    CHECK(asymptotic_fbar(wmin - 0.05, 1.0) > asymptotic_fbar(wmin, 1.0));
    CHECK(asymptotic_fbar(wmin + 0.05, 1.0) > asymptotic_fbar(wmin, 1.0));

    CHECK_THROWS_AS(asymptotic_fbar(1.0, 0.0), std::domain_error);
}

TEST_CASE("log-log fit recovers exact power laws") {
    const std::vector<int> ns{10, 20, 40, 80, 160, 320};
    std::vector<double> ys;
    for (int n : ns) ys.push_back(3.0 * std::pow(n, -0.7));
    const ScalingFit fit = fit_loglog(ns, ys);
    CHECK(fit.slope == doctest::Approx(-0.7).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
    CHECK(fit.slope_stderr <= 1e-12);
    CHECK(fit.fit_window == ns);

    CHECK_THROWS_AS(fit_loglog({10, 20, 40, 80}, {1, 2, 3, 4}), std::invalid_argument);
    CHECK_THROWS_AS(fit_loglog(ns, {1, 2, 3, 4, 5, -6}), std::invalid_argument);
}

TEST_CASE("t_min detector on closed-form signals") {
    const double omega = 17.0;
    const auto cosine = [&](double t) { return std::cos(omega * t); };
    TminOptions opts;
    opts.t_guess = 2.0 * M_PI / omega;
    const double tmin = t_min_detect(cosine, opts);
    CHECK(tmin == doctest::Approx(M_PI / omega).epsilon(1e-5));

    const auto decaying = [](double t) { return std::exp(-t); };
    TminOptions fail_opts;
    fail_opts.t_guess = 1.0;
    CHECK_THROWS_AS(t_min_detect(decaying, fail_opts), std::runtime_error);
}

TEST_CASE("t_min detector matches a dense scan on a real OTOC") {
    const ModelParams p{.n = 2, .u = -0.9, .j = 1.0, .j_a = 1.1, .w = 0.8};
    const EigenDecomposition d = diagonalize_model(p);
    const OperatorMatrix sx = qubit_sigma_x(p.n);
    const OtocEvaluator f(d, sx, sx, ground_state(d));
    const auto re_f = [&](double t) { return f(t).real(); };

    TminOptions opts;
    opts.t_guess = qubit_t_guess(p);
    const double tmin = t_min_detect(re_f, opts);

    // dense scan with 1e6 points bracketing the first dip; the fine step
    // makes the grid argmin itself accurate to ~1e-5
    const double t_max = 2.0 * opts.t_guess;
    const int points = 1000000;
    double prev2 = re_f(0.0), prev = re_f(t_max / points);
    double dense = -1.0;
    for (int k = 2; k <= points; ++k) {
        const double here = re_f(t_max * k / points);
        if (prev < prev2 && prev < here) {
            dense = t_max * (k - 1) / points;
            break;
        }
        prev2 = prev;
        prev = here;
    }
    REQUIRE(dense > 0.0);
    CHECK(std::abs(tmin - dense) <= 1e-5 * std::max(1.0, dense));
}

TEST_CASE("lambda sweep shape at small N") {
    ModelParams tmpl{.n = 40, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 1.0};
    SweepOptions opts;
    opts.workers = 2;
    const SweepResult sweep = sweep_lambda(tmpl, {1.0, 0.0, -1.0, -2.0}, opts);
    REQUIRE(sweep.points.size() == 4);
    for (std::size_t i = 0; i < sweep.points.size(); ++i) {
        CHECK(sweep.points[i].ok);
        if (i) CHECK(sweep.points[i].axis > sweep.points[i - 1].axis);
    }
    // F decreases and PR grows toward the broken phase
    CHECK(sweep.points.back().f_bar > 0.95);
    CHECK(sweep.points.front().f_bar < sweep.points.back().f_bar);
    CHECK(sweep.points.front().pr > sweep.points.back().pr);
}

TEST_CASE("sweep records per-point failures and keeps going") {
    ModelParams tmpl{.n = 10, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 2.0}; // Lambda_c = 0
    const SweepResult sweep = sweep_lambda(tmpl, {-1.0, 0.0, 1.0});
    REQUIRE(sweep.points.size() == 3);
    CHECK(!sweep.points[0].ok);  // lambda != 0 is undefined at Lambda_c = 0
    CHECK(sweep.points[1].ok);   // lambda = 0 lands on Lambda = 0
    CHECK(!sweep.points[2].ok);
    CHECK(!sweep.points[0].error.empty());
}

TEST_CASE("phase diagram columns behave across the critical line") {
    const ModelParams tmpl{.n = 30, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 0.0};
    const std::vector<double> lambdas{-2.5, -1.5, 0.0};
    const std::vector<double> ws{0.0, 1.0};
    SweepOptions opts;
    opts.workers = 2;
    const PhaseDiagramGrid grid = phase_diagram(lambdas, ws, tmpl, opts);

    REQUIRE(grid.c_half.rows() == 3);
    REQUIRE(grid.c_half.cols() == 2);
    CHECK(grid.critical_line[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(grid.critical_line[1] == doctest::Approx(-0.75).epsilon(1e-14));

    // decoupled column: sigma_x is conserved, C stays at zero
    for (int il = 0; il < 3; ++il) CHECK(std::abs(grid.c_half(il, 0)) <= 1e-9);
    // coupled column: normal phase small, broken phase large
    CHECK(grid.c_half(2, 1) < 0.1);  // Lambda = 0 (normal)
    CHECK(grid.c_half(0, 1) > 0.1);  // Lambda = -2.5 (broken)

    CHECK_THROWS_AS(phase_diagram({}, ws, tmpl), std::invalid_argument);
}

TEST_CASE("b scaling at reduced sizes") {
    const ModelParams tmpl{.n = 0, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 1.0};
    const std::vector<int> ns{30, 45, 70, 105, 160, 240};
    const BScalingResult res = scaling_b(tmpl, ns);
    CHECK(res.skipped_n.empty());
    CHECK(res.fit.slope < 0.0);
    CHECK(res.b == doctest::Approx(-res.fit.slope).epsilon(1e-15));
    CHECK(res.b > 0.4);
    CHECK(res.b < 1.0);
}

TEST_CASE("z scaling slope is +1/3 at reduced sizes") {
    const ModelParams tmpl{.n = 0, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 1.0};
    const std::vector<int> ns{30, 45, 70, 105, 160};
    const TminScalingResult no_qubit = scaling_z(false, tmpl, ns);
    CHECK(no_qubit.exponent > 0.2);
    CHECK(no_qubit.exponent < 0.45);
}

TEST_CASE("esqpt scan structure at small N") {
    ModelParams p{.n = 40, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 1.0};
    p = p.with_capital_lambda(-10.0);
    const EsqptScan scan = esqpt_scan(p, OpTag::sigma_z);

    CHECK(scan.e_c_lower == doctest::Approx(-80.0).epsilon(1e-14));
    CHECK(scan.e_c_upper == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    REQUIRE(scan.levels.size() == 82);
    for (std::size_t k = 1; k < scan.levels.size(); ++k)
        CHECK(scan.levels[k].energy >= scan.levels[k - 1].energy);

    REQUIRE(scan.split_lower.has_value());
    REQUIRE(scan.split_upper.has_value());
    CHECK(*scan.split_lower > scan.levels.front().energy);
    CHECK(*scan.split_lower < *scan.split_upper);
    // degeneracy breaking happens in the vicinity of the critical energies
    CHECK(std::abs(*scan.split_lower - scan.e_c_lower) <= 0.3 * p.n);
    CHECK(std::abs(*scan.split_upper - scan.e_c_upper) <= 0.3 * p.n);

    // below the lower critical energy the doublet averages coincide
    CHECK(scan.levels[0].parity * scan.levels[1].parity == -1);
    CHECK(std::abs(scan.levels[0].f_bar - scan.levels[1].f_bar) <= 1e-6);
}

TEST_CASE("PR maximization finds an interior maximum") {
    const ModelParams tmpl{.n = 40, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 0.0};
    PrMaxOptions opts;
    opts.lambda_lo = -4.0;
    opts.lambda_hi = 0.5;
    opts.coarse_points = 15;
    opts.variance = {300.0, 2000};
    opts.workers = 2;
    const auto points = pr_max_analysis({1.0, 4.0}, tmpl, opts);
    REQUIRE(points.size() == 2);
    for (const PrMaxPoint& pt : points) {
        CHECK(pt.pr_max >= 1.0);
        CHECK(pt.lambda_at_max >= opts.lambda_lo);
        CHECK(pt.lambda_at_max <= opts.lambda_hi);
        CHECK(pt.variance >= 0.0);
    }
}
