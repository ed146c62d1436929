#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nemflow/config.hpp"
#include "nemflow/equilibrium.hpp"
#include "test_helpers.hpp"

using namespace nemflow;
using namespace nemflow::test;

TEST_CASE("solve_steady") {
    SUBCASE("quadratic potential, zero boundary data: d_inf = 0 in <= 2 newton iterations") {
        Grid g = unit_grid(24, BcMode::dirichlet);
        DirectorField seed = random_director(g, 2, 3, 0.5);
        // Seed must satisfy the trace: damp it to zero near the walls.
        for (int c = 0; c < 2; ++c)
            for (int j = 0; j < 24; ++j)
                for (int i = 0; i < 24; ++i)
                    seed.c[c](i, j) *= std::sin(kPi * g.xc(i)) * std::sin(kPi * g.yc(j));
        BoundaryData zero(g, 2);
        SteadySolution sol = solve_steady(seed, &zero, Potential::quadratic(3.0));
        CHECK(sol.residual_norm <= 1e-10);
        CHECK(sol.iterations <= 2);
        CHECK(norm(sol.d_inf, NormKind::Linf) < 1e-9);
        CHECK(sol.method == "newton");
    }

    SUBCASE("GL with constant unit trace: the constant extension is already steady") {
        Grid g = unit_grid(16, BcMode::dirichlet);
        DirectorField seed(g, 2);
        seed.c[0].fill(1.0);
        BoundaryData bd = BoundaryData::from_function(g, 2, [](double, double, int c) {
            return c == 0 ? 1.0 : 0.0;
        });
        SteadySolution sol = solve_steady(seed, &bd, Potential::ginzburg_landau(0.5));
        CHECK(sol.residual_norm <= 1e-12);
        CHECK(sol.iterations == 0);
        CHECK(bulk_energy(sol.d_inf, Potential::ginzburg_landau(0.5)) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("GL eta=0.2, winding-free smooth trace: newton agrees with a gradient-flow run") {
        const double eta = 0.2;
        const Potential pot = Potential::ginzburg_landau(eta);
        Grid g = unit_grid(32, BcMode::dirichlet);
        auto angle = [](double x, double y) { return 0.6 * x + 0.4 * y * y; };
        BoundaryData bd = BoundaryData::from_function(g, 2, [&](double x, double y, int c) {
            return c == 0 ? std::cos(angle(x, y)) : std::sin(angle(x, y));
        });

        // Harmonic extension of the trace as the newton seed.
        DirectorField seed(g, 2);
        LinearSolveConfig lin;
        for (int c = 0; c < 2; ++c) {
            Array2 rhs(32, 32);
            add_dirichlet_lift(rhs, bd, c, 1.0, g);
            seed.c[c] = solve_helmholtz_cc(rhs, 0.0, 1.0, g, lin);
        }
        SteadySolution sol = solve_steady(seed, &bd, pot);
        CHECK(sol.residual_norm <= 1e-10);

        // Independent oracle: long semi-implicit gradient flow from the same
        // seed (pseudo-time ~ 10^3 steps).
        DirectorField d = seed;
        apply_bc(d, &bd);
        VelocityField v(g);
        apply_bc(v);
        Params p;
        p.potential = pot;
        const double dtau = 0.5 * eta * eta / 3.0;
        for (int k = 0; k < 3000; ++k) d = director_step(d, v, dtau, p, &bd);

        DirectorField diff(g, 2);
        for (int c = 0; c < 2; ++c)
            for (int j = 0; j < 32; ++j)
                for (int i = 0; i < 32; ++i) diff.c[c](i, j) = d.c[c](i, j) - sol.d_inf.c[c](i, j);
        // H1 of the difference: zero trace, so the ghost pattern is the
        // dirichlet reflection with g = 0.
        BoundaryData zero(g, 2);
        apply_bc(diff, &zero);
        CHECK(h1_norm(diff) < 1e-6);
    }

    SUBCASE("indefinite seed region: fallback flow rescues newton") {
        // Seed near d = 0 where f'(d) ~ -I/eta^2 makes -lap + f'(d) indefinite
        // on coarse modes; the solver must detour through gradient flow and
        // still certify a solution.
        const double eta = 0.2;
        Grid g = unit_grid(24, BcMode::dirichlet);
        const Potential pot = Potential::ginzburg_landau(eta);
        BoundaryData bd = BoundaryData::from_function(g, 2, [](double x, double y, int c) {
            const double a = 0.4 * x + 0.3 * y;
            return c == 0 ? std::cos(a) : std::sin(a);
        });
        // Interior ~0, boundary-compatible only through the ghost fill.
        DirectorField seed(g, 2);
        for (int j = 0; j < 24; ++j)
            for (int i = 0; i < 24; ++i) {
                const double damp = std::sin(kPi * g.xc(i)) * std::sin(kPi * g.yc(j));
                const double a = 0.4 * g.xc(i) + 0.3 * g.yc(j);
                seed.c[0](i, j) = (1.0 - damp) * std::cos(a) * 0.02;
                seed.c[1](i, j) = (1.0 - damp) * std::sin(a) * 0.02;
            }
        SteadySolution sol = solve_steady(seed, &bd, pot);
        CHECK(sol.residual_norm <= 1e-10);
        CHECK(norm(sol.d_inf, NormKind::Linf) <= 1.0 + 1e-6);
    }

    SUBCASE("steady solutions are fixed points of director_step") {
        Grid g = unit_grid(24, BcMode::dirichlet);
        const Potential pot = Potential::ginzburg_landau(0.3);
        BoundaryData bd = BoundaryData::from_function(g, 2, [](double x, double y, int c) {
            const double a = 0.5 * x - 0.3 * y;
            return c == 0 ? std::cos(a) : std::sin(a);
        });
        DirectorField seed(g, 2);
        for (int j = 0; j < 24; ++j)
            for (int i = 0; i < 24; ++i) {
                const double a = 0.5 * g.xc(i) - 0.3 * g.yc(j);
                seed.c[0](i, j) = std::cos(a);
                seed.c[1](i, j) = std::sin(a);
            }
        SteadySolution sol = solve_steady(seed, &bd, pot);
        VelocityField v(g);
        apply_bc(v);
        Params p;
        p.potential = pot;
        const double dt = 5e-3;
        DirectorField next = director_step(sol.d_inf, v, dt, p, &bd);
        DirectorField diff(g, 2);
        for (int c = 0; c < 2; ++c)
            for (int j = 0; j < 24; ++j)
                for (int i = 0; i < 24; ++i) diff.c[c](i, j) = next.c[c](i, j) - sol.d_inf.c[c](i, j);
        // The 1e-14 floor covers solver roundoff when the residual certificate
        // is already at machine precision.
        CHECK(norm(diff, NormKind::L2) <= p.gamma * dt * sol.residual_norm * 1.1 + 1e-14);
    }
}

TEST_CASE("free-slip relaxation reaches a zero-flux steady state") {
    // With zero normal flux the GL critical set is a continuum (any constant
    // unit director); seeding the stationary solve from the trajectory
    // endpoint selects the limit the run actually approached.
    SimConfig cfg = preset_default_config("freeslip-box");
    cfg.nx = cfg.ny = 24;
    Grid g = cfg.make_grid();
    SimState st = preset_initial_state("freeslip-box", g, 2);
    SimContext ctx;
    ctx.params = cfg.params;
    apply_bc(st.flow.v);
    apply_bc(st.flow.p);
    apply_bc(st.d, nullptr);
    StoppingCriteria stop;
    stop.t_max = 50.0;
    stop.residual_target = 1e-8;
    DtPolicy dtp;
    dtp.adaptive = true;
    dtp.cap = 5e-3;
    RunResult res = run_simulation(st, ctx, stop, dtp, 10);
    REQUIRE(res.termination == "residual_target");

    SteadySolution sol = solve_steady(res.final_state.d, nullptr, ctx.params.potential);
    CHECK(sol.residual_norm <= 1e-10);
    DirectorField diff(g, 2);
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                diff.c[c](i, j) = res.final_state.d.c[c](i, j) - sol.d_inf.c[c](i, j);
    CHECK(norm(diff, NormKind::L2) < 1e-4);
    // The limit is (numerically) a uniform unit director.
    CHECK(norm(sol.d_inf, NormKind::H1semi) < 1e-5);
    CHECK(norm(sol.d_inf, NormKind::Linf) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("lyapunov gap") {
    SUBCASE("equilibrium-initialized records give zero gap") {
        std::vector<EnergyRecord> recs(5);
        for (int k = 0; k < 5; ++k) {
            recs[k].t = 0.1 * k;
            recs[k].total = 2.0;
        }
        GapSeries gap = lyapunov_gap(recs, 2.0);
        for (double v : gap.gap) CHECK(v <= 1e-10);
    }

    SUBCASE("wrong equilibrium (higher energy) raises") {
        std::vector<EnergyRecord> recs(5);
        for (int k = 0; k < 5; ++k) {
            recs[k].t = 0.1 * k;
            recs[k].total = 2.0 - 0.1 * k;
        }
        CHECK_THROWS_AS(lyapunov_gap(recs, 3.0), NumericalError);
    }
}

TEST_CASE("fit_decay on synthetic series") {
    SUBCASE("y = 3 exp(-2t): exponential, kappa = 2.00 +- 0.01") {
        std::vector<double> t, y;
        for (int k = 0; k <= 100; ++k) {
            t.push_back(0.05 * k);
            y.push_back(3.0 * std::exp(-2.0 * t.back()));
        }
        RateFit fit = fit_decay(t, y, 0.0, 5.0);
        CHECK(fit.model == "exponential");
        CHECK(fit.exponent == doctest::Approx(2.0).epsilon(0.005));
        CHECK(fit.implied_theta == 0.5);
    }

    SUBCASE("y = (1+t)^{-1.5}: algebraic, beta = 1.50 +- 0.02, theta = 0.375") {
        std::vector<double> t, y;
        for (int k = 0; k <= 200; ++k) {
            t.push_back(0.1 * k);
            y.push_back(std::pow(1.0 + t.back(), -1.5));
        }
        RateFit fit = fit_decay(t, y, 0.0, 20.0);
        CHECK(fit.model == "algebraic");
        CHECK(fit.exponent == doctest::Approx(1.5).epsilon(0.013));
        CHECK(fit.implied_theta == doctest::Approx(0.375).epsilon(0.01));
    }

    SUBCASE("constant series is an error") {
        std::vector<double> t, y;
        for (int k = 0; k < 40; ++k) {
            t.push_back(0.1 * k);
            y.push_back(1.0);
        }
        CHECK_THROWS_AS(fit_decay(t, y, 0.0, 4.0), ConfigError);
    }

    SUBCASE("fewer than 20 positive points is an error") {
        std::vector<double> t = {0, 1, 2}, y = {1, 0.5, 0.25};
        CHECK_THROWS_AS(fit_decay(t, y, 0.0, 2.0), ConfigError);
    }
}

TEST_CASE("estimate_theta on synthetic gaps") {
    SUBCASE("g = (1+t)^{-2}: slope 3/2, theta = 0.25") {
        GapSeries gap;
        for (int k = 0; k <= 400; ++k) {
            gap.t.push_back(0.05 * k);
            gap.gap.push_back(std::pow(1.0 + gap.t.back(), -2.0));
        }
        ThetaEstimate est = estimate_theta(gap);
        CHECK(est.theta == doctest::Approx(0.25).epsilon(0.08));
        CHECK(est.slope == doctest::Approx(1.5).epsilon(0.02));
    }

    SUBCASE("g = exp(-t): slope 1, theta clamps at 0.5") {
        GapSeries gap;
        for (int k = 0; k <= 300; ++k) {
            gap.t.push_back(0.02 * k);
            gap.gap.push_back(std::exp(-gap.t.back()));
        }
        ThetaEstimate est = estimate_theta(gap);
        CHECK(est.theta == doctest::Approx(0.5).epsilon(0.01));
        CHECK(est.slope == doctest::Approx(1.0).epsilon(0.02));
    }

    SUBCASE("non-decreasing gap has no usable window") {
        GapSeries gap;
        for (int k = 0; k < 50; ++k) {
            gap.t.push_back(0.1 * k);
            gap.gap.push_back(1.0 + 0.01 * k);
        }
        CHECK_THROWS_AS(estimate_theta(gap), ConfigError);
    }
}

TEST_CASE("theta consistency between fit_decay and estimate_theta") {
    // Algebraic synthetic trajectory: both routes must land near the same
    // theta (within 0.1).
    GapSeries gap;
    std::vector<double> t, y;
    for (int k = 0; k <= 500; ++k) {
        const double tt = 0.05 * k;
        const double g = 2.0 * std::pow(1.0 + tt, -3.0);  // beta = 3 -> theta = 3/7
        gap.t.push_back(tt);
        gap.gap.push_back(g);
        t.push_back(tt);
        y.push_back(g);
    }
    RateFit fit = fit_decay(t, y, 0.0, 25.0);
    ThetaEstimate est = estimate_theta(gap);
    CHECK(fit.model == "algebraic");
    CHECK(std::abs(fit.implied_theta - est.theta) < 0.1);
}
