#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nemflow/config.hpp"
#include "nemflow/simulator.hpp"
#include "test_helpers.hpp"

using namespace nemflow;
using namespace nemflow::test;

namespace {

// Small cavity-flavored coupled scenario for loop-level checks.
struct MiniCavity {
    Grid g;
    SimState state;
    BoundaryData bd;
    SimContext ctx;

    explicit MiniCavity(int n) : g(unit_grid(n, BcMode::dirichlet)) {
        state = preset_initial_state("cavity", g, 2);
        bd = preset_boundary("cavity", g, 2);
        ctx.params.potential = Potential::ginzburg_landau(0.25);
        ctx.bd = &bd;
        apply_bc(state.flow.v);
        apply_bc(state.flow.p);
        apply_bc(state.d, &bd);
    }
};

}  // namespace

TEST_CASE("stability_dt formulas") {
    Grid g = unit_grid(64, BcMode::dirichlet);
    SimState st(g, 2);
    Params p;

    // v = 0, GL eta=1, gamma=1: reaction bound 1/6, so a 1e-2 cap wins.
    p.potential = Potential::ginzburg_landau(1.0);
    CHECK(stability_dt(st, p, g, 1e-2) == doctest::Approx(1e-2));

    // max|v| = 1, h = 1/64: advective bound 1/128.
    st.flow.v.u.fill(1.0);
    CHECK(stability_dt(st, p, g, 1.0) == doctest::Approx(1.0 / 128.0));

    // Quadratic kappa=100, gamma=1: reaction bound 5e-3.
    SimState st0(g, 2);
    Params pq;
    pq.potential = Potential::quadratic(100.0);
    CHECK(stability_dt(st0, pq, g, 1.0) == doctest::Approx(5e-3));
}

TEST_CASE("coupled_step") {
    SUBCASE("equilibrium state stays put") {
        Grid g = unit_grid(16, BcMode::free_slip);
        SimState st(g, 2);
        st.d.c[0].fill(1.0);  // constant unit director, zero velocity
        apply_bc(st.d, nullptr);
        apply_bc(st.flow.v);
        apply_bc(st.flow.p);
        SimContext ctx;
        ctx.params.potential = Potential::ginzburg_landau(0.5);
        SimState next = coupled_step(st, 5e-3, ctx);
        CHECK(norm(next.flow.v, NormKind::Linf) < 1e-12);
        CHECK(max_abs_diff(next.d.c[0], st.d.c[0]) < 1e-12);
    }

    SUBCASE("lambda = 0 decouples: flow matches a pure flow run exactly") {
        Grid g = unit_grid(24, BcMode::periodic);
        SimState st(g, 2);
        st.flow.v = project_div_free(random_velocity(g, 91, 0.4));
        st.d = random_director(g, 2, 92, 0.9);
        apply_bc(st.d, nullptr);
        apply_bc(st.flow.p);
        SimContext ctx;
        ctx.params.lambda = 0.0;
        ctx.params.nu = 0.05;
        ctx.params.potential = Potential::ginzburg_landau(1.0);

        FlowState flow_only = st.flow;
        SimState coupled = st;
        const double dt = 1e-3;
        for (int k = 0; k < 10; ++k) {
            coupled = coupled_step(coupled, dt, ctx);
            flow_only = flow_step(flow_only, VelocityField(g), dt, ctx.params, ctx.lin);
            CHECK(max_abs_diff(coupled.flow.v.u, flow_only.v.u) == 0.0);
            CHECK(max_abs_diff(coupled.flow.v.v, flow_only.v.v) == 0.0);
        }
        // The director still evolved passively.
        CHECK(max_abs_diff(coupled.d.c[0], st.d.c[0]) > 1e-6);
    }

    SUBCASE("full coupled step dissipates the total energy") {
        MiniCavity mc(32);
        EnergyRecord r0 = compute_record(mc.state, mc.ctx);
        SimState next = coupled_step(mc.state, 1e-3, mc.ctx);
        EnergyRecord r1 = compute_record(next, mc.ctx);
        CHECK(r1.total < r0.total);
    }
}

TEST_CASE("run loop") {
    SUBCASE("t_max = 0 gives a single record") {
        MiniCavity mc(16);
        StoppingCriteria stop;
        stop.t_max = 0.0;
        RunResult res = run_simulation(mc.state, mc.ctx, stop, DtPolicy{}, 1);
        CHECK(res.records.size() == 1);
        CHECK(res.termination == "t_max");
        CHECK(res.steps == 0);
    }

    SUBCASE("equilibrium init terminates immediately on residual_target") {
        Grid g = unit_grid(16, BcMode::free_slip);
        SimState st(g, 2);
        st.d.c[0].fill(1.0);
        apply_bc(st.d, nullptr);
        apply_bc(st.flow.v);
        apply_bc(st.flow.p);
        SimContext ctx;
        ctx.params.potential = Potential::ginzburg_landau(0.5);
        StoppingCriteria stop;
        stop.t_max = 10.0;
        stop.residual_target = 1e-6;
        RunResult res = run_simulation(st, ctx, stop, DtPolicy{}, 1);
        CHECK(res.termination == "residual_target");
        CHECK(res.steps == 0);
    }

    SUBCASE("deterministic: identical configs give identical record streams") {
        MiniCavity mc(24);
        StoppingCriteria stop;
        stop.t_max = 0.05;
        DtPolicy dtp;
        dtp.adaptive = false;
        dtp.value = 1e-3;
        RunResult a = run_simulation(mc.state, mc.ctx, stop, dtp, 5);
        RunResult b = run_simulation(mc.state, mc.ctx, stop, dtp, 5);
        REQUIRE(a.records.size() == b.records.size());
        for (size_t k = 0; k < a.records.size(); ++k) {
            CHECK(a.records[k].total == b.records[k].total);
            CHECK(a.records[k].A == b.records[k].A);
            CHECK(a.records[k].div_inf == b.records[k].div_inf);
        }
    }

    SUBCASE("Lyapunov monotonicity in a coupled run") {
        MiniCavity mc(32);
        StoppingCriteria stop;
        stop.t_max = 0.2;
        DtPolicy dtp;
        dtp.adaptive = false;
        dtp.value = 1e-3;
        RunResult res = run_simulation(mc.state, mc.ctx, stop, dtp, 1);
        const double e0 = res.records.front().total;
        for (size_t k = 1; k < res.records.size(); ++k)
            CHECK(res.records[k].total <= res.records[k - 1].total + 1e-8 * e0);
        // Incompressibility along the way.
        for (const auto& r : res.records) CHECK(r.div_inf <= 1e-10 * (1.0 + res.max_v_inf));
    }
}

TEST_CASE("energy audit") {
    SUBCASE("frozen equilibrium has a tiny residual") {
        Grid g = unit_grid(16, BcMode::free_slip);
        SimState st(g, 2);
        st.d.c[0].fill(1.0);
        apply_bc(st.d, nullptr);
        apply_bc(st.flow.v);
        apply_bc(st.flow.p);
        SimContext ctx;
        ctx.params.potential = Potential::ginzburg_landau(0.5);
        StoppingCriteria stop;
        stop.t_max = 0.01;
        DtPolicy dtp;
        dtp.adaptive = false;
        dtp.value = 1e-3;
        RunResult res = run_simulation(st, ctx, stop, dtp, 1);
        AuditReport rep = energy_audit(res.records);
        CHECK(rep.max_abs <= 1e-10);
    }

    SUBCASE("lambda = 0 Stokes decay: audit residual is O(dt)") {
        Grid g(32, 32, 2 * kPi, 2 * kPi, BcMode::periodic);
        auto make_state = [&]() {
            SimState st(g, 2);
            st.flow.v = streamfunction_velocity(g, [](double x, double y) {
                return -std::cos(x) * std::cos(y);
            });
            st.d.c[0].fill(1.0);
            apply_bc(st.d, nullptr);
            apply_bc(st.flow.p);
            return st;
        };
        SimContext ctx;
        ctx.params.lambda = 0.0;
        ctx.params.nu = 0.2;
        ctx.params.potential = Potential::ginzburg_landau(1.0);
        StoppingCriteria stop;
        stop.t_max = 0.2;

        DtPolicy coarse, fine;
        coarse.adaptive = fine.adaptive = false;
        coarse.value = 2e-3;
        fine.value = 1e-3;
        AuditReport rc = energy_audit(run_simulation(make_state(), ctx, stop, coarse, 1).records);
        AuditReport rf = energy_audit(run_simulation(make_state(), ctx, stop, fine, 1).records);
        const double factor = audit_refinement_factor(rc, rf);
        CHECK(factor > 1.7);
        CHECK(factor < 2.4);
    }

    SUBCASE("non-uniform record spacing is rejected") {
        std::vector<EnergyRecord> recs(3);
        recs[0].t = 0.0;
        recs[1].t = 0.1;
        recs[2].t = 0.3;
        CHECK_THROWS_AS(energy_audit(recs), ConfigError);
    }
}

TEST_CASE("instability guard") {
    // Stiff convex potential stepped above its reaction bound: the guard must
    // rescue by halving dt (and stay deterministic), or abort cleanly when
    // five halvings are not enough.
    auto make = [](double dt_value) {
        Grid g = unit_grid(16, BcMode::dirichlet);
        SimState st = preset_initial_state("convex", g, 2);
        static BoundaryData bd;
        bd = preset_boundary("convex", g, 2);
        SimContext ctx;
        ctx.params.potential = Potential::quadratic(100.0);
        ctx.bd = &bd;
        apply_bc(st.flow.v);
        apply_bc(st.flow.p);
        apply_bc(st.d, &bd);
        StoppingCriteria stop;
        stop.t_max = dt_value * 10;
        DtPolicy dtp;
        dtp.adaptive = false;
        dtp.value = dt_value;
        return std::tuple<SimState, SimContext, StoppingCriteria, DtPolicy>(st, ctx, stop, dtp);
    };

    SUBCASE("halving rescues a moderately unstable dt") {
        auto [st, ctx, stop, dtp] = make(0.05);  // reaction bound is 5e-3
        RunResult res = run_simulation(st, ctx, stop, dtp, 1);
        CHECK(res.retries > 0);
        CHECK(res.records.back().total <= res.records.front().total);
    }

    SUBCASE("a hopeless dt aborts after five halvings") {
        auto [st, ctx, stop, dtp] = make(3.2);
        CHECK_THROWS_AS(run_simulation(st, ctx, stop, dtp, 1), NumericalError);
    }
}

TEST_CASE("cg and spectral solvers agree across a coupled run") {
    MiniCavity a(24), b(24);
    b.ctx.lin.method = "cg";
    b.ctx.lin.rel_tol = 1e-13;
    b.ctx.dir.lin = b.ctx.lin;
    for (int k = 0; k < 20; ++k) {
        a.state = coupled_step(a.state, 1e-3, a.ctx);
        b.state = coupled_step(b.state, 1e-3, b.ctx);
    }
    CHECK(max_abs_diff(a.state.d.c[0], b.state.d.c[0]) < 1e-8);
    CHECK(max_abs_diff(a.state.flow.v.u, b.state.flow.v.u) < 1e-8);
}

TEST_CASE("solver config validation") {
    LinearSolveConfig bad;
    bad.rel_tol = 1e-3;  // above the 1e-4 ceiling
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.rel_tol = 1e-10;
    bad.method = "gmres";
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("director_step requires a positive dt") {
    Grid g = unit_grid(8, BcMode::free_slip);
    DirectorField d(g, 2);
    d.c[0].fill(1.0);
    apply_bc(d, nullptr);
    VelocityField v(g);
    apply_bc(v);
    CHECK_THROWS_AS(director_step(d, v, 0.0, Params{}, nullptr), NumericalError);
}

TEST_CASE("coupled audit on a mini cavity halves with dt") {
    MiniCavity mc(32);
    StoppingCriteria stop;
    stop.t_max = 0.5;
    DtPolicy coarse, fine;
    coarse.adaptive = fine.adaptive = false;
    coarse.value = 2e-3;
    fine.value = 1e-3;
    AuditReport rc = energy_audit(run_simulation(mc.state, mc.ctx, stop, coarse, 1).records);
    AuditReport rf = energy_audit(run_simulation(mc.state, mc.ctx, stop, fine, 1).records);
    CHECK(rc.energy_drop > 0.0);
    CHECK(rc.integrated_abs < 0.05 * rc.energy_drop);
    const double factor = audit_refinement_factor(rc, rf);
    CHECK(factor > 1.7);
    CHECK(factor < 2.4);
}
