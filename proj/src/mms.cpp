#include "nemflow/mms.hpp"

#include <cmath>
#include <sstream>

#include "nemflow/bc.hpp"
#include "nemflow/norms.hpp"

namespace nemflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---- "trig" case -----------------------------------------------------------
// psi = a(t) sin^2(pi x) sin^2(pi y)
// d   = (cos beta + 0.6 b w, sin beta - 0.8 b w),
//       beta = 0.3 + 0.4 x + 0.5 y, w = sin(pi x) sin(pi y), b = b(t).
// The bump w vanishes on the walls, so the director trace is steady.

namespace trig {

double aa(double t) { return 0.6 * (1.0 + 0.5 * std::sin(3.0 * t)); }
double aap(double t) { return 0.9 * std::cos(3.0 * t); }
double bb(double t) { return 0.3 * std::cos(2.0 * t); }
double bbp(double t) { return -0.6 * std::sin(2.0 * t); }

double psi(double x, double y, double t) {
    const double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
    return aa(t) * sx * sx * sy * sy;
}
double u_(double x, double y, double t) {
    const double sx = std::sin(kPi * x);
    return aa(t) * kPi * sx * sx * std::sin(2.0 * kPi * y);
}
double v_(double x, double y, double t) {
    const double sy = std::sin(kPi * y);
    return -aa(t) * kPi * std::sin(2.0 * kPi * x) * sy * sy;
}
double ut(double x, double y, double t) {
    const double sx = std::sin(kPi * x);
    return aap(t) * kPi * sx * sx * std::sin(2.0 * kPi * y);
}
double vt(double x, double y, double t) {
    const double sy = std::sin(kPi * y);
    return -aap(t) * kPi * std::sin(2.0 * kPi * x) * sy * sy;
}
double ux(double x, double y, double t) {
    return aa(t) * kPi * kPi * std::sin(2.0 * kPi * x) * std::sin(2.0 * kPi * y);
}
double uy(double x, double y, double t) {
    const double sx = std::sin(kPi * x);
    return 2.0 * aa(t) * kPi * kPi * sx * sx * std::cos(2.0 * kPi * y);
}
double vx(double x, double y, double t) {
    const double sy = std::sin(kPi * y);
    return -2.0 * aa(t) * kPi * kPi * std::cos(2.0 * kPi * x) * sy * sy;
}
double vy(double x, double y, double t) {
    return -aa(t) * kPi * kPi * std::sin(2.0 * kPi * x) * std::sin(2.0 * kPi * y);
}
double lap_u(double x, double y, double t) {
    const double sx = std::sin(kPi * x);
    return 2.0 * aa(t) * kPi * kPi * kPi *
           (std::cos(2.0 * kPi * x) - 2.0 * sx * sx) * std::sin(2.0 * kPi * y);
}
double lap_v(double x, double y, double t) {
    const double sy = std::sin(kPi * y);
    return 2.0 * aa(t) * kPi * kPi * kPi * std::sin(2.0 * kPi * x) *
           (2.0 * sy * sy - std::cos(2.0 * kPi * y));
}

double beta(double x, double y) { return 0.3 + 0.4 * x + 0.5 * y; }
double w_(double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); }
double wx(double x, double y) { return kPi * std::cos(kPi * x) * std::sin(kPi * y); }
double wy(double x, double y) { return kPi * std::sin(kPi * x) * std::cos(kPi * y); }

double d_(double x, double y, double t, int c) {
    if (c == 0) return std::cos(beta(x, y)) + 0.6 * bb(t) * w_(x, y);
    if (c == 1) return std::sin(beta(x, y)) - 0.8 * bb(t) * w_(x, y);
    return 0.0;
}
double dt_(double x, double y, double t, int c) {
    if (c == 0) return 0.6 * bbp(t) * w_(x, y);
    if (c == 1) return -0.8 * bbp(t) * w_(x, y);
    return 0.0;
}
double dx_(double x, double y, double t, int c) {
    if (c == 0) return -0.4 * std::sin(beta(x, y)) + 0.6 * bb(t) * wx(x, y);
    if (c == 1) return 0.4 * std::cos(beta(x, y)) - 0.8 * bb(t) * wx(x, y);
    return 0.0;
}
double dy_(double x, double y, double t, int c) {
    if (c == 0) return -0.5 * std::sin(beta(x, y)) + 0.6 * bb(t) * wy(x, y);
    if (c == 1) return 0.5 * std::cos(beta(x, y)) - 0.8 * bb(t) * wy(x, y);
    return 0.0;
}
double lap_d(double x, double y, double t, int c) {
    const double b2 = 0.4 * 0.4 + 0.5 * 0.5;  // |grad beta|^2
    if (c == 0) return -b2 * std::cos(beta(x, y)) - 1.2 * kPi * kPi * bb(t) * w_(x, y);
    if (c == 1) return -b2 * std::sin(beta(x, y)) + 1.6 * kPi * kPi * bb(t) * w_(x, y);
    return 0.0;
}

void residual_R(double x, double y, double t, const Params& p, double R[2]) {
    double dv[2] = {d_(x, y, t, 0), d_(x, y, t, 1)};
    double fv[2];
    p.potential.f(dv, 2, fv);
    R[0] = lap_d(x, y, t, 0) - fv[0];
    R[1] = lap_d(x, y, t, 1) - fv[1];
}

double src_u(double x, double y, double t, const Params& p) {
    double R[2];
    residual_R(x, y, t, p, R);
    return ut(x, y, t) + u_(x, y, t) * ux(x, y, t) + v_(x, y, t) * uy(x, y, t) -
           p.nu * lap_u(x, y, t) +
           p.lambda * (dx_(x, y, t, 0) * R[0] + dx_(x, y, t, 1) * R[1]);
}
double src_v(double x, double y, double t, const Params& p) {
    double R[2];
    residual_R(x, y, t, p, R);
    return vt(x, y, t) + u_(x, y, t) * vx(x, y, t) + v_(x, y, t) * vy(x, y, t) -
           p.nu * lap_v(x, y, t) +
           p.lambda * (dy_(x, y, t, 0) * R[0] + dy_(x, y, t, 1) * R[1]);
}
double src_d(double x, double y, double t, int c, const Params& p) {
    double R[2];
    residual_R(x, y, t, p, R);
    return dt_(x, y, t, c) + u_(x, y, t) * dx_(x, y, t, c) + v_(x, y, t) * dy_(x, y, t, c) -
           p.gamma * R[c];
}

}  // namespace trig

// ---- "linear" case ---------------------------------------------------------
// Constant velocity and director on a periodic box; every discrete operator
// is exact here, so errors sit at roundoff and orders saturate.

namespace lin {

double psi(double x, double y, double /*t*/) { return 0.3 * y + 0.2 * x; }
double u_(double, double, double) { return 0.3; }
double v_(double, double, double) { return -0.2; }
double d_(double, double, double, int c) { return c == 0 ? 0.5 : (c == 1 ? 0.1 : 0.0); }
double src_u(double, double, double, const Params&) { return 0.0; }
double src_v(double, double, double, const Params&) { return 0.0; }
double src_d(double x, double y, double t, int c, const Params& p) {
    double dv[2] = {d_(x, y, t, 0), d_(x, y, t, 1)};
    double fv[2];
    p.potential.f(dv, 2, fv);
    return p.gamma * fv[c];
}

}  // namespace lin

MmsCase make_trig() {
    MmsCase mc;
    mc.name = "trig";
    mc.bc_mode = BcMode::dirichlet;
    mc.params.nu = 0.7;
    mc.params.lambda = 0.4;
    mc.params.gamma = 0.9;
    mc.params.potential = Potential::ginzburg_landau(1.0);
    mc.psi = trig::psi;
    mc.u = trig::u_;
    mc.v = trig::v_;
    mc.d = trig::d_;
    mc.source_u = trig::src_u;
    mc.source_v = trig::src_v;
    mc.source_d = trig::src_d;
    return mc;
}

MmsCase make_linear() {
    MmsCase mc;
    mc.name = "linear";
    mc.bc_mode = BcMode::periodic;
    mc.params.nu = 0.5;
    mc.params.lambda = 0.3;
    mc.params.gamma = 1.0;
    mc.params.potential = Potential::ginzburg_landau(1.0);
    mc.psi = lin::psi;
    mc.u = lin::u_;
    mc.v = lin::v_;
    mc.d = lin::d_;
    mc.source_u = lin::src_u;
    mc.source_v = lin::src_v;
    mc.source_d = lin::src_d;
    return mc;
}

const MmsCase g_trig = make_trig();
const MmsCase g_linear = make_linear();

struct MmsRun {
    SimState state;
    BoundaryData bd;
    bool has_bd = false;
};

MmsRun mms_init(const MmsCase& mc, const Grid& g) {
    MmsRun run;
    run.state = SimState(g, 2);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            run.state.flow.v.u(i, j) =
                (mc.psi(g.xn(i), g.yn(j + 1), 0.0) - mc.psi(g.xn(i), g.yn(j), 0.0)) / g.hy;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            run.state.flow.v.v(i, j) =
                -(mc.psi(g.xn(i + 1), g.yn(j), 0.0) - mc.psi(g.xn(i), g.yn(j), 0.0)) / g.hx;
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) run.state.d.c[c](i, j) = mc.d(g.xc(i), g.yc(j), 0.0, c);
    if (g.bc_mode == BcMode::dirichlet) {
        run.bd = BoundaryData::from_function(
            g, 2, [&](double x, double y, int c) { return mc.d(x, y, 0.0, c); });
        run.has_bd = true;
    }
    apply_bc(run.state.flow.v);
    apply_bc(run.state.d, run.has_bd ? &run.bd : nullptr);
    apply_bc(run.state.flow.p);
    return run;
}

void advance(MmsRun& run, const MmsCase& mc, const SimContext& ctx, double dt, long steps) {
    const Grid& g = run.state.d.grid;
    DirectorField sd(g, 2);
    VelocityField sv(g);
    for (long k = 0; k < steps; ++k) {
        const double t = run.state.t;
        for (int c = 0; c < 2; ++c)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i)
                    sd.c[c](i, j) = mc.source_d(g.xc(i), g.yc(j), t, c, ctx.params);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i)
                sv.u(i, j) = mc.source_u(g.xn(i), g.yc(j), t, ctx.params);
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                sv.v(i, j) = mc.source_v(g.xc(i), g.yn(j), t, ctx.params);
        run.state = coupled_step(run.state, dt, ctx, &sd, &sv);
    }
}

void final_errors(const MmsRun& run, const MmsCase& mc, double t, double* err_v, double* err_d) {
    const Grid& g = run.state.d.grid;
    VelocityField dv(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            dv.u(i, j) = run.state.flow.v.u(i, j) - mc.u(g.xn(i), g.yc(j), t);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            dv.v(i, j) = run.state.flow.v.v(i, j) - mc.v(g.xc(i), g.yn(j), t);
    *err_v = norm(dv, NormKind::L2);
    DirectorField dd(g, 2);
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                dd.c[c](i, j) = run.state.d.c[c](i, j) - mc.d(g.xc(i), g.yc(j), t, c);
    *err_d = norm(dd, NormKind::L2);
}

SimContext make_ctx(const MmsCase& mc, const MmsRun& run) {
    SimContext ctx;
    ctx.params = mc.params;
    ctx.bd = run.has_bd ? &run.bd : nullptr;
    return ctx;
}

}  // namespace

const MmsCase& mms_case(const std::string& name) {
    if (name == "trig") return g_trig;
    if (name == "linear") return g_linear;
    throw ConfigError("unknown mms case '" + name + "' (have: trig, linear)");
}

std::vector<std::string> mms_case_names() { return {"trig", "linear"}; }

MmsSpatialResult mms_spatial_study(const MmsCase& mc, const std::vector<int>& grids,
                                   double t_final, double dt_coarsest) {
    MmsSpatialResult out;
    out.grids = grids;
    for (size_t k = 0; k < grids.size(); ++k) {
        const int n = grids[k];
        const Grid g(n, n, mc.Lx, mc.Ly, mc.bc_mode);
        MmsRun run = mms_init(mc, g);
        SimContext ctx = make_ctx(mc, run);
        const double ratio = static_cast<double>(n) / grids[0];
        const double dt_target = dt_coarsest / (ratio * ratio);
        const long steps = std::lround(t_final / dt_target);
        advance(run, mc, ctx, t_final / steps, steps);
        double ev, ed;
        final_errors(run, mc, t_final, &ev, &ed);
        out.err_v.push_back(ev);
        out.err_d.push_back(ed);
    }
    for (size_t k = 1; k < grids.size(); ++k) {
        const double lh = std::log(static_cast<double>(grids[k]) / grids[k - 1]);
        out.order_v.push_back(std::log(out.err_v[k - 1] / out.err_v[k]) / lh);
        out.order_d.push_back(std::log(out.err_d[k - 1] / out.err_d[k]) / lh);
        if (out.err_v[k] > out.err_v[k - 1] || out.err_d[k] > out.err_d[k - 1]) out.monotone = false;
    }
    return out;
}

MmsTemporalResult mms_temporal_study(const MmsCase& mc, int grid_n, double t_final,
                                     const std::vector<double>& dts) {
    MmsTemporalResult out;
    out.dts = dts;
    const Grid g(grid_n, grid_n, mc.Lx, mc.Ly, mc.bc_mode);

    double dt_min = dts[0];
    for (double dt : dts) dt_min = std::min(dt_min, dt);
    const double dt_ref = dt_min / 8.0;

    auto run_to_T = [&](double dt_target) {
        MmsRun run = mms_init(mc, g);
        SimContext ctx = make_ctx(mc, run);
        const long steps = std::lround(t_final / dt_target);
        advance(run, mc, ctx, t_final / steps, steps);
        return run;
    };
    const MmsRun ref = run_to_T(dt_ref);

    for (double dt : dts) {
        MmsRun run = run_to_T(dt);
        VelocityField dv(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i)
                dv.u(i, j) = run.state.flow.v.u(i, j) - ref.state.flow.v.u(i, j);
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                dv.v(i, j) = run.state.flow.v.v(i, j) - ref.state.flow.v.v(i, j);
        DirectorField dd(g, 2);
        for (int c = 0; c < 2; ++c)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i)
                    dd.c[c](i, j) = run.state.d.c[c](i, j) - ref.state.d.c[c](i, j);
        out.err_v.push_back(norm(dv, NormKind::L2));
        out.err_d.push_back(norm(dd, NormKind::L2));
    }
    for (size_t k = 1; k < dts.size(); ++k) {
        const double l = std::log(dts[k - 1] / dts[k]);
        out.order_v.push_back(std::log(out.err_v[k - 1] / out.err_v[k]) / l);
        out.order_d.push_back(std::log(out.err_d[k - 1] / out.err_d[k]) / l);
        if (out.err_v[k] > out.err_v[k - 1] || out.err_d[k] > out.err_d[k - 1]) out.monotone = false;
    }
    return out;
}

std::string format_mms_tables(const MmsCase& mc, const MmsSpatialResult& sp,
                              const MmsTemporalResult& tp) {
    std::ostringstream os;
    os.precision(4);
    os << std::scientific;
    os << "case: " << mc.name << "\n\nspatial refinement (dt ~ h^2)\n";
    os << "   n      err_v        err_d      order_v order_d\n";
    for (size_t k = 0; k < sp.grids.size(); ++k) {
        os << "  " << sp.grids[k] << "  " << sp.err_v[k] << "  " << sp.err_d[k];
        if (k > 0) {
            os.unsetf(std::ios::scientific);
            os << "   " << sp.order_v[k - 1] << "   " << sp.order_d[k - 1];
            os << std::scientific;
        }
        os << "\n";
    }
    if (!sp.monotone) os << "  WARNING: non-monotone spatial errors\n";
    os << "\ntemporal refinement (fixed grid, vs dt/8 reference)\n";
    os << "   dt           err_v        err_d      order_v order_d\n";
    for (size_t k = 0; k < tp.dts.size(); ++k) {
        os << "  " << tp.dts[k] << "  " << tp.err_v[k] << "  " << tp.err_d[k];
        if (k > 0) {
            os.unsetf(std::ios::scientific);
            os << "   " << tp.order_v[k - 1] << "   " << tp.order_d[k - 1];
            os << std::scientific;
        }
        os << "\n";
    }
    if (!tp.monotone) os << "  WARNING: non-monotone temporal errors\n";
    return os.str();
}

}  // namespace nemflow
