#pragma once

#include <string>
#include <vector>

#include "nemflow/simulator.hpp"

namespace nemflow {

// Manufactured solution: closed-form (v, P, d) with hand-derived source terms
// injected into the momentum and director equations.  The velocity is built
// from a streamfunction (divergence-free analytically, and discretely at
// init), the director trace on walls is time-independent.
struct MmsCase {
    std::string name;
    Params params;
    BcMode bc_mode;
    double Lx = 1.0, Ly = 1.0;

    // Closed forms and their exact derivatives, evaluated pointwise.
    double (*psi)(double x, double y, double t);  // streamfunction for init
    double (*u)(double x, double y, double t);
    double (*v)(double x, double y, double t);
    double (*d)(double x, double y, double t, int comp);
    // Sources for the implemented equations (forms derived by hand):
    //   S_v = v_t + (v.grad)v - nu lap v + lambda (grad d)^T (lap d - f(d))
    //   S_d = d_t + (v.grad)d - gamma (lap d - f(d))
    double (*source_u)(double x, double y, double t, const Params& p);
    double (*source_v)(double x, double y, double t, const Params& p);
    double (*source_d)(double x, double y, double t, int comp, const Params& p);
};

const MmsCase& mms_case(const std::string& name);  // "trig" | "linear"
std::vector<std::string> mms_case_names();

struct MmsSpatialResult {
    std::vector<int> grids;
    std::vector<double> err_v, err_d;      // L2 errors at final time
    std::vector<double> order_v, order_d;  // log2 ratios between levels
    bool monotone = true;
};

struct MmsTemporalResult {
    std::vector<double> dts;
    std::vector<double> err_v, err_d;  // L2 vs a fine-dt reference on the same grid
    std::vector<double> order_v, order_d;
    bool monotone = true;
};

// Runs the case with sources through the coupled step and measures final-time
// L2 errors against the closed form, refining the grid with dt ~ h^2.
MmsSpatialResult mms_spatial_study(const MmsCase& mc, const std::vector<int>& grids,
                                   double t_final, double dt_coarsest);

// Fixed grid, halving dt; errors against a reference run at dt_min/8, which
// isolates the splitting order from the fixed spatial error.
MmsTemporalResult mms_temporal_study(const MmsCase& mc, int grid_n, double t_final,
                                     const std::vector<double>& dts);

std::string format_mms_tables(const MmsCase& mc, const MmsSpatialResult& sp,
                              const MmsTemporalResult& tp);

}  // namespace nemflow
