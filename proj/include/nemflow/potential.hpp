#pragma once

#include "nemflow/errors.hpp"

namespace nemflow {

// Penalty potential acting on the director magnitude.
//
//   ginzburg_landau:  F(d) = (|d|^2 - 1)^2 / (4 eta^2),  f(d) = (|d|^2 - 1) d / eta^2
//   quadratic:        F(d) = kappa |d|^2 / 2,            f(d) = kappa d
//
// f is exactly the gradient of F and both depend on |d| only, so f(Qd) = Qf(d)
// for any orthogonal Q.
struct Potential {
    enum class Kind { ginzburg_landau, quadratic };

    Kind kind = Kind::ginzburg_landau;
    double eta = 1.0;    // ginzburg_landau
    double kappa = 1.0;  // quadratic

    static Potential ginzburg_landau(double eta) {
        if (!(eta > 0.0)) throw ConfigError("potential.eta must be > 0");
        Potential p;
        p.kind = Kind::ginzburg_landau;
        p.eta = eta;
        return p;
    }
    static Potential quadratic(double kappa) {
        if (!(kappa > 0.0)) throw ConfigError("potential.kappa must be > 0");
        Potential p;
        p.kind = Kind::quadratic;
        p.kappa = kappa;
        return p;
    }

    double F(const double* d, int m) const {
        double s = 0.0;
        for (int c = 0; c < m; ++c) s += d[c] * d[c];
        if (kind == Kind::quadratic) return 0.5 * kappa * s;
        const double w = s - 1.0;
        return 0.25 * w * w / (eta * eta);
    }

    void f(const double* d, int m, double* out) const {
        if (kind == Kind::quadratic) {
            for (int c = 0; c < m; ++c) out[c] = kappa * d[c];
            return;
        }
        double s = 0.0;
        for (int c = 0; c < m; ++c) s += d[c] * d[c];
        const double w = (s - 1.0) / (eta * eta);
        for (int c = 0; c < m; ++c) out[c] = w * d[c];
    }

    // Jacobian of f, symmetric m x m, row-major.
    void jac(const double* d, int m, double* out) const {
        if (kind == Kind::quadratic) {
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) out[a * m + b] = (a == b) ? kappa : 0.0;
            return;
        }
        double s = 0.0;
        for (int c = 0; c < m; ++c) s += d[c] * d[c];
        const double ie2 = 1.0 / (eta * eta);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                out[a * m + b] = ((a == b) ? (s - 1.0) * ie2 : 0.0) + 2.0 * d[a] * d[b] * ie2;
    }

    // Conservative bound on the spectral radius of f' used by the reaction
    // time-step limit: 3/eta^2 covers |d| <= sqrt(2) for ginzburg_landau.
    double stiffness_bound() const {
        return (kind == Kind::quadratic) ? kappa : 3.0 / (eta * eta);
    }
};

}  // namespace nemflow
