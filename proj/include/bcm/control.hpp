#pragma once

#include <memory>

#include "bcm/core.hpp"
#include "bcm/extension.hpp"

namespace bcm {

/// Neumann control steering the undamped background wave (rho0 = 1,
/// sigma0 = 0) to p(T) = pT, q(T) = -(1/lambda) pT' on [a, b], obtained by
/// time reversal of a free-space D'Alembert solution.
struct ControlBundle {
    cplx lambda;
    AnalyticProfile pT;
    AnalyticProfile phi_ext;  // extension of -(1/lambda) pT
    AnalyticProfile psi_ext;  // extension of pT
    cplx Cq;                  // (1/2) * integral of psi_ext
    std::shared_ptr<const Antiderivative> psi_integral;
    BoundaryTrace f, f_t, f_tt;
    double T = 0.0;
};

/// Throws PreconditionError for lambda == 0 or d < 2.
ControlBundle build_control(const AnalyticProfile& pT, cplx lambda, const GridSpec& grid, int d = 2);

/// w(t, x) = (phi(x+T-t) + phi(x-T+t))/2 - (Psi(x+T-t) - Psi(x-T+t))/2 + Cq.
cplx dalembert_field(const ControlBundle& bundle, double t, double x);
/// d_t w(t, x), in closed form.
cplx dalembert_velocity(const ControlBundle& bundle, double t, double x);

struct ControlReport {
    double err_p = 0;     // relative L2 error of d_t u(T) against pT
    double err_q = 0;     // relative L2 error of d_x u(T) against -(1/lambda) pT'
    double err_init = 0;  // max |w(0,.)|, |d_t w(0,.)| on [a, b]
};

/// Forward-solves the background problem with the bundle's Neumann data and
/// compares the t = T snapshot against the targets. Only valid for rho0 = 1,
/// sigma0 = 0 (UnsupportedRegimeError otherwise).
ControlReport verify_control(const ControlBundle& bundle, const MediumSpec& medium, const GridSpec& grid);

}  // namespace bcm
