#include "bcm/control.hpp"

#include <algorithm>
#include <cmath>

#include "bcm/solver.hpp"

namespace bcm {

ControlBundle build_control(const AnalyticProfile& pT, cplx lambda, const GridSpec& grid, int d) {
    if (lambda == cplx{}) throw PreconditionError("control: lambda must be nonzero");
    const double a = grid.a(), b = grid.b(), T = grid.T();

    ControlBundle c;
    c.lambda = lambda;
    c.pT = pT;
    c.T = T;
    c.phi_ext = extend((-1.0 / lambda) * pT, a, b, d);
    c.psi_ext = extend(pT, a, b, d);
    c.psi_integral = std::make_shared<const Antiderivative>(c.psi_ext, grid.dx() / 10);
    c.Cq = 0.5 * c.psi_integral->total();

    const std::size_t nt = grid.nt();
    c.f = c.f_t = c.f_tt = BoundaryTrace::zeros(grid);
    for (std::size_t n = 0; n < nt; ++n) {
        const double t = grid.t(n);
        for (int side = 0; side < 2; ++side) {
            const double x = side == 0 ? a : b;
            const double sign = side == 0 ? -1.0 : 1.0;
            const Jet pp = c.phi_ext.jet(x + T - t), pm = c.phi_ext.jet(x - T + t);
            const Jet sp = c.psi_ext.jet(x + T - t), sm = c.psi_ext.jet(x - T + t);
            // d_x w and its first two t-derivatives.
            const cplx wx = 0.5 * (pp.d1 + pm.d1 + sm.v - sp.v);
            const cplx wxt = 0.5 * (-pp.d2 + pm.d2 + sm.d1 + sp.d1);
            const cplx wxtt = 0.5 * (pp.d3 + pm.d3 + sm.d2 - sp.d2);
            auto& f = side == 0 ? c.f.at_a : c.f.at_b;
            auto& ft = side == 0 ? c.f_t.at_a : c.f_t.at_b;
            auto& ftt = side == 0 ? c.f_tt.at_a : c.f_tt.at_b;
            f[n] = sign * wx;
            ft[n] = sign * wxt;
            ftt[n] = sign * wxtt;
        }
    }
    return c;
}

cplx dalembert_field(const ControlBundle& c, double t, double x) {
    const double xp = x + c.T - t, xm = x - c.T + t;
    const auto& Psi = *c.psi_integral;
    return 0.5 * (c.phi_ext.eval(xp) + c.phi_ext.eval(xm)) - 0.5 * (Psi(xp) - Psi(xm)) + c.Cq;
}

cplx dalembert_velocity(const ControlBundle& c, double t, double x) {
    const double xp = x + c.T - t, xm = x - c.T + t;
    return 0.5 * (-c.phi_ext.deriv1(xp) + c.phi_ext.deriv1(xm)) + 0.5 * (c.psi_ext.eval(xp) + c.psi_ext.eval(xm));
}

ControlReport verify_control(const ControlBundle& bundle, const MediumSpec& medium, const GridSpec& grid) {
    if (medium.sigma0 != 0.0 || medium.rho0 != 1.0)
        throw UnsupportedRegimeError("verify_control: time-reversal controls require rho0 = 1, sigma0 = 0");
    const std::vector<double> sigma(grid.nx(), 0.0);
    const SolveOutput out = solve(grid, 1.0, sigma, bundle.f);

    const std::size_t nx = grid.nx();
    std::vector<cplx> p_exact(nx), q_exact(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        const Jet j = bundle.pT.jet(grid.x(i));
        p_exact[i] = j.v;
        q_exact[i] = -j.d1 / bundle.lambda;
    }

    ControlReport r;
    r.err_p = relative_l2(out.pT_snapshot, p_exact, grid.dx());
    r.err_q = relative_l2(out.qT_snapshot, q_exact, grid.dx());
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = grid.x(i);
        r.err_init = std::max({r.err_init, std::abs(dalembert_field(bundle, 0.0, x)),
                               std::abs(dalembert_velocity(bundle, 0.0, x))});
    }
    return r;
}

}  // namespace bcm
