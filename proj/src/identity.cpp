#include "bcm/identity.hpp"

#include <algorithm>
#include <cmath>

#include "bcm/solver.hpp"

namespace bcm {

namespace {

double half_window(const BoundaryTrace& g) {
    if (g.size() < 3 || g.size() % 2 == 0) throw PreconditionError("identity: traces must cover [0, 2T]");
    return static_cast<double>((g.size() - 1) / 2) * g.dt;
}

std::vector<cplx> sample_target(const AnalyticProfile& p, const GridSpec& grid) {
    std::vector<cplx> s(grid.nx());
    for (std::size_t i = 0; i < grid.nx(); ++i) s[i] = p.eval(grid.x(i));
    return s;
}

}  // namespace

MeasuredControl measure_linearized(const ControlBundle& c, const GridSpec& grid, const MediumSpec& medium,
                                   bool include_plain) {
    MeasuredControl m;
    m.of_t = linearized_nd_map(grid, medium, c.f_t).trace;
    m.of_tt = linearized_nd_map(grid, medium, c.f_tt).trace;
    if (include_plain) m.of_f = linearized_nd_map(grid, medium, c.f).trace;
    return m;
}

PairData make_pair_data(const ControlBundle& f, const MeasuredControl& mf, const ControlBundle& h,
                        const MeasuredControl& mh, const GridSpec& grid) {
    if (f.lambda != h.lambda) throw PreconditionError("identity: both controls must share lambda");
    PairData pd;
    pd.lambda = f.lambda;
    pd.f = f.f;
    pd.f_t = f.f_t;
    pd.h = h.f;
    pd.h_t = h.f_t;
    pd.h_tt = h.f_tt;
    pd.Lf_t = mf.of_t;
    pd.Lh_t = mh.of_t;
    pd.Lh_tt = mh.of_tt;
    pd.Lf = mf.of_f;
    pd.Lh = mh.of_f;
    pd.pf_T = sample_target(f.pT, grid);
    pd.ph_T = sample_target(h.pT, grid);
    return pd;
}

cplx linearized_rhs(const PairData& pd) {
    for (const BoundaryTrace* g : {&pd.f_t, &pd.h, &pd.h_t, &pd.h_tt, &pd.Lf_t, &pd.Lh_t, &pd.Lh_tt})
        require_same_grid(pd.f, *g);
    const double T = half_window(pd.f);
    const std::size_t nT = (pd.f.size() - 1) / 2;
    const cplx at_T = pd.f.at_a[nT] * pd.Lh_t.at_a[nT] + pd.f.at_b[nT] * pd.Lh_t.at_b[nT];
    const BoundaryTrace rLh_tt = reflect_trace(pd.Lh_tt);
    const BoundaryTrace rLh_t = reflect_trace(pd.Lh_t);
    const BoundaryTrace rh_t = reflect_trace(pd.h_t);
    const BoundaryTrace rh = reflect_trace(pd.h);
    return -at_T - bilinear_time_boundary_pairing(pd.f, rLh_tt, T) +
           bilinear_time_boundary_pairing(pd.Lf_t, rh_t, T) -
           pd.lambda * bilinear_time_boundary_pairing(pd.f, rLh_t, T) +
           pd.lambda * bilinear_time_boundary_pairing(pd.Lf_t, rh, T);
}

cplx weighted_volume_pairing(std::span<const cplx> pf, std::span<const cplx> ph,
                             std::span<const double> sigma_dot, const GridSpec& grid) {
    if (pf.size() != ph.size() || pf.size() != sigma_dot.size() || pf.size() != grid.nx())
        throw GridMismatchError("volume pairing: sample arrays must have nx entries");
    std::vector<cplx> w(pf.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = sigma_dot[i] * pf[i] * ph[i];
    return trapezoid<cplx>(w, grid.dx());
}

IdentityResidual nonlinear_identity_residual(const BoundaryTrace& f, const BoundaryTrace& f_t,
                                             const BoundaryTrace& h, const BoundaryTrace& h_t,
                                             const GridSpec& grid, double rho0, std::span<const double> sigma) {
    const SolveOutput uf = solve(grid, rho0, sigma, f);
    const SolveOutput uh = solve(grid, rho0, sigma, h);
    const BoundaryTrace Lh_t = nd_map(grid, rho0, sigma, h_t);
    const BoundaryTrace Lf_t = nd_map(grid, rho0, sigma, f_t);

    std::vector<cplx> w(grid.nx());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = uf.pT_snapshot[i] * uh.pT_snapshot[i] - uf.qT_snapshot[i] * uh.qT_snapshot[i];

    IdentityResidual r;
    r.lhs = trapezoid<cplx>(w, grid.dx());
    r.rhs = bilinear_time_boundary_pairing(f, reflect_trace(Lh_t), grid.T()) -
            bilinear_time_boundary_pairing(Lf_t, reflect_trace(h), grid.T());
    const double scale = std::max({std::abs(r.lhs), std::abs(r.rhs), 1e-12});
    r.rel_residual = std::abs(r.lhs - r.rhs) / scale;
    return r;
}

IdentityResidual nonlinear_identity_residual(const ControlBundle& f, const ControlBundle& h,
                                             const GridSpec& grid, double rho0, std::span<const double> sigma) {
    return nonlinear_identity_residual(f.f, f.f_t, h.f, h.f_t, grid, rho0, sigma);
}

StabilityCheck stability_bound_check(const PairData& pd, double tol) {
    if (!pd.Lf || !pd.Lh) throw PreconditionError("stability check: linearized data of f and h are required");
    const double window = 2 * half_window(pd.f);
    const double lam = std::abs(pd.lambda);
    StabilityCheck s;
    s.lhs_abs = std::abs(linearized_rhs(pd));
    s.bound = (2 + lam) * discrete_sobolev_norm(pd.f, 1, window) * discrete_sobolev_norm(*pd.Lh, 2, window) +
              (1 + lam) * discrete_sobolev_norm(*pd.Lf, 2, window) * discrete_sobolev_norm(pd.h, 1, window);
    s.ok = s.lhs_abs <= s.bound * (1 + tol);
    return s;
}

}  // namespace bcm
