#include "bcm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace bcm {

namespace {

// Three-level leapfrog state for one field. prev/cur/next hold u^{n-1}, u^n, u^{n+1}.
class Leapfrog {
public:
    Leapfrog(const GridSpec& grid, double rho0, std::span<const double> sigma)
        : n_(grid.nx()), dx_(grid.dx()), dt_(grid.dt()), rho0_(rho0),
          prev_(n_), cur_(n_), next_(n_), inv_c_(n_), c_old_(n_) {
        if (sigma.size() != n_) throw PreconditionError("solver: sigma must have nx samples");
        const double r = rho0 / (dt_ * dt_);
        for (std::size_t i = 0; i < n_; ++i) {
            const double damp = sigma[i] / (2 * dt_);
            inv_c_[i] = 1.0 / (r + damp);
            c_old_[i] = r - damp;
        }
        two_r_ = 2 * r;
    }

    // u^1 = dt^2/(2 rho0) (D2 u^0 + S^0) with u^0 = 0.
    void first(cplx ga, cplx gb, const cplx* src) {
        std::fill(prev_.begin(), prev_.end(), cplx{});
        std::fill(cur_.begin(), cur_.end(), cplx{});
        const double c = dt_ * dt_ / (2 * rho0_);
        for (std::size_t i = 0; i < n_; ++i) next_[i] = src ? c * src[i] : cplx{};
        next_[0] += c * 2.0 * ga / dx_;
        next_[n_ - 1] += c * 2.0 * gb / dx_;
    }

    void advance(cplx ga, cplx gb, const cplx* src) {
        const double idx2 = 1.0 / (dx_ * dx_);
        const cplx* u = cur_.data();
        const cplx* um = prev_.data();
        cplx* up = next_.data();
        const std::size_t last = n_ - 1;
        auto update = [&](std::size_t i, cplx lap) {
            cplx rhs = lap + two_r_ * u[i] - c_old_[i] * um[i];
            if (src) rhs += src[i];
            up[i] = inv_c_[i] * rhs;
        };
        update(0, (2.0 * (u[1] - u[0]) + 2.0 * dx_ * ga) * idx2);
        for (std::size_t i = 1; i < last; ++i) update(i, (u[i - 1] - 2.0 * u[i] + u[i + 1]) * idx2);
        update(last, (2.0 * (u[last - 1] - u[last]) + 2.0 * dx_ * gb) * idx2);
    }

    void rotate() {
        std::swap(prev_, cur_);
        std::swap(cur_, next_);
    }

    const std::vector<cplx>& prev() const { return prev_; }
    const std::vector<cplx>& cur() const { return cur_; }
    const std::vector<cplx>& next() const { return next_; }

    // (p, q) at the current level from u^{n+1}, u^{n-1} and the flux data at level n.
    void snapshot(cplx ga, cplx gb, std::vector<cplx>& p, std::vector<cplx>& q) const {
        p.resize(n_);
        q.resize(n_);
        const double sr = std::sqrt(rho0_);
        for (std::size_t i = 0; i < n_; ++i) p[i] = sr * (next_[i] - prev_[i]) / (2 * dt_);
        for (std::size_t i = 1; i + 1 < n_; ++i) q[i] = (cur_[i + 1] - cur_[i - 1]) / (2 * dx_);
        q[0] = -ga;
        q[n_ - 1] = gb;
    }

private:
    std::size_t n_;
    double dx_, dt_, rho0_, two_r_ = 0;
    std::vector<cplx> prev_, cur_, next_;
    std::vector<double> inv_c_, c_old_;
};

void check_inputs(const GridSpec& grid, double rho0, const BoundaryTrace& neumann) {
    grid.check_cfl(rho0);
    if (neumann.size() != grid.nt() || neumann.at_b.size() != grid.nt())
        throw GridMismatchError("solver: Neumann data must have nt samples");
    if (std::abs(neumann.dt - grid.dt()) > 1e-12 * grid.dt())
        throw GridMismatchError("solver: Neumann data sampled with a different dt");
}

double max_abs(const BoundaryTrace& g) {
    double m = 0;
    for (std::size_t j = 0; j < g.size(); ++j) m = std::max({m, std::abs(g.at_a[j]), std::abs(g.at_b[j])});
    return m;
}

void warn_initial_data(const BoundaryTrace& g, std::vector<std::string>& warnings) {
    const double scale = max_abs(g);
    if (scale == 0) return;
    if (std::max(std::abs(g.at_a[0]), std::abs(g.at_b[0])) > 1e-10 * scale)
        warnings.emplace_back("Neumann data do not vanish at t = 0; zero initial data are incompatible");
}

}  // namespace

SolveOutput solve(const GridSpec& grid, double rho0, std::span<const double> sigma,
                  const BoundaryTrace& neumann, const SourceFn& source) {
    check_inputs(grid, rho0, neumann);
    const std::size_t nx = grid.nx(), nt = grid.nt(), nT = grid.t_index();
    SolveOutput out;
    out.dirichlet = BoundaryTrace::zeros(grid);
    warn_initial_data(neumann, out.warnings);

    Leapfrog u(grid, rho0, sigma);
    std::vector<cplx> src;
    const cplx* src_ptr = nullptr;
    auto fill_source = [&](std::size_t n) {
        if (!source) return;
        src.resize(nx);
        for (std::size_t i = 0; i < nx; ++i) src[i] = source(n, i);
        src_ptr = src.data();
    };

    fill_source(0);
    if (src_ptr) {
        double s0 = 0;
        for (const auto& v : src) s0 = std::max(s0, std::abs(v));
        if (s0 > 1e-10)
            out.warnings.emplace_back("source does not vanish at t = 0; zero initial data are incompatible");
    }
    u.first(neumann.at_a[0], neumann.at_b[0], src_ptr);
    u.rotate();
    for (std::size_t n = 1; n + 1 < nt; ++n) {
        fill_source(n);
        u.advance(neumann.at_a[n], neumann.at_b[n], src_ptr);
        if (n == nT) u.snapshot(neumann.at_a[n], neumann.at_b[n], out.pT_snapshot, out.qT_snapshot);
        out.dirichlet.at_a[n] = u.cur().front();
        out.dirichlet.at_b[n] = u.cur().back();
        u.rotate();
    }
    out.dirichlet.at_a[nt - 1] = u.cur().front();
    out.dirichlet.at_b[nt - 1] = u.cur().back();
    return out;
}

BoundaryTrace nd_map(const GridSpec& grid, double rho0, std::span<const double> sigma,
                     const BoundaryTrace& f) {
    return solve(grid, rho0, sigma, f).dirichlet;
}

LinearizedOutput linearized_nd_map(const GridSpec& grid, const MediumSpec& medium,
                                   const BoundaryTrace& f) {
    medium.validate(grid);
    check_inputs(grid, medium.rho0, f);
    const std::size_t nx = grid.nx(), nt = grid.nt(), nT = grid.t_index();
    const double dt = grid.dt();
    const std::vector<double> sigma0 = medium.background_sigma();

    LinearizedOutput out;
    out.trace = BoundaryTrace::zeros(grid);
    out.background.dirichlet = BoundaryTrace::zeros(grid);
    warn_initial_data(f, out.background.warnings);

    Leapfrog u0(grid, medium.rho0, sigma0);
    Leapfrog ud(grid, medium.rho0, sigma0);
    std::vector<cplx> src(nx);
    const auto& sd = medium.sigma_dot;

    // d_t u0 vanishes at t = 0, so the perturbation's first layer is zero.
    u0.first(f.at_a[0], f.at_b[0], nullptr);
    ud.first(0.0, 0.0, nullptr);
    u0.rotate();
    ud.rotate();
    for (std::size_t n = 1; n + 1 < nt; ++n) {
        u0.advance(f.at_a[n], f.at_b[n], nullptr);
        const auto& up = u0.next();
        const auto& um = u0.prev();
        for (std::size_t i = 0; i < nx; ++i) src[i] = -sd[i] * (up[i] - um[i]) / (2 * dt);
        ud.advance(0.0, 0.0, src.data());
        if (n == nT)
            u0.snapshot(f.at_a[n], f.at_b[n], out.background.pT_snapshot, out.background.qT_snapshot);
        out.background.dirichlet.at_a[n] = u0.cur().front();
        out.background.dirichlet.at_b[n] = u0.cur().back();
        out.trace.at_a[n] = ud.cur().front();
        out.trace.at_b[n] = ud.cur().back();
        u0.rotate();
        ud.rotate();
    }
    out.background.dirichlet.at_a[nt - 1] = u0.cur().front();
    out.background.dirichlet.at_b[nt - 1] = u0.cur().back();
    out.trace.at_a[nt - 1] = ud.cur().front();
    out.trace.at_b[nt - 1] = ud.cur().back();
    return out;
}

}  // namespace bcm
