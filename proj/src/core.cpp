#include "bcm/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bcm {

namespace {

bool near_integer(double r) {
    return std::abs(r - std::round(r)) <= 1e-9 * std::max(1.0, std::abs(r));
}

std::string describe(const char* what, double v) {
    std::ostringstream os;
    os << what << " (got " << v << ")";
    return os.str();
}

}  // namespace

GridSpec::GridSpec(double a, double b, double dx, double dt, double T)
    : a_(a), b_(b), dx_(dx), dt_(dt), T_(T) {
    if (!(b > a)) throw ConfigError("grid: require b > a");
    if (!(dx > 0) || !(dt > 0) || !(T > 0)) throw ConfigError("grid: dx, dt and T must be positive");
    const double cells = (b - a) / dx;
    if (!near_integer(cells)) throw ConfigError(describe("grid: (b-a)/dx must be an integer", cells));
    if (!near_integer(T / dt)) throw ConfigError(describe("grid: T/dt must be an integer", T / dt));
    if (!near_integer(2 * T / dt)) throw ConfigError(describe("grid: 2T/dt must be an integer", 2 * T / dt));
    if (T < (b - a) + 1 - 1e-12)
        throw ConfigError(describe("grid: require T >= (b-a)+1 for time-reversal controls", T));
    nx_ = static_cast<std::size_t>(std::llround(cells)) + 1;
    nt_ = 2 * static_cast<std::size_t>(std::llround(T / dt)) + 1;
}

GridSpec GridSpec::reference() { return {-1.0, 1.0, 1.0 / 250, 1.0 / 2500, 5.0}; }

std::vector<double> GridSpec::nodes() const {
    std::vector<double> xs(nx_);
    for (std::size_t i = 0; i < nx_; ++i) xs[i] = x(i);
    return xs;
}

void GridSpec::check_cfl(double rho0) const {
    if (!(rho0 > 0)) throw ConfigError("grid: rho0 must be positive");
    const double ratio = dt_ / (std::sqrt(rho0) * dx_);
    if (ratio > 1.0 + 1e-12) throw ConfigError(describe("grid: CFL violated, dt/(sqrt(rho0) dx) <= 1", ratio));
}

void MediumSpec::validate(const GridSpec& grid) const {
    if (!(rho0 > 0)) throw PreconditionError("medium: rho0 must be positive");
    if (!(sigma0 >= 0)) throw PreconditionError("medium: sigma0 must be non-negative");
    if (sigma_dot.size() != grid.nx()) throw PreconditionError("medium: sigma_dot must have nx samples");
    if (!sigma_ddot.empty() && sigma_ddot.size() != grid.nx())
        throw PreconditionError("medium: sigma_ddot must have nx samples");
}

std::vector<double> MediumSpec::full_sigma(double eps) const {
    std::vector<double> s(sigma_dot.size(), sigma0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] += eps * sigma_dot[i];
        if (!sigma_ddot.empty()) s[i] += eps * eps * sigma_ddot[i];
    }
    return s;
}

std::vector<double> MediumSpec::background_sigma() const {
    return std::vector<double>(sigma_dot.size(), sigma0);
}

BoundaryTrace::BoundaryTrace(double dt_, std::size_t nt) : dt(dt_), at_a(nt), at_b(nt) {}

BoundaryTrace::BoundaryTrace(double dt_, std::vector<cplx> a, std::vector<cplx> b)
    : dt(dt_), at_a(std::move(a)), at_b(std::move(b)) {
    if (at_a.size() != at_b.size()) throw GridMismatchError("trace: endpoint series differ in length");
}

BoundaryTrace& BoundaryTrace::operator+=(const BoundaryTrace& other) {
    require_same_grid(*this, other);
    for (std::size_t j = 0; j < size(); ++j) {
        at_a[j] += other.at_a[j];
        at_b[j] += other.at_b[j];
    }
    return *this;
}

BoundaryTrace& BoundaryTrace::operator-=(const BoundaryTrace& other) {
    require_same_grid(*this, other);
    for (std::size_t j = 0; j < size(); ++j) {
        at_a[j] -= other.at_a[j];
        at_b[j] -= other.at_b[j];
    }
    return *this;
}

BoundaryTrace& BoundaryTrace::operator*=(cplx s) {
    for (auto& v : at_a) v *= s;
    for (auto& v : at_b) v *= s;
    return *this;
}

void require_same_grid(const BoundaryTrace& g1, const BoundaryTrace& g2) {
    if (g1.size() != g2.size() || g1.at_b.size() != g2.at_b.size() || g1.at_a.size() != g1.at_b.size())
        throw GridMismatchError("trace: sample counts differ");
    if (std::abs(g1.dt - g2.dt) > 1e-12 * std::max(g1.dt, g2.dt))
        throw GridMismatchError("trace: time steps differ");
}

std::size_t time_to_index(double t, double dt, std::size_t nt) {
    const double r = t / dt;
    if (!near_integer(r) || r < -0.5) throw PreconditionError(describe("time is not on the sample grid", t));
    const auto n = static_cast<std::size_t>(std::llround(r));
    if (n >= nt) throw PreconditionError(describe("time exceeds the trace length", t));
    return n;
}

cplx bilinear_time_boundary_pairing(const BoundaryTrace& g1, const BoundaryTrace& g2, double upto) {
    require_same_grid(g1, g2);
    if (g1.size() == 0) return {};
    const std::size_t m = time_to_index(upto, g1.dt, g1.size());
    if (m == 0) return {};
    cplx sum = 0.5 * (g1.at_a[0] * g2.at_a[0] + g1.at_b[0] * g2.at_b[0]);
    for (std::size_t j = 1; j < m; ++j) sum += g1.at_a[j] * g2.at_a[j] + g1.at_b[j] * g2.at_b[j];
    sum += 0.5 * (g1.at_a[m] * g2.at_a[m] + g1.at_b[m] * g2.at_b[m]);
    return sum * g1.dt;
}

BoundaryTrace reflect_trace(const BoundaryTrace& g) {
    BoundaryTrace r = g;
    std::reverse(r.at_a.begin(), r.at_a.end());
    std::reverse(r.at_b.begin(), r.at_b.end());
    return r;
}

namespace {

// Second-order centred differences, second-order one-sided at the ends.
std::vector<cplx> time_derivative(std::span<const cplx> g, int order, double dt) {
    const std::size_t n = g.size();
    std::vector<cplx> d(n);
    if (order == 1) {
        for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (g[j + 1] - g[j - 1]) / (2 * dt);
        d[0] = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2 * dt);
        d[n - 1] = (3.0 * g[n - 1] - 4.0 * g[n - 2] + g[n - 3]) / (2 * dt);
    } else {
        const double h2 = dt * dt;
        for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (g[j + 1] - 2.0 * g[j] + g[j - 1]) / h2;
        d[0] = (2.0 * g[0] - 5.0 * g[1] + 4.0 * g[2] - g[3]) / h2;
        d[n - 1] = (2.0 * g[n - 1] - 5.0 * g[n - 2] + 4.0 * g[n - 3] - g[n - 4]) / h2;
    }
    return d;
}

double squared_l2(std::span<const cplx> g, std::size_t m, double dt) {
    std::vector<double> mag(m + 1);
    for (std::size_t j = 0; j <= m; ++j) mag[j] = std::norm(g[j]);
    return trapezoid<double>(mag, dt);
}

}  // namespace

double discrete_sobolev_norm(const BoundaryTrace& g, int s, double upto) {
    if (s < 0 || s > 2) throw PreconditionError("sobolev norm: order must be 0, 1 or 2");
    if (g.size() < static_cast<std::size_t>(2 * s + 1) || g.size() < 4)
        throw PreconditionError("sobolev norm: too few samples");
    const std::size_t m = time_to_index(upto, g.dt, g.size());
    double total = squared_l2(g.at_a, m, g.dt) + squared_l2(g.at_b, m, g.dt);
    for (int order = 1; order <= s; ++order) {
        total += squared_l2(time_derivative(g.at_a, order, g.dt), m, g.dt);
        total += squared_l2(time_derivative(g.at_b, order, g.dt), m, g.dt);
    }
    return std::sqrt(total);
}

double relative_l2(std::span<const cplx> approx, std::span<const cplx> exact, double h, double floor) {
    if (approx.size() != exact.size()) throw GridMismatchError("relative_l2: length mismatch");
    std::vector<double> diff(approx.size()), ref(approx.size());
    for (std::size_t i = 0; i < approx.size(); ++i) {
        diff[i] = std::norm(approx[i] - exact[i]);
        ref[i] = std::norm(exact[i]);
    }
    const double num = std::sqrt(trapezoid<double>(diff, h));
    const double den = std::sqrt(trapezoid<double>(ref, h));
    return den > floor ? num / den : num;
}

}  // namespace bcm
