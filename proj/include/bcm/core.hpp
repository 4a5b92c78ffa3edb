#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcm {

using cplx = std::complex<double>;

// Error taxonomy shared by every module.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class GridMismatchError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class UnsupportedRegimeError : public Error {
public:
    using Error::Error;
};

/// Uniform discretization of (0, 2T) x [a, b].
///
/// The constructor enforces that (b-a)/dx, T/dt and 2T/dt are integers, so
/// t = T and the reflection t -> 2T - t fall on grid samples, and that
/// T >= (b - a) + 1, which the time-reversal controls rely on to vanish near
/// t = 0. The CFL bound depends on the density and is checked by the solver.
class GridSpec {
public:
    GridSpec(double a, double b, double dx, double dt, double T);

    /// Reference grid: [-1, 1], dx = 1/250, dt = 1/2500, T = 5.
    static GridSpec reference();

    double a() const { return a_; }
    double b() const { return b_; }
    double dx() const { return dx_; }
    double dt() const { return dt_; }
    double T() const { return T_; }

    std::size_t nx() const { return nx_; }
    std::size_t nt() const { return nt_; }
    /// Sample index of t = T.
    std::size_t t_index() const { return nt_ / 2; }

    double x(std::size_t i) const { return a_ + static_cast<double>(i) * dx_; }
    double t(std::size_t n) const { return static_cast<double>(n) * dt_; }
    std::vector<double> nodes() const;

    /// Throws ConfigError if dt * max(rho0^-1/2) / dx > 1.
    void check_cfl(double rho0) const;

    GridSpec refined() const { return {a_, b_, dx_ / 2, dt_ / 2, T_}; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    double a_, b_, dx_, dt_, T_;
    std::size_t nx_, nt_;
};

/// Background density and damping plus the damping perturbation(s).
struct MediumSpec {
    double rho0 = 1.0;
    double sigma0 = 0.0;
    std::vector<double> sigma_dot;
    std::vector<double> sigma_ddot;  // empty unless a second-order term is present

    /// Throws PreconditionError unless rho0 > 0, sigma0 >= 0 and the sample
    /// arrays have length nx.
    void validate(const GridSpec& grid) const;

    /// sigma0 + eps*sigma_dot + eps^2*sigma_ddot sampled on the grid.
    std::vector<double> full_sigma(double eps) const;
    /// sigma0 on every node.
    std::vector<double> background_sigma() const;
};

/// Complex time series at the two endpoints, sampled at t = 0, dt, ..., 2T.
struct BoundaryTrace {
    double dt = 0.0;
    std::vector<cplx> at_a;
    std::vector<cplx> at_b;

    BoundaryTrace() = default;
    BoundaryTrace(double dt_, std::size_t nt);
    BoundaryTrace(double dt_, std::vector<cplx> a, std::vector<cplx> b);

    static BoundaryTrace zeros(const GridSpec& grid) { return {grid.dt(), grid.nt()}; }

    std::size_t size() const { return at_a.size(); }

    BoundaryTrace& operator+=(const BoundaryTrace& other);
    BoundaryTrace& operator-=(const BoundaryTrace& other);
    BoundaryTrace& operator*=(cplx s);

    friend BoundaryTrace operator+(BoundaryTrace lhs, const BoundaryTrace& rhs) { return lhs += rhs; }
    friend BoundaryTrace operator-(BoundaryTrace lhs, const BoundaryTrace& rhs) { return lhs -= rhs; }
    friend BoundaryTrace operator*(cplx s, BoundaryTrace g) { return g *= s; }
    friend bool operator==(const BoundaryTrace&, const BoundaryTrace&) = default;
};

/// Throws GridMismatchError unless both traces have equal length and step.
void require_same_grid(const BoundaryTrace& g1, const BoundaryTrace& g2);

/// Truncated Fourier series a0/2 + sum a_k cos(k pi x) + b_k sin(k pi x).
struct FourierCoeffs {
    int N = 0;
    cplx a0{};
    std::vector<cplx> a;  // a[k-1] = a_k
    std::vector<cplx> b;  // b[k-1] = b_k
};

/// Bilinear pairing int_0^upto [g1 g2](t,a) + [g1 g2](t,b) dt by composite
/// trapezoid. No complex conjugation.
cplx bilinear_time_boundary_pairing(const BoundaryTrace& g1, const BoundaryTrace& g2,
                                    double upto);

/// Time reversal t -> 2T - t (exact index reversal).
BoundaryTrace reflect_trace(const BoundaryTrace& g);

/// Discrete H^s((0, upto) x {a, b}) norm, s in {0, 1, 2}.
double discrete_sobolev_norm(const BoundaryTrace& g, int s, double upto);

/// Composite trapezoid of uniformly spaced samples.
template <typename T>
T trapezoid(std::span<const T> f, double h) {
    if (f.size() < 2) return T{};
    T sum = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
    return sum * h;
}

/// Relative L2 (trapezoid) error ||approx - exact|| / ||exact||; returns the
/// absolute norm of the difference when ||exact|| is below floor.
double relative_l2(std::span<const cplx> approx, std::span<const cplx> exact, double h,
                   double floor = 1e-14);

/// Converts a time in [0, 2T] to an exact sample index; throws
/// PreconditionError if t/dt is not an integer or out of range.
std::size_t time_to_index(double t, double dt, std::size_t nt);

}  // namespace bcm
