#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bcm/core.hpp"

namespace bcm {

/// Boundary trace plus the (p, q) = (sqrt(rho0) u_t, u_x) snapshot at t = T.
struct SolveOutput {
    BoundaryTrace dirichlet;
    std::vector<cplx> pT_snapshot;
    std::vector<cplx> qT_snapshot;
    std::vector<std::string> warnings;
};

/// Interior source S(t_index, x_index). An empty function means S = 0.
using SourceFn = std::function<cplx(std::size_t, std::size_t)>;

/// Second-order finite differences for
///   rho0 u_tt + sigma u_t - u_xx = S  on (0, 2T) x (a, b),
///   d_nu u = neumann on the endpoints, u = u_t = 0 at t = 0.
///
/// Leapfrog in time with the damping term taken as sigma (u^{n+1} - u^{n-1})/(2dt);
/// the flux condition enters through ghost nodes. The first layer is the
/// Taylor step u^1 = dt^2/(2 rho0) (D2 u^0 + S^0), which is exactly zero when
/// the data vanish at t = 0.
SolveOutput solve(const GridSpec& grid, double rho0, std::span<const double> sigma,
                  const BoundaryTrace& neumann, const SourceFn& source = {});

/// Neumann-to-Dirichlet map for damping sigma: f -> u^f on the endpoints.
BoundaryTrace nd_map(const GridSpec& grid, double rho0, std::span<const double> sigma,
                     const BoundaryTrace& f);

struct LinearizedOutput {
    BoundaryTrace trace;     // linearized ND map applied to f
    SolveOutput background;  // background solve with data f
};

/// Linearized ND map at (rho0, sigma0) in direction sigma_dot. The background
/// field and its perturbation are advanced together; the perturbation is
/// driven by -sigma_dot * d_t u0 with the leapfrog centred difference of u0
/// and zero Neumann data.
LinearizedOutput linearized_nd_map(const GridSpec& grid, const MediumSpec& medium,
                                   const BoundaryTrace& f);

}  // namespace bcm
