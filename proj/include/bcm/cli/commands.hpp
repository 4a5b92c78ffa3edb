#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bcm/cli/config.hpp"
#include "bcm/recon.hpp"

namespace bcm::cli {

struct ExperimentOutcome {
    ReconResult result;
    double runtime_seconds = 0;
};

/// Runs the preset cfg.experiment with cfg's overrides and writes the result
/// files to cfg.out_dir (checked for writability before any solve).
ExperimentOutcome run_experiment(const RunConfig& cfg);

/// One verified quantity: passes iff lo <= value <= hi.
struct CheckResult {
    std::string name;
    double value = 0;
    double lo = 0;
    double hi = 0;
    bool pass = false;
};

/// err_p and err_init of the controls for sin(k pi x/2), cos(k pi x/2),
/// k = 1..10, on the reference grid.
std::vector<CheckResult> control_checks();

/// Nonlinear identity residuals (sigma = 0 and 0.3), the linearized identity
/// with a vanishing perturbation, and the linearized identity against the
/// volume pairing for the smooth damping of experiment 1, k = 1..5.
std::vector<CheckResult> identity_checks();

/// Error reduction under dx, dt halving: manufactured solution for the solver
/// (three levels) and the nonlinear identity residual (reference grid).
std::vector<CheckResult> convergence_checks();

/// Relative L2 error of the boundary trace for the manufactured solution
/// u = (1 - cos t) cos(pi x/2 + 0.3), rho0 = 1.3, sigma = 0.3 + 0.2 x.
double manufactured_solution_error(const GridSpec& grid);

/// Smooth Neumann pulses at both ends (or their t-derivative) for the
/// nonlinear identity: amplitude amp_a centred at c_a on x = a, amp_b at c_b
/// on x = b, half-width w.
BoundaryTrace pulse_trace(const GridSpec& grid, double c_a, double amp_a, double c_b, double amp_b, double w,
                          bool derivative);

/// Nonlinear identity residual for a fixed pair of asymmetric pulses.
IdentityResidual pulse_identity_residual(const GridSpec& grid, double sigma);

/// Runs one check kind, prints one line per check; returns 0 iff all pass.
/// Throws ConfigError for an unknown kind.
int run_check(const std::string& kind, std::ostream& out);

}  // namespace bcm::cli
