#include "bcm/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "bcm/cli/emit.hpp"
#include "bcm/cli/presets.hpp"
#include "bcm/control.hpp"
#include "bcm/identity.hpp"
#include "bcm/solver.hpp"

namespace bcm::cli {

namespace {

constexpr double pi = std::numbers::pi;

CheckResult at_most(std::string name, double value, double tol) {
    return {std::move(name), value, 0.0, tol, value <= tol};
}

CheckResult within(std::string name, double value, double lo, double hi) {
    return {std::move(name), value, lo, hi, value >= lo && value <= hi};
}

std::string label(const char* what, int k) { return std::string(what) + " k=" + std::to_string(k); }

}  // namespace

ExperimentOutcome run_experiment(const RunConfig& cfg) {
    cfg.validate();
    prepare_output_dir(cfg.out_dir);
    const auto start = std::chrono::steady_clock::now();

    const GridSpec grid = cfg.grid();
    const Preset preset = make_preset(cfg.experiment, grid, cfg.N);
    ReconSettings s;
    s.N = cfg.N;
    s.grid = grid;
    s.noise_eps = cfg.noise;
    s.seed = cfg.seed;
    s.data_mode = preset.mode;
    s.eps_linearization = cfg.eps_linearization;
    s.threads = cfg.threads;

    ExperimentOutcome out;
    out.result = reconstruct(s, preset.medium, preset.truth);
    out.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit_results(out.result, cfg, out.runtime_seconds, cfg.out_dir);
    return out;
}

std::vector<CheckResult> control_checks() {
    const GridSpec grid = GridSpec::reference();
    const MediumSpec medium{1.0, 0.0, std::vector<double>(grid.nx(), 0.0), {}};
    std::vector<CheckResult> checks;
    for (int k = 1; k <= 10; ++k) {
        const FourierTargets tg = fourier_targets(k);
        for (const auto& [name, target] : {std::pair{"sin", &tg.pT_f}, std::pair{"cos", &tg.pT_h}}) {
            const ControlReport r = verify_control(build_control(*target, tg.lambda, grid), medium, grid);
            checks.push_back(at_most(label((std::string("control err_p ") + name).c_str(), k), r.err_p, 1e-2));
            checks.push_back(at_most(label((std::string("control err_init ") + name).c_str(), k), r.err_init, 1e-10));
        }
    }
    return checks;
}

BoundaryTrace pulse_trace(const GridSpec& grid, double c_a, double amp_a, double c_b, double amp_b, double w,
                          bool derivative) {
    auto pulse = [&](double t, double c) {
        const double s = (t - c) / w;
        if (std::abs(s) >= 1) return 0.0;
        const double q = 1 - s * s;
        const double v = std::exp(1 - 1 / q);
        return derivative ? v * (-2 * s / (q * q)) / w : v;
    };
    BoundaryTrace g = BoundaryTrace::zeros(grid);
    for (std::size_t n = 0; n < grid.nt(); ++n) {
        const double t = grid.t(n);
        g.at_a[n] = amp_a * pulse(t, c_a);
        g.at_b[n] = amp_b * pulse(t, c_b);
    }
    return g;
}

IdentityResidual pulse_identity_residual(const GridSpec& grid, double sigma) {
    const BoundaryTrace f = pulse_trace(grid, 1.5, 1.0, 2.5, 0.6, 1.0, false);
    const BoundaryTrace f_t = pulse_trace(grid, 1.5, 1.0, 2.5, 0.6, 1.0, true);
    const BoundaryTrace h = pulse_trace(grid, 3.0, -0.8, 2.0, 1.2, 0.8, false);
    const BoundaryTrace h_t = pulse_trace(grid, 3.0, -0.8, 2.0, 1.2, 0.8, true);
    const std::vector<double> s(grid.nx(), sigma);
    return nonlinear_identity_residual(f, f_t, h, h_t, grid, 1.0, s);
}

std::vector<CheckResult> identity_checks() {
    const GridSpec grid = GridSpec::reference();
    std::vector<CheckResult> checks;
    for (double sigma : {0.0, 0.3}) {
        const IdentityResidual r = pulse_identity_residual(grid, sigma);
        checks.push_back(at_most("nonlinear identity residual sigma=" + format_real(sigma), r.rel_residual, 1e-2));
    }

    ReconSettings s;
    s.grid = grid;
    MediumSpec zero{1.0, 0.0, std::vector<double>(grid.nx(), 0.0), {}};
    {
        const ModeData m = acquire_mode_data(1, s, zero);
        const ModeIdentities id = mode_identities(m, grid);
        const double worst = std::max({std::abs(id.S_ff), std::abs(id.S_hh), std::abs(id.S_fh)});
        checks.push_back(at_most("linearized identity |rhs| sigma_dot=0", worst, 1e-12));
    }

    MediumSpec smooth{1.0, 0.0, smooth_damping(grid), {}};
    for (int k = 1; k <= 5; ++k) {
        const ModeData m = acquire_mode_data(k, s, smooth);
        const PairData ff = make_pair_data(m.f, m.mf, m.f, m.mf, grid);
        const PairData hh = make_pair_data(m.h, m.mh, m.h, m.mh, grid);
        const PairData fh = make_pair_data(m.f, m.mf, m.h, m.mh, grid);
        const PairData hf = make_pair_data(m.h, m.mh, m.f, m.mf, grid);
        const cplx v_ff = weighted_volume_pairing(ff.pf_T, ff.ph_T, smooth.sigma_dot, grid);
        const cplx v_hh = weighted_volume_pairing(hh.pf_T, hh.ph_T, smooth.sigma_dot, grid);
        const cplx v_fh = weighted_volume_pairing(fh.pf_T, fh.ph_T, smooth.sigma_dot, grid);
        // Cross pairs may have a vanishing volume term; scale them by the
        // Cauchy-Schwarz bound instead.
        const double cross_scale = std::max(std::abs(v_fh), std::sqrt(std::abs(v_ff) * std::abs(v_hh)));
        const cplx r_fh = linearized_rhs(fh);
        checks.push_back(at_most(label("linearized identity (f,f)", k),
                                 std::abs(linearized_rhs(ff) - v_ff) / std::abs(v_ff), 1e-2));
        checks.push_back(at_most(label("linearized identity (h,h)", k),
                                 std::abs(linearized_rhs(hh) - v_hh) / std::abs(v_hh), 1e-2));
        checks.push_back(at_most(label("linearized identity (f,h)", k), std::abs(r_fh - v_fh) / cross_scale, 1e-2));
        checks.push_back(
            at_most(label("linearized identity symmetry", k), std::abs(r_fh - linearized_rhs(hf)) / cross_scale, 1e-2));
    }
    return checks;
}

double manufactured_solution_error(const GridSpec& grid) {
    const double kappa = pi / 2, theta = 0.3, rho0 = 1.3;
    auto X = [&](double x) { return std::cos(kappa * x + theta); };
    auto dX = [&](double x) { return -kappa * std::sin(kappa * x + theta); };
    std::vector<double> sigma(grid.nx());
    for (std::size_t i = 0; i < grid.nx(); ++i) sigma[i] = 0.3 + 0.2 * grid.x(i);

    BoundaryTrace flux = BoundaryTrace::zeros(grid);
    for (std::size_t n = 0; n < grid.nt(); ++n) {
        const double g = 1 - std::cos(grid.t(n));
        flux.at_a[n] = -dX(grid.a()) * g;
        flux.at_b[n] = dX(grid.b()) * g;
    }
    const SourceFn source = [&](std::size_t n, std::size_t i) {
        const double t = grid.t(n), x = grid.x(i);
        return cplx{(rho0 * std::cos(t) + sigma[i] * std::sin(t) + kappa * kappa * (1 - std::cos(t))) * X(x)};
    };
    const SolveOutput out = solve(grid, rho0, sigma, flux, source);

    double err = 0, ref = 0;
    for (std::size_t n = 0; n < grid.nt(); ++n) {
        const double g = 1 - std::cos(grid.t(n));
        err += std::norm(out.dirichlet.at_a[n] - g * X(grid.a())) + std::norm(out.dirichlet.at_b[n] - g * X(grid.b()));
        ref += g * g * (X(grid.a()) * X(grid.a()) + X(grid.b()) * X(grid.b()));
    }
    return std::sqrt(err / ref);
}

std::vector<CheckResult> convergence_checks() {
    std::vector<CheckResult> checks;
    GridSpec grid(-1.0, 1.0, 1.0 / 40, 1.0 / 80, 3.0);
    double previous = manufactured_solution_error(grid);
    for (int level = 1; level <= 2; ++level) {
        grid = grid.refined();
        const double e = manufactured_solution_error(grid);
        checks.push_back(within("solver error reduction level " + std::to_string(level), previous / e, 3.4, 4.6));
        previous = e;
    }
    const GridSpec ref = GridSpec::reference();
    const double coarse = pulse_identity_residual(ref, 0.3).rel_residual;
    const double fine = pulse_identity_residual(ref.refined(), 0.3).rel_residual;
    checks.push_back(within("nonlinear identity residual reduction", coarse / fine, 3.4, 4.6));
    return checks;
}

int run_check(const std::string& kind, std::ostream& out) {
    std::vector<CheckResult> checks;
    if (kind == "control") checks = control_checks();
    else if (kind == "identity") checks = identity_checks();
    else if (kind == "convergence") checks = convergence_checks();
    else throw ConfigError("check kind must be identity, control or convergence (got '" + kind + "')");

    bool all = true;
    for (const auto& c : checks) {
        char line[256];
        if (c.lo == 0.0)
            std::snprintf(line, sizeof line, "%s  %-45s %.3e  (tol <= %.1e)", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                          c.value, c.hi);
        else
            std::snprintf(line, sizeof line, "%s  %-45s %.3f  (range [%.2f, %.2f])", c.pass ? "PASS" : "FAIL",
                          c.name.c_str(), c.value, c.lo, c.hi);
        out << line << '\n';
        all = all && c.pass;
    }
    return all ? 0 : 1;
}

}  // namespace bcm::cli
