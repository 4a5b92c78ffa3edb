#include "bcm/recon.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "bcm/solver.hpp"

namespace bcm {

namespace {

constexpr double pi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Runs body(i) for i in [0, count) on up to `threads` workers. Results must be
// written to per-index slots so the outcome is schedule independent.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

BoundaryTrace difference_data(const GridSpec& grid, const MediumSpec& medium, std::span<const double> sigma,
                              std::span<const double> sigma0, const BoundaryTrace& f) {
    return nd_map(grid, medium.rho0, sigma, f) - nd_map(grid, medium.rho0, sigma0, f);
}

}  // namespace

void ReconSettings::validate() const {
    if (N < 1) throw ConfigError("recon: N must be at least 1");
    if (!(noise_eps >= 0)) throw ConfigError("recon: noise level must be non-negative");
    if (data_mode == DataMode::nonlinear_difference && !(eps_linearization > 0))
        throw ConfigError("recon: eps_linearization must be positive for difference data");
    if (d < 2) throw ConfigError("recon: extension order d must be at least 2");
}

FourierTargets fourier_targets(int k) {
    if (k < 1) throw PreconditionError("fourier_targets: k must be at least 1");
    const double kappa = k * pi / 2;
    return {AnalyticProfile::sine(kappa), AnalyticProfile::cosine(kappa), cplx{0.0, kappa}};
}

std::mt19937_64 noise_stream(std::uint64_t seed, int k, TraceRole role) {
    std::uint64_t key = splitmix64(seed);
    key = splitmix64(key ^ static_cast<std::uint64_t>(k));
    key = splitmix64(key ^ (static_cast<std::uint64_t>(role) + 0x51ed270b27UL));
    return std::mt19937_64(key);
}

BoundaryTrace add_noise(const BoundaryTrace& trace, double eps, std::mt19937_64& stream) {
    if (eps < 0) throw PreconditionError("add_noise: eps must be non-negative");
    if (eps == 0 || trace.size() == 0) return trace;
    double power = 0;
    bool is_real = true;
    for (std::size_t j = 0; j < trace.size(); ++j) {
        power += std::norm(trace.at_a[j]) + std::norm(trace.at_b[j]);
        is_real = is_real && trace.at_a[j].imag() == 0 && trace.at_b[j].imag() == 0;
    }
    const double rms = std::sqrt(power / static_cast<double>(2 * trace.size()));
    if (rms == 0) return trace;
    BoundaryTrace noisy = trace;
    const double sd = is_real ? eps * rms : eps * rms / std::numbers::sqrt2;
    std::normal_distribution<double> gauss(0.0, sd);
    for (auto* series : {&noisy.at_a, &noisy.at_b}) {
        for (auto& v : *series) {
            const double re = gauss(stream);
            const double im = is_real ? 0.0 : gauss(stream);
            v += cplx{re, im};
        }
    }
    return noisy;
}

ModeData acquire_mode_data(int k, const ReconSettings& settings, const MediumSpec& medium) {
    const GridSpec& grid = settings.grid;
    const FourierTargets tg = fourier_targets(k);
    ModeData m;
    m.k = k;
    m.f = build_control(tg.pT_f, tg.lambda, grid, settings.d);
    m.h = build_control(tg.pT_h, tg.lambda, grid, settings.d);
    if (settings.data_mode == DataMode::linearized) {
        m.mf = measure_linearized(m.f, grid, medium);
        m.mh = measure_linearized(m.h, grid, medium);
    } else {
        const std::vector<double> sigma = medium.full_sigma(settings.eps_linearization);
        const std::vector<double> sigma0 = medium.background_sigma();
        m.mf.of_t = difference_data(grid, medium, sigma, sigma0, m.f.f_t);
        m.mf.of_tt = difference_data(grid, medium, sigma, sigma0, m.f.f_tt);
        m.mh.of_t = difference_data(grid, medium, sigma, sigma0, m.h.f_t);
        m.mh.of_tt = difference_data(grid, medium, sigma, sigma0, m.h.f_tt);
    }
    return m;
}

ModeData with_noise(const ModeData& clean, double eps, std::uint64_t seed) {
    if (eps == 0) return clean;
    ModeData m = clean;
    auto apply = [&](BoundaryTrace& g, TraceRole role) {
        auto stream = noise_stream(seed, clean.k, role);
        g = add_noise(g, eps, stream);
    };
    apply(m.mf.of_t, TraceRole::f_t);
    apply(m.mf.of_tt, TraceRole::f_tt);
    apply(m.mh.of_t, TraceRole::h_t);
    apply(m.mh.of_tt, TraceRole::h_tt);
    return m;
}

PairData acquire_pair_data(int k, const ReconSettings& settings, const MediumSpec& medium) {
    settings.validate();
    const ModeData m = with_noise(acquire_mode_data(k, settings, medium), settings.noise_eps, settings.seed);
    return make_pair_data(m.f, m.mf, m.h, m.mh, settings.grid);
}

ModeIdentities mode_identities(const ModeData& m, const GridSpec& grid) {
    return {linearized_rhs(make_pair_data(m.f, m.mf, m.f, m.mf, grid)),
            linearized_rhs(make_pair_data(m.h, m.mh, m.h, m.mh, grid)),
            linearized_rhs(make_pair_data(m.f, m.mf, m.h, m.mh, grid))};
}

FourierCoeffs assemble_coefficients(std::span<const ModeIdentities> per_mode, int N, double scale) {
    if (N < 1 || per_mode.size() < static_cast<std::size_t>(N))
        throw PreconditionError("assemble: need identity values for k = 1..N");
    FourierCoeffs c;
    c.N = N;
    c.a.resize(N);
    c.b.resize(N);
    for (int k = 1; k <= N; ++k) {
        const ModeIdentities& s = per_mode[k - 1];
        c.a[k - 1] = scale * (s.S_hh - s.S_ff);
        c.b[k - 1] = scale * 2.0 * s.S_fh;
    }
    c.a0 = scale * (per_mode[0].S_hh + per_mode[0].S_ff);
    return c;
}

std::vector<cplx> synthesize(const FourierCoeffs& coeffs, const GridSpec& grid) {
    std::vector<cplx> s(grid.nx());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = grid.x(i);
        cplx v = 0.5 * coeffs.a0;
        for (int k = 1; k <= coeffs.N; ++k)
            v += coeffs.a[k - 1] * std::cos(k * pi * x) + coeffs.b[k - 1] * std::sin(k * pi * x);
        s[i] = v;
    }
    return s;
}

std::vector<double> projection_truth(int N, const GridSpec& grid) {
    if (N < 1) throw PreconditionError("projection_truth: N must be at least 1");
    std::vector<double> s(grid.nx());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = grid.x(i);
        double v = 35.0 / 24.0;
        for (int k = 1; k <= N; ++k) {
            const double kp = k * pi;
            const double ak = (std::sin(kp / 3) - std::sin(kp / 2)) / (2 * kp);
            const double bk = -(std::cos(kp / 3) + std::cos(kp / 2) - 2 * std::cos(kp)) / (2 * kp);
            v += ak * std::cos(kp * x) + bk * std::sin(kp * x);
        }
        s[i] = v;
    }
    return s;
}

CleanData acquire_clean_data(const ReconSettings& settings, const MediumSpec& medium) {
    settings.validate();
    medium.validate(settings.grid);
    if (medium.rho0 != 1.0 || medium.sigma0 != 0.0)
        throw UnsupportedRegimeError("reconstruct: requires rho0 = 1 and sigma0 = 0");
    if (settings.data_mode == DataMode::linearized && !medium.sigma_ddot.empty())
        throw PreconditionError("reconstruct: a second-order damping term needs difference data");
    CleanData clean{settings, std::vector<ModeData>(settings.N)};
    parallel_for(static_cast<std::size_t>(settings.N), settings.threads, [&](std::size_t i) {
        clean.modes[i] = acquire_mode_data(static_cast<int>(i) + 1, settings, medium);
    });
    return clean;
}

void score(ReconResult& r, const GridSpec& grid) {
    const std::size_t n = r.truth.size();
    if (r.sigma_recon.size() != n) throw GridMismatchError("score: truth and reconstruction differ in length");
    std::vector<double> err2(n), ref2(n);
    r.linf = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = r.sigma_recon[i].real() - r.truth[i];
        err2[i] = e * e;
        ref2[i] = r.truth[i] * r.truth[i];
        r.linf = std::max(r.linf, std::abs(e));
    }
    const double num = std::sqrt(trapezoid<double>(err2, grid.dx()));
    const double den = std::sqrt(trapezoid<double>(ref2, grid.dx()));
    r.rel_l2 = den > 1e-14 ? num / den : num;

    double re_max = std::abs(r.coeffs.a0.real()), im_max = std::abs(r.coeffs.a0.imag());
    for (int k = 0; k < r.coeffs.N; ++k) {
        re_max = std::max(re_max, std::abs(r.coeffs.a[k].real()));
        im_max = std::max({im_max, std::abs(r.coeffs.a[k].imag()), std::abs(r.coeffs.b[k].imag())});
    }
    r.imag_leakage = re_max > 0 ? im_max / re_max : im_max;
}

ReconResult reconstruct_from(const CleanData& clean, double noise_eps, std::uint64_t seed,
                             std::span<const double> truth) {
    const ReconSettings& s = clean.settings;
    if (truth.size() != s.grid.nx()) throw GridMismatchError("reconstruct: truth must have nx samples");
    std::vector<ModeIdentities> values(clean.modes.size());
    parallel_for(values.size(), s.threads, [&](std::size_t i) {
        values[i] = mode_identities(with_noise(clean.modes[i], noise_eps, seed), s.grid);
    });
    const double scale = s.data_mode == DataMode::nonlinear_difference ? 1.0 / s.eps_linearization : 1.0;
    ReconResult r;
    r.coeffs = assemble_coefficients(values, s.N, scale);
    r.sigma_recon = synthesize(r.coeffs, s.grid);
    r.truth.assign(truth.begin(), truth.end());
    score(r, s.grid);
    return r;
}

ReconResult reconstruct(const ReconSettings& settings, const MediumSpec& medium, std::span<const double> truth) {
    return reconstruct_from(acquire_clean_data(settings, medium), settings.noise_eps, settings.seed, truth);
}

}  // namespace bcm
