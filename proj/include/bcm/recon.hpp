#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "bcm/control.hpp"
#include "bcm/core.hpp"
#include "bcm/identity.hpp"

namespace bcm {

enum class DataMode { linearized, nonlinear_difference };

struct ReconSettings {
    int N = 10;
    GridSpec grid = GridSpec::reference();
    double noise_eps = 0.0;
    std::uint64_t seed = 0;
    DataMode data_mode = DataMode::linearized;
    double eps_linearization = 1e-3;  // nonlinear_difference only
    int d = 2;                        // extension order
    unsigned threads = 0;             // 0: hardware concurrency

    void validate() const;
};

/// sin(k pi x/2), cos(k pi x/2) and lambda = i k pi/2.
struct FourierTargets {
    AnalyticProfile pT_f;
    AnalyticProfile pT_h;
    cplx lambda;
};

FourierTargets fourier_targets(int k);

/// Measured traces per mode, one independent noise substream each.
enum class TraceRole : std::uint32_t { f_t = 0, f_tt = 1, h_t = 2, h_tt = 3 };

/// Deterministic substream keyed by (seed, k, role).
std::mt19937_64 noise_stream(std::uint64_t seed, int k, TraceRole role);

/// Adds i.i.d. zero-mean Gaussian noise with standard deviation
/// eps * RMS(trace) to every sample. For complex traces the real and
/// imaginary parts each get eps * RMS / sqrt(2).
BoundaryTrace add_noise(const BoundaryTrace& trace, double eps, std::mt19937_64& stream);

/// Controls and clean measurements for one mode k.
struct ModeData {
    int k = 0;
    ControlBundle f, h;
    MeasuredControl mf, mh;
};

ModeData acquire_mode_data(int k, const ReconSettings& settings, const MediumSpec& medium);

/// Copy of the mode data with noise applied to each measured trace.
ModeData with_noise(const ModeData& clean, double eps, std::uint64_t seed);

/// Pair data for (f_k, h_k) including noise per the settings.
PairData acquire_pair_data(int k, const ReconSettings& settings, const MediumSpec& medium);

/// Identity values for the pairs (f,f), (h,h), (f,h) of one mode.
struct ModeIdentities {
    cplx S_ff, S_hh, S_fh;
};

ModeIdentities mode_identities(const ModeData& mode, const GridSpec& grid);

/// a_k = S_hh - S_ff, b_k = 2 S_fh, a_0 = S_hh(1) + S_ff(1), all times `scale`.
FourierCoeffs assemble_coefficients(std::span<const ModeIdentities> per_mode, int N, double scale = 1.0);

std::vector<cplx> synthesize(const FourierCoeffs& coeffs, const GridSpec& grid);

/// Truncated Fourier series of the three-level piecewise-constant profile
/// (2 on [-1,-1/2], 3/2 on (-1/2,1/3), 1 on [1/3,1]).
std::vector<double> projection_truth(int N, const GridSpec& grid);

struct ReconResult {
    FourierCoeffs coeffs;
    std::vector<cplx> sigma_recon;
    std::vector<double> truth;
    double rel_l2 = 0;
    double linf = 0;
    double imag_leakage = 0;  // max_k |Im a_k|,|Im b_k| over max_k |Re a_k|
};

/// Clean per-mode data, reusable across noise realisations.
struct CleanData {
    ReconSettings settings;
    std::vector<ModeData> modes;
};

CleanData acquire_clean_data(const ReconSettings& settings, const MediumSpec& medium);

ReconResult reconstruct_from(const CleanData& clean, double noise_eps, std::uint64_t seed,
                             std::span<const double> truth);

/// Full pipeline; requires rho0 = 1 and sigma0 = 0.
ReconResult reconstruct(const ReconSettings& settings, const MediumSpec& medium, std::span<const double> truth);

/// Error metrics of Re(recon) against truth on the grid.
void score(ReconResult& r, const GridSpec& grid);

}  // namespace bcm
