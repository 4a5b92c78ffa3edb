#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bcm/control.hpp"
#include "bcm/core.hpp"

namespace bcm {

/// Linearized ND data of one control f: the map applied to f_t and f_tt
/// (and optionally to f itself, for the stability bound).
struct MeasuredControl {
    BoundaryTrace of_t;
    BoundaryTrace of_tt;
    std::optional<BoundaryTrace> of_f;
};

/// Everything the linearized identity needs for one pair of controls (f, h).
struct PairData {
    cplx lambda;
    BoundaryTrace f, f_t, h, h_t, h_tt;
    BoundaryTrace Lf_t, Lh_t, Lh_tt;   // measured
    std::optional<BoundaryTrace> Lf, Lh;
    std::vector<cplx> pf_T, ph_T;      // target snapshots, oracle use only
};

/// Runs the linearized solves for f_t, f_tt (and f when include_plain).
MeasuredControl measure_linearized(const ControlBundle& c, const GridSpec& grid, const MediumSpec& medium,
                                   bool include_plain = false);

PairData make_pair_data(const ControlBundle& f, const MeasuredControl& mf, const ControlBundle& h,
                        const MeasuredControl& mh, const GridSpec& grid);

/// Boundary side of the linearized identity:
///   -[f(T) Lh_t(T)] - <f, R Lh_tt> + <Lf_t, R h_t> - lambda <f, R Lh_t> + lambda <Lf_t, R h>
/// with R the time reversal and <,> the bilinear pairing over (0, T) x {a, b}.
cplx linearized_rhs(const PairData& pd);

/// int_a^b sigma_dot pf ph dx (trapezoid, bilinear).
cplx weighted_volume_pairing(std::span<const cplx> pf, std::span<const cplx> ph,
                             std::span<const double> sigma_dot, const GridSpec& grid);

struct IdentityResidual {
    cplx lhs;
    cplx rhs;
    double rel_residual = 0;
};

/// Nonlinear identity for damping sigma: interior side from the t = T
/// snapshots, int (p^f p^h - q^f q^h), against the boundary side
/// <f, R Lambda h_t> - <Lambda f_t, R h>.
IdentityResidual nonlinear_identity_residual(const BoundaryTrace& f, const BoundaryTrace& f_t,
                                             const BoundaryTrace& h, const BoundaryTrace& h_t,
                                             const GridSpec& grid, double rho0, std::span<const double> sigma);

IdentityResidual nonlinear_identity_residual(const ControlBundle& f, const ControlBundle& h,
                                             const GridSpec& grid, double rho0, std::span<const double> sigma);

struct StabilityCheck {
    double lhs_abs = 0;
    double bound = 0;
    bool ok = false;
};

/// |linearized_rhs| <= (2+|lambda|) |f|_H1 |Lh|_H2 + (1+|lambda|) |Lf|_H2 |h|_H1 (+5%).
/// Norms are taken over the whole window (0, 2T), which contains both the
/// direct and the time-reversed sample ranges used by the pairings.
StabilityCheck stability_bound_check(const PairData& pd, double tol = 0.05);

}  // namespace bcm
