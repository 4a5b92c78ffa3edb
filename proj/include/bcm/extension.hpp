#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "bcm/core.hpp"

namespace bcm {

/// Value and first three derivatives at a point.
struct Jet {
    cplx v{}, d1{}, d2{}, d3{};

    Jet& operator+=(const Jet& o) {
        v += o.v;
        d1 += o.d1;
        d2 += o.d2;
        d3 += o.d3;
        return *this;
    }
    Jet& operator*=(cplx s) {
        v *= s;
        d1 *= s;
        d2 *= s;
        d3 *= s;
        return *this;
    }
    cplx operator[](int order) const;
};

/// A scalar function of one real variable with closed-form derivatives up to
/// order three. Evaluations outside [support_lo, support_hi] return zero.
class AnalyticProfile {
public:
    using JetFn = std::function<Jet(double)>;

    AnalyticProfile();  // identically zero
    explicit AnalyticProfile(JetFn fn, double lo = -std::numeric_limits<double>::infinity(),
                             double hi = std::numeric_limits<double>::infinity());

    static AnalyticProfile constant(cplx c);
    /// sin(kappa x)
    static AnalyticProfile sine(double kappa);
    /// cos(kappa x)
    static AnalyticProfile cosine(double kappa);
    /// exp(i kappa x)
    static AnalyticProfile plane_wave(double kappa);

    Jet jet(double x) const;
    cplx eval(double x) const { return jet(x).v; }
    cplx deriv1(double x) const { return jet(x).d1; }
    cplx deriv2(double x) const { return jet(x).d2; }
    cplx deriv3(double x) const { return jet(x).d3; }

    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    bool compact() const;

    friend AnalyticProfile operator+(const AnalyticProfile& p, const AnalyticProfile& q);
    friend AnalyticProfile operator*(cplx s, const AnalyticProfile& p);

private:
    std::shared_ptr<const JetFn> fn_;
    double lo_, hi_;
};

/// The smooth cut-off exp{1 - 1/(1 - s^(2d))} for |s| < 1 and its first
/// three derivatives in s; zero for |s| >= 1.
Jet bump_factor(double s, int d);

/// Extends phi from [a, b] to a C^{2d-1} profile supported in (a-1, b+1) by
/// multiplying with bump_factor(x - a) on (a-1, a) and bump_factor(x - b) on
/// (b, b+1). Requires d >= 2.
AnalyticProfile extend(const AnalyticProfile& phi, double a, double b, int d = 2);

/// Psi(x) = int_{lo}^{x} psi over the support of a compactly supported
/// profile. Built from a cumulative Simpson table on a grid of the given
/// spacing; cubic Hermite interpolation between nodes (Psi' = psi is known).
class Antiderivative {
public:
    Antiderivative(const AnalyticProfile& psi, double spacing);

    cplx operator()(double x) const;
    cplx total() const { return table_.back(); }

private:
    AnalyticProfile psi_;
    double lo_, h_;
    std::vector<cplx> table_;
    std::vector<cplx> slope_;
};

/// int psi over its (compact) support, composite Simpson with node spacing at
/// most `spacing`.
cplx total_integral(const AnalyticProfile& psi, double spacing);

Antiderivative antiderivative(const AnalyticProfile& psi, double spacing);

}  // namespace bcm
