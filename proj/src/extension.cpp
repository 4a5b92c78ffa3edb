#include "bcm/extension.hpp"

#include <algorithm>
#include <cmath>

namespace bcm {

cplx Jet::operator[](int order) const {
    switch (order) {
        case 0: return v;
        case 1: return d1;
        case 2: return d2;
        case 3: return d3;
        default: throw PreconditionError("jet: derivative order must be 0..3");
    }
}

AnalyticProfile::AnalyticProfile() : AnalyticProfile([](double) { return Jet{}; }) {}

AnalyticProfile::AnalyticProfile(JetFn fn, double lo, double hi)
    : fn_(std::make_shared<const JetFn>(std::move(fn))), lo_(lo), hi_(hi) {}

AnalyticProfile AnalyticProfile::constant(cplx c) {
    return AnalyticProfile([c](double) { return Jet{c, 0.0, 0.0, 0.0}; });
}

AnalyticProfile AnalyticProfile::sine(double kappa) {
    return AnalyticProfile([kappa](double x) {
        const double s = std::sin(kappa * x), c = std::cos(kappa * x);
        return Jet{s, kappa * c, -kappa * kappa * s, -kappa * kappa * kappa * c};
    });
}

AnalyticProfile AnalyticProfile::cosine(double kappa) {
    return AnalyticProfile([kappa](double x) {
        const double s = std::sin(kappa * x), c = std::cos(kappa * x);
        return Jet{c, -kappa * s, -kappa * kappa * c, kappa * kappa * kappa * s};
    });
}

AnalyticProfile AnalyticProfile::plane_wave(double kappa) {
    return AnalyticProfile([kappa](double x) {
        const cplx ik{0.0, kappa};
        const cplx e = std::exp(ik * x);
        return Jet{e, ik * e, ik * ik * e, ik * ik * ik * e};
    });
}

Jet AnalyticProfile::jet(double x) const {
    if (x < lo_ || x > hi_) return {};
    return (*fn_)(x);
}

bool AnalyticProfile::compact() const { return std::isfinite(lo_) && std::isfinite(hi_); }

AnalyticProfile operator+(const AnalyticProfile& p, const AnalyticProfile& q) {
    return AnalyticProfile([p, q](double x) {
        Jet j = p.jet(x);
        j += q.jet(x);
        return j;
    }, std::min(p.lo_, q.lo_), std::max(p.hi_, q.hi_));
}

AnalyticProfile operator*(cplx s, const AnalyticProfile& p) {
    return AnalyticProfile([s, p](double x) {
        Jet j = p.jet(x);
        j *= s;
        return j;
    }, p.lo_, p.hi_);
}

Jet bump_factor(double s, int d) {
    const int m = 2 * d;
    const double g = 1.0 - std::pow(s, m);
    // exp(1 - 1/g) underflows to zero long before g reaches this size.
    if (!(g > 1e-3) || std::abs(s) >= 1.0) return {};
    const double g1 = -m * std::pow(s, m - 1);
    const double g2 = -m * (m - 1) * std::pow(s, m - 2);
    const double g3 = -m * (m - 1) * (m - 2) * std::pow(s, m - 3);
    const double ig = 1.0 / g;
    // E = 1 - 1/g and its derivatives.
    const double e1 = g1 * ig * ig;
    const double e2 = g2 * ig * ig - 2 * g1 * g1 * ig * ig * ig;
    const double e3 = g3 * ig * ig - 6 * g1 * g2 * ig * ig * ig + 6 * g1 * g1 * g1 * ig * ig * ig * ig;
    const double B = std::exp(1.0 - ig);
    return Jet{B, B * e1, B * (e1 * e1 + e2), B * (e1 * e1 * e1 + 3 * e1 * e2 + e3)};
}

namespace {

Jet product(const Jet& p, const Jet& q) {
    return Jet{p.v * q.v, p.d1 * q.v + p.v * q.d1, p.d2 * q.v + 2.0 * p.d1 * q.d1 + p.v * q.d2,
               p.d3 * q.v + 3.0 * p.d2 * q.d1 + 3.0 * p.d1 * q.d2 + p.v * q.d3};
}

}  // namespace

AnalyticProfile extend(const AnalyticProfile& phi, double a, double b, int d) {
    if (d < 2) throw PreconditionError("extend: order d must be at least 2");
    if (!(b > a)) throw PreconditionError("extend: require b > a");
    return AnalyticProfile([phi, a, b, d](double x) -> Jet {
        if (x >= a && x <= b) return phi.jet(x);
        if (x > a - 1 && x < a) return product(phi.jet(x), bump_factor(x - a, d));
        if (x > b && x < b + 1) return product(phi.jet(x), bump_factor(x - b, d));
        return {};
    }, a - 1, b + 1);
}

Antiderivative::Antiderivative(const AnalyticProfile& psi, double spacing) : psi_(psi) {
    if (!psi.compact()) throw PreconditionError("antiderivative: profile must have compact support");
    if (!(spacing > 0)) throw PreconditionError("antiderivative: spacing must be positive");
    lo_ = psi.support_lo();
    const double len = psi.support_hi() - lo_;
    const auto panels = static_cast<std::size_t>(std::ceil(len / spacing - 1e-9));
    h_ = len / static_cast<double>(panels);
    table_.assign(panels + 1, cplx{});
    slope_.assign(panels + 1, cplx{});
    slope_[0] = psi.eval(lo_);
    for (std::size_t j = 0; j < panels; ++j) {
        const double x0 = lo_ + static_cast<double>(j) * h_;
        const cplx f1 = psi.eval(x0 + 0.5 * h_);
        const cplx f2 = psi.eval(x0 + h_);
        table_[j + 1] = table_[j] + h_ / 6.0 * (slope_[j] + 4.0 * f1 + f2);
        slope_[j + 1] = f2;
    }
}

cplx Antiderivative::operator()(double x) const {
    if (x <= lo_) return {};
    const double u = (x - lo_) / h_;
    const std::size_t last = table_.size() - 1;
    if (u >= static_cast<double>(last)) return table_[last];
    const auto j = static_cast<std::size_t>(u);
    const double s = u - static_cast<double>(j);
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return h00 * table_[j] + h10 * h_ * slope_[j] + h01 * table_[j + 1] + h11 * h_ * slope_[j + 1];
}

cplx total_integral(const AnalyticProfile& psi, double spacing) {
    return Antiderivative(psi, spacing).total();
}

Antiderivative antiderivative(const AnalyticProfile& psi, double spacing) {
    return Antiderivative(psi, spacing);
}

}  // namespace bcm
