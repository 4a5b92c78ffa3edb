#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "bcm/extension.hpp"

using namespace bcm;

namespace {

constexpr double pi = std::numbers::pi;

double bump(double s) { return std::exp(1 - 1 / (1 - std::pow(s, 4))); }

double gk(auto fn, double lo, double hi) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(fn, lo, hi, 15, 1e-14);
}

}  // namespace

TEST_CASE("extension of the constant profile") {
    const AnalyticProfile e = extend(AnalyticProfile::constant(1.0), -1, 1, 2);
    CHECK(e.eval(0.3) == cplx(1.0));
    CHECK(e.eval(-2.1) == cplx(0.0));
    CHECK(e.eval(2.0) == cplx(0.0));
    CHECK(e.eval(-1.5).real() == doctest::Approx(0.935507).epsilon(1e-6));
    CHECK(e.eval(-1.5).real() == doctest::Approx(bump(-0.5)).epsilon(1e-14));
    CHECK(e.support_lo() == -2.0);
    CHECK(e.support_hi() == 2.0);
    CHECK_THROWS_AS(extend(AnalyticProfile::constant(1.0), -1, 1, 1), PreconditionError);
}

TEST_CASE("extension matches the profile inside [a, b]") {
    const AnalyticProfile phi = AnalyticProfile::sine(1.3) + cplx{0, 2} * AnalyticProfile::cosine(0.7);
    const AnalyticProfile e = extend(phi, -1, 1);
    for (double x : {-1.0, -0.73, 0.0, 0.41, 1.0})
        for (int k = 0; k <= 3; ++k) CHECK(e.jet(x)[k] == phi.jet(x)[k]);
}

TEST_CASE("extension derivatives agree with finite differences in the flanks") {
    const AnalyticProfile e = extend(AnalyticProfile::cosine(pi / 2) + AnalyticProfile::sine(2.0), -1, 1);
    const double h = 1e-4;
    for (double x : {-1.8, -1.4, -1.1, 1.05, 1.5, 1.9}) {
        for (int k = 1; k <= 3; ++k) {
            const cplx fd = (e.jet(x + h)[k - 1] - e.jet(x - h)[k - 1]) / (2 * h);
            const cplx exact = e.jet(x)[k];
            CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("flanks join the profile continuously up to order 3") {
    const AnalyticProfile phi = AnalyticProfile::sine(pi / 2) + AnalyticProfile::cosine(3.0);
    const AnalyticProfile e = extend(phi, -1, 1);
    for (double end : {-1.0, 1.0}) {
        const double out = end < 0 ? -1.0 : 1.0;
        for (int k = 0; k <= 3; ++k) {
            // Outside [a, b] the extension is phi times a factor 1 - s^4 + ...,
            // so its k-th derivative deviates from phi's by O(h^(4-k)).
            auto dev = [&](double h) { return std::abs(e.jet(end + out * h)[k] - phi.jet(end + out * h)[k]); };
            const double h = 1e-3;
            CHECK(dev(h) <= 100 * std::pow(h, 4 - k));
            CHECK(dev(h / 2) <= 0.55 * dev(h) + 1e-14);
        }
    }
}

TEST_CASE("extension is linear") {
    const AnalyticProfile p1 = AnalyticProfile::sine(1.1), p2 = AnalyticProfile::plane_wave(2.5);
    const cplx alpha{0.5, -2}, beta{3, 1};
    const AnalyticProfile lhs = extend(alpha * p1 + beta * p2, -1, 1);
    const AnalyticProfile e1 = extend(p1, -1, 1), e2 = extend(p2, -1, 1);
    for (double x = -2.2; x <= 2.2; x += 0.137)
        for (int k = 0; k <= 3; ++k) {
            const cplx rhs = alpha * e1.jet(x)[k] + beta * e2.jet(x)[k];
            CHECK(std::abs(lhs.jet(x)[k] - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
}

TEST_CASE("bump factor derivatives") {
    const double h = 1e-5;
    for (double s : {-0.9, -0.5, 0.2, 0.7}) {
        for (int k = 1; k <= 3; ++k) {
            const double fd = (bump_factor(s + h, 2)[k - 1] - bump_factor(s - h, 2)[k - 1]).real() / (2 * h);
            CHECK(fd == doctest::Approx(bump_factor(s, 2)[k].real()).epsilon(1e-6));
        }
    }
    CHECK(bump_factor(0.0, 2).v == cplx(1.0));
    CHECK(bump_factor(1.0, 2).v == cplx(0.0));
    CHECK(bump_factor(-1.3, 3).v == cplx(0.0));
}

TEST_CASE("total integral") {
    CHECK(total_integral(extend(AnalyticProfile(), -1, 1), 1e-3) == cplx(0.0));
    const AnalyticProfile one = extend(AnalyticProfile::constant(1.0), -1, 1);
    const double total = total_integral(one, 4e-4).real();
    CHECK(total > 2.0);
    CHECK(total < 4.0);
    const double flank = gk([](double s) { return bump(s); }, 0.0, 1.0);
    CHECK(std::abs(total - (2 + 2 * flank)) <= 1e-8);
    const Antiderivative Psi(one, 4e-4);
    CHECK(std::abs(Psi(-1.0) - (Psi.total() - Psi(1.0))) <= 1e-12);  // equal flanks
}

TEST_CASE("total integral of an oscillating profile against Gauss-Kronrod") {
    const double kappa = 5 * pi / 2;
    const AnalyticProfile e = extend(AnalyticProfile::cosine(kappa), -1, 1);
    const double oracle = gk([&](double x) { return e.eval(x).real(); }, -2, -1) +
                          gk([&](double x) { return std::cos(kappa * x); }, -1, 1) +
                          gk([&](double x) { return e.eval(x).real(); }, 1, 2);
    CHECK(std::abs(total_integral(e, 4e-4).real() - oracle) <= 1e-8);
}

TEST_CASE("antiderivative properties") {
    const AnalyticProfile one = extend(AnalyticProfile::constant(1.0), -1, 1);
    const Antiderivative Psi = antiderivative(one, 4e-4);
    CHECK(Psi(-2.0) == cplx(0.0));
    CHECK(Psi(2.0) == Psi.total());
    CHECK(Psi(7.5) == Psi.total());
    double prev = 0;
    for (double x = -2.0; x <= 2.0; x += 0.0123) {
        const double v = Psi(x).real();
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
    // Off-node values, against an independent quadrature of the flank.
    for (double x : {-1.77777, -1.5, -1.0, 0.12345, 1.6}) {
        const double lo = std::min(x, -1.0);
        double oracle = gk([](double s) { return bump(s); }, -1.0, lo + 1.0);
        if (x > -1.0) oracle += gk([](double) { return 1.0; }, -1.0, std::min(x, 1.0));
        if (x > 1.0) oracle += gk([](double s) { return bump(s); }, 0.0, x - 1.0);
        CHECK(std::abs(Psi(x).real() - oracle) <= 1e-9);
    }
    CHECK_THROWS_AS(Antiderivative(AnalyticProfile::constant(1.0), 1e-3), PreconditionError);
}
