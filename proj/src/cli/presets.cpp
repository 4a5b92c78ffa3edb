#include "bcm/cli/presets.hpp"

#include <cmath>
#include <numbers>

namespace bcm::cli {

namespace {

constexpr double pi = std::numbers::pi;

template <typename Fn>
std::vector<double> sample(const GridSpec& grid, Fn fn) {
    std::vector<double> s(grid.nx());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = fn(grid.x(i));
    return s;
}

}  // namespace

std::vector<double> smooth_damping(const GridSpec& grid) {
    return sample(grid, [](double x) {
        return std::cos(pi * x) + std::cos(2 * pi * x) + std::cos(3 * pi * x) + std::sin(4 * pi * x) + 4;
    });
}

std::vector<double> piecewise_damping(const GridSpec& grid) {
    const double tol = 1e-9 * grid.dx();
    return sample(grid, [tol](double x) {
        if (std::abs(x + 0.5) <= tol) return 1.75;
        if (std::abs(x - 1.0 / 3) <= tol) return 1.25;
        if (x < -0.5) return 2.0;
        return x < 1.0 / 3 ? 1.5 : 1.0;
    });
}

std::vector<double> oscillatory_damping(const GridSpec& grid) {
    return sample(grid, [](double x) { return 200 * std::sin(20 * pi * x); });
}

Preset make_preset(int id, const GridSpec& grid, int N) {
    Preset p;
    p.id = id;
    switch (id) {
        case 1:
            p.name = "smooth damping, linearized data";
            p.medium.sigma_dot = smooth_damping(grid);
            p.truth = p.medium.sigma_dot;
            break;
        case 2:
            p.name = "piecewise-constant damping, linearized data";
            p.medium.sigma_dot = piecewise_damping(grid);
            p.truth = projection_truth(N, grid);
            break;
        case 3:
            p.name = "smooth damping, nonlinear difference data";
            p.medium.sigma_dot = smooth_damping(grid);
            p.medium.sigma_ddot = oscillatory_damping(grid);
            p.mode = DataMode::nonlinear_difference;
            p.truth = p.medium.sigma_dot;
            break;
        default:
            throw ConfigError("experiment id must be 1, 2 or 3 (got " + std::to_string(id) + ")");
    }
    return p;
}

}  // namespace bcm::cli
