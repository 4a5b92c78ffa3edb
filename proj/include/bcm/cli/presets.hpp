#pragma once

#include <string>
#include <vector>

#include "bcm/core.hpp"
#include "bcm/recon.hpp"

namespace bcm::cli {

/// cos(pi x) + cos(2 pi x) + cos(3 pi x) + sin(4 pi x) + 4.
std::vector<double> smooth_damping(const GridSpec& grid);

/// 2 on [-1, -1/2], 3/2 on (-1/2, 1/3), 1 on [1/3, 1]; nodes falling exactly
/// on a jump take the mean of the two levels.
std::vector<double> piecewise_damping(const GridSpec& grid);

/// 200 sin(20 pi x), the second-order term of experiment 3.
std::vector<double> oscillatory_damping(const GridSpec& grid);

/// Medium, data mode and ground truth of one of the three experiments.
struct Preset {
    int id = 0;
    std::string name;
    MediumSpec medium;
    DataMode mode = DataMode::linearized;
    std::vector<double> truth;
};

/// Experiment 2 compares against its N-term Fourier projection.
/// Throws ConfigError for an unknown id.
Preset make_preset(int id, const GridSpec& grid, int N);

}  // namespace bcm::cli
