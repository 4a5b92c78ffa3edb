#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "bcm/cli/config.hpp"
#include "bcm/recon.hpp"

namespace bcm::cli {

class IoError : public Error {
public:
    using Error::Error;
};

/// Header `x,sigma_true,sigma_recon_re,sigma_recon_im`, one row per node.
std::string reconstruction_csv(const ReconResult& result, const GridSpec& grid);

/// Header `k,a_re,a_im,b_re,b_im`; row k = 0 carries a0 with zero b fields.
std::string coefficients_csv(const FourierCoeffs& coeffs);

/// Error metrics, run parameters and the resolved configuration.
nlohmann::json summary_json(const ReconResult& result, const RunConfig& cfg, double runtime_seconds);

/// Creates out_dir if needed; throws IoError if it cannot be written.
void prepare_output_dir(const std::filesystem::path& out_dir);

/// Writes reconstruction.csv, coefficients.csv and summary.json into out_dir.
void emit_results(const ReconResult& result, const RunConfig& cfg, double runtime_seconds,
                  const std::filesystem::path& out_dir);

}  // namespace bcm::cli
