#include "bcm/cli/emit.hpp"

#include <fstream>
#include <system_error>

namespace bcm::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
}

void append_row(std::string& s, std::initializer_list<std::string> fields) {
    bool first = true;
    for (const auto& f : fields) {
        if (!first) s += ',';
        s += f;
        first = false;
    }
    s += '\n';
}

}  // namespace

std::string reconstruction_csv(const ReconResult& result, const GridSpec& grid) {
    if (result.sigma_recon.size() != grid.nx() || result.truth.size() != grid.nx())
        throw GridMismatchError("emit: reconstruction and truth must have nx samples");
    std::string s = "x,sigma_true,sigma_recon_re,sigma_recon_im\n";
    for (std::size_t i = 0; i < grid.nx(); ++i)
        append_row(s, {format_real(grid.x(i)), format_real(result.truth[i]), format_real(result.sigma_recon[i].real()),
                       format_real(result.sigma_recon[i].imag())});
    return s;
}

std::string coefficients_csv(const FourierCoeffs& coeffs) {
    std::string s = "k,a_re,a_im,b_re,b_im\n";
    append_row(s, {"0", format_real(coeffs.a0.real()), format_real(coeffs.a0.imag()), "0", "0"});
    for (int k = 1; k <= coeffs.N; ++k) {
        const cplx a = coeffs.a[k - 1], b = coeffs.b[k - 1];
        append_row(s, {std::to_string(k), format_real(a.real()), format_real(a.imag()), format_real(b.real()),
                       format_real(b.imag())});
    }
    return s;
}

nlohmann::json summary_json(const ReconResult& result, const RunConfig& cfg, double runtime_seconds) {
    const GridSpec grid = cfg.grid();
    nlohmann::json config = nlohmann::json::object();
    for (const auto& [key, value] : to_key_values(cfg)) config[key] = value;
    return {
        {"experiment", cfg.experiment},
        {"rel_l2", result.rel_l2},
        {"linf", result.linf},
        {"imag_leakage", result.imag_leakage},
        {"runtime_seconds", runtime_seconds},
        {"seed", cfg.seed},
        {"noise", cfg.noise},
        {"N", cfg.N},
        {"grid",
         {{"a", grid.a()}, {"b", grid.b()}, {"dx", grid.dx()}, {"dt", grid.dt()}, {"T", grid.T()},
          {"nx", grid.nx()}, {"nt", grid.nt()}}},
        {"config", config},
    };
}

void prepare_output_dir(const std::filesystem::path& out_dir) {
    if (out_dir.empty()) throw IoError("no output directory given");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir))
        throw IoError("cannot create output directory " + out_dir.string());
    const auto probe = out_dir / ".write_probe";
    write_file(probe, "");
    std::filesystem::remove(probe, ec);
}

void emit_results(const ReconResult& result, const RunConfig& cfg, double runtime_seconds,
                  const std::filesystem::path& out_dir) {
    prepare_output_dir(out_dir);
    write_file(out_dir / "reconstruction.csv", reconstruction_csv(result, cfg.grid()));
    write_file(out_dir / "coefficients.csv", coefficients_csv(result.coeffs));
    write_file(out_dir / "summary.json", summary_json(result, cfg, runtime_seconds).dump(2) + "\n");
}

}  // namespace bcm::cli
