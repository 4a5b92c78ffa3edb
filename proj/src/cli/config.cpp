#include "bcm/cli/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace bcm::cli {

namespace {

std::string trim(const std::string& s) {
    const auto lo = s.find_first_not_of(" \t\r");
    if (lo == std::string::npos) return {};
    const auto hi = s.find_last_not_of(" \t\r");
    return s.substr(lo, hi - lo + 1);
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

double parse_real(const std::string& key, const std::string& text) {
    double v = 0;
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (parse_number(text, v) && std::isfinite(v)) return v;
    } else {
        double num = 0, den = 0;
        if (parse_number(trim(text.substr(0, slash)), num) && parse_number(trim(text.substr(slash + 1)), den) &&
            den != 0) {
            v = num / den;
            if (std::isfinite(v)) return v;
        }
    }
    throw ConfigError("config: " + key + " must be a real number (got '" + text + "')");
}

template <typename Int>
Int parse_integer(const std::string& key, const std::string& text) {
    Int v{};
    if (!parse_number(text, v)) throw ConfigError("config: " + key + " must be an integer (got '" + text + "')");
    return v;
}

}  // namespace

GridSpec RunConfig::grid() const { return GridSpec(-1.0, 1.0, dx, dt, T); }

void RunConfig::validate() const {
    if (experiment < 1 || experiment > 3) throw ConfigError("config: experiment must be 1, 2 or 3");
    if (!(noise >= 0)) throw ConfigError("config: noise must be non-negative");
    if (N < 1) throw ConfigError("config: N must be at least 1");
    if (!(eps_linearization > 0)) throw ConfigError("config: eps_linearization must be positive");
    grid().check_cfl(1.0);
}

KeyValues parse_key_values(std::istream& in, const std::string& source) {
    KeyValues kv;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        const std::string where = source + ":" + std::to_string(lineno);
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError(where + ": empty key or value");
        if (!kv.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
    }
    return kv;
}

KeyValues read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path.string());
    return parse_key_values(in, path.string());
}

void apply(RunConfig& cfg, const KeyValues& values) {
    for (const auto& [key, text] : values) {
        if (key == "experiment") cfg.experiment = parse_integer<int>(key, text);
        else if (key == "noise") cfg.noise = parse_real(key, text);
        else if (key == "seed") cfg.seed = parse_integer<std::uint64_t>(key, text);
        else if (key == "N") cfg.N = parse_integer<int>(key, text);
        else if (key == "dx") cfg.dx = parse_real(key, text);
        else if (key == "dt") cfg.dt = parse_real(key, text);
        else if (key == "T") cfg.T = parse_real(key, text);
        else if (key == "eps_linearization") cfg.eps_linearization = parse_real(key, text);
        else if (key == "threads") cfg.threads = parse_integer<unsigned>(key, text);
        else throw ConfigError("config: unknown key '" + key + "'");
    }
}

KeyValues to_key_values(const RunConfig& cfg) {
    return {{"experiment", std::to_string(cfg.experiment)},
            {"noise", format_real(cfg.noise)},
            {"seed", std::to_string(cfg.seed)},
            {"N", std::to_string(cfg.N)},
            {"dx", format_real(cfg.dx)},
            {"dt", format_real(cfg.dt)},
            {"T", format_real(cfg.T)},
            {"eps_linearization", format_real(cfg.eps_linearization)},
            {"threads", std::to_string(cfg.threads)}};
}

std::string format_real(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

}  // namespace bcm::cli
