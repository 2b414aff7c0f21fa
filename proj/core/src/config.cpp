#include "qpm/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace qpm {

namespace {

double parse_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse '" + s + "' as a number");
    }
}

int parse_int(const std::string& key, const std::string& s) {
    const double v = parse_double(key, s);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("config key '" + key + "': expected an integer, got '" + s + "'");
    return i;
}

std::vector<double> parse_list(const std::string& key, const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(key, item));
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_value(v[i]);
    }
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct KeyEntry {
    Setter set;
    Getter get;
};

#define QPM_DOUBLE_KEY(field)                                                        \
    {                                                                                \
        [](RunConfig& c, const std::string& k, const std::string& v) {               \
            c.field = parse_double(k, v);                                            \
        },                                                                           \
        [](const RunConfig& c) { return format_value(c.field); }                     \
    }
#define QPM_INT_KEY(field)                                                           \
    {                                                                                \
        [](RunConfig& c, const std::string& k, const std::string& v) {               \
            c.field = parse_int(k, v);                                               \
        },                                                                           \
        [](const RunConfig& c) { return format_value(c.field); }                     \
    }
#define QPM_LIST_KEY(field)                                                          \
    {                                                                                \
        [](RunConfig& c, const std::string& k, const std::string& v) {               \
            c.field = parse_list(k, v);                                              \
        },                                                                           \
        [](const RunConfig& c) { return format_list(c.field); }                      \
    }

const std::map<std::string, KeyEntry>& key_table() {
    static const std::map<std::string, KeyEntry> table = {
        {"material.sellmeier_o", QPM_LIST_KEY(material.sellmeier_ordinary.coeffs)},
        {"material.sellmeier_e", QPM_LIST_KEY(material.sellmeier_extraordinary.coeffs)},
        {"material.delta_n_h", QPM_DOUBLE_KEY(material.delta_n_h)},
        {"material.delta_n_v", QPM_DOUBLE_KEY(material.delta_n_v)},
        {"material.d24", QPM_DOUBLE_KEY(material.d24)},
        {"geometry.width_a_um", QPM_DOUBLE_KEY(geometry.width_a_um)},
        {"geometry.gap_d_um", QPM_DOUBLE_KEY(geometry.gap_d_um)},
        {"geometry.depth_b_um", QPM_DOUBLE_KEY(geometry.depth_b_um)},
        {"geometry.length_L_mm", QPM_DOUBLE_KEY(geometry.length_L_mm)},
        {"geometry.cover_index", QPM_DOUBLE_KEY(geometry.cover_index)},
        {"geometry.grating_period_um", QPM_DOUBLE_KEY(geometry.grating_period_um)},
        {"pump.wavelength_nm", QPM_DOUBLE_KEY(pump_wavelength_nm)},
        {"pump.pump_mode", QPM_INT_KEY(pump_mode)},
        {"sweep.lambda_min_nm", QPM_DOUBLE_KEY(sweep_lambda_min_nm)},
        {"sweep.lambda_max_nm", QPM_DOUBLE_KEY(sweep_lambda_max_nm)},
        {"sweep.lambda_points", QPM_INT_KEY(sweep_lambda_points)},
        {"sweep.k_min_per_um", QPM_DOUBLE_KEY(sweep_k_min_per_um)},
        {"sweep.k_max_per_um", QPM_DOUBLE_KEY(sweep_k_max_per_um)},
        {"sweep.k_points", QPM_INT_KEY(sweep_k_points)},
        {"calibration.target_k_per_um", QPM_DOUBLE_KEY(calibration_target_k_per_um)},
        {"calibration.spread_limit_per_um", QPM_DOUBLE_KEY(calibration_spread_limit_per_um)},
        {"calibration.min_contrast", QPM_DOUBLE_KEY(calibration_min_contrast)},
        {"calibration.max_contrast", QPM_DOUBLE_KEY(calibration_max_contrast)},
        {"filter.center_nm", QPM_DOUBLE_KEY(filter_center_nm)},
        {"filter.width_nm", QPM_DOUBLE_KEY(filter_width_nm)},
        {"state.dimensionality_threshold", QPM_DOUBLE_KEY(state_dimensionality_threshold)},
        {"tolerance.delta_lambda_nm", QPM_LIST_KEY(tolerance_deltas_nm)},
    };
    return table;
}

#undef QPM_DOUBLE_KEY
#undef QPM_INT_KEY
#undef QPM_LIST_KEY

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    const auto& table = key_table();
    auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second.set(cfg, key, value);
}

} // namespace

void RunConfig::validate() const {
    material.validate();
    geometry.validate();
    const double lp = pump_wavelength_um();
    if (!(lp > 0.4 && lp < 1.0))
        throw ConfigError("pump.wavelength_nm must put the pump inside (400, 1000) nm");
    if (pump_mode != 0 && pump_mode != 1)
        throw ConfigError("pump.pump_mode must be 0 or 1");
    if (!(sweep_lambda_min_nm < sweep_lambda_max_nm) || sweep_lambda_points < 2)
        throw ConfigError("sweep wavelength range/points invalid");
    if (!(sweep_k_min_per_um < sweep_k_max_per_um) || sweep_k_points < 2)
        throw ConfigError("sweep grating range/points invalid");
    if (!(filter_center_nm > sweep_lambda_min_nm && filter_center_nm < sweep_lambda_max_nm))
        throw ConfigError("filter.center_nm must lie inside the sweep wavelength range");
    if (filter_width_nm < 0) throw ConfigError("filter.width_nm must be non-negative");
    if (!(state_dimensionality_threshold > 0 && state_dimensionality_threshold < 1))
        throw ConfigError("state.dimensionality_threshold must be in (0,1)");
}

RunConfig default_config() {
    RunConfig cfg;
    cfg.material = default_lithium_niobate();
    cfg.geometry = CouplerGeometry{};
    cfg.geometry.grating_period_um = 0.0; // designed on demand
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg = default_config();
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set expects key=value, got '" + assignment + "'");
    apply_key(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::vector<std::pair<std::string, std::string>> config_items(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [key, entry] : key_table())
        out.emplace_back(key, entry.get(cfg));
    return out;
}

} // namespace qpm
