#ifndef QPM_CONFIG_HPP
#define QPM_CONFIG_HPP

#include <string>
#include <vector>

#include "qpm/geometry.hpp"
#include "qpm/material.hpp"

namespace qpm {

// Flat key=value run configuration; unknown keys are rejected.
struct RunConfig {
    MaterialModel material;
    CouplerGeometry geometry;

    double pump_wavelength_nm = 675.0;
    int pump_mode = 0;

    double sweep_lambda_min_nm = 1250.0;
    double sweep_lambda_max_nm = 1450.0;
    int sweep_lambda_points = 201;
    double sweep_k_min_per_um = 0.89;
    double sweep_k_max_per_um = 0.92;
    int sweep_k_points = 301;

    double calibration_target_k_per_um = 0.9074;
    double calibration_spread_limit_per_um = 5e-5;
    double calibration_min_contrast = 1e-3;
    double calibration_max_contrast = 0.03;

    double filter_center_nm = 1350.0;
    double filter_width_nm = 1.0;
    double state_dimensionality_threshold = 0.01;

    std::vector<double> tolerance_deltas_nm = {-100.0, -50.0, 0.0, 50.0, 100.0};

    double pump_wavelength_um() const { return pump_wavelength_nm * 1e-3; }
    void validate() const;
};

RunConfig default_config();

// Parses `key = value` lines ('#' comments, blank lines ignored).
// Throws ConfigError naming any unknown or unparsable key.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Applies one `--set key=value` override.
void apply_override(RunConfig& cfg, const std::string& assignment);

// Known keys with their current values, for --dry-run echo.
std::vector<std::pair<std::string, std::string>> config_items(const RunConfig& cfg);

} // namespace qpm

#endif
