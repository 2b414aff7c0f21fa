#include "qpm/io.hpp"

#include <cstdio>
#include <fstream>

#include "qpm/errors.hpp"

namespace qpm {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string mode_table_csv(const std::vector<ModeTableRow>& rows) {
    std::string out = "pol,m,n_eff,beta,residual\n";
    for (const auto& r : rows) {
        out += to_string(r.pol);
        out += ',';
        out += std::to_string(r.m);
        out += ',';
        out += format_number(r.n_eff);
        out += ',';
        out += format_number(r.beta);
        out += ',';
        out += format_number(r.residual);
        out += '\n';
    }
    return out;
}

std::string spectrum_csv(const EfficiencySpectrum& spectrum) {
    std::string out = "axis_value";
    for (std::size_t j = 0; j < spectrum.processes.size(); ++j)
        out += ",process_" + std::to_string(j + 1);
    out += '\n';
    const auto eff = spectrum.normalized_global();
    const bool wavelength_axis = spectrum.axis == SweepAxis::signal_wavelength;
    for (std::size_t i = 0; i < spectrum.grid.size(); ++i) {
        const double axis = wavelength_axis ? spectrum.grid[i] * 1000.0 : spectrum.grid[i];
        out += format_number(axis);
        for (std::size_t j = 0; j < eff.size(); ++j) {
            out += ',';
            out += format_number(eff[j][i]);
        }
        out += '\n';
    }
    return out;
}

std::string state_csv(const std::string& case_label, const BiphotonState& state) {
    std::string out = "case,term,signal_mode,idler_mode,re_amp,im_amp,prob\n";
    int term = 1;
    for (const auto& [spec, amp] : state.terms) {
        out += case_label;
        out += ',';
        out += std::to_string(term++);
        out += ',';
        out += std::to_string(spec.signal_mode);
        out += ',';
        out += std::to_string(spec.idler_mode);
        out += ',';
        out += format_number(amp.real());
        out += ',';
        out += format_number(amp.imag());
        out += ',';
        out += format_number(std::norm(amp));
        out += '\n';
    }
    return out;
}

std::string tolerance_csv(const std::vector<ToleranceRow>& rows) {
    std::string out = "delta_lambda_nm,crossing_nm,shift_nm,pump_retune_nm\n";
    for (const auto& r : rows) {
        out += format_number(r.delta_lambda_nm);
        out += ',';
        out += format_number(r.crossing_nm);
        out += ',';
        out += format_number(r.shift_nm);
        out += ',';
        out += format_number(r.pump_retune_nm);
        out += '\n';
    }
    return out;
}

std::string key_value_text(const std::vector<std::pair<std::string, std::string>>& items) {
    std::string out;
    for (const auto& [k, v] : items) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    f << content;
    if (!f) throw ConfigError("failed writing output file '" + path + "'");
}

} // namespace qpm
