#ifndef QPM_IO_HPP
#define QPM_IO_HPP

#include <string>
#include <vector>

#include "qpm/channel.hpp"
#include "qpm/design.hpp"
#include "qpm/spdc.hpp"

namespace qpm {

// 17-significant-digit decimal, locale-independent.
std::string format_number(double v);

struct ModeTableRow {
    Polarization pol;
    int m;
    double n_eff;
    double beta;
    double residual;
};

// Header exactly: pol,m,n_eff,beta,residual
std::string mode_table_csv(const std::vector<ModeTableRow>& rows);

// Header exactly: axis_value,process_1,process_2,...
// Wavelength axes are written in nm, grating axes in 1/um; efficiencies are
// globally normalized to [0,1].
std::string spectrum_csv(const EfficiencySpectrum& spectrum);

// Header exactly: case,term,signal_mode,idler_mode,re_amp,im_amp,prob
std::string state_csv(const std::string& case_label, const BiphotonState& state);

// Header exactly: delta_lambda_nm,crossing_nm,shift_nm,pump_retune_nm
std::string tolerance_csv(const std::vector<ToleranceRow>& rows);

// key = value lines
std::string key_value_text(const std::vector<std::pair<std::string, std::string>>& items);

void write_file(const std::string& path, const std::string& content);

} // namespace qpm

#endif
