// qpmkit: design toolkit for type-II QPM SPDC in a three-waveguide coupler.
// Subcommands run the material/mode/process/design pipelines and emit CSV
// curves, state dumps and design reports for offline plotting.

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "qpm/calibration.hpp"
#include "qpm/channel.hpp"
#include "qpm/config.hpp"
#include "qpm/design.hpp"
#include "qpm/errors.hpp"
#include "qpm/io.hpp"
#include "qpm/spdc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitDesign = 4;

struct CliOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> sets;
    bool dry_run = false;
};

qpm::RunConfig load_config(const CliOptions& opt) {
    qpm::RunConfig cfg =
        opt.config_path.empty() ? qpm::default_config() : qpm::parse_config_file(opt.config_path);
    for (const std::string& s : opt.sets) qpm::apply_override(cfg, s);
    cfg.validate();
    return cfg;
}

std::filesystem::path ensure_out_dir(const CliOptions& opt) {
    std::filesystem::path dir(opt.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Grating frequency for commands that need one: configured period wins,
// otherwise the grating is designed from the current material.
double grating_K_for(const qpm::RunConfig& cfg, const qpm::ModeBank& bank) {
    if (cfg.geometry.has_grating()) return 2.0 * M_PI / cfg.geometry.grating_period_um;
    return qpm::design_grating(bank, cfg.pump_mode, cfg.pump_wavelength_um()).K_mean;
}

std::vector<qpm::ModeTableRow> table_rows(const std::array<qpm::ChannelMode, 3>& modes,
                                          bool pump_only, int pump_mode) {
    std::vector<qpm::ModeTableRow> rows;
    for (const auto& cm : modes) {
        if (pump_only && cm.m != pump_mode) continue;
        rows.push_back({cm.pol, cm.m, cm.n_eff, cm.beta, cm.y_mode.residual});
    }
    return rows;
}

int cmd_modes(const CliOptions& opt) {
    const qpm::RunConfig cfg = load_config(opt);
    const auto dir = ensure_out_dir(opt);
    const double lp = cfg.pump_wavelength_um();
    const double ls = 2.0 * lp;
    const double li = qpm::idler_wavelength(lp, ls);

    qpm::ModeBank bank(cfg.material, cfg.geometry);
    const auto& pump = bank.modes(lp, qpm::Polarization::H);
    const auto& sig = bank.modes(ls, qpm::Polarization::H);
    const auto& idl = bank.modes(li, qpm::Polarization::V);

    qpm::write_file((dir / "modes_pump.csv").string(),
                    qpm::mode_table_csv(table_rows(pump, true, cfg.pump_mode)));
    qpm::write_file((dir / "modes_signal.csv").string(),
                    qpm::mode_table_csv(table_rows(sig, false, 0)));
    qpm::write_file((dir / "modes_idler.csv").string(),
                    qpm::mode_table_csv(table_rows(idl, false, 0)));

    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("pump_wavelength_nm", qpm::format_number(lp * 1000.0));
    kv.emplace_back("signal_wavelength_nm", qpm::format_number(ls * 1000.0));
    kv.emplace_back("idler_wavelength_nm", qpm::format_number(li * 1000.0));
    const double split_s = sig[0].beta - sig[2].beta;
    const double split_i = idl[0].beta - idl[2].beta;
    kv.emplace_back("signal_splitting_rad_per_um", qpm::format_number(split_s));
    kv.emplace_back("idler_splitting_rad_per_um", qpm::format_number(split_i));
    if (split_s < 1e-6 && split_i < 1e-6)
        kv.emplace_back("note", "splitting < 1e-6 rad/um: guides effectively decoupled");
    qpm::write_file((dir / "modes_summary.txt").string(), qpm::key_value_text(kv));
    std::cout << "wrote mode tables to " << dir.string() << "\n";
    return kExitOk;
}

int cmd_calibrate(const CliOptions& opt) {
    const qpm::RunConfig cfg = load_config(opt);
    const auto dir = ensure_out_dir(opt);
    qpm::CalibrationOptions copts;
    copts.spread_limit_per_um = cfg.calibration_spread_limit_per_um;
    copts.min_contrast = cfg.calibration_min_contrast;
    copts.max_contrast = cfg.calibration_max_contrast;
    const qpm::CalibrationResult r =
        qpm::calibrate_contrast(cfg.material, cfg.geometry, cfg.calibration_target_k_per_um,
                                cfg.pump_wavelength_um(), copts);
    std::vector<std::pair<std::string, std::string>> kv = {
        {"delta_n_h", qpm::format_number(r.delta_n_h)},
        {"delta_n_v", qpm::format_number(r.delta_n_v)},
        {"mean_k_per_um", qpm::format_number(r.mean_K)},
        {"spread_k_per_um", qpm::format_number(r.spread_K)},
        {"residual_per_um", qpm::format_number(r.residual)},
        {"spread_within_limit", r.spread_within_limit ? "yes" : "no"},
    };
    const std::string text = qpm::key_value_text(kv);
    qpm::write_file((dir / "calibration.txt").string(), text);
    std::cout << text;
    return kExitOk;
}

int run_sweep_wavelength(const qpm::RunConfig& cfg, const qpm::ModeBank& bank, double K,
                         qpm::EfficiencySpectrum& out) {
    out = qpm::sweep_signal_wavelength(
        bank, cfg.pump_mode, cfg.pump_wavelength_um(), K, cfg.sweep_lambda_min_nm * 1e-3,
        cfg.sweep_lambda_max_nm * 1e-3, cfg.sweep_lambda_points, cfg.geometry.length_um());
    return kExitOk;
}

int cmd_sweep_wavelength(const CliOptions& opt) {
    const qpm::RunConfig cfg = load_config(opt);
    const auto dir = ensure_out_dir(opt);
    qpm::ModeBank bank(cfg.material, cfg.geometry);
    const double K = grating_K_for(cfg, bank);
    qpm::EfficiencySpectrum sp;
    run_sweep_wavelength(cfg, bank, K, sp);
    qpm::write_file((dir / "spectrum_wavelength.csv").string(), qpm::spectrum_csv(sp));
    const qpm::Crossing c = qpm::find_intersection(sp);
    std::cout << "grating_k_per_um = " << qpm::format_number(K) << "\n"
              << "crossing_nm = " << qpm::format_number(c.location * 1000.0) << "\n"
              << "crossing_spread = " << qpm::format_number(c.spread) << "\n";
    return kExitOk;
}

int cmd_sweep_grating(const CliOptions& opt) {
    const qpm::RunConfig cfg = load_config(opt);
    const auto dir = ensure_out_dir(opt);
    qpm::ModeBank bank(cfg.material, cfg.geometry);
    const qpm::EfficiencySpectrum sp = qpm::sweep_grating(
        bank, cfg.pump_mode, cfg.pump_wavelength_um(), cfg.sweep_k_min_per_um,
        cfg.sweep_k_max_per_um, cfg.sweep_k_points, cfg.geometry.length_um());
    qpm::write_file((dir / "spectrum_grating.csv").string(), qpm::spectrum_csv(sp));
    const qpm::Crossing c = qpm::find_intersection(sp);
    std::cout << "crossing_k_per_um = " << qpm::format_number(c.location) << "\n"
              << "crossing_spread = " << qpm::format_number(c.spread) << "\n";
    return kExitOk;
}

int cmd_tolerance(const CliOptions& opt) {
    const qpm::RunConfig cfg = load_config(opt);
    const auto dir = ensure_out_dir(opt);
    qpm::ModeBank bank(cfg.material, cfg.geometry);
    const double K = grating_K_for(cfg, bank);
    const auto rows = qpm::grating_tolerance(
        bank, cfg.pump_mode, cfg.pump_wavelength_um(), K, cfg.tolerance_deltas_nm,
        cfg.sweep_lambda_min_nm * 1e-3, cfg.sweep_lambda_max_nm * 1e-3,
        cfg.sweep_lambda_points, cfg.geometry.length_um());
    qpm::write_file((dir / "tolerance.csv").string(), qpm::tolerance_csv(rows));
    std::cout << "wrote tolerance table (" << rows.size() << " rows) to " << dir.string()
              << "\n";
    return kExitOk;
}

int cmd_design(const CliOptions& opt) {
    const qpm::RunConfig cfg = load_config(opt);
    const auto dir = ensure_out_dir(opt);
    qpm::ModeBank bank(cfg.material, cfg.geometry);
    const double lp = cfg.pump_wavelength_um();

    const qpm::GratingDesign gd = qpm::design_grating(bank, cfg.pump_mode, lp);
    qpm::EfficiencySpectrum sweep_l;
    run_sweep_wavelength(cfg, bank, gd.K_mean, sweep_l);
    qpm::write_file((dir / "spectrum_wavelength.csv").string(), qpm::spectrum_csv(sweep_l));
    const qpm::EfficiencySpectrum sweep_k = qpm::sweep_grating(
        bank, cfg.pump_mode, lp, cfg.sweep_k_min_per_um, cfg.sweep_k_max_per_um,
        cfg.sweep_k_points, cfg.geometry.length_um());
    qpm::write_file((dir / "spectrum_grating.csv").string(), qpm::spectrum_csv(sweep_k));

    const qpm::Crossing cross = qpm::find_intersection(sweep_l);
    const auto rows = qpm::grating_tolerance(
        bank, cfg.pump_mode, lp, gd.K_mean, cfg.tolerance_deltas_nm,
        cfg.sweep_lambda_min_nm * 1e-3, cfg.sweep_lambda_max_nm * 1e-3,
        cfg.sweep_lambda_points, cfg.geometry.length_um());
    qpm::write_file((dir / "tolerance.csv").string(), qpm::tolerance_csv(rows));

    std::vector<std::pair<std::string, std::string>> kv = {
        {"case", cfg.pump_mode == 0 ? "A" : "B"},
        {"grating_frequency_per_um", qpm::format_number(gd.K_mean)},
        {"grating_period_um", qpm::format_number(gd.grating_period_um)},
        {"grating_k_spread_per_um", qpm::format_number(gd.K_spread)},
        {"single_grating_feasible", gd.single_grating_feasible ? "yes" : "no"},
        {"crossing_wavelength_nm", qpm::format_number(cross.location * 1000.0)},
        {"crossing_spread", qpm::format_number(cross.spread)},
    };
    for (std::size_t j = 0; j < gd.K_per_process.size(); ++j)
        kv.emplace_back("k_process_" + std::to_string(j + 1),
                        qpm::format_number(gd.K_per_process[j]));
    const std::string report = qpm::key_value_text(kv);
    qpm::write_file((dir / "design_report.txt").string(), report);
    std::cout << report;
    return kExitOk;
}

int cmd_state(const CliOptions& opt) {
    const qpm::RunConfig cfg = load_config(opt);
    const auto dir = ensure_out_dir(opt);
    qpm::ModeBank bank(cfg.material, cfg.geometry);
    const double lp = cfg.pump_wavelength_um();
    const double K = grating_K_for(cfg, bank);
    // narrowband filter: the state is the single-wavelength slice at its center
    const double ls = cfg.filter_center_nm * 1e-3;
    const double half_w = cfg.filter_width_nm * 0.5e-3;
    if (ls - half_w <= cfg.sweep_lambda_min_nm * 1e-3 ||
        ls + half_w >= cfg.sweep_lambda_max_nm * 1e-3)
        throw qpm::ConfigError("filter window must lie inside the sweep wavelength range");

    const qpm::BiphotonState st =
        qpm::assemble_state(cfg.pump_mode, bank, lp, ls, K, cfg.geometry.length_um());
    const std::string case_label = cfg.pump_mode == 0 ? "A" : "B";
    qpm::write_file((dir / "state.csv").string(), qpm::state_csv(case_label, st));

    const qpm::EntanglementMetrics met =
        qpm::entanglement_metrics(st, cfg.state_dimensionality_threshold);
    std::vector<std::pair<std::string, std::string>> kv = {
        {"case", case_label},
        {"filter_center_nm", qpm::format_number(cfg.filter_center_nm)},
        {"filter_width_nm", qpm::format_number(cfg.filter_width_nm)},
        {"grating_k_per_um", qpm::format_number(K)},
        {"fidelity_to_uniform", qpm::format_number(met.fidelity_uniform)},
        {"schmidt_entropy_bits", qpm::format_number(met.entropy_bits)},
        {"dimensionality", std::to_string(met.dimensionality)},
    };
    const std::string text = qpm::key_value_text(kv);
    qpm::write_file((dir / "metrics.txt").string(), text);

    const qpm::PortState ports = qpm::port_mapping(st);
    std::string pt = "term,signal_port,idler_port,re_amp,im_amp,prob\n";
    int term = 1;
    for (const auto& t : ports.terms) {
        pt += std::to_string(term++);
        pt += ',';
        pt += qpm::to_string(t.signal_port);
        pt += ',';
        pt += qpm::to_string(t.idler_port);
        pt += ',';
        pt += qpm::format_number(t.amplitude.real());
        pt += ',';
        pt += qpm::format_number(t.amplitude.imag());
        pt += ',';
        pt += qpm::format_number(std::norm(t.amplitude));
        pt += '\n';
    }
    qpm::write_file((dir / "ports.csv").string(), pt);
    std::cout << text;
    return kExitOk;
}

int dispatch(const CliOptions& opt, int (*fn)(const CliOptions&)) {
    if (opt.dry_run) {
        const qpm::RunConfig cfg = load_config(opt);
        std::cout << qpm::key_value_text(qpm::config_items(cfg));
        return kExitOk;
    }
    return fn(opt);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-waveguide QPM SPDC design toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions opt;
    app.add_option("--config", opt.config_path, "configuration file (key = value lines)");
    app.add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    app.add_option("--set", opt.sets, "override a config key (key=value, repeatable)");
    app.add_flag("--dry-run", opt.dry_run, "parse and echo the config, compute nothing");

    int (*selected)(const CliOptions&) = nullptr;
    auto bind = [&](const char* name, const char* desc, int (*fn)(const CliOptions&)) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->callback([&selected, fn] { selected = fn; });
        return sub;
    };
    bind("modes", "solve and dump the pump/signal/idler mode tables", cmd_modes);
    bind("calibrate", "pin the index contrasts to the target grating frequency", cmd_calibrate);
    bind("design", "design the grating, run both sweeps, crossing and tolerance", cmd_design);
    bind("sweep-wavelength", "efficiency vs signal wavelength at fixed grating",
         cmd_sweep_wavelength);
    bind("sweep-grating", "efficiency vs grating frequency at degeneracy", cmd_sweep_grating);
    bind("tolerance", "crossing shift vs grating-period error", cmd_tolerance);
    bind("state", "biphoton state and entanglement metrics at the filter", cmd_state);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        return dispatch(opt, selected);
    } catch (const qpm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qpm::DesignError& e) {
        std::cerr << "design error: " << e.what() << "\n";
        return kExitDesign;
    } catch (const qpm::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
