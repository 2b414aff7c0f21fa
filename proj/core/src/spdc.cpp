#include "qpm/spdc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qpm/quadrature.hpp"

namespace qpm {

bool parity_allowed(int pump_mode, int signal_mode, int idler_mode) {
    const bool pump_even = pump_mode % 2 == 0;
    const bool same_parity = (signal_mode % 2) == (idler_mode % 2);
    return pump_even ? same_parity : !same_parity;
}

std::vector<ProcessSpec> enumerate_processes(int pump_mode) {
    if (pump_mode != 0 && pump_mode != 1)
        throw ConfigError("pump mode must be 0 or 1 (got " + std::to_string(pump_mode) + ")");
    std::vector<ProcessSpec> out;
    if (pump_mode == 0) {
        out.push_back({0, 0, 0, true, "A1"});
        out.push_back({0, 1, 1, true, "A2"});
        out.push_back({0, 2, 2, true, "A3"});
        out.push_back({0, 0, 2, false, "A-x02"});
        out.push_back({0, 2, 0, false, "A-x20"});
    } else {
        out.push_back({1, 0, 1, true, "B1"});
        out.push_back({1, 1, 0, true, "B2"});
        out.push_back({1, 1, 2, true, "B3"});
        out.push_back({1, 2, 1, true, "B4"});
    }
    return out;
}

double idler_wavelength(double pump_um, double signal_um) {
    const double inv = 1.0 / pump_um - 1.0 / signal_um;
    if (!(inv > 0.0))
        throw ConfigError("energy conservation gives non-positive idler frequency (pump " +
                          std::to_string(pump_um) + " um, signal " + std::to_string(signal_um) +
                          " um)");
    return 1.0 / inv;
}

const std::array<ChannelMode, 3>& ModeBank::modes(double wavelength_um, Polarization pol) const {
    const std::pair<double, int> key{wavelength_um, static_cast<int>(pol)};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto solved = solve_channel_modes(material_, geometry_, wavelength_um, pol);
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache_.emplace(key, std::move(solved));
    (void)inserted; // a racing thread may have inserted the identical value
    return it->second;
}

namespace {

struct Trio {
    const ChannelMode* p;
    const ChannelMode* s;
    const ChannelMode* i;
};

Trio lookup(const ProcessSpec& spec, const ModeBank& bank, double pump_um, double signal_um) {
    const double li = idler_wavelength(pump_um, signal_um);
    const auto& pm = bank.modes(pump_um, Polarization::H);
    const auto& sm = bank.modes(signal_um, Polarization::H);
    const auto& im = bank.modes(li, Polarization::V);
    return {&pm[spec.pump_mode], &sm[spec.signal_mode], &im[spec.idler_mode]};
}

} // namespace

double qpm_frequency(const ProcessSpec& spec, const ModeBank& bank,
                     double pump_um, double signal_um) {
    const Trio t = lookup(spec, bank, pump_um, signal_um);
    return t.p->beta - t.s->beta - t.i->beta;
}

double qpm_frequency(const ProcessSpec& spec, const std::array<ChannelMode, 3>& pump,
                     const std::array<ChannelMode, 3>& signal,
                     const std::array<ChannelMode, 3>& idler) {
    return pump[spec.pump_mode].beta - signal[spec.signal_mode].beta -
           idler[spec.idler_mode].beta;
}

double phase_mismatch(const ProcessSpec& spec, const ModeBank& bank,
                      double pump_um, double signal_um, double grating_K) {
    return qpm_frequency(spec, bank, pump_um, signal_um) - grating_K;
}

double overlap_integral(const ChannelMode& pump, const ChannelMode& signal,
                        const ChannelMode& idler) {
    const SlabModeY& yp = pump.y_mode;
    const SlabModeY& ys = signal.y_mode;
    const SlabModeY& yi = idler.y_mode;
    const double y1 = yp.a_um / 2;
    const double y2 = y1 + yp.d_um;
    const double y3 = yp.tail_start();
    const double gmin = std::min({yp.gamma, ys.gamma, yi.gamma});
    const double ymax = y3 + 30.0 / gmin;
    auto fy = [&](double y) { return yp.value(y) * ys.value(y) * yi.value(y); };
    const double Iy = integrate_adaptive(
        fy, {-ymax, -y3, -y2, -y1, 0.0, y1, y2, y3, ymax}, 1e-8);

    const SlabModeZ& zp = pump.z_mode;
    const SlabModeZ& zs = signal.z_mode;
    const SlabModeZ& zi = idler.z_mode;
    const double b = zp.b_um;
    const double dmin = std::min({zp.delta, zs.delta, zi.delta});
    const double emin = std::min({zp.eta, zs.eta, zi.eta});
    auto fz = [&](double z) { return zp.value(z) * zs.value(z) * zi.value(z); };
    const double Iz =
        integrate_adaptive(fz, {-b - 30.0 / dmin, -b, 0.0, 30.0 / emin}, 1e-8);
    return Iy * Iz;
}

double overlap_integral(const ProcessSpec& spec, const ModeBank& bank,
                        double pump_um, double signal_um) {
    const Trio t = lookup(spec, bank, pump_um, signal_um);
    return overlap_integral(*t.p, *t.s, *t.i);
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

std::complex<double> coefficient_F(const ProcessSpec& spec, const ModeBank& bank,
                                   double pump_um, double signal_um, double grating_K,
                                   double length_um) {
    if (!(length_um > 0.0)) throw ConfigError("interaction length must be positive");
    const Trio t = lookup(spec, bank, pump_um, signal_um);
    const double dk = (t.p->beta - t.s->beta - t.i->beta) - grating_K;
    const double I = overlap_integral(*t.p, *t.s, *t.i);
    const double N = t.s->n_eff * t.i->n_eff;
    const double x = dk * length_um / 2.0;
    return I * sinc(x) / N * std::exp(std::complex<double>(0.0, -x));
}

std::complex<double> coefficient(const ProcessSpec& spec, const ModeBank& bank,
                                 double pump_um, double signal_um, double grating_K,
                                 double length_um) {
    return bank.material().d24 *
           coefficient_F(spec, bank, pump_um, signal_um, grating_K, length_um);
}

std::vector<ProcessResult> evaluate_processes(int pump_mode, const ModeBank& bank,
                                              double pump_um, double signal_um,
                                              double grating_K, double length_um) {
    std::vector<ProcessResult> out;
    double max_f2 = 0.0;
    for (const ProcessSpec& spec : enumerate_processes(pump_mode)) {
        ProcessResult r;
        r.spec = spec;
        const Trio t = lookup(spec, bank, pump_um, signal_um);
        r.K_required = t.p->beta - t.s->beta - t.i->beta;
        r.delta_k = r.K_required - grating_K;
        r.overlap_I = overlap_integral(*t.p, *t.s, *t.i);
        r.N = t.s->n_eff * t.i->n_eff;
        const double x = r.delta_k * length_um / 2.0;
        r.F = r.overlap_I * sinc(x) / r.N * std::exp(std::complex<double>(0.0, -x));
        max_f2 = std::max(max_f2, std::norm(r.F));
        out.push_back(r);
    }
    if (max_f2 > 0.0)
        for (auto& r : out) r.efficiency = std::norm(r.F) / max_f2;
    return out;
}

BiphotonState assemble_state(int pump_mode, const ModeBank& bank, double pump_um,
                             double signal_um, double grating_K, double length_um) {
    BiphotonState st;
    double sum2 = 0.0;
    for (const ProcessSpec& spec : enumerate_processes(pump_mode)) {
        if (!spec.designated) continue;
        const std::complex<double> F =
            coefficient_F(spec, bank, pump_um, signal_um, grating_K, length_um);
        st.terms.emplace_back(spec, F);
        sum2 += std::norm(F);
    }
    if (!(sum2 > 0.0)) throw DesignError("all state coefficients vanish (degenerate state)");
    const double inv = 1.0 / std::sqrt(sum2);
    for (auto& [spec, amp] : st.terms) amp *= inv;
    st.normalized = true;
    return st;
}

EntanglementMetrics entanglement_metrics(const BiphotonState& state, double threshold) {
    if (!state.normalized)
        throw std::invalid_argument("entanglement_metrics requires a normalized state");
    double sum2 = 0.0;
    for (const auto& [spec, amp] : state.terms) sum2 += std::norm(amp);
    if (std::abs(sum2 - 1.0) > 1e-12)
        throw std::invalid_argument("state marked normalized but sum |amp|^2 deviates from 1");

    const double d = static_cast<double>(state.terms.size());
    std::complex<double> acc{0.0, 0.0};
    double entropy = 0.0;
    int dims = 0;
    for (const auto& [spec, amp] : state.terms) {
        acc += amp / std::sqrt(d);
        const double p = std::norm(amp);
        if (p > 0.0) entropy -= p * std::log2(p);
        if (p > threshold) ++dims;
    }
    return {std::norm(acc), entropy, dims};
}

const char* to_string(Port p) {
    switch (p) {
        case Port::I: return "I";
        case Port::II: return "II";
        default: return "III";
    }
}

PortState port_mapping(const BiphotonState& state) {
    PortState out;
    out.normalized = state.normalized;
    for (const auto& [spec, amp] : state.terms)
        out.terms.push_back({static_cast<Port>(spec.signal_mode),
                             static_cast<Port>(spec.idler_mode), amp, spec});
    return out;
}

BiphotonState port_unmapping(const PortState& state) {
    BiphotonState out;
    out.normalized = state.normalized;
    for (const auto& t : state.terms) {
        ProcessSpec spec = t.origin;
        spec.signal_mode = static_cast<int>(t.signal_port);
        spec.idler_mode = static_cast<int>(t.idler_port);
        out.terms.emplace_back(spec, t.amplitude);
    }
    return out;
}

} // namespace qpm
