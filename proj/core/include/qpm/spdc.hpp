#ifndef QPM_SPDC_HPP
#define QPM_SPDC_HPP

#include <complex>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "qpm/channel.hpp"

namespace qpm {

// One type-II down-conversion channel: H pump mode -> H signal + V idler.
// `designated` marks membership in the output state (the case-A entanglement
// triple (0,0),(1,1),(2,2); the parity-allowed cross pairs (0,2),(2,0) are
// evaluated as contamination only). Case B keeps all four.
struct ProcessSpec {
    int pump_mode = 0;
    int signal_mode = 0;
    int idler_mode = 0;
    bool designated = true;
    std::string label;
};

// Parity selection: symmetric pump pairs equal signal/idler parities,
// antisymmetric pump pairs opposite ones.
bool parity_allowed(int pump_mode, int signal_mode, int idler_mode);

// Throws ConfigError for pump_mode outside {0, 1}.
std::vector<ProcessSpec> enumerate_processes(int pump_mode);

// Energy conservation: 1/li = 1/lp - 1/ls.
double idler_wavelength(double pump_um, double signal_um);

// Cache of channel-mode triplets keyed by exact (wavelength, polarization);
// concurrent lookups are safe, repeated solves are idempotent.
class ModeBank {
public:
    ModeBank(MaterialModel material, CouplerGeometry geometry)
        : material_(std::move(material)), geometry_(std::move(geometry)) {}

    const std::array<ChannelMode, 3>& modes(double wavelength_um, Polarization pol) const;

    const MaterialModel& material() const { return material_; }
    const CouplerGeometry& geometry() const { return geometry_; }

private:
    MaterialModel material_;
    CouplerGeometry geometry_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<double, int>, std::array<ChannelMode, 3>> cache_;
};

// K required to phase match one process at (lambda_p, lambda_s):
// K = beta_p - beta_s - beta_i, identical to 2pi(n_p/l_p - n_s/l_s - n_i/l_i).
double qpm_frequency(const ProcessSpec& spec, const ModeBank& bank,
                     double pump_um, double signal_um);
double qpm_frequency(const ProcessSpec& spec, const std::array<ChannelMode, 3>& pump,
                     const std::array<ChannelMode, 3>& signal,
                     const std::array<ChannelMode, 3>& idler);

// delta_k = beta_p - beta_s - beta_i - K_grating = qpm_frequency - K_grating.
double phase_mismatch(const ProcessSpec& spec, const ModeBank& bank,
                      double pump_um, double signal_um, double grating_K);

// I = integral of u_p u_s u_i over the cross-section, separable into the y and
// z factor integrals of the unit-normalized fields. Units 1/um.
double overlap_integral(const ChannelMode& pump, const ChannelMode& signal,
                        const ChannelMode& idler);
double overlap_integral(const ProcessSpec& spec, const ModeBank& bank,
                        double pump_um, double signal_um);

// unnormalized sinc, sinc(0) = 1
double sinc(double x);

// Scale-free coefficient F = I sinc(dk L/2) / N * exp(-i dk L/2) with
// N = n_s n_i. The physical C is scale * F with scale = d24 (all unobservable
// prefactors absorbed; efficiencies and state amplitudes never touch it).
std::complex<double> coefficient_F(const ProcessSpec& spec, const ModeBank& bank,
                                   double pump_um, double signal_um, double grating_K,
                                   double length_um);
std::complex<double> coefficient(const ProcessSpec& spec, const ModeBank& bank,
                                 double pump_um, double signal_um, double grating_K,
                                 double length_um);

struct ProcessResult {
    ProcessSpec spec;
    double K_required = 0.0;  // 1/um
    double delta_k = 0.0;     // rad/um
    double overlap_I = 0.0;   // 1/um
    double N = 0.0;           // n_s * n_i
    std::complex<double> F;   // scale-free coefficient
    double efficiency = 0.0;  // |F|^2 / max over evaluated set
};

// Evaluates every parity-allowed process of the pump mode at one wavelength
// pair; efficiencies normalized to the max over the returned set.
std::vector<ProcessResult> evaluate_processes(int pump_mode, const ModeBank& bank,
                                              double pump_um, double signal_um,
                                              double grating_K, double length_um);

struct BiphotonState {
    std::vector<std::pair<ProcessSpec, std::complex<double>>> terms;
    bool normalized = false;
};

// One term per designated process; amplitudes are the scale-free F values
// divided by sqrt(sum |F|^2). Throws DesignError when all coefficients vanish.
BiphotonState assemble_state(int pump_mode, const ModeBank& bank, double pump_um,
                             double signal_um, double grating_K, double length_um);

struct EntanglementMetrics {
    double fidelity_uniform = 0.0; // |sum amp_k / sqrt(D)|^2
    double entropy_bits = 0.0;     // -sum p log2 p
    int dimensionality = 0;        // count of p_k above threshold
};

// Requires a normalized state (throws std::invalid_argument otherwise).
EntanglementMetrics entanglement_metrics(const BiphotonState& state,
                                         double threshold = 0.01);

// Output-port relabeling (mode 0 -> I, 1 -> II, 2 -> III); amplitudes carry over.
enum class Port { I = 0, II = 1, III = 2 };
const char* to_string(Port p);

struct PortState {
    struct Term {
        Port signal_port;
        Port idler_port;
        std::complex<double> amplitude;
        ProcessSpec origin;
    };
    std::vector<Term> terms;
    bool normalized = false;
};

PortState port_mapping(const BiphotonState& state);
BiphotonState port_unmapping(const PortState& state);

} // namespace qpm

#endif
