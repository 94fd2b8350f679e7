#pragma once

#include <complex>
#include <string>
#include <vector>

#include "wgmlab/units.hpp"

// Domain types shared by every module. All types are immutable after
// validation and safe to share read-only across threads.

namespace wgmlab {

// Optical transition parameters of the dopant ion.
struct IonSpecies {
    std::string label;
    double transition_wavelength = 0.0;  // m, vacuum
    double dipole_moment = 0.0;          // C m
    double t1 = 0.0;                     // population lifetime, s
    double t2 = 0.0;                     // coherence time, s
    std::vector<double> hole_lifetimes;  // s
    std::vector<double> hole_weights;    // relative, same length as lifetimes

    AngularRate transition_frequency() const {
        return {constants::two_pi * constants::speed_of_light /
                transition_wavelength};
    }
};

enum class ResonatorShape { sphere };

struct ResonatorSpec {
    double radius = 0.0;              // m
    double refractive_index = 0.0;    // dimensionless
    double quality_factor = 0.0;      // dimensionless
    ResonatorShape shape = ResonatorShape::sphere;
    double coupling_efficiency = 0.0; // fraction in [0, 1]
};

// Derived cavity-QED rate set. N0 and n0 are fixed by the rates at
// construction time; build through make_cavity_qed_params.
struct CavityQedParams {
    AngularRate g;       // atom-cavity coupling
    AngularRate kappa;   // cavity decay
    AngularRate gamma;   // population decay, 1/T1
    AngularRate gamma_h; // coherence decay, 1/T2
    double n0_critical_atoms = 0.0;   // N0 = 2 gamma_h kappa / g^2
    double n0_saturation_photons = 0.0; // n0 = gamma gamma_h / (4 g^2)
};

CavityQedParams make_cavity_qed_params(AngularRate g, AngularRate kappa,
                                       AngularRate gamma, AngularRate gamma_h);

struct Pulse {
    double start = 0.0;      // s
    double duration = 0.0;   // s
    double area = 0.0;       // rad
    AngularRate carrier_detuning;  // signed
    double phase = 0.0;      // rad
};

using PulseSequence = std::vector<Pulse>;

enum class Detection { heterodyne, direct };

struct EchoTrace {
    std::vector<double> times;                  // strictly increasing, s
    std::vector<std::complex<double>> amplitudes;  // field samples, arb. units
    Detection detection = Detection::heterodyne;
    AngularRate lo_offset;  // heterodyne only

    std::size_t size() const { return times.size(); }
};

enum class SweepDirection { forward, reverse };

struct SweepTrace {
    std::vector<double> laser_detunings;  // rad/s relative to cavity, signed
    std::vector<double> transmission;     // fraction per sample
    std::vector<int> branch_count;        // root multiplicity per sample
    SweepDirection direction = SweepDirection::forward;
};

// Scenario parameter blocks carried by the config file. Fields mirror the
// documented config schema (docs in configs/*.cfg headers).
struct EchoSettings {
    AngularRate inhomogeneous_width{constants::two_pi * 2.0e6};  // FWHM
    std::string distribution = "gaussian";
    int n_classes = 2001;
    AngularRate lo_offset{constants::two_pi * 45.0e6};
    double pulse_area_scale = 1.0;  // intracavity enhancement hook, default off
};

struct BistabilitySettings {
    AngularRate g{constants::two_pi * 2.2e3};
    double n_atoms = 1.6e8;
    AngularRate kappa{constants::two_pi * 123.0e6};
    AngularRate gamma_h{constants::two_pi * 7.58e3};
    AngularRate gamma{constants::two_pi * 2.34e3};
    double coupling = 0.287;
    double external_loss = 0.2;
    double atom_offset_in_kappa = 0.5;  // (omega_a - omega_c)/kappa
    double drive_per_watt = 2.25e8;     // |y|^2 per watt of input power
    std::vector<double> powers_watt = {800e-6, 400e-6, 200e-6,
                                       100e-6, 80e-6, 40e-6};
    AngularRate sweep_halfspan{constants::two_pi * 300.0e6};
    int sweep_steps = 2401;
};

struct ExperimentConfig {
    int schema_version = 1;
    IonSpecies ion;
    ResonatorSpec resonator;
    EchoSettings echo;
    BistabilitySettings bistability;
};

// Thrown when a parsed config violates an invariant; the message names
// the offending field.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void validate(const IonSpecies& ion);
void validate(const ResonatorSpec& res);
void validate(const ExperimentConfig& cfg);

}  // namespace wgmlab
