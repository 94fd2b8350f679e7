#pragma once

#include <string>

#include "wgmlab/model.hpp"

// Cavity-QED rates and critical numbers from measurable inputs. Two routes
// to the atom-cavity coupling are supported: calibration against a photon
// echo (Rabi frequency / intracavity photon number) and the dipole-moment /
// mode-volume route. Pure functions over immutable inputs.

namespace wgmlab::cqed {

enum class CouplingMethod { echo_calibration, dipole_mode_volume, bistability_fit };

struct CouplingEstimate {
    AngularRate g;
    CouplingMethod method;
    // Raw quantities the estimate was computed from, for report provenance.
    std::string inputs;
};

// kappa = pi c / (lambda Q)
AngularRate kappa_from_q(double wavelength, double quality_factor);

// gamma = 1/T1, gamma_h = 1/T2. Throws on T2 > 2 T1.
struct DecayRates {
    AngularRate gamma;
    AngularRate gamma_h;
};
DecayRates decay_rates(double t1, double t2);

// Omega = Theta / tau for a pulse of area Theta and duration tau.
AngularRate rabi_from_pulse(double area, double duration);

// n_ph = eta P Q / (2 hbar omega^2): stored energy eta*P*Q/(2*omega) divided
// by hbar*omega. The factor-2 energy convention is deliberate; it is the one
// that reproduces the reference photon numbers and is echoed in reports.
double intracavity_photon_number(double input_power, double coupling_efficiency,
                                 double quality_factor, double wavelength);

// g = Omega / (2 sqrt(n_ph))
CouplingEstimate g_from_echo(AngularRate rabi, double photon_number);

// g = (mu / n_r) sqrt(omega_a / (2 hbar eps0 V))
CouplingEstimate g_from_dipole(double dipole_moment, double refractive_index,
                               AngularRate transition_frequency,
                               double mode_volume);

// Inverse of g_from_dipole for the same (n_r, omega_a, V): recovers mu.
double dipole_from_g(AngularRate g, double refractive_index,
                     AngularRate transition_frequency, double mode_volume);

// N0 = 2 gamma_h kappa / g^2, n0 = gamma gamma_h / (4 g^2)
struct CriticalNumbers {
    double critical_atom_number;
    double saturation_photon_number;
};
CriticalNumbers critical_numbers(AngularRate g, AngularRate kappa,
                                 AngularRate gamma, AngularRate gamma_h);

// Classification uses exact floating-point comparisons, never rounded values.
struct StrongCouplingReport {
    bool saturation_photon_below_one;  // n0 < 1
    bool critical_atom_below_one;      // N0 < 1
    bool bad_cavity_regime;            // g^2 / kappa > gamma
    double n0;
    double big_n0;
    double g2_over_kappa;  // rad/s, compared against gamma
};
StrongCouplingReport strong_coupling_report(const CavityQedParams& params);

}  // namespace wgmlab::cqed
