#include "wgmlab/cqed.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wgmlab/constants.hpp"

namespace wgmlab::cqed {

namespace {
void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be > 0");
    }
}
}  // namespace

AngularRate kappa_from_q(double wavelength, double quality_factor) {
    require_positive(wavelength, "wavelength");
    require_positive(quality_factor, "quality factor");
    return {constants::pi * constants::speed_of_light /
            (wavelength * quality_factor)};
}

DecayRates decay_rates(double t1, double t2) {
    require_positive(t1, "T1");
    require_positive(t2, "T2");
    if (t2 > 2.0 * t1) {
        throw std::invalid_argument("decay_rates: physical bound T2 <= 2*T1 violated");
    }
    return {AngularRate{1.0 / t1}, AngularRate{1.0 / t2}};
}

AngularRate rabi_from_pulse(double area, double duration) {
    require_positive(area, "pulse area");
    require_positive(duration, "pulse duration");
    return {area / duration};
}

double intracavity_photon_number(double input_power, double coupling_efficiency,
                                 double quality_factor, double wavelength) {
    require_positive(input_power, "input power");
    require_positive(quality_factor, "quality factor");
    require_positive(wavelength, "wavelength");
    if (!(coupling_efficiency >= 0.0 && coupling_efficiency <= 1.0)) {
        throw std::invalid_argument("coupling efficiency must lie in [0, 1]");
    }
    const double omega =
        constants::two_pi * constants::speed_of_light / wavelength;
    const double stored_energy =
        coupling_efficiency * input_power * quality_factor / (2.0 * omega);
    return stored_energy / (constants::hbar * omega);
}

CouplingEstimate g_from_echo(AngularRate rabi, double photon_number) {
    require_positive(rabi.rad_s, "Rabi frequency");
    require_positive(photon_number, "photon number");
    std::ostringstream in;
    in << "Omega=" << rabi.rad_s << " rad/s, n_ph=" << photon_number;
    return {AngularRate{rabi.rad_s / (2.0 * std::sqrt(photon_number))},
            CouplingMethod::echo_calibration, in.str()};
}

CouplingEstimate g_from_dipole(double dipole_moment, double refractive_index,
                               AngularRate transition_frequency,
                               double mode_volume) {
    require_positive(dipole_moment, "dipole moment");
    require_positive(refractive_index, "refractive index");
    require_positive(transition_frequency.rad_s, "transition frequency");
    require_positive(mode_volume, "mode volume");
    const double g =
        dipole_moment / refractive_index *
        std::sqrt(transition_frequency.rad_s /
                  (2.0 * constants::hbar * constants::vacuum_permittivity *
                   mode_volume));
    std::ostringstream in;
    in << "mu=" << dipole_moment << " C m, n_r=" << refractive_index
       << ", omega_a=" << transition_frequency.rad_s << " rad/s, V="
       << mode_volume << " m^3";
    return {AngularRate{g}, CouplingMethod::dipole_mode_volume, in.str()};
}

double dipole_from_g(AngularRate g, double refractive_index,
                     AngularRate transition_frequency, double mode_volume) {
    require_positive(g.rad_s, "coupling");
    return g.rad_s * refractive_index *
           std::sqrt(2.0 * constants::hbar * constants::vacuum_permittivity *
                     mode_volume / transition_frequency.rad_s);
}

CriticalNumbers critical_numbers(AngularRate g, AngularRate kappa,
                                 AngularRate gamma, AngularRate gamma_h) {
    const auto p = make_cavity_qed_params(g, kappa, gamma, gamma_h);
    return {p.n0_critical_atoms, p.n0_saturation_photons};
}

StrongCouplingReport strong_coupling_report(const CavityQedParams& p) {
    StrongCouplingReport r;
    r.n0 = p.n0_saturation_photons;
    r.big_n0 = p.n0_critical_atoms;
    r.g2_over_kappa = p.g.rad_s * p.g.rad_s / p.kappa.rad_s;
    r.saturation_photon_below_one = r.n0 < 1.0;
    r.critical_atom_below_one = r.big_n0 < 1.0;
    r.bad_cavity_regime = r.g2_over_kappa > p.gamma.rad_s;
    return r;
}

}  // namespace wgmlab::cqed
