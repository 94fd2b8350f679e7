#include "wgmlab/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wgmlab {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ValidationError("config validation failed: " + field + ": " + why);
}

void require_finite_positive(double v, const std::string& field) {
    if (!std::isfinite(v) || v <= 0.0) fail(field, "must be finite and > 0");
}

}  // namespace

CavityQedParams make_cavity_qed_params(AngularRate g, AngularRate kappa,
                                       AngularRate gamma, AngularRate gamma_h) {
    if (g.rad_s <= 0.0 || kappa.rad_s <= 0.0 || gamma.rad_s <= 0.0 ||
        gamma_h.rad_s <= 0.0) {
        throw std::invalid_argument(
            "cavity QED params require all rates > 0");
    }
    CavityQedParams p;
    p.g = g;
    p.kappa = kappa;
    p.gamma = gamma;
    p.gamma_h = gamma_h;
    p.n0_critical_atoms = 2.0 * gamma_h.rad_s * kappa.rad_s / (g.rad_s * g.rad_s);
    p.n0_saturation_photons =
        gamma.rad_s * gamma_h.rad_s / (4.0 * g.rad_s * g.rad_s);
    return p;
}

void validate(const IonSpecies& ion) {
    require_finite_positive(ion.transition_wavelength,
                            "ion.transition_wavelength");
    require_finite_positive(ion.dipole_moment, "ion.dipole_moment");
    require_finite_positive(ion.t1, "ion.T1");
    require_finite_positive(ion.t2, "ion.T2");
    if (ion.t2 > 2.0 * ion.t1) fail("ion.T2", "violates physical bound T2 <= 2*T1");
    for (double th : ion.hole_lifetimes) {
        require_finite_positive(th, "ion.hole_lifetimes");
    }
    if (!ion.hole_weights.empty() &&
        ion.hole_weights.size() != ion.hole_lifetimes.size()) {
        fail("ion.hole_weights", "length must match ion.hole_lifetimes");
    }
    for (double w : ion.hole_weights) {
        if (!(w > 0.0)) fail("ion.hole_weights", "weights must be > 0");
    }
}

void validate(const ResonatorSpec& res) {
    require_finite_positive(res.radius, "resonator.radius");
    if (!(res.refractive_index > 1.0)) {
        fail("resonator.refractive_index", "must be > 1");
    }
    require_finite_positive(res.quality_factor, "resonator.quality_factor");
    if (!(res.coupling_efficiency >= 0.0 && res.coupling_efficiency <= 1.0)) {
        fail("resonator.coupling_efficiency", "must lie in [0, 1]");
    }
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.schema_version != 1) {
        fail("schema_version", "unsupported version (expected 1)");
    }
    validate(cfg.ion);
    validate(cfg.resonator);

    const auto& e = cfg.echo;
    if (e.n_classes < 3) fail("echo.n_classes", "must be >= 3");
    if (!(e.inhomogeneous_width.rad_s > 0.0)) {
        fail("echo.inhomogeneous_width", "must be > 0");
    }
    if (e.distribution != "gaussian" && e.distribution != "lorentzian" &&
        e.distribution != "uniform") {
        fail("echo.distribution", "must be gaussian|lorentzian|uniform");
    }
    if (!(e.pulse_area_scale > 0.0)) fail("echo.pulse_area_scale", "must be > 0");

    const auto& b = cfg.bistability;
    if (!(b.g.rad_s > 0.0)) fail("bistability.g", "must be > 0");
    if (!(b.kappa.rad_s > 0.0)) fail("bistability.kappa", "must be > 0");
    if (!(b.gamma.rad_s > 0.0)) fail("bistability.gamma", "must be > 0");
    if (!(b.gamma_h.rad_s > 0.0)) fail("bistability.gamma_h", "must be > 0");
    if (!(b.n_atoms >= 0.0)) fail("bistability.n_atoms", "must be >= 0");
    if (!(b.coupling >= 0.0 && b.coupling <= 1.0)) {
        fail("bistability.coupling", "must lie in [0, 1]");
    }
    if (!(b.external_loss >= 0.0 && b.external_loss < 1.0)) {
        fail("bistability.external_loss", "must lie in [0, 1)");
    }
    if (!(b.drive_per_watt > 0.0)) fail("bistability.drive_per_watt", "must be > 0");
    if (b.sweep_steps < 2) fail("bistability.sweep_steps", "must be >= 2");
    for (double p : b.powers_watt) {
        if (!(p > 0.0)) fail("bistability.powers", "powers must be > 0");
    }
}

}  // namespace wgmlab
