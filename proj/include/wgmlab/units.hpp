#pragma once

#include "wgmlab/constants.hpp"

// Unit conventions: every quantity is stored in SI base units, and every
// rate or frequency is an *angular* frequency in rad/s. The "over 2pi"
// ordinary-frequency form (Hz, kHz, MHz) exists only at I/O boundaries.

namespace wgmlab {

// Angular frequency in rad/s. Decay rates and couplings are >= 0;
// detunings may be signed.
struct AngularRate {
    double rad_s = 0.0;

    constexpr double over_2pi() const { return rad_s / constants::two_pi; }
    static constexpr AngularRate from_over_2pi(double hz) {
        return {constants::two_pi * hz};
    }

    constexpr auto operator<=>(const AngularRate&) const = default;
};

// Reporting form used in tables: value/(2pi), in Hz.
constexpr double to_over_2pi(AngularRate r) { return r.over_2pi(); }

}  // namespace wgmlab
