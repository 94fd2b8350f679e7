#pragma once

// Physical constants, CODATA 2018. Values are pinned here so that every
// derived number in reports and tests is reproducible bit-for-bit.

namespace wgmlab::constants {

inline constexpr double speed_of_light = 299792458.0;        // m/s, exact
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace wgmlab::constants
