#pragma once

#include <cmath>

// Internal unit system: hbar = 1, angular frequencies and energies in
// rad/us, time in us, length in um.  A frequency printed in "MHz" always
// means cycles per us, i.e. (angular frequency)/2pi.
namespace rydsim {

inline constexpr double two_pi = 6.283185307179586476925286766559;

inline constexpr double mhz_to_rad_per_us(double f_mhz) { return two_pi * f_mhz; }
inline constexpr double rad_per_us_to_mhz(double w) { return w / two_pi; }

// Default van der Waals coefficient, rad um^6/us.  Chosen so that the
// blockade radius r_b = (c6/omega)^(1/6) is 10 um at omega = 2pi * 1 MHz.
inline constexpr double default_c6 = two_pi * 1.0e6;

inline double blockade_radius_um(double c6, double omega) {
    return std::pow(c6 / omega, 1.0 / 6.0);
}

inline constexpr const char* tool_version = "0.1.0";

}  // namespace rydsim
