#pragma once

// Pinned physical constants. Every unit conversion in the library derives
// from these values; nothing else may introduce a conversion factor.
namespace molqa::constants {

inline constexpr double planck_J_s = 6.62607015e-34;
inline constexpr double bohr_magneton_J_T = 9.2740100783e-24;
inline constexpr double electron_g_factor = 2.00231930436;
inline constexpr double debye_C_m = 3.33564e-30;
inline constexpr double four_pi_eps0 = 1.11265005545e-10;  // C^2 J^-1 m^-1
inline constexpr double hz_per_cm1 = 29.9792458e9;

// Derived scales (Hz-based internal energy unit).
inline constexpr double zeeman_hz_per_T =
    electron_g_factor * bohr_magneton_J_T / planck_J_s;  // ~2.80249514e10
inline constexpr double stark_hz_per_debye_kv_cm =
    debye_C_m * 1.0e5 / planck_J_s;  // ~5.03412e8
inline constexpr double dd_hz_nm3_per_debye2 =
    debye_C_m * debye_C_m / (four_pi_eps0 * planck_J_s) * 1.0e27;  // ~1.5092e11

}  // namespace molqa::constants
