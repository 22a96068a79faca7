#ifndef SRS_CONSTANTS_HPP
#define SRS_CONSTANTS_HPP

// Atomic-unit reference table (CODATA 2018). Every lab/atomic conversion in
// the library goes through these values; nothing else hard-codes them.
//
//   quantity            1 a.u. in SI
//   ------------------  ---------------------------
//   time                2.4188843265857e-17 s
//   length (bohr)       5.29177210903e-11 m
//   energy (hartree)    27.211386245988 eV
//   electric field      5.14220674763e11 V/m
//   speed of light      137.035999084 a.u. (= 1/fine-structure constant)

#include <numbers>

namespace srs::constants {

inline constexpr double atomic_time_s = 2.4188843265857e-17;
inline constexpr double bohr_m = 5.29177210903e-11;
inline constexpr double hartree_eV = 27.211386245988;
inline constexpr double atomic_field_V_per_m = 5.14220674763e11;
inline constexpr double speed_of_light_au = 137.035999084;

inline constexpr double bohr_cm = bohr_m * 1e2;
inline constexpr double pi = std::numbers::pi;

} // namespace srs::constants

#endif // SRS_CONSTANTS_HPP
