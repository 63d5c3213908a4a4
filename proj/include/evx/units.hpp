//---------------------------------------------------------------------------//
//! \file evx/units.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <numbers>

namespace evx
{
//---------------------------------------------------------------------------//
/*!
 * Unit system and physical constants.
 *
 * Public quantities are expressed in nm, keV, rad and tesla. Momenta are
 * carried as wavenumbers (nm^-1, i.e. p/hbar) and angular momenta in units
 * of hbar unless a name says otherwise.
 */
namespace units
{
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2 * std::numbers::pi;

//! hbar * c [keV nm]
inline constexpr double hbar_c = 0.197327;
//! Electron rest energy [keV]
inline constexpr double electron_mass = 510.9989;
//! Fine-structure constant
inline constexpr double alpha = 1 / 137.036;
//! Speed of light [nm/s]
inline constexpr double c_light = 2.99792458e17;
//! hbar [keV s]
inline constexpr double hbar = 6.582119569e-19;
//! Bohr magneton [keV/T]
inline constexpr double bohr_magneton = 5.7883818e-8;
//! |e| B / (2 m_e) per tesla [rad/s/T], non-relativistic Larmor rate
inline constexpr double larmor_per_tesla = 8.7941e10;
//! hbar / m_e [nm^2/s]
inline constexpr double hbar_over_me = hbar_c * c_light / electron_mass;
//! hbar / |e| [T nm^2]
inline constexpr double hbar_over_e = 658.2119569;

//! Unit conversions
inline constexpr double mrad = 1e-3;
inline constexpr double ev = 1e-3;
inline constexpr double um = 1e3;
inline constexpr double mm = 1e6;
inline constexpr double pm = 1e-3;
}  // namespace units

//---------------------------------------------------------------------------//
}  // namespace evx
