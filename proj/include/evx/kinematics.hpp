//---------------------------------------------------------------------------//
//! \file evx/kinematics.hpp
//---------------------------------------------------------------------------//
#pragma once

namespace evx
{
//---------------------------------------------------------------------------//
/*!
 * Kinematic state of a free electron.
 *
 * Both the kinetic and the total energy are stored; callers pick the one
 * their formula needs. When constructed with the non-relativistic flag the
 * wavenumber follows from E = p^2/2m and gamma/beta are the Newtonian
 * values (beta may then exceed what a relativistic state would give).
 */
struct ElectronState
{
    double kinetic_energy{};  //!< [keV]
    double rest_energy{};  //!< [keV]
    double total_energy{};  //!< [keV]
    double wavenumber{};  //!< k = p/hbar [nm^-1]
    double beta{};
    double gamma{};
    bool relativistic{true};

    double wavelength() const;  //!< [nm]
    double momentum() const;  //!< p c [keV]
    double velocity() const;  //!< [nm/s]
};

// Build the state for a given kinetic energy [keV]
ElectronState electron_state(double kinetic_energy, bool relativistic = true);

// Build a relativistic state from p c [keV]
ElectronState electron_state_from_momentum(double momentum);

// Interaction constant C_E [V^-1 nm^-1]
double interaction_constant(ElectronState const& state);

//---------------------------------------------------------------------------//
}  // namespace evx
