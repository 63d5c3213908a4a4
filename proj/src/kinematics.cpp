//---------------------------------------------------------------------------//
//! \file kinematics.cpp
//---------------------------------------------------------------------------//
#include "evx/kinematics.hpp"

#include <cmath>
#include <string>

#include "evx/error.hpp"
#include "evx/units.hpp"

namespace evx
{
double ElectronState::wavelength() const
{
    return units::two_pi / wavenumber;
}

double ElectronState::momentum() const
{
    return wavenumber * units::hbar_c;
}

double ElectronState::velocity() const
{
    return beta * units::c_light;
}

ElectronState electron_state(double kinetic_energy, bool relativistic)
{
    if (!(kinetic_energy > 0) || !std::isfinite(kinetic_energy))
    {
        fail(ErrorKind::domain,
             "kinetic energy must be positive, got "
                 + std::to_string(kinetic_energy) + " keV");
    }
    ElectronState s;
    double const m = units::electron_mass;
    s.kinetic_energy = kinetic_energy;
    s.rest_energy = m;
    s.total_energy = kinetic_energy + m;
    s.relativistic = relativistic;
    if (relativistic)
    {
        double pc = std::sqrt(kinetic_energy * (kinetic_energy + 2 * m));
        s.wavenumber = pc / units::hbar_c;
        s.gamma = 1 + kinetic_energy / m;
        s.beta = std::sqrt(1 - 1 / (s.gamma * s.gamma));
    }
    else
    {
        double pc = std::sqrt(2 * m * kinetic_energy);
        s.wavenumber = pc / units::hbar_c;
        s.gamma = 1;
        s.beta = pc / m;
    }
    return s;
}

ElectronState electron_state_from_momentum(double momentum)
{
    if (!(momentum > 0))
    {
        fail(ErrorKind::domain, "momentum must be positive");
    }
    double const m = units::electron_mass;
    double total = std::hypot(momentum, m);
    ElectronState s = electron_state(total - m);
    // Keep the requested momentum exact rather than round-tripping via T
    s.wavenumber = momentum / units::hbar_c;
    s.total_energy = total;
    s.beta = momentum / total;
    s.gamma = total / m;
    return s;
}

double interaction_constant(ElectronState const& state)
{
    // Energies in eV so that C_E comes out per volt
    double e = state.kinetic_energy * 1e3;
    double e0 = state.rest_energy * 1e3;
    if (!state.relativistic)
    {
        return state.wavenumber / (2 * e);
    }
    return state.wavenumber * (e + e0) / (e * (e + 2 * e0));
}

}  // namespace evx
