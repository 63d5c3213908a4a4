//---------------------------------------------------------------------------//
//! \file evx/dirac.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <span>
#include <vector>

#include "evx/field.hpp"
#include "evx/modes.hpp"

namespace evx
{
//---------------------------------------------------------------------------//
enum class SpinBasis
{
    fixed_spin,  //!< s_z = +-1/2 along the beam axis
    helicity,  //!< chi = +-1/2 along each plane-wave momentum
};

/*!
 * Bessel-beam solution of the free Dirac equation.
 *
 * Energies are total energies [keV]; kappa and kz are wavenumbers. The
 * spin projection is s for the fixed-spin basis and chi for the helicity
 * basis.
 */
struct DiracBesselSpec
{
    double kappa{0};  //!< [nm^-1]
    double kz{0};  //!< [nm^-1]
    int l{0};
    SpinBasis basis{SpinBasis::fixed_spin};
    double spin{0.5};  //!< s or chi, +-1/2
    ElectronState state;

    //! Cone half-angle sin(theta0) = kappa / k
    double cone_angle() const;
    double total_angular_momentum() const { return l + spin; }

    static DiracBesselSpec make(ElectronState const& state,
                                double kappa,
                                int l,
                                SpinBasis basis,
                                double spin);
};

//! Four-component transverse field; components are (upper s=+1/2,
//! upper s=-1/2, lower s=+1/2, lower s=-1/2)
struct SpinorField2D
{
    Grid grid;
    std::array<std::vector<cplx>, 4> components;
    ElectronState state;
    double z{0};

    SpinorField2D() = default;
    SpinorField2D(Grid g, ElectronState s);

    std::vector<double> density() const;
    double probability() const;
    //! Component c as a scalar field (for azimuthal analysis)
    ComplexField2D component(int c) const;
};

// Winding carried by component c of a solution
int component_winding(DiracBesselSpec const& spec, int c);

// Sample the solution, radially tapered like scalar Bessel modes, at unit
// total probability
SpinorField2D dirac_bessel(DiracBesselSpec const& spec, Grid const& grid);

// Lambda = (1 - m c^2 / E)(kappa / k)^2
double soi_parameter(DiracBesselSpec const& spec);

struct SpinOrbitExpectations
{
    double orbital{0};  //!< <L_z> closed form [hbar]
    double spin{0};  //!< <S_z> closed form [hbar]
    double grid_orbital{0};  //!< -i d/dphi quadrature [hbar]
    double grid_spin{0};  //!< spin-density quadrature [hbar]
    //! M_z = (e c / 2E)(<L_z> + 2 <S_z>) with e < 0 [Bohr magnetons]
    double magnetic_moment{0};
};

// Fixed-spin basis only; quadrature mismatch > 0.5% is a consistency error
SpinOrbitExpectations sam_oam_expectations(DiracBesselSpec const& spec,
                                           Grid const& grid);

//! Orbital and spin z-expectations of any spinor field [hbar]
struct SpinorAngularMomentum
{
    double orbital{0};
    double spin{0};
};
SpinorAngularMomentum angular_momentum(SpinorField2D const& field);

// (1 - Lambda/2) J_|l|^2 + (Lambda/2) J_|l+2s|^2 at each radius
std::vector<double> spin_dependent_density(DiracBesselSpec const& spec,
                                           std::span<double const> radii);

// Radius of the first maximum of the profile above [nm]
double first_ring_radius(DiracBesselSpec const& spec);

//---------------------------------------------------------------------------//
// VOLKOV-BESSEL
//---------------------------------------------------------------------------//
//! Linearly polarized plane wave counter-propagating along -z
struct LaserWave
{
    double field_amplitude{0};  //!< E0 [V/nm]
    double omega{0};  //!< [rad/s]
    double polarization_angle{0};  //!< axis from +x [rad]
    int cycles{0};  //!< sin^2 envelope over this many cycles; 0 = monochromatic
};

struct VolkovShift
{
    Vec2 displacement;  //!< profile center at time t [nm]
    double eta{0};  //!< |e| A0 / m_e c
    double x{0};  //!< e^2 A0^2 omega / 2E (p.k)
    double spin_factor{0};  //!< (1 - x) / (1 + x)
    double mean_spin{0};  //!< chi * spin_factor [hbar]
    double phase_rate{0};  //!< d xi / dt at the beam centroid [rad/s]
};

// Profile displacement of a Volkov-Bessel beam at time t, evaluated at the
// plane moving with the electron (xi = omega (1 + beta_z) t)
VolkovShift volkov_bessel_shift(DiracBesselSpec const& spec,
                                LaserWave const& wave,
                                double t);

// Fixed-spin density profile rendered about the displaced center
std::vector<double> volkov_bessel_density(DiracBesselSpec const& spec,
                                          Vec2 displacement,
                                          Grid const& grid);

//---------------------------------------------------------------------------//
}  // namespace evx
