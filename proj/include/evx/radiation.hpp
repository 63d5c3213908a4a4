//---------------------------------------------------------------------------//
//! \file evx/radiation.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "evx/kinematics.hpp"

namespace evx
{
//---------------------------------------------------------------------------//
// CHERENKOV
//---------------------------------------------------------------------------//
//! Refractive index as a function of angular frequency [rad/s]
using RefractiveIndex = std::function<double(double)>;

RefractiveIndex constant_index(double n);

struct CherenkovConfig
{
    RefractiveIndex index;
    ElectronState electron;
    double theta0{0};  //!< vortex cone half-angle [rad]; 0 = plane wave
};

struct CherenkovAngle
{
    bool emits{false};
    double cos_theta{1};
    double theta{0};  //!< [rad], includes the recoil term
};

// cos(theta_Ch) = 1/(beta n) + (hbar omega / 2E)(n^2 - 1)/(beta n)
CherenkovAngle cherenkov_angle(CherenkovConfig const& config, double omega);

// hbar omega_cutoff / hbar = 2E (beta n - 1) / (n^2 - 1) for constant n
// [rad/s]; 0 below threshold
double cherenkov_cutoff(CherenkovConfig const& config);

// dGamma/domega = alpha [beta sin^2 theta_Ch + (hbar omega)^2 (n^2 - 1)
// / (2 beta E^2)], zero without emission
double cherenkov_spectral_density(CherenkovConfig const& config, double omega);

//! Map sampled on cell centers, row-major with the outer index first
struct AngularMap
{
    std::vector<double> outer;  //!< omega [rad/s] or theta [rad]
    std::vector<double> inner;  //!< theta or phi [rad]
    std::vector<double> value;
    bool linear_in_plane{false};  //!< photons polarized in the emission plane

    double operator()(std::size_t io, std::size_t ii) const
    {
        return value[io * inner.size() + ii];
    }
};

/*!
 * Plane-wave d^2Gamma / domega dOmega on an (omega, theta) grid.
 *
 * The delta ridge fills the single theta cell holding theta_Ch, normalized
 * so that 2pi sum density * dcos reproduces dGamma/domega. Theta nodes are
 * uniform cell centers on [0, pi].
 */
AngularMap cherenkov_planewave(CherenkovConfig const& config,
                               std::span<double const> omegas,
                               int theta_cells);

/*!
 * Incoherent cone average of the plane-wave ridge, closed form.
 *
 * Nonzero only for |theta_Ch - theta0| < theta_k < theta_Ch + theta0, where
 * it equals alpha B / (2 pi^2 sin theta_k sin theta0 sqrt(1 - c^2)).
 */
double cherenkov_vortex_density(CherenkovConfig const& config,
                                double omega,
                                double theta_k);

// Solid-angle integral of the vortex density between two polar angles
double cherenkov_vortex_integral(CherenkovConfig const& config,
                                 double omega,
                                 double theta_lo = 0,
                                 double theta_hi = 3.141592653589793);

// Fraction of the vortex emission with theta_k > pi/2
double cherenkov_backward_fraction(CherenkovConfig const& config, double omega);

//! Two-state superposition a1 |J1> + a2 |J2> on the same cone
struct VortexSuperposition
{
    double jz1{0.5};
    double jz2{0.5};
    std::complex<double> a1{1, 0};
    std::complex<double> a2{0, 0};
};

/*!
 * (theta, phi) map by uniform azimuthal quadrature over the electron cone.
 *
 * Each cone component radiates the plane-wave ridge about its own momentum
 * (angle addition), weighted by |a1 e^{iJ1 phi} + a2 e^{iJ2 phi}|^2 over
 * its mean. The ridge is a normalized box of one theta cell. Nodes >= 720.
 */
AngularMap cherenkov_vortex_map(CherenkovConfig const& config,
                                VortexSuperposition const& state,
                                double omega,
                                std::span<double const> thetas,
                                int phi_cells,
                                int nodes = 720);

// Closed-form density of the superposition at (theta_k, phi_k)
double cherenkov_superposition_density(CherenkovConfig const& config,
                                       VortexSuperposition const& state,
                                       double omega,
                                       double theta_k,
                                       double phi_k);

//---------------------------------------------------------------------------//
// TRANSITION RADIATION
//---------------------------------------------------------------------------//
struct TransitionConfig
{
    ElectronState electron;
    int l{0};
    double spin{0};  //!< +-1/2, or 0 to switch the spin moment off
    double photon_energy{0};  //!< hbar omega [keV]
    double incidence{0};  //!< theta_p from the surface normal [rad]
};

// Signed longitudinal moment gamma^-1 (l + 2s) [Bohr magnetons]
double transition_moment(TransitionConfig const& config);

// |l + 2s| hbar omega / (2 gamma^2 m c^2)
double transition_epsilon(TransitionConfig const& config);

//! Interference weight g(theta_p, theta_k, phi_k); model input
using GeometryWeight = std::function<double(double, double, double)>;

// Unit placeholder for g
GeometryWeight unit_geometry();

/*!
 * Hemisphere geometry factor of the interference term.
 *
 * G = (int_L g t - int_R g t) / int g over the backward hemisphere, with
 * t = k.(M^ x z^) and M^ along the incident momentum. L is phi_k > 0.
 */
double transition_geometry_factor(double incidence, GeometryWeight const& g);

// Full-sphere integral of g t (vanishes by symmetry)
double transition_full_sphere(double incidence, GeometryWeight const& g);

// I_LR = sign(l + 2s) epsilon G
double transition_asymmetry(TransitionConfig const& config,
                            GeometryWeight const& g);

//---------------------------------------------------------------------------//
}  // namespace evx
