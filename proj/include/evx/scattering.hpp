//---------------------------------------------------------------------------//
//! \file evx/scattering.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "evx/field.hpp"
#include "evx/magneto.hpp"
#include "evx/modes.hpp"
#include "evx/units.hpp"

namespace evx
{
//---------------------------------------------------------------------------//
// POTENTIALS AND KINEMATIC AMPLITUDES
//---------------------------------------------------------------------------//
//! Yukawa-screened point charge, V~(Q) = Z / (Q^2 + 1/a^2)
struct ScreenedCoulomb
{
    double charge{1};
    double screening_length{0.05};  //!< [nm]
};

struct LatticeSite
{
    Vec3 position{};  //!< [nm]
    double form_factor{1};
};

//! Point scatterers, V~(Q) = sum_j f_j exp(-i Q.r_j)
struct PointLattice
{
    std::vector<LatticeSite> sites;
};

//! Arbitrary Fourier-space potential
struct UserFourier
{
    std::function<cplx(Vec3 const&)> transform;
};

using PotentialModel = std::variant<ScreenedCoulomb, PointLattice, UserFourier>;

// V~(Q) = int d^3r exp(-i Q.r) V(r), arbitrary units
cplx potential_fourier(PotentialModel const& model, Vec3 const& q);

// Largest |V~(q) - conj V~(-q)| over the samples, relative to max |V~|
double friedel_violation(PotentialModel const& model,
                         std::span<Vec3 const> qs);

/*!
 * Kinematic (single-scattering) amplitude into the plane wave k_out.
 *
 * The probe is psi(x, y) exp(i k z) with k from the field state. Evaluated
 * as the k-space convolution of the probe spectrum with V~.
 */
cplx kinematic_amplitude(ComplexField2D const& probe,
                         PotentialModel const& model,
                         Vec3 const& k_out);

// Same for an analytic probe (Bessel or Laguerre-Gauss, unnormalized)
// scattered by point sites: direct sum over the lattice
cplx kinematic_amplitude(ModeSpec const& probe,
                         double k,
                         PointLattice const& lattice,
                         Vec3 const& k_out);

// Unnormalized analytic probe value at (x, y)
cplx mode_value(ModeSpec const& spec, double x, double y);

// |f|^2 at momentum transfers q, with k_out = k z^ - q
std::vector<double> transfer_pattern(ComplexField2D const& probe,
                                     PotentialModel const& model,
                                     std::span<Vec3 const> qs);
std::vector<double> transfer_pattern(ModeSpec const& probe,
                                     double k,
                                     PointLattice const& lattice,
                                     std::span<Vec3 const> qs);

// max_q ||f(q)|^2 - |f(-q)|^2| / max |f|^2 for patterns sampled at +q and -q
double centrosymmetry_violation(std::span<double const> at_plus_q,
                                std::span<double const> at_minus_q);

// Two sites on a three-fold screw axis: radius a, pitch c, handedness chi
PointLattice chiral_two_site(double radius, double pitch, int chirality);

// Laue zone N of a Q-fold screw axis is centrosymmetric for an l probe
bool chirality_rule(int l, int chirality, int laue_zone, int screw_order);

//---------------------------------------------------------------------------//
// DIPOLE TRANSITIONS
//---------------------------------------------------------------------------//
enum class TransitionGeometry
{
    vortex_to_plane,  //!< Bessel probe in, plane wave out at polar theta
    plane_to_vortex,  //!< plane wave in at polar theta, Bessel state out
};

struct DipoleTransition
{
    int l_out{0};  //!< l - delta_m
    cplx amplitude{};  //!< cone-integrated amplitude at phi' = 0
    bool dipole_allowed{false};  //!< |delta_m| <= 1
    bool forward_allowed{false};  //!< delta_m == l (forward plane wave out)
};

/*!
 * Dipole amplitude f(q_perp) exp(-i dm phi_q) integrated over a Bessel cone.
 *
 * The transverse transfer q is in units of k; theta_e is the characteristic
 * energy-loss angle in f = q_perp / (q_perp^2 + theta_e^2). For
 * plane_to_vortex, l is the incoming charge (0 for a plane wave) and the
 * amplitude is the projection onto the outgoing l - dm state.
 */
DipoleTransition dipole_transition(int l,
                                   int delta_m,
                                   double theta,
                                   double theta0,
                                   TransitionGeometry geometry
                                   = TransitionGeometry::vortex_to_plane,
                                   double theta_e = 1e-4);

//---------------------------------------------------------------------------//
// FIXED TARGET AND SINGLE VORTEX
//---------------------------------------------------------------------------//
//! Bessel beam along +z; momenta in any consistent unit
struct BesselCone
{
    double k{1};
    double kappa{0};
    int l{0};

    Vec3 momentum(double phi) const;
};

using PlaneAmplitude = std::function<cplx(Vec3 const& k_in, Vec3 const& k_out)>;
using PlaneCrossSection = std::function<double(Vec3 const& k_in)>;

// Unit-k direction with polar theta and azimuth phi, scaled by k
Vec3 direction(double k, double theta, double phi);

/*!
 * Cone average of e^{i l phi} e^{-i b.k_perp} f(k(phi), k_out).
 *
 * Trapezoid nodes double from 64 until two successive results agree to
 * 1e-10 relative; failure at 65536 nodes is an accuracy error.
 */
cplx fixed_target_amplitude(BesselCone const& beam,
                            PlaneAmplitude const& f,
                            Vec2 impact,
                            Vec3 const& k_out);

// |amplitude|^2 averaged over impacts on a uniform n x n grid of the
// square [-half_extent, half_extent]^2
double impact_averaged_intensity(BesselCone const& beam,
                                 PlaneAmplitude const& f,
                                 Vec3 const& k_out,
                                 double half_extent,
                                 int n);

// int dphi/2pi dsigma_PW(k1(phi)) over the cone; the charge never enters
double single_vortex_cross_section(double k,
                                   double kappa,
                                   PlaneCrossSection const& dsigma,
                                   int nodes = 720);

//---------------------------------------------------------------------------//
// VORTEX-VORTEX COLLISIONS
//---------------------------------------------------------------------------//
// Phi_0 + 2 alpha ln(1/theta); requires 0 < theta < pi/2
double coulomb_phase(double theta, double alpha, double phi0 = 0);

//! One colliding twisted beam; momenta and energies [keV]
struct CollidingBeam
{
    double energy{0};  //!< total energy
    double kappa{0};
    double kappa_width{0};  //!< Gaussian sigma, truncated at 3 sigma
    double jz{0};  //!< phase winding used in the interference term
    int direction{+1};  //!< +1 along +z, -1 along -z
};

struct CollisionSetup
{
    CollidingBeam beam1;
    CollidingBeam beam2;
    double k1_out_perp{0};  //!< final transverse momentum of particle 1
    double k1_out_azimuth{0};  //!< its azimuth, defines the up-down axis
    double mass{units::electron_mass};
    double screening{1};  //!< mu in |M| = 1/(Q^2 + mu^2) [keV]
    double alpha{0};  //!< Coulomb-phase strength; 0 = real amplitude
    double phase0{0};
    int smearing_nodes{48};  //!< per beam
};

//! Plane-wave invariant amplitude of the stand-in model
cplx standin_amplitude(CollisionSetup const& setup,
                       Vec3 const& k1,
                       Vec3 const& k2);

//! Transverse inner angles of the (kappa1, kappa2, K) triangle
struct TriangleAngles
{
    bool valid{false};
    double delta1{0};
    double delta2{0};
    double twice_area{0};  //!< kappa1 kappa2 sin(delta1 + delta2)
};
TriangleAngles triangle_angles(double kappa1, double kappa2, double k_perp);

//! Distribution on a square K_perp grid, row-major in (y, x)
struct KDistribution
{
    std::vector<double> kx;
    std::vector<double> ky;
    std::vector<double> value;
    bool singular_endpoints{false};  //!< unsmeared beam: edges diverge

    double operator()(std::size_t ix, std::size_t iy) const
    {
        return value[iy * kx.size() + ix];
    }
};

// dsigma at fixed kappas, K_perp given in Cartesian components
double vortex_vortex_point(CollisionSetup const& setup,
                           double kappa1,
                           double kappa2,
                           double kx,
                           double ky);

/*!
 * Interference distribution over K_perp, smeared over the beam kappas.
 *
 * Each plane-wave pair contributes with the end-point weight
 * 1 / (kappa1 kappa2 sin(delta1 + delta2)).
 */
KDistribution vortex_vortex_distribution(CollisionSetup const& setup,
                                         double half_extent,
                                         int n);

// (up - down) / (up + down) about the axis at the given azimuth
double updown_asymmetry(KDistribution const& dist, double axis_azimuth);

//---------------------------------------------------------------------------//
}  // namespace evx
