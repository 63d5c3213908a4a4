//---------------------------------------------------------------------------//
//! \file evx/optics.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "evx/field.hpp"
#include "evx/units.hpp"

namespace evx
{
//---------------------------------------------------------------------------//
// ELEMENTS
//
// Each element is a pointwise transmission T with |T| <= 1. Lengths are in
// nm and act on real-space fields; angles are in rad and act on fields in
// the reciprocal (angular-spectrum) domain, where theta = k_perp / k.
//---------------------------------------------------------------------------//
struct SpiralPhasePlate
{
    double charge{1};  //!< may be non-integer
    double stop_radius{0};  //!< opaque central stop [nm]
};

struct MipPlate
{
    std::vector<double> thickness;  //!< [nm], sampled on the field grid
    double mip{0};  //!< mean inner potential [V]

    static MipPlate uniform(Grid const& grid, double thickness, double mip);
};

struct BinaryForkHologram
{
    int l0{1};
    double period{0};  //!< x_g [nm]
    double duty{0.5};  //!< open fraction of each period
    double aperture_radius{0};  //!< r_max [nm]; 0 means unbounded
    int supersample{4};  //!< sub-pixel samples per axis for area coverage
    double offset{0};  //!< grating phase added to the fringe argument [rad]
};

struct PhaseForkHologram
{
    int l0{1};
    double period{0};
    double depth{2 * units::pi};  //!< peak-to-peak phase [rad]
    bool blazed{true};  //!< linear sawtooth, else sinusoidal
    double aperture_radius{0};
};

//! Binary zone plate with a spiral dislocation
struct SpiralZonePlate
{
    int l0{1};
    double focal_length{0};  //!< [nm]
    double aperture_radius{0};
};

//! Opaque half-plane r . n < offset, with n = (cos azimuth, sin azimuth)
struct KnifeEdge
{
    double azimuth{0};
    double offset{0};
};

struct AnnularAperture
{
    double theta_inner{0};
    double theta_outer{0};
};

//! Quadrupole phase S (u^2 - v^2) with u along the axis angle
struct AstigmaticLens
{
    double strength{0};  //!< [nm^-2]
    double axis_angle{0};
};

//! Phase step across a line through the origin; pi gives an HG-like field
struct PhaseStepPlate
{
    double azimuth{0};  //!< direction of the step normal
    double step{units::pi};
};

/*!
 * Magnetized needle ending at the origin, lying along the needle azimuth.
 *
 * Phase alpha * phi' with phi' the angle from the needle in [0, 2pi); the
 * 2pi alpha jump sits on the needle, which is opaque over its width.
 */
struct NeedleMonopole
{
    double alpha{1};
    double azimuth{0};
    double width{0};  //!< [nm]
};

/*!
 * Annular aperture with aberration phase
 * sum_m A_m (theta / theta_ref)^m sin(m (phi - phi_m)), m = 1..3.
 */
struct AberrationVortex
{
    double theta_inner{0};
    double theta_outer{0};
    double theta_ref{0};
    std::array<double, 3> amplitude{};  //!< [rad] at theta_ref
    std::array<double, 3> orientation{};  //!< [rad]
};

using Element = std::variant<SpiralPhasePlate,
                             MipPlate,
                             BinaryForkHologram,
                             PhaseForkHologram,
                             SpiralZonePlate,
                             KnifeEdge,
                             AnnularAperture,
                             AstigmaticLens,
                             PhaseStepPlate,
                             NeedleMonopole,
                             AberrationVortex>;

// Multiply the field by the element transmission
ComplexField2D apply(Element const& element, ComplexField2D field);

// Transmission sampled on a grid (real or reciprocal per element kind)
std::vector<cplx> transmission(Element const& element,
                               Grid const& grid,
                               Domain domain,
                               ElectronState const& state);

//---------------------------------------------------------------------------//
// PROPAGATION
//---------------------------------------------------------------------------//
enum class PropagationMethod
{
    angular_spectrum,
    fresnel_far_field,
};

struct PropagationPlan
{
    PropagationMethod method{PropagationMethod::angular_spectrum};
    double z_step{0};  //!< 0 means a single step
    int absorber_width{32};  //!< [pixels]; 0 disables the boundary taper
};

// Paraxial propagation by distance z [nm]
ComplexField2D propagate(ComplexField2D field,
                         PropagationPlan const& plan,
                         double distance);

// Fraction of spectral power with |k_x| or |k_y| above 0.9 Nyquist
double high_frequency_fraction(ComplexField2D const& field);

// Centered unitary Fourier transform to k_perp axes
ComplexField2D far_field(ComplexField2D field);

// Inverse of far_field
ComplexField2D near_field(ComplexField2D field);

//---------------------------------------------------------------------------//
// DESIGN HELPERS
//---------------------------------------------------------------------------//
struct ForkDesign
{
    BinaryForkHologram element;
    double diffraction_angle{0};  //!< theta_d = k_x / k [rad]
    double camera_length{0};  //!< L = r_max / theta_max [nm]
    double separation{0};  //!< L theta_d [nm]
};

// Fork for charge l0, period x_g, aperture r_max; camera length from the
// largest scattering angle to keep within the detector
ForkDesign design_fork(int l0,
                       double period,
                       double aperture_radius,
                       ElectronState const& state,
                       double theta_max,
                       std::optional<double> pitch = std::nullopt);

// Three-harmonic sawtooth approximating exp(+-i phi) over an annulus
AberrationVortex aberration_vortex(double theta_inner,
                                   double theta_outer,
                                   int l = 1);

AberrationVortex aberration_vortex(double theta_inner,
                                   double theta_outer,
                                   std::array<double, 3> const& amplitude,
                                   std::array<double, 3> const& orientation,
                                   double theta_ref = 0);

NeedleMonopole needle_monopole(double alpha, double width, double azimuth = 0);

// Lens, far field, then the reciprocal-space lens that cancels the residual
// astigmatism; the result is in the reciprocal domain
ComplexField2D astigmatic_convert(ComplexField2D const& field,
                                  AstigmaticLens const& lens);

// Order-resolved transmitted fields by grating phase stepping: element n
// holds diffraction order n - steps/2 + 1 (orders are known modulo steps)
std::vector<ComplexField2D> diffraction_orders(ComplexField2D const& field,
                                               BinaryForkHologram hologram,
                                               int steps = 8);

// Matched quadrupole strength for an HG-like field of Gaussian width w
double matched_astigmatism(double width);

//---------------------------------------------------------------------------//
}  // namespace evx
