//---------------------------------------------------------------------------//
//! \file evx/modes.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "evx/field.hpp"

namespace evx
{
//---------------------------------------------------------------------------//
enum class ModeKind
{
    bessel,
    laguerre_gauss,
    aperture_limited,
};

/*!
 * Analytic description of a free scalar vortex mode.
 *
 * Only the parameters of the selected family are read: kappa for Bessel,
 * waist and radial_index for Laguerre-Gauss, kappa_max for the
 * aperture-limited mode.
 */
struct ModeSpec
{
    ModeKind kind{ModeKind::laguerre_gauss};
    int l{0};
    int radial_index{0};
    double kappa{0};  //!< [nm^-1]
    double waist{0};  //!< [nm]
    double kappa_max{0};  //!< [nm^-1]
    cplx amplitude{1, 0};

    static ModeSpec bessel(double kappa, int l);
    static ModeSpec laguerre_gauss(double waist, int l, int n = 0);
    static ModeSpec aperture_limited(double kappa_max, int l);
};

//! Placement and truncation of synthesized modes
struct SynthesisOptions
{
    double x0{0};  //!< mode axis [nm]
    double y0{0};
    //! Radial window for non-normalizable families, as fractions of the
    //! grid half-width: flat to taper_start, smooth roll-off to taper_end
    double taper_start{0.75};
    double taper_end{0.98};
};

// Longitudinal wavenumber of a Bessel mode [nm^-1]
double bessel_kz(ElectronState const& state, double kappa);

// LG beam parameters at distance z from the waist
struct GaussianBeamParams
{
    double rayleigh_range;  //!< z_R = k w0^2 / 2
    double width;  //!< w(z)
    double curvature_radius;  //!< R(z), infinite at the waist
    double gouy_angle;  //!< zeta(z) = atan(z / z_R)
};
GaussianBeamParams gaussian_beam(double k, double waist, double z);

// Unnormalized LG profile at (r, phi) for width w
cplx laguerre_gauss_profile(int l, int n, double r, double phi, double w);

// Sample a mode at plane z, scaled to unit probability
ComplexField2D synthesize(ModeSpec const& spec,
                          Grid const& grid,
                          ElectronState const& state,
                          double z = 0,
                          SynthesisOptions const& opts = {});

// Coherent superposition: sum of amplitude * (unit-probability mode),
// then rescaled to unit probability
ComplexField2D synthesize(std::span<ModeSpec const> specs,
                          Grid const& grid,
                          ElectronState const& state,
                          double z = 0,
                          SynthesisOptions const& opts = {});

//---------------------------------------------------------------------------//
// DENSITY, CURRENT AND OBSERVABLES
//---------------------------------------------------------------------------//
//! Spectral gradient of a field
struct FieldGradient
{
    std::vector<cplx> dx;
    std::vector<cplx> dy;
};
FieldGradient spectral_gradient(ComplexField2D const& field);

/*!
 * Probability density and transverse current.
 *
 * The current is Im(psi* grad psi), i.e. j in units of hbar/m_e.
 */
struct DensityCurrent
{
    std::vector<double> rho;
    std::vector<double> jx;
    std::vector<double> jy;
};
DensityCurrent density_current(ComplexField2D const& field);

struct Vec2
{
    double x{0};
    double y{0};
};

//! Per-electron expectation values; angular momenta in hbar
struct BeamObservables
{
    double canonical_oam{0};  //!< <psi| -i d/dphi |psi>
    double circulation_oam{0};  //!< sum r j_phi / sum rho
    double operator_residual{0};  //!< imaginary part of the operator mean
    Vec2 centroid;  //!< [nm]
    Vec2 mean_momentum;  //!< [hbar nm^-1]
    double extrinsic_oam{0};  //!< (<r> x <p>)_z
    double intrinsic_oam{0};  //!< canonical minus extrinsic
    double magnetic_moment{0};  //!< M_z [Bohr magnetons], free space
    std::optional<double> gouy_phase;  //!< set when the mode is known
    bool boundary_leakage{false};  //!< edge amplitude above 1e-8 of max
};

BeamObservables observables(ComplexField2D const& field);

// Same, attaching the Gouy phase of the analytic mode
BeamObservables observables(ComplexField2D const& field,
                            ModeSpec const& spec);

// Total Gouy phase through a focus [rad]
double gouy_phase(int l, int n);

//---------------------------------------------------------------------------//
// FOURIER HELPERS
//---------------------------------------------------------------------------//
// Transform between centered real-space samples and centered spectrum
// samples; forward includes dx dy / 2pi so that the result samples the
// unitary continuous transform.
void centered_transform(ComplexField2D& field, FftDirection dir);

//---------------------------------------------------------------------------//
}  // namespace evx
