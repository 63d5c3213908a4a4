//---------------------------------------------------------------------------//
//! \file evx/field.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "evx/fft.hpp"
#include "evx/kinematics.hpp"

namespace evx
{
//---------------------------------------------------------------------------//
/*!
 * Regular sampling of the transverse plane.
 *
 * Node (ix, iy) sits at x = (ix - nx/2) dx, y = (iy - ny/2) dy, so the
 * center node is exactly on the optical axis. Both sizes must be powers of
 * two.
 */
struct Grid
{
    int nx{};
    int ny{};
    double dx{};
    double dy{};

    static Grid square(int n, double pitch) { return {n, n, pitch, pitch}; }

    double x(int ix) const { return (ix - nx / 2) * dx; }
    double y(int iy) const { return (iy - ny / 2) * dy; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t index(int ix, int iy) const
    {
        return static_cast<std::size_t>(iy) * nx + ix;
    }
    double cell_area() const { return dx * dy; }
    //! Half-width of the window along the narrower axis
    double half_width() const;

    void validate() const;
};

enum class Domain
{
    real,  //!< samples of psi(x, y), pitch in nm
    reciprocal,  //!< samples of the angular spectrum, pitch in nm^-1
};

//---------------------------------------------------------------------------//
/*!
 * Sampled complex transverse wavefunction with its physical context.
 *
 * Probability is tracked, not forced to unity: operations that rescale say
 * so explicitly.
 */
struct ComplexField2D
{
    Grid grid;
    std::vector<cplx> samples;
    ElectronState state;
    double z{0};
    Domain domain{Domain::real};

    ComplexField2D() = default;
    ComplexField2D(Grid g, ElectronState s, double z_plane = 0);

    cplx& operator()(int ix, int iy) { return samples[grid.index(ix, iy)]; }
    cplx operator()(int ix, int iy) const
    {
        return samples[grid.index(ix, iy)];
    }

    //! Sum of |psi|^2 times the cell area
    double probability() const;
    //! Scale to unit probability; returns the applied factor
    double normalize();
    double max_abs() const;
    //! Largest |psi| on the outermost ring of nodes relative to the maximum
    double boundary_ratio() const;

    // Fill from a callable of (x, y)
    void fill(std::function<cplx(double, double)> const& f);
};

// RMS of the difference of two fields on the same grid
double rms_difference(ComplexField2D const& a, ComplexField2D const& b);

// Smooth radial apodization: 1 inside r0, 0 beyond r1
double radial_taper(double r, double r0, double r1);

// Bicubic (Keys) interpolation at a physical point; edges clamp
cplx interpolate(ComplexField2D const& field, double x, double y);

// Rotate counterclockwise about the grid center by three FFT shears
ComplexField2D rotate(ComplexField2D field, double angle);

//---------------------------------------------------------------------------//
}  // namespace evx
