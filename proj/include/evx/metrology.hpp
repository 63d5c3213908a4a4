//---------------------------------------------------------------------------//
//! \file evx/metrology.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <map>
#include <vector>

#include "evx/modes.hpp"
#include "evx/optics.hpp"

namespace evx
{
//---------------------------------------------------------------------------//
//! Power fractions per azimuthal index about an axis
struct OamSpectrum
{
    std::map<int, double> weights;  //!< sums to 1 over the kept range
    double mean_lz{0};  //!< sum l w_l [hbar]
    double out_of_range{0};  //!< fraction of power with |l| > l_max
    Vec2 axis;  //!< [grid units of the field]
    int modulus{0};  //!< nonzero: weights are only known modulo this

    double weight(int l) const;
    int dominant() const;
};

struct DecomposeOptions
{
    int l_max{16};
    //! Radial sample spacing as a fraction of the grid pitch
    double radial_step{0.5};
    //! Largest tolerated power fraction outside the inscribed disc
    double truncation_tolerance{1e-3};
};

// Radially integrated azimuthal Fourier power about an axis
OamSpectrum azimuthal_decompose(ComplexField2D const& field,
                                Vec2 axis = {},
                                DecomposeOptions const& opts = {});

//---------------------------------------------------------------------------//
struct ForkReadout
{
    int charge{0};
    int order{0};  //!< diffraction order N holding the non-vortex spot
    bool reduced_confidence{false};  //!< doughnut-radius fit used
    //! Center intensity over order power, indexed by N + 3
    std::array<double, 7> center_intensity{};
    std::array<double, 7> rms_radius{};  //!< [nm^-1], indexed by N + 3
};

// Diffract through a probe fork and find the order without a dark core
ForkReadout fork_readout(ComplexField2D const& field,
                         BinaryForkHologram const& probe);

//---------------------------------------------------------------------------//
struct ChargeReadout
{
    int magnitude{0};
    int sign{0};  //!< -1, 0 or +1

    int charge() const { return sign * magnitude; }
};

struct TriangleAperture
{
    double side{0};  //!< [nm]
    double rotation{0};  //!< vertex direction relative to +y [rad]
};

struct SpotOptions
{
    double smoothing{2};  //!< Gaussian sigma [pixels]
    double threshold{0.1};  //!< spot floor relative to the brightest spot
};

struct TriangleReadout
{
    ChargeReadout readout;
    int spots{0};
    //! Normalized third moment of the spots; opposite in sign to l
    double orientation{0};
};

TriangleReadout triangular_aperture_count(ComplexField2D const& field,
                                          TriangleAperture const& triangle,
                                          SpotOptions const& opts = {});

//---------------------------------------------------------------------------//
struct KnifeEdgeShift
{
    Vec2 displacement;  //!< far-field centroid shift [nm^-1]
    double along_normal{0};
    double perpendicular{0};  //!< along z x n; sign equals sgn(l)
};

KnifeEdgeShift knife_edge_shift(ComplexField2D const& field,
                                double edge_azimuth);

//---------------------------------------------------------------------------//
struct LobeReadout
{
    ChargeReadout readout;
    int lobes{0};
    double orientation{0};  //!< principal axis minus lens axis [rad]
};

LobeReadout astigmatic_lobes(ComplexField2D const& field,
                             AstigmaticLens const& lens,
                             SpotOptions const& opts = {});

//---------------------------------------------------------------------------//
struct MpiLayout
{
    int pinholes{7};
    double radius{0};  //!< circle radius [nm]
    double diameter{0};  //!< pinhole diameter [nm]
};

// Pinhole mask for a layout on a grid (real domain)
std::vector<cplx> mpi_mask(MpiLayout const& layout, Grid const& grid);

OamSpectrum mpi_spectrum(ComplexField2D const& field,
                         MpiLayout const& layout);

//---------------------------------------------------------------------------//
struct SpiralImages
{
    std::vector<double> rho_plus;
    std::vector<double> rho_minus;
    std::vector<double> sum;
    std::vector<double> diff;
};

SpiralImages spiral_phase_images(ComplexField2D const& exit_wave,
                                 int stop_pixels = 3);

//---------------------------------------------------------------------------//
// Incoherent source-size blur: Gaussian convolution of an intensity map
std::vector<double> source_size_blur(std::vector<double> const& intensity,
                                     Grid const& grid,
                                     double sigma);

// Gaussian-smoothed copy, sigma in pixels
std::vector<double> smooth(std::vector<double> const& image,
                           Grid const& grid,
                           double sigma_pixels);

// Regional maxima above a fraction of the global maximum, as node indices
std::vector<std::size_t> find_spots(std::vector<double> const& image,
                                    Grid const& grid,
                                    double threshold);

//---------------------------------------------------------------------------//
}  // namespace evx
