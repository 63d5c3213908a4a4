//---------------------------------------------------------------------------//
//! \file evx/magneto.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "evx/field.hpp"
#include "evx/modes.hpp"

namespace evx
{
//---------------------------------------------------------------------------//
/*!
 * Uniform longitudinal magnetic field acting on an electron beam.
 *
 * Rotation rates are magnitudes; the sense of rotation about +z is sigma
 * (electrons circulate counterclockwise for B > 0). The Larmor frequency is
 * Omega_L = |e B| / 2m with the rest mass unless gamma_mass is set.
 */
struct MagneticEnvironment
{
    double field{0};  //!< B [T], signed
    int sigma{1};  //!< sgn(B)
    double magnetic_length{0};  //!< w_m = 2 sqrt(hbar / |e B|) [nm]
    double larmor{0};  //!< |Omega_L| [rad/s]
    double cyclotron{0};  //!< |Omega_c| = 2 |Omega_L| [rad/s]
    double larmor_length{0};  //!< z_m = v / |Omega_L| [nm]
    ElectronState state;
};

MagneticEnvironment magnetic_environment(double field,
                                         ElectronState const& state,
                                         bool gamma_mass = false);

struct LandauSpec
{
    int l{0};
    int n{0};
    MagneticEnvironment env;

    //! N_L = n + (|l| + sigma l) / 2
    int landau_index() const;
};

//---------------------------------------------------------------------------//
// Landau eigenfield: LG profile with width w_m, unit probability
ComplexField2D landau_field(LandauSpec const& spec, Grid const& grid);

// Kinetic current Im(psi* grad psi) + sigma (2 / w_m^2) (-y, x) rho, in units
// of hbar/m_e (multiply by hbar_over_me for nm/s times density)
DensityCurrent kinetic_current(ComplexField2D const& field,
                               MagneticEnvironment const& env);

struct LandauEnergies
{
    double parallel{0};  //!< E_par = (hbar k_z)^2 / 2m [keV]
    double zeeman{0};  //!< E_Z = sigma hbar |Omega_L| l [keV]
    double gouy{0};  //!< E_G = hbar |Omega_L| (2n + |l| + 1) [keV]
    double transverse{0};  //!< E_Z + E_G = hbar |Omega_L| (2 N_L + 1) [keV]
    int landau_index{0};
};

LandauEnergies landau_energies(LandauSpec const& spec, double kz = 0);

struct KineticOam
{
    double closed_form{0};  //!< l + sigma (2n + |l| + 1) [hbar]
    double grid{0};  //!< m_e int r j_phi / int rho [hbar]
    double magnetic_moment{0};  //!< M_z = -closed_form [Bohr magnetons]
};

// Closed form with a grid cross-check; consistency error beyond 0.5%
KineticOam kinetic_oam(LandauSpec const& spec, Grid const& grid);

// Grid quadrature of m_e int r j_phi / int rho for any field [hbar]
double kinetic_oam(ComplexField2D const& field, MagneticEnvironment const& env);

//---------------------------------------------------------------------------//
struct LzgPhase
{
    double delta_kz{0};  //!< -[sigma l + (2n + |l| + 1)] / z_m [nm^-1]
    double phase{0};  //!< delta_kz z [rad]
};

LzgPhase lzg_phase(LandauSpec const& spec, double z);

struct LandauComponent
{
    LandauSpec spec;
    cplx amplitude{1};
};

// Coherent sum of Landau fields, each advanced by its LZG phase to z
ComplexField2D propagate_superposition(std::span<LandauComponent const> parts,
                                       double z,
                                       Grid const& grid);

// Split-step paraxial propagation in the uniform field: harmonic
// confinement by FFT steps, then the exact Zeeman rotation sigma z / z_m
ComplexField2D propagate_in_field(ComplexField2D field,
                                  MagneticEnvironment const& env,
                                  double z,
                                  int steps);

//---------------------------------------------------------------------------//
// Angle of the fold-fold intensity pattern on a ring [rad in (-pi/fold, pi/fold]]
double pattern_angle(ComplexField2D const& field, int fold, double radius);

// Radius of maximum azimuthally averaged intensity [nm]
double brightest_radius(ComplexField2D const& field);

struct RotationFit
{
    std::vector<double> z;
    std::vector<double> angle;  //!< unwrapped, relative to z = 0
    double slope{0};  //!< [rad/nm]
    int fold{0};
};

// Track a Landau superposition over z and regress its pattern angle
RotationFit measure_rotation(std::span<LandauComponent const> parts,
                             std::span<double const> z,
                             Grid const& grid);

// Same measurement on precomputed fields with a given pattern fold
RotationFit measure_rotation(std::span<ComplexField2D const> fields,
                             std::span<double const> z,
                             int fold);

// Closed form sigma |Omega_L| {0, 1, 2}; numeric oracle must agree to 1%
double mean_angular_velocity(LandauSpec const& spec, Grid const& grid);

// Numeric oracle int (j_phi / r) / int rho [rad/s]
double mean_angular_velocity(ComplexField2D const& field,
                             MagneticEnvironment const& env);

//---------------------------------------------------------------------------//
// SEMICLASSICAL DYNAMICS
//---------------------------------------------------------------------------//
using Vec3 = std::array<double, 3>;

struct UniformFields
{
    Vec3 electric{};  //!< [V/nm]
    Vec3 magnetic{};  //!< [T]
};

//! Centroid position [nm], kinetic momentum [nm^-1], intrinsic OAM [hbar]
struct SemiclassicalState
{
    double t{0};  //!< [s]
    Vec3 r{};
    Vec3 p{};
    Vec3 L{};
};

/*!
 * Fixed-step RK4 integration of the centroid equations.
 *
 * dp/dt = (q/hbar) E + (q/m) p x B, with q = -|e|
 * dr/dt = (hbar/m) p + l (dp/dt)_E x p / p^3, l = L.p / p
 * dL/dt = -[(dp/dt)_E x p] x L / p^2 + (q/2m) L x B
 *
 * The step must resolve the cyclotron period (T_c / 200) and keep the
 * electric kick per step below 1e-3 of p, else a stability error.
 */
std::vector<SemiclassicalState>
integrate_semiclassical(SemiclassicalState const& initial,
                        UniformFields const& fields,
                        double duration,
                        double step,
                        int samples = 200);

// Least-squares rotation rate of a transverse vector sequence about z
double rotation_rate(std::span<SemiclassicalState const> trajectory,
                     bool of_momentum);

//---------------------------------------------------------------------------//
// MONOPOLE
//---------------------------------------------------------------------------//
// L_out = L_in + alpha_m
double monopole_oam_shift(double l_in, double alpha);

struct MonopoleOracle
{
    double impact_parameter{0};  //!< r0 [nm]
    double p_phi_gain{0};  //!< gained azimuthal momentum [nm^-1]
    double expected{0};  //!< alpha / r0 [nm^-1]
    double relative_error{0};
};

/*!
 * Classical electron passing a monopole of strength alpha_m at impact
 * parameter r0 (default 100 / k), integrated with an adaptive ODE in path
 * length; B = -(hbar alpha / 2|e|) r / r^3 so that the OAM rises by alpha.
 */
MonopoleOracle monopole_oracle(double alpha,
                               ElectronState const& state,
                               double impact_parameter = 0);

//---------------------------------------------------------------------------//
}  // namespace evx
