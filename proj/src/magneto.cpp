//---------------------------------------------------------------------------//
//! \file magneto.cpp
//---------------------------------------------------------------------------//
#include "evx/magneto.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "evx/error.hpp"
#include "evx/units.hpp"

namespace evx
{
namespace
{
using units::pi;

int transverse_order(LandauSpec const& s)
{
    return 2 * s.n + std::abs(s.l) + 1;
}

void check_spec(LandauSpec const& s)
{
    if (s.n < 0)
    {
        fail(ErrorKind::domain, "radial index must be non-negative");
    }
    if (!(s.env.magnetic_length > 0) || !(s.env.larmor_length > 0))
    {
        fail(ErrorKind::domain, "magnetic environment is not initialized");
    }
}

bool same_environment(MagneticEnvironment const& a,
                      MagneticEnvironment const& b)
{
    return a.field == b.field && a.larmor == b.larmor
           && a.larmor_length == b.larmor_length
           && a.state.wavenumber == b.state.wavenumber;
}

// Apply exp(i phase(k^2)) in the spectral domain
template<class F>
void spectral_multiply(ComplexField2D& f, F&& phase_of_k2)
{
    auto const& g = f.grid;
    auto kx = fft_wavenumbers(g.nx, g.dx);
    auto ky = fft_wavenumbers(g.ny, g.dy);
    fft2(f.samples, g.nx, g.ny, FftDirection::forward);
    double norm = 1.0 / static_cast<double>(g.size());
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            double k2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
            f(ix, iy) *= std::polar(norm, phase_of_k2(k2));
        }
    }
    fft2(f.samples, g.nx, g.ny, FftDirection::backward);
}

// Least-squares slope of y against x
double fit_slope(std::span<double const> x, std::span<double const> y)
{
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

double wrap(double a, double period)
{
    return std::remainder(a, period);
}

// hbar/m for the environment's mass choice [nm^2/s]
double hbar_over_mass(MagneticEnvironment const& env)
{
    return env.larmor * env.magnetic_length * env.magnetic_length / 2;
}
}  // namespace

//---------------------------------------------------------------------------//
MagneticEnvironment magnetic_environment(double field,
                                         ElectronState const& state,
                                         bool gamma_mass)
{
    if (!(field != 0) || !std::isfinite(field))
    {
        fail(ErrorKind::domain, "magnetic field must be nonzero");
    }
    if (!(state.wavenumber > 0))
    {
        fail(ErrorKind::domain, "electron state has no momentum");
    }
    MagneticEnvironment env;
    env.field = field;
    env.sigma = field > 0 ? 1 : -1;
    env.state = state;
    env.magnetic_length
        = 2 * std::sqrt(units::hbar_over_e / std::abs(field));
    env.larmor = units::larmor_per_tesla * std::abs(field);
    if (gamma_mass)
    {
        env.larmor /= state.gamma;
    }
    env.cyclotron = 2 * env.larmor;
    env.larmor_length = state.velocity() / env.larmor;
    return env;
}

int LandauSpec::landau_index() const
{
    return n + (std::abs(l) + env.sigma * l) / 2;
}

//---------------------------------------------------------------------------//
ComplexField2D landau_field(LandauSpec const& spec, Grid const& grid)
{
    check_spec(spec);
    grid.validate();
    double w = spec.env.magnetic_length;
    double window = std::min(grid.nx * grid.dx, grid.ny * grid.dy);
    double need = 6 * w * std::sqrt(spec.n + std::abs(spec.l) + 1.0);
    if (window < need)
    {
        fail(ErrorKind::sampling,
             "grid window " + std::to_string(window) + " nm below "
                 + std::to_string(need) + " nm for the Landau state");
    }
    double pitch = std::max(grid.dx, grid.dy);
    if (pitch > w / (2 * std::sqrt(double(transverse_order(spec)))))
    {
        fail(ErrorKind::sampling, "grid pitch too coarse for the Landau state");
    }
    ComplexField2D f(grid, spec.env.state);
    f.fill([&](double x, double y) {
        return laguerre_gauss_profile(
            spec.l, spec.n, std::hypot(x, y), std::atan2(y, x), w);
    });
    f.normalize();
    return f;
}

DensityCurrent kinetic_current(ComplexField2D const& field,
                               MagneticEnvironment const& env)
{
    auto dc = density_current(field);
    double a = env.sigma * 2 / (env.magnetic_length * env.magnetic_length);
    auto const& g = field.grid;
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            auto i = g.index(ix, iy);
            dc.jx[i] -= a * g.y(iy) * dc.rho[i];
            dc.jy[i] += a * g.x(ix) * dc.rho[i];
        }
    }
    return dc;
}

LandauEnergies landau_energies(LandauSpec const& spec, double kz)
{
    check_spec(spec);
    double quantum = units::hbar * spec.env.larmor;
    LandauEnergies e;
    e.parallel = units::hbar_c * units::hbar_c * kz * kz
                 / (2 * units::electron_mass);
    e.zeeman = spec.env.sigma * quantum * spec.l;
    e.gouy = quantum * transverse_order(spec);
    e.landau_index = spec.landau_index();
    e.transverse = quantum * (2 * e.landau_index + 1);
    return e;
}

double kinetic_oam(ComplexField2D const& field, MagneticEnvironment const& env)
{
    auto dc = kinetic_current(field, env);
    auto const& g = field.grid;
    double num = 0, den = 0;
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            auto i = g.index(ix, iy);
            num += g.x(ix) * dc.jy[i] - g.y(iy) * dc.jx[i];
            den += dc.rho[i];
        }
    }
    return num / den;
}

KineticOam kinetic_oam(LandauSpec const& spec, Grid const& grid)
{
    KineticOam r;
    r.closed_form = spec.l + spec.env.sigma * transverse_order(spec);
    r.grid = kinetic_oam(landau_field(spec, grid), spec.env);
    r.magnetic_moment = -r.closed_form;
    if (std::abs(r.grid - r.closed_form) > 5e-3 * std::abs(r.closed_form))
    {
        fail(ErrorKind::consistency,
             "kinetic OAM quadrature " + std::to_string(r.grid)
                 + " disagrees with " + std::to_string(r.closed_form));
    }
    return r;
}

//---------------------------------------------------------------------------//
LzgPhase lzg_phase(LandauSpec const& spec, double z)
{
    check_spec(spec);
    LzgPhase p;
    p.delta_kz = -(spec.env.sigma * spec.l + transverse_order(spec))
                 / spec.env.larmor_length;
    p.phase = p.delta_kz * z;
    return p;
}

ComplexField2D propagate_superposition(std::span<LandauComponent const> parts,
                                       double z,
                                       Grid const& grid)
{
    if (parts.empty())
    {
        fail(ErrorKind::domain, "empty superposition");
    }
    for (auto const& c : parts)
    {
        if (!same_environment(c.spec.env, parts.front().spec.env))
        {
            fail(ErrorKind::domain, "components live in different fields");
        }
    }
    ComplexField2D out(grid, parts.front().spec.env.state, z);
    for (auto const& c : parts)
    {
        auto f = landau_field(c.spec, grid);
        cplx a = c.amplitude * std::polar(1.0, lzg_phase(c.spec, z).phase);
        for (std::size_t i = 0; i < f.samples.size(); ++i)
        {
            out.samples[i] += a * f.samples[i];
        }
    }
    return out;
}

ComplexField2D propagate_in_field(ComplexField2D field,
                                  MagneticEnvironment const& env,
                                  double z,
                                  int steps)
{
    if (steps < 1)
    {
        fail(ErrorKind::domain, "need at least one step");
    }
    if (field.domain != Domain::real)
    {
        fail(ErrorKind::domain, "split-step works on real-space fields");
    }
    double wm2 = env.magnetic_length * env.magnetic_length;
    double zm = env.larmor_length;
    // Paraxial wavenumber that makes w_m the oscillator width
    double k = 2 * zm / wm2;
    double dz = z / steps;
    auto const& g = field.grid;
    std::vector<cplx> half(g.size());
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            double r2 = g.x(ix) * g.x(ix) + g.y(iy) * g.y(iy);
            half[g.index(ix, iy)] = std::polar(1.0, -r2 * dz / (2 * wm2 * zm));
        }
    }
    for (int s = 0; s < steps; ++s)
    {
        for (std::size_t i = 0; i < half.size(); ++i)
        {
            field.samples[i] *= half[i];
        }
        spectral_multiply(field, [&](double k2) { return -k2 * dz / (2 * k); });
        for (std::size_t i = 0; i < half.size(); ++i)
        {
            field.samples[i] *= half[i];
        }
    }
    field = rotate(std::move(field), env.sigma * z / zm);
    field.z += z;
    return field;
}

//---------------------------------------------------------------------------//
double pattern_angle(ComplexField2D const& field, int fold, double radius)
{
    if (fold < 1)
    {
        fail(ErrorKind::domain, "pattern fold must be positive");
    }
    double pitch = std::min(field.grid.dx, field.grid.dy);
    int m = std::max(64 * fold, static_cast<int>(8 * pi * radius / pitch));
    cplx c = 0;
    for (int j = 0; j < m; ++j)
    {
        double phi = 2 * pi * j / m;
        double I = std::norm(interpolate(field, radius * std::cos(phi),
                                         radius * std::sin(phi)));
        c += I * std::polar(1.0, -fold * phi);
    }
    if (std::abs(c) == 0)
    {
        fail(ErrorKind::measurement, "no azimuthal modulation on the ring");
    }
    return -std::arg(c) / fold;
}

double brightest_radius(ComplexField2D const& field)
{
    auto const& g = field.grid;
    double pitch = std::min(g.dx, g.dy);
    int bins = static_cast<int>(g.half_width() / pitch);
    std::vector<double> sum(bins, 0.0);
    std::vector<int> count(bins, 0);
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            int b = static_cast<int>(std::hypot(g.x(ix), g.y(iy)) / pitch);
            if (b < bins)
            {
                sum[b] += std::norm(field(ix, iy));
                ++count[b];
            }
        }
    }
    int best = 0;
    double peak = -1;
    for (int b = 0; b < bins; ++b)
    {
        double avg = count[b] ? sum[b] / count[b] : 0;
        if (avg > peak)
        {
            peak = avg;
            best = b;
        }
    }
    return (best + 0.5) * pitch;
}

RotationFit measure_rotation(std::span<ComplexField2D const> fields,
                             std::span<double const> z,
                             int fold)
{
    if (fields.size() != z.size() || z.size() < 2)
    {
        fail(ErrorKind::domain, "need at least two planes with matching z");
    }
    RotationFit fit;
    fit.fold = fold;
    fit.z.assign(z.begin(), z.end());
    double radius = brightest_radius(fields.front());
    double period = 2 * pi / fold;
    double a0 = pattern_angle(fields.front(), fold, radius);
    double prev = 0;
    for (auto const& f : fields)
    {
        double a = pattern_angle(f, fold, radius) - a0;
        // Continuity from the previous plane
        a = prev + wrap(a - prev, period);
        fit.angle.push_back(a);
        prev = a;
    }
    fit.slope = fit_slope(fit.z, fit.angle);
    return fit;
}

RotationFit measure_rotation(std::span<LandauComponent const> parts,
                             std::span<double const> z,
                             Grid const& grid)
{
    int fold = 0;
    for (auto const& a : parts)
    {
        for (auto const& b : parts)
        {
            fold = std::gcd(fold, std::abs(a.spec.l - b.spec.l));
        }
    }
    if (fold == 0)
    {
        fail(ErrorKind::measurement,
             "superposition of equal charges has no rotating pattern");
    }
    std::vector<ComplexField2D> fields;
    fields.reserve(z.size());
    for (double zi : z)
    {
        fields.push_back(propagate_superposition(parts, zi, grid));
    }
    return measure_rotation(fields, z, fold);
}

//---------------------------------------------------------------------------//
double mean_angular_velocity(ComplexField2D const& field,
                             MagneticEnvironment const& env)
{
    auto dc = kinetic_current(field, env);
    auto const& g = field.grid;
    auto integrand = [&](int ix, int iy) {
        auto i = g.index(ix, iy);
        double x = g.x(ix), y = g.y(iy);
        return (x * dc.jy[i] - y * dc.jx[i]) / (x * x + y * y);
    };
    double num = 0, den = 0;
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            den += dc.rho[g.index(ix, iy)];
            if (ix == g.nx / 2 && iy == g.ny / 2)
            {
                // Axis node: mean of the four neighbours
                num += 0.25
                       * (integrand(ix - 1, iy) + integrand(ix + 1, iy)
                          + integrand(ix, iy - 1) + integrand(ix, iy + 1));
                continue;
            }
            num += integrand(ix, iy);
        }
    }
    return hbar_over_mass(env) * num / den;
}

double mean_angular_velocity(LandauSpec const& spec, Grid const& grid)
{
    check_spec(spec);
    int branch = spec.l == 0 ? 1 : (spec.env.sigma * spec.l > 0 ? 2 : 0);
    double closed = spec.env.sigma * spec.env.larmor * branch;
    double numeric = mean_angular_velocity(landau_field(spec, grid), spec.env);
    if (std::abs(numeric - closed) > 1e-2 * spec.env.larmor)
    {
        fail(ErrorKind::consistency,
             "angular velocity quadrature " + std::to_string(numeric)
                 + " disagrees with " + std::to_string(closed));
    }
    return closed;
}

//---------------------------------------------------------------------------//
// SEMICLASSICAL DYNAMICS
//---------------------------------------------------------------------------//
namespace
{
Vec3 cross(Vec3 const& a, Vec3 const& b)
{
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

double dot(Vec3 const& a, Vec3 const& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(Vec3 const& a)
{
    return std::sqrt(dot(a, a));
}

struct Derivative
{
    Vec3 r, p, L;
};

Derivative centroid_rates(SemiclassicalState const& s,
                          UniformFields const& f)
{
    // q E / hbar with q = -|e|, E in V/nm
    Vec3 kick;
    for (int i = 0; i < 3; ++i)
    {
        kick[i] = -f.electric[i] * units::ev / units::hbar;
    }
    // |e| B / m_e = 2 Omega_L per tesla
    double qm = -2 * units::larmor_per_tesla;
    Vec3 pxb = cross(s.p, f.magnetic);
    Vec3 lxb = cross(s.L, f.magnetic);
    double p = norm(s.p);
    double p2 = p * p;
    double helicity = dot(s.L, s.p) / p;
    Vec3 torque = cross(kick, s.p);
    Vec3 precess = cross(torque, s.L);

    Derivative d;
    for (int i = 0; i < 3; ++i)
    {
        d.p[i] = kick[i] + qm * pxb[i];
        d.r[i] = units::hbar_over_me * s.p[i]
                 + helicity * torque[i] / (p2 * p);
        d.L[i] = -precess[i] / p2 + 0.5 * qm * lxb[i];
    }
    return d;
}

SemiclassicalState advance(SemiclassicalState const& s,
                           Derivative const& d,
                           double h)
{
    SemiclassicalState o = s;
    o.t += h;
    for (int i = 0; i < 3; ++i)
    {
        o.r[i] += h * d.r[i];
        o.p[i] += h * d.p[i];
        o.L[i] += h * d.L[i];
    }
    return o;
}
}  // namespace

std::vector<SemiclassicalState>
integrate_semiclassical(SemiclassicalState const& initial,
                        UniformFields const& fields,
                        double duration,
                        double step,
                        int samples)
{
    if (!(duration >= 0) || !(step > 0) || samples < 1)
    {
        fail(ErrorKind::domain, "invalid duration, step or sample count");
    }
    double p = norm(initial.p);
    if (!(p > 0))
    {
        fail(ErrorKind::domain, "centroid momentum must be nonzero");
    }
    double b = norm(fields.magnetic);
    if (b > 0)
    {
        double period = 2 * pi / (2 * units::larmor_per_tesla * b);
        if (step > period / 200)
        {
            fail(ErrorKind::stability,
                 "step exceeds 1/200 of the cyclotron period");
        }
    }
    double kick = norm(fields.electric) * units::ev / units::hbar;
    if (kick * step > 1e-3 * p)
    {
        fail(ErrorKind::stability, "electric impulse per step too large");
    }

    auto nsteps = static_cast<long>(std::ceil(duration / step));
    double h = nsteps ? duration / nsteps : 0;
    long stride = std::max(1L, nsteps / samples);
    std::vector<SemiclassicalState> out{initial};
    SemiclassicalState s = initial;
    for (long i = 1; i <= nsteps; ++i)
    {
        auto k1 = centroid_rates(s, fields);
        auto k2 = centroid_rates(advance(s, k1, h / 2), fields);
        auto k3 = centroid_rates(advance(s, k2, h / 2), fields);
        auto k4 = centroid_rates(advance(s, k3, h), fields);
        Derivative d;
        for (int j = 0; j < 3; ++j)
        {
            d.r[j] = (k1.r[j] + 2 * k2.r[j] + 2 * k3.r[j] + k4.r[j]) / 6;
            d.p[j] = (k1.p[j] + 2 * k2.p[j] + 2 * k3.p[j] + k4.p[j]) / 6;
            d.L[j] = (k1.L[j] + 2 * k2.L[j] + 2 * k3.L[j] + k4.L[j]) / 6;
        }
        s = advance(s, d, h);
        s.t = initial.t + i * h;
        if (i % stride == 0 || i == nsteps)
        {
            out.push_back(s);
        }
    }
    return out;
}

double rotation_rate(std::span<SemiclassicalState const> trajectory,
                     bool of_momentum)
{
    if (trajectory.size() < 2)
    {
        fail(ErrorKind::domain, "need at least two samples");
    }
    std::vector<double> t, a;
    double prev = 0;
    for (auto const& s : trajectory)
    {
        auto const& v = of_momentum ? s.p : s.L;
        double ang = std::atan2(v[1], v[0]);
        if (!a.empty())
        {
            ang = prev + wrap(ang - prev, 2 * pi);
        }
        t.push_back(s.t);
        a.push_back(ang);
        prev = ang;
    }
    return fit_slope(t, a);
}

//---------------------------------------------------------------------------//
// MONOPOLE
//---------------------------------------------------------------------------//
double monopole_oam_shift(double l_in, double alpha)
{
    return l_in + alpha;
}

MonopoleOracle monopole_oracle(double alpha,
                               ElectronState const& state,
                               double impact_parameter)
{
    double k = state.wavenumber;
    if (!(k > 0))
    {
        fail(ErrorKind::domain, "electron state has no momentum");
    }
    double r0 = impact_parameter > 0 ? impact_parameter : 100 / k;
    if (r0 < 1 / k)
    {
        fail(ErrorKind::domain,
             "impact parameter below the de Broglie scale; choose larger r0");
    }

    // y = (r, u): position and unit direction, evolved in path length
    using State = std::array<double, 6>;
    auto rhs = [&](State const& y, State& dy, double) {
        Vec3 r{y[0], y[1], y[2]};
        Vec3 u{y[3], y[4], y[5]};
        double rr = norm(r);
        Vec3 f = cross(u, r);
        double c = alpha / (2 * k * rr * rr * rr);
        for (int i = 0; i < 3; ++i)
        {
            dy[i] = u[i];
            dy[3 + i] = c * f[i];
        }
    };

    double half = 1000 * r0;
    State y{r0, 0, -half, 0, 0, 1};
    double closest = r0;
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(
        1e-12, 1e-12, ode::runge_kutta_dopri5<State>{});
    ode::integrate_adaptive(
        stepper, rhs, y, 0.0, 2 * half, r0 / 10,
        [&](State const& s, double) {
            closest = std::min(closest, std::hypot(s[0], s[1], s[2]));
        });
    if (closest < 0.5 * r0)
    {
        fail(ErrorKind::domain,
             "trajectory approaches the monopole; choose larger r0");
    }

    MonopoleOracle o;
    o.impact_parameter = r0;
    double lz = k * (y[0] * y[4] - y[1] * y[3]);
    o.p_phi_gain = lz / r0;
    o.expected = alpha / r0;
    o.relative_error = alpha != 0
                           ? std::abs(o.p_phi_gain - o.expected)
                                 / std::abs(o.expected)
                           : std::abs(o.p_phi_gain) * r0;
    return o;
}

//---------------------------------------------------------------------------//
}  // namespace evx
