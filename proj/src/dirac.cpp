//---------------------------------------------------------------------------//
//! \file dirac.cpp
//---------------------------------------------------------------------------//
#include "evx/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "evx/error.hpp"
#include "evx/units.hpp"

namespace evx
{
namespace
{
using units::pi;

double bessel_j(int l, double x)
{
    double v = std::cyl_bessel_j(static_cast<double>(std::abs(l)), x);
    return (l < 0 && (l % 2)) ? -v : v;
}

cplx i_pow(int n)
{
    static cplx const table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((n % 4) + 4) % 4];
}

//! Spin projection carried by component c
double component_spin(int c)
{
    return (c % 2 == 0) ? 0.5 : -0.5;
}

void check_spin(double s)
{
    if (s != 0.5 && s != -0.5)
    {
        fail(ErrorKind::domain, "spin projection must be +-1/2");
    }
}

//! Constant prefactor of each component (Bessel order from the winding)
std::array<cplx, 4> component_amplitudes(DiracBesselSpec const& spec)
{
    double e = spec.state.total_energy;
    double m = spec.state.rest_energy;
    double ep = std::sqrt(e + m);
    double em = std::sqrt(e - m);
    double theta = spec.cone_angle();
    std::array<cplx, 4> a{};
    if (spec.basis == SpinBasis::fixed_spin)
    {
        if (spec.spin > 0)
        {
            a[0] = ep;
            a[2] = em * std::cos(theta);
            a[3] = cplx(0, 1) * std::sin(theta) * em;
        }
        else
        {
            a[1] = ep;
            a[3] = -em * std::cos(theta);
            a[2] = cplx(0, -1) * std::sin(theta) * em;
        }
        return a;
    }
    double chi = spec.spin;
    for (int c = 0; c < 4; ++c)
    {
        double s = component_spin(c);
        int dn = static_cast<int>(std::lround(chi - s));
        double d = (s == chi) ? std::cos(theta / 2)
                              : -2 * s * std::sin(theta / 2);
        double u = (c < 2) ? ep : 2 * chi * em;
        a[c] = i_pow(dn) * d * u;
    }
    return a;
}

double taper_radius(Grid const& g)
{
    return 0.75 * g.half_width();
}
}  // namespace

//---------------------------------------------------------------------------//
double DiracBesselSpec::cone_angle() const
{
    return std::asin(kappa / std::hypot(kappa, kz));
}

DiracBesselSpec DiracBesselSpec::make(ElectronState const& state,
                                      double kappa,
                                      int l,
                                      SpinBasis basis,
                                      double spin)
{
    check_spin(spin);
    double k = state.wavenumber;
    if (!(kappa >= 0) || !(kappa < k))
    {
        fail(ErrorKind::domain, "need 0 <= kappa < k");
    }
    DiracBesselSpec s;
    s.kappa = kappa;
    s.kz = std::sqrt(k * k - kappa * kappa);
    s.l = l;
    s.basis = basis;
    s.spin = spin;
    s.state = state;
    return s;
}

SpinorField2D::SpinorField2D(Grid g, ElectronState s)
    : grid(g), state(s)
{
    for (auto& c : components)
    {
        c.assign(grid.size(), cplx(0));
    }
}

std::vector<double> SpinorField2D::density() const
{
    std::vector<double> rho(grid.size(), 0.0);
    for (auto const& c : components)
    {
        for (std::size_t i = 0; i < rho.size(); ++i)
        {
            rho[i] += std::norm(c[i]);
        }
    }
    return rho;
}

double SpinorField2D::probability() const
{
    double sum = 0;
    for (double v : density())
    {
        sum += v;
    }
    return sum * grid.cell_area();
}

ComplexField2D SpinorField2D::component(int c) const
{
    if (c < 0 || c > 3)
    {
        fail(ErrorKind::domain, "component index out of range");
    }
    ComplexField2D f(grid, state, z);
    f.samples = components[c];
    return f;
}

int component_winding(DiracBesselSpec const& spec, int c)
{
    return spec.l + static_cast<int>(std::lround(spec.spin - component_spin(c)));
}

SpinorField2D dirac_bessel(DiracBesselSpec const& spec, Grid const& grid)
{
    check_spin(spec.spin);
    grid.validate();
    double pitch = std::max(grid.dx, grid.dy);
    if (!(pitch < pi / (4 * spec.kappa)))
    {
        fail(ErrorKind::sampling,
             "Dirac-Bessel field needs pitch < "
                 + std::to_string(pi / (4 * spec.kappa)) + " nm");
    }
    auto amp = component_amplitudes(spec);
    SpinorField2D out(grid, spec.state);
    double r0 = taper_radius(grid);
    double r1 = 0.98 * grid.half_width();
    for (int iy = 0; iy < grid.ny; ++iy)
    {
        for (int ix = 0; ix < grid.nx; ++ix)
        {
            double x = grid.x(ix), y = grid.y(iy);
            double r = std::hypot(x, y);
            double phi = std::atan2(y, x);
            double w = radial_taper(r, r0, r1);
            for (int c = 0; c < 4; ++c)
            {
                if (amp[c] == cplx(0))
                {
                    continue;
                }
                int n = component_winding(spec, c);
                out.components[c][grid.index(ix, iy)]
                    = amp[c] * w * bessel_j(n, spec.kappa * r)
                      * std::polar(1.0, n * phi);
            }
        }
    }
    double scale = 1 / std::sqrt(out.probability());
    for (auto& c : out.components)
    {
        for (auto& v : c)
        {
            v *= scale;
        }
    }
    return out;
}

double soi_parameter(DiracBesselSpec const& spec)
{
    double k2 = spec.kappa * spec.kappa + spec.kz * spec.kz;
    return (1 - spec.state.rest_energy / spec.state.total_energy)
           * spec.kappa * spec.kappa / k2;
}

SpinorAngularMomentum angular_momentum(SpinorField2D const& field)
{
    auto const& g = field.grid;
    double lz = 0, sz = 0, norm = 0;
    for (int c = 0; c < 4; ++c)
    {
        auto f = field.component(c);
        auto grad = spectral_gradient(f);
        double s = component_spin(c);
        for (int iy = 0; iy < g.ny; ++iy)
        {
            for (int ix = 0; ix < g.nx; ++ix)
            {
                auto i = g.index(ix, iy);
                cplx psi = f.samples[i];
                cplx lpsi = cplx(0, -1)
                            * (g.x(ix) * grad.dy[i] - g.y(iy) * grad.dx[i]);
                lz += std::real(std::conj(psi) * lpsi);
                sz += s * std::norm(psi);
                norm += std::norm(psi);
            }
        }
    }
    return {lz / norm, sz / norm};
}

SpinOrbitExpectations sam_oam_expectations(DiracBesselSpec const& spec,
                                           Grid const& grid)
{
    if (spec.basis != SpinBasis::fixed_spin)
    {
        fail(ErrorKind::domain, "closed forms hold in the fixed-spin basis");
    }
    double lambda = soi_parameter(spec);
    SpinOrbitExpectations e;
    e.orbital = spec.l + lambda * spec.spin;
    e.spin = spec.spin - lambda * spec.spin;
    auto am = angular_momentum(dirac_bessel(spec, grid));
    e.grid_orbital = am.orbital;
    e.grid_spin = am.spin;
    e.magnetic_moment = -(spec.state.rest_energy / spec.state.total_energy)
                        * (e.orbital + 2 * e.spin);
    double scale = std::max({std::abs(e.orbital), std::abs(e.spin), 0.5});
    if (std::abs(e.grid_orbital - e.orbital) > 5e-3 * scale
        || std::abs(e.grid_spin - e.spin) > 5e-3 * scale)
    {
        fail(ErrorKind::consistency,
             "spinor quadrature (" + std::to_string(e.grid_orbital) + ", "
                 + std::to_string(e.grid_spin) + ") disagrees with closed form");
    }
    return e;
}

std::vector<double> spin_dependent_density(DiracBesselSpec const& spec,
                                           std::span<double const> radii)
{
    check_spin(spec.spin);
    double w_main = 0, w_side = 0;
    if (spec.basis == SpinBasis::fixed_spin)
    {
        double lambda = soi_parameter(spec);
        w_main = 1 - lambda / 2;
        w_side = lambda / 2;
    }
    else
    {
        double h = std::sin(spec.cone_angle() / 2);
        w_main = 1 - h * h;
        w_side = h * h;
    }
    int side = spec.l + static_cast<int>(std::lround(2 * spec.spin));
    std::vector<double> rho;
    rho.reserve(radii.size());
    for (double r : radii)
    {
        double a = bessel_j(spec.l, spec.kappa * r);
        double b = bessel_j(side, spec.kappa * r);
        rho.push_back(w_main * a * a + w_side * b * b);
    }
    return rho;
}

double first_ring_radius(DiracBesselSpec const& spec)
{
    // Dense scan up to the second zero region of the higher order, then a
    // golden-section polish
    double limit = (std::abs(spec.l) + 6.0) / spec.kappa;
    int n = 4000;
    std::vector<double> r(n + 1);
    for (int i = 0; i <= n; ++i)
    {
        r[i] = limit * i / n;
    }
    auto rho = spin_dependent_density(spec, r);
    int best = -1;
    for (int i = 1; i < n; ++i)
    {
        if (rho[i] >= rho[i - 1] && rho[i] > rho[i + 1])
        {
            best = i;
            break;
        }
    }
    if (best < 0)
    {
        fail(ErrorKind::measurement, "no radial maximum found");
    }
    double a = r[best - 1], b = r[best + 1];
    auto f = [&](double x) {
        double v[1] = {x};
        return spin_dependent_density(spec, v)[0];
    };
    double const g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 100; ++it)
    {
        double c = b - g * (b - a), d = a + g * (b - a);
        if (f(c) > f(d))
        {
            b = d;
        }
        else
        {
            a = c;
        }
    }
    return (a + b) / 2;
}

//---------------------------------------------------------------------------//
VolkovShift volkov_bessel_shift(DiracBesselSpec const& spec,
                                LaserWave const& wave,
                                double t)
{
    if (!(wave.omega > 0) || wave.cycles < 0)
    {
        fail(ErrorKind::domain, "laser frequency must be positive");
    }
    double e = spec.state.total_energy;
    double pzc = spec.kz * units::hbar_c;
    // |e| A0 c [keV] with A0 = E0 / omega
    double ea = wave.field_amplitude * units::ev * units::c_light / wave.omega;

    VolkovShift v;
    v.eta = ea / spec.state.rest_energy;
    v.x = ea * ea / (2 * e * (e + pzc));
    v.spin_factor = (1 - v.x) / (1 + v.x);
    v.mean_spin = spec.spin * v.spin_factor;
    v.phase_rate = wave.omega * (1 + pzc / e);

    double xi = v.phase_rate * t;
    double integral = 0;
    if (wave.cycles == 0)
    {
        integral = std::sin(xi);
    }
    else
    {
        double span = 2 * pi * wave.cycles;
        double upper = std::clamp(xi, 0.0, span);
        auto shape = [&](double s) {
            double env = std::sin(s / (2 * wave.cycles));
            return env * env * std::cos(s);
        };
        if (upper > 0)
        {
            integral = boost::math::quadrature::gauss_kronrod<double, 61>::
                integrate(shape, 0.0, upper, 15, 1e-13);
        }
    }
    double amplitude = ea * units::c_light / (wave.omega * (e + pzc));
    v.displacement.x = amplitude * integral * std::cos(wave.polarization_angle);
    v.displacement.y = amplitude * integral * std::sin(wave.polarization_angle);
    return v;
}

std::vector<double> volkov_bessel_density(DiracBesselSpec const& spec,
                                          Vec2 displacement,
                                          Grid const& grid)
{
    std::vector<double> r(grid.size());
    for (int iy = 0; iy < grid.ny; ++iy)
    {
        for (int ix = 0; ix < grid.nx; ++ix)
        {
            r[grid.index(ix, iy)] = std::hypot(grid.x(ix) - displacement.x,
                                               grid.y(iy) - displacement.y);
        }
    }
    return spin_dependent_density(spec, r);
}

//---------------------------------------------------------------------------//
}  // namespace evx
