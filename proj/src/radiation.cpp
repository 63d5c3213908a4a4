//---------------------------------------------------------------------------//
//! \file radiation.cpp
//---------------------------------------------------------------------------//
#include "evx/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "evx/error.hpp"
#include "evx/units.hpp"

namespace evx
{
namespace
{
using units::pi;
using units::two_pi;

void check_config(CherenkovConfig const& c)
{
    if (!c.index)
    {
        fail(ErrorKind::validation, "Cherenkov config needs a refractive index");
    }
    if (!(c.electron.beta > 0))
    {
        fail(ErrorKind::domain, "Cherenkov electron must be moving");
    }
}

void check_cone(CherenkovConfig const& c)
{
    check_config(c);
    if (!(c.theta0 > 0) || c.theta0 >= pi / 2)
    {
        fail(ErrorKind::domain, "vortex cone angle must lie in (0, pi/2)");
    }
}

// Ridge strength B of the plane-wave distribution
double bracket(CherenkovConfig const& c, double omega, CherenkovAngle const& a)
{
    double n = c.index(omega);
    double beta = c.electron.beta;
    double e = c.electron.total_energy;
    double hw = units::hbar * omega;
    double s2 = 1 - a.cos_theta * a.cos_theta;
    return beta * s2 + hw * hw * (n * n - 1) / (2 * beta * e * e);
}

// Cosine of the azimuthal offset between photon and cone component that
// puts the pair on the ridge
double ridge_cosine(double cos_ch, double theta_k, double theta0)
{
    return (cos_ch - std::cos(theta_k) * std::cos(theta0))
           / (std::sin(theta_k) * std::sin(theta0));
}

// sin(theta_k) sin(theta0) sqrt(1 - c^2) from half-angle sines, with the
// distances to the ring edges passed in to keep them exact; 0 off the ring
double ridge_root(double theta_ch,
                  double theta0,
                  double theta_k,
                  double to_lo,
                  double to_hi)
{
    double a = (theta_ch + theta_k - theta0) / 2;
    double d = (theta_k + theta0 - theta_ch) / 2;
    (theta_ch >= theta0 ? d : a) = to_lo / 2;
    double prod = std::sin(a) * std::sin(to_hi / 2)
                  * std::sin((theta_k + theta0 + theta_ch) / 2) * std::sin(d);
    return prod > 0 ? 2 * std::sqrt(prod) : 0.0;
}

double ridge_root(double theta_ch, double theta0, double theta_k)
{
    double lo = std::abs(theta_ch - theta0);
    double hi = theta_ch + theta0;
    return ridge_root(theta_ch, theta0, theta_k, theta_k - lo, hi - theta_k);
}

double superposition_weight(VortexSuperposition const& s, double phi)
{
    auto amp = s.a1 * std::polar(1.0, s.jz1 * phi)
               + s.a2 * std::polar(1.0, s.jz2 * phi);
    double total = std::norm(s.a1) + std::norm(s.a2);
    if (s.jz1 == s.jz2)
    {
        total = std::norm(s.a1 + s.a2);
    }
    if (!(total > 0))
    {
        fail(ErrorKind::domain, "superposition has zero norm");
    }
    return std::norm(amp) / total;
}

void check_theta_k(double theta_k)
{
    if (!(theta_k > 0) || !(theta_k < pi))
    {
        fail(ErrorKind::domain, "photon polar angle must lie in (0, pi)");
    }
}
}  // namespace

RefractiveIndex constant_index(double n)
{
    if (!(n >= 1))
    {
        fail(ErrorKind::domain, "refractive index must be >= 1");
    }
    return [n](double) { return n; };
}

CherenkovAngle cherenkov_angle(CherenkovConfig const& config, double omega)
{
    check_config(config);
    if (omega < 0)
    {
        fail(ErrorKind::domain, "photon frequency must be non-negative");
    }
    CherenkovAngle a;
    double n = config.index(omega);
    double bn = config.electron.beta * n;
    if (bn <= 1)
    {
        return a;
    }
    double hw = units::hbar * omega;
    double c = 1 / bn + hw / (2 * config.electron.total_energy) * (n * n - 1) / bn;
    if (c > 1)
    {
        return a;
    }
    a.emits = true;
    a.cos_theta = c;
    a.theta = std::acos(c);
    return a;
}

double cherenkov_cutoff(CherenkovConfig const& config)
{
    check_config(config);
    double e = config.electron.total_energy;
    double beta = config.electron.beta;
    double omega = 0;
    for (int it = 0; it < 100; ++it)
    {
        double n = config.index(omega);
        if (beta * n <= 1)
        {
            return 0;
        }
        double next = 2 * e * (beta * n - 1) / (n * n - 1) / units::hbar;
        if (std::abs(next - omega) <= 1e-14 * next)
        {
            return next;
        }
        omega = next;
    }
    fail(ErrorKind::accuracy, "cutoff iteration did not settle");
}

double cherenkov_spectral_density(CherenkovConfig const& config, double omega)
{
    auto a = cherenkov_angle(config, omega);
    if (!a.emits)
    {
        return 0;
    }
    return units::alpha * bracket(config, omega, a);
}

AngularMap cherenkov_planewave(CherenkovConfig const& config,
                               std::span<double const> omegas,
                               int theta_cells)
{
    if (theta_cells < 2)
    {
        fail(ErrorKind::domain, "need at least two theta cells");
    }
    AngularMap m;
    m.linear_in_plane = true;
    m.outer.assign(omegas.begin(), omegas.end());
    double dt = pi / theta_cells;
    for (int i = 0; i < theta_cells; ++i)
    {
        m.inner.push_back((i + 0.5) * dt);
    }
    m.value.assign(m.outer.size() * m.inner.size(), 0.0);
    for (std::size_t io = 0; io < omegas.size(); ++io)
    {
        auto a = cherenkov_angle(config, omegas[io]);
        if (!a.emits)
        {
            continue;
        }
        int cell = std::min(static_cast<int>(a.theta / dt), theta_cells - 1);
        double dcos = std::cos(cell * dt) - std::cos((cell + 1) * dt);
        m.value[io * m.inner.size() + cell]
            = units::alpha * bracket(config, omegas[io], a) / (two_pi * dcos);
    }
    return m;
}

double cherenkov_vortex_density(CherenkovConfig const& config,
                                double omega,
                                double theta_k)
{
    check_cone(config);
    check_theta_k(theta_k);
    auto a = cherenkov_angle(config, omega);
    if (!a.emits)
    {
        return 0;
    }
    double root = ridge_root(a.theta, config.theta0, theta_k);
    if (root == 0)
    {
        return 0;
    }
    return units::alpha * bracket(config, omega, a) / (2 * pi * pi * root);
}

double cherenkov_vortex_integral(CherenkovConfig const& config,
                                 double omega,
                                 double theta_lo,
                                 double theta_hi)
{
    check_cone(config);
    auto a = cherenkov_angle(config, omega);
    if (!a.emits)
    {
        return 0;
    }
    double lo = std::abs(a.theta - config.theta0);
    double hi = std::min(a.theta + config.theta0, pi);
    double mid = (lo + hi) / 2;
    double half = (hi - lo) / 2;
    double from = std::max(theta_lo, lo);
    double to = std::min(theta_hi, hi);
    if (!(to > from))
    {
        return 0;
    }
    auto t_of = [&](double th) {
        if (th <= lo)
        {
            return 0.0;
        }
        if (th >= hi)
        {
            return pi;
        }
        return std::acos(std::clamp((mid - th) / half, -1.0, 1.0));
    };
    double b = bracket(config, omega, a);
    // theta = mid - half cos t absorbs the inverse-square-root edges
    auto integrand = [&](double t) {
        double th = mid - half * std::cos(t);
        double sh = std::sin(t / 2);
        double ch = std::cos(t / 2);
        double root = ridge_root(
            a.theta, config.theta0, th, 2 * half * sh * sh, 2 * half * ch * ch);
        if (root == 0)
        {
            return 0.0;
        }
        // 2 pi sin(theta) dtheta times the density
        return units::alpha * b * half * std::sin(t) * std::sin(th) / (pi * root);
    };
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 61>::integrate(
        integrand, t_of(from), t_of(to), 15, 1e-13);
}

double cherenkov_backward_fraction(CherenkovConfig const& config, double omega)
{
    double total = cherenkov_vortex_integral(config, omega);
    if (!(total > 0))
    {
        return 0;
    }
    return cherenkov_vortex_integral(config, omega, pi / 2, pi) / total;
}

double cherenkov_superposition_density(CherenkovConfig const& config,
                                       VortexSuperposition const& state,
                                       double omega,
                                       double theta_k,
                                       double phi_k)
{
    check_cone(config);
    check_theta_k(theta_k);
    auto a = cherenkov_angle(config, omega);
    if (!a.emits)
    {
        return 0;
    }
    double root = ridge_root(a.theta, config.theta0, theta_k);
    if (root == 0)
    {
        return 0;
    }
    double c = ridge_cosine(a.cos_theta, theta_k, config.theta0);
    double d = std::acos(std::clamp(c, -1.0, 1.0));
    double w = superposition_weight(state, phi_k + d)
               + superposition_weight(state, phi_k - d);
    return units::alpha * bracket(config, omega, a) * w / (4 * pi * pi * root);
}

AngularMap cherenkov_vortex_map(CherenkovConfig const& config,
                                VortexSuperposition const& state,
                                double omega,
                                std::span<double const> thetas,
                                int phi_cells,
                                int nodes)
{
    check_cone(config);
    if (nodes < 720)
    {
        fail(ErrorKind::sampling, "cone quadrature needs at least 720 nodes");
    }
    if (thetas.size() < 2 || phi_cells < 1)
    {
        fail(ErrorKind::domain, "map needs two theta nodes and a phi cell");
    }
    AngularMap m;
    m.outer.assign(thetas.begin(), thetas.end());
    for (int j = 0; j < phi_cells; ++j)
    {
        m.inner.push_back((j + 0.5) * two_pi / phi_cells);
    }
    m.value.assign(m.outer.size() * m.inner.size(), 0.0);
    auto a = cherenkov_angle(config, omega);
    if (!a.emits)
    {
        return m;
    }
    double ridge = units::alpha * bracket(config, omega, a) / two_pi;
    double width = std::sin(a.theta) * std::abs(thetas[1] - thetas[0]);
    double st0 = std::sin(config.theta0);
    double ct0 = std::cos(config.theta0);

    std::vector<double> phip(nodes), weight(nodes);
    for (int p = 0; p < nodes; ++p)
    {
        phip[p] = two_pi * p / nodes;
        weight[p] = superposition_weight(state, phip[p]);
    }
    for (std::size_t it = 0; it < thetas.size(); ++it)
    {
        double sk = std::sin(thetas[it]);
        double ck = std::cos(thetas[it]);
        for (std::size_t jp = 0; jp < m.inner.size(); ++jp)
        {
            double sum = 0;
            for (int p = 0; p < nodes; ++p)
            {
                double ckp = sk * st0 * std::cos(m.inner[jp] - phip[p]) + ck * ct0;
                if (std::abs(ckp - a.cos_theta) < width / 2)
                {
                    sum += weight[p];
                }
            }
            m.value[it * m.inner.size() + jp] = ridge * sum / (nodes * width);
        }
    }
    return m;
}

//---------------------------------------------------------------------------//
namespace
{
void check_transition(TransitionConfig const& c)
{
    if (c.spin != 0 && std::abs(c.spin) != 0.5)
    {
        fail(ErrorKind::domain, "spin must be -1/2, 0 or +1/2");
    }
    if (c.photon_energy < 0)
    {
        fail(ErrorKind::domain, "photon energy must be non-negative");
    }
    if (!(c.electron.gamma >= 1))
    {
        fail(ErrorKind::domain, "transition electron state is not set");
    }
}

// Product Gauss-Legendre over theta in [t0, t1] and phi in [p0, p1]
template<class F>
double sphere_patch(F&& f, double t0, double t1, double p0, double p1)
{
    using boost::math::quadrature::gauss;
    return gauss<double, 40>::integrate(
        [&](double th) {
            return std::sin(th)
                   * gauss<double, 40>::integrate(
                       [&](double ph) { return f(th, ph); }, p0, p1);
        },
        t0,
        t1);
}
}  // namespace

double transition_moment(TransitionConfig const& config)
{
    check_transition(config);
    return (config.l + 2 * config.spin) / config.electron.gamma;
}

double transition_epsilon(TransitionConfig const& config)
{
    check_transition(config);
    double g = config.electron.gamma;
    return std::abs(config.l + 2 * config.spin) * config.photon_energy
           / (2 * g * g * config.electron.rest_energy);
}

GeometryWeight unit_geometry()
{
    return [](double, double, double) { return 1.0; };
}

double transition_geometry_factor(double incidence, GeometryWeight const& g)
{
    double sp = std::sin(incidence);
    auto triple = [&](double th, double ph) {
        return -sp * std::sin(th) * std::sin(ph);
    };
    auto weighted = [&](double th, double ph) {
        return g(incidence, th, ph) * triple(th, ph);
    };
    auto plain = [&](double th, double ph) { return g(incidence, th, ph); };
    double left = sphere_patch(weighted, pi / 2, pi, 0, pi);
    double right = sphere_patch(weighted, pi / 2, pi, -pi, 0);
    double norm = sphere_patch(plain, pi / 2, pi, -pi, pi);
    if (!(norm > 0))
    {
        fail(ErrorKind::undefined, "geometry weight integrates to zero");
    }
    return (left - right) / norm;
}

double transition_full_sphere(double incidence, GeometryWeight const& g)
{
    double sp = std::sin(incidence);
    return sphere_patch(
        [&](double th, double ph) {
            return g(incidence, th, ph) * -sp * std::sin(th) * std::sin(ph);
        },
        0,
        pi,
        -pi,
        pi);
}

double transition_asymmetry(TransitionConfig const& config,
                            GeometryWeight const& g)
{
    double moment = transition_moment(config);
    if (moment == 0)
    {
        return 0;
    }
    double sign = moment > 0 ? 1 : -1;
    return sign * transition_epsilon(config)
           * transition_geometry_factor(config.incidence, g);
}

//---------------------------------------------------------------------------//
}  // namespace evx
