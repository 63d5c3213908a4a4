//---------------------------------------------------------------------------//
//! \file scattering.cpp
//---------------------------------------------------------------------------//
#include "evx/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evx/error.hpp"
#include "evx/units.hpp"

namespace evx
{
namespace
{
using units::pi;
using units::two_pi;

double dot(Vec3 const& a, Vec3 const& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(Vec3 const& a)
{
    return std::sqrt(dot(a, a));
}

Vec3 neg(Vec3 const& a)
{
    return {-a[0], -a[1], -a[2]};
}

double signed_bessel(int l, double x)
{
    double v = std::cyl_bessel_j(static_cast<double>(std::abs(l)), x);
    return (l < 0 && (l % 2)) ? -v : v;
}

struct Spectrum
{
    std::vector<double> px;
    std::vector<double> py;
    std::vector<cplx> value;  // times dp^2 / 2pi
    double k{0};
};

Spectrum probe_spectrum(ComplexField2D const& probe)
{
    if (probe.domain != Domain::real)
    {
        fail(ErrorKind::domain, "kinematic probe must be a real-space field");
    }
    ComplexField2D spec = probe;
    centered_transform(spec, FftDirection::forward);
    auto const& g = spec.grid;
    double scale = g.dx * g.dy / two_pi;
    double cutoff = 1e-16 * spec.max_abs();
    Spectrum s;
    s.k = probe.state.wavenumber;
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            cplx v = spec(ix, iy);
            if (std::abs(v) <= cutoff)
            {
                continue;
            }
            s.px.push_back(g.x(ix));
            s.py.push_back(g.y(iy));
            s.value.push_back(v * scale);
        }
    }
    return s;
}

cplx convolve(Spectrum const& s, PotentialModel const& model, Vec3 const& k_out)
{
    cplx sum{0, 0};
    double qz = k_out[2] - s.k;
    for (std::size_t i = 0; i < s.value.size(); ++i)
    {
        sum += s.value[i]
               * potential_fourier(model,
                                   {k_out[0] - s.px[i], k_out[1] - s.py[i], qz});
    }
    return sum;
}

// Periodic trapezoid average of fn over [0, 2pi), doubling to convergence
template<class F>
cplx periodic_average(F&& fn, char const* what)
{
    double mean_abs = 0;
    auto eval = [&](int n) {
        cplx sum{0, 0};
        double mag = 0;
        for (int i = 0; i < n; ++i)
        {
            cplx v = fn(two_pi * i / n);
            sum += v;
            mag += std::abs(v);
        }
        mean_abs = mag / n;
        return sum / static_cast<double>(n);
    };
    int n = 64;
    cplx prev = eval(n);
    while (n < (1 << 16))
    {
        n *= 2;
        cplx next = eval(n);
        double diff = std::abs(next - prev);
        if (diff <= 1e-10 * std::abs(next) || diff <= 1e-13 * mean_abs)
        {
            return next;
        }
        prev = next;
    }
    fail(ErrorKind::accuracy,
         std::string(what) + ": cone quadrature did not converge");
}

}  // namespace

//---------------------------------------------------------------------------//
cplx potential_fourier(PotentialModel const& model, Vec3 const& q)
{
    return std::visit(
        [&q](auto const& m) -> cplx {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScreenedCoulomb>)
            {
                double mu = 1 / m.screening_length;
                return m.charge / (dot(q, q) + mu * mu);
            }
            else if constexpr (std::is_same_v<T, PointLattice>)
            {
                cplx sum{0, 0};
                for (auto const& s : m.sites)
                {
                    sum += s.form_factor
                           * std::polar(1.0, -dot(q, s.position));
                }
                return sum;
            }
            else
            {
                return m.transform(q);
            }
        },
        model);
}

double friedel_violation(PotentialModel const& model, std::span<Vec3 const> qs)
{
    double worst = 0;
    double peak = 0;
    for (auto const& q : qs)
    {
        cplx a = potential_fourier(model, q);
        cplx b = potential_fourier(model, neg(q));
        worst = std::max(worst, std::abs(a - std::conj(b)));
        peak = std::max({peak, std::abs(a), std::abs(b)});
    }
    return peak > 0 ? worst / peak : 0;
}

cplx kinematic_amplitude(ComplexField2D const& probe,
                         PotentialModel const& model,
                         Vec3 const& k_out)
{
    return convolve(probe_spectrum(probe), model, k_out);
}

cplx mode_value(ModeSpec const& spec, double x, double y)
{
    double r = std::hypot(x, y);
    double phi = std::atan2(y, x);
    switch (spec.kind)
    {
        case ModeKind::bessel:
            return spec.amplitude * signed_bessel(spec.l, spec.kappa * r)
                   * std::polar(1.0, spec.l * phi);
        case ModeKind::laguerre_gauss:
            return spec.amplitude
                   * laguerre_gauss_profile(
                       spec.l, spec.radial_index, r, phi, spec.waist);
        default:
            fail(ErrorKind::domain,
                 "analytic probe values exist for Bessel and LG modes only");
    }
}

cplx kinematic_amplitude(ModeSpec const& probe,
                         double k,
                         PointLattice const& lattice,
                         Vec3 const& k_out)
{
    cplx sum{0, 0};
    for (auto const& s : lattice.sites)
    {
        auto const& r = s.position;
        double phase = (k - k_out[2]) * r[2] - k_out[0] * r[0]
                       - k_out[1] * r[1];
        sum += s.form_factor * mode_value(probe, r[0], r[1])
               * std::polar(1.0, phase);
    }
    return sum;
}

std::vector<double> transfer_pattern(ComplexField2D const& probe,
                                     PotentialModel const& model,
                                     std::span<Vec3 const> qs)
{
    auto spec = probe_spectrum(probe);
    std::vector<double> out;
    out.reserve(qs.size());
    for (auto const& q : qs)
    {
        out.push_back(std::norm(
            convolve(spec, model, {-q[0], -q[1], spec.k - q[2]})));
    }
    return out;
}

std::vector<double> transfer_pattern(ModeSpec const& probe,
                                     double k,
                                     PointLattice const& lattice,
                                     std::span<Vec3 const> qs)
{
    std::vector<double> out;
    out.reserve(qs.size());
    for (auto const& q : qs)
    {
        out.push_back(std::norm(
            kinematic_amplitude(probe, k, lattice, {-q[0], -q[1], k - q[2]})));
    }
    return out;
}

double centrosymmetry_violation(std::span<double const> at_plus_q,
                                std::span<double const> at_minus_q)
{
    if (at_plus_q.size() != at_minus_q.size())
    {
        fail(ErrorKind::consistency, "pattern sizes differ");
    }
    double worst = 0;
    double peak = 0;
    for (std::size_t i = 0; i < at_plus_q.size(); ++i)
    {
        worst = std::max(worst, std::abs(at_plus_q[i] - at_minus_q[i]));
        peak = std::max({peak, at_plus_q[i], at_minus_q[i]});
    }
    if (!(peak > 0))
    {
        fail(ErrorKind::undefined, "pattern is identically zero");
    }
    return worst / peak;
}

PointLattice chiral_two_site(double radius, double pitch, int chirality)
{
    if (chirality != 1 && chirality != -1)
    {
        fail(ErrorKind::domain, "chirality must be +1 or -1");
    }
    double a = chirality * two_pi / 3;
    PointLattice lat;
    lat.sites.push_back({{radius, 0, 0}, 1});
    lat.sites.push_back(
        {{radius * std::cos(a), radius * std::sin(a), pitch / 3}, 1});
    return lat;
}

bool chirality_rule(int l, int chirality, int laue_zone, int screw_order)
{
    if (screw_order < 1)
    {
        fail(ErrorKind::domain, "screw order must be >= 1");
    }
    int r = (l - chirality * laue_zone) % screw_order;
    return r == 0;
}

//---------------------------------------------------------------------------//
DipoleTransition dipole_transition(int l,
                                   int delta_m,
                                   double theta,
                                   double theta0,
                                   TransitionGeometry geometry,
                                   double theta_e)
{
    if (!(theta0 > 0) || theta0 >= pi / 2 || theta < 0 || theta >= pi / 2)
    {
        fail(ErrorKind::domain, "dipole angles must lie in [0, pi/2)");
    }
    if (!(theta_e > 0))
    {
        fail(ErrorKind::domain, "energy-loss angle must be positive");
    }
    DipoleTransition t;
    t.l_out = l - delta_m;
    t.dipole_allowed = std::abs(delta_m) <= 1;
    t.forward_allowed = t.dipole_allowed && delta_m == l;
    if (!t.dipole_allowed)
    {
        return t;
    }

    double e2 = theta_e * theta_e;
    auto form = [&](double qx, double qy) -> cplx {
        double q2 = qx * qx + qy * qy;
        if (delta_m == 0)
        {
            return theta_e / (q2 + e2);
        }
        return cplx{qx, -delta_m * qy} / (q2 + e2);
    };
    double cone = std::sin(theta0);
    double plane = std::sin(theta);
    if (geometry == TransitionGeometry::vortex_to_plane)
    {
        t.amplitude = periodic_average(
            [&](double phi) {
                return std::polar(1.0, l * phi)
                       * form(cone * std::cos(phi) - plane,
                              cone * std::sin(phi));
            },
            "dipole transition");
    }
    else
    {
        t.amplitude = periodic_average(
            [&](double phi) {
                return std::polar(1.0, -t.l_out * phi)
                       * form(plane - cone * std::cos(phi),
                              -cone * std::sin(phi));
            },
            "dipole transition");
    }
    return t;
}

//---------------------------------------------------------------------------//
Vec3 BesselCone::momentum(double phi) const
{
    return {kappa * std::cos(phi),
            kappa * std::sin(phi),
            std::sqrt(k * k - kappa * kappa)};
}

Vec3 direction(double k, double theta, double phi)
{
    return {k * std::sin(theta) * std::cos(phi),
            k * std::sin(theta) * std::sin(phi),
            k * std::cos(theta)};
}

cplx fixed_target_amplitude(BesselCone const& beam,
                            PlaneAmplitude const& f,
                            Vec2 impact,
                            Vec3 const& k_out)
{
    if (!(beam.kappa >= 0) || beam.kappa >= beam.k)
    {
        fail(ErrorKind::domain, "cone kappa must lie in [0, k)");
    }
    return periodic_average(
        [&](double phi) {
            Vec3 kin = beam.momentum(phi);
            double bk = impact.x * kin[0] + impact.y * kin[1];
            return std::polar(1.0, beam.l * phi - bk) * f(kin, k_out);
        },
        "fixed-target amplitude");
}

double impact_averaged_intensity(BesselCone const& beam,
                                 PlaneAmplitude const& f,
                                 Vec3 const& k_out,
                                 double half_extent,
                                 int n)
{
    if (n < 1)
    {
        fail(ErrorKind::domain, "impact grid needs at least one node");
    }
    double sum = 0;
    for (int i = 0; i < n; ++i)
    {
        for (int j = 0; j < n; ++j)
        {
            double bx = n == 1 ? 0 : half_extent * (2.0 * i / (n - 1) - 1);
            double by = n == 1 ? 0 : half_extent * (2.0 * j / (n - 1) - 1);
            sum += std::norm(fixed_target_amplitude(beam, f, {bx, by}, k_out));
        }
    }
    return sum / (n * n);
}

double single_vortex_cross_section(double k,
                                   double kappa,
                                   PlaneCrossSection const& dsigma,
                                   int nodes)
{
    if (!(kappa >= 0) || kappa >= k || nodes < 1)
    {
        fail(ErrorKind::domain, "cone kappa must lie in [0, k)");
    }
    BesselCone cone{k, kappa, 0};
    double sum = 0;
    for (int i = 0; i < nodes; ++i)
    {
        sum += dsigma(cone.momentum(two_pi * i / nodes));
    }
    return sum / nodes;
}

//---------------------------------------------------------------------------//
double coulomb_phase(double theta, double alpha, double phi0)
{
    if (!(theta > 0) || theta >= pi / 2)
    {
        fail(ErrorKind::domain, "Coulomb phase needs 0 < theta < pi/2");
    }
    return phi0 + 2 * alpha * std::log(1 / theta);
}

namespace
{
double longitudinal(CollidingBeam const& b, double kappa, double mass)
{
    double p2 = b.energy * b.energy - mass * mass;
    double kz2 = p2 - kappa * kappa;
    if (!(kz2 > 0))
    {
        fail(ErrorKind::domain, "beam kappa exceeds its momentum");
    }
    return b.direction * std::sqrt(kz2);
}

// Final momentum of particle 1 from energy conservation, forward root
bool final_momentum(CollisionSetup const& s,
                    Vec3 const& total,
                    double etot,
                    Vec3& k1_out)
{
    double a = s.k1_out_perp;
    double ax = a * std::cos(s.k1_out_azimuth);
    double ay = a * std::sin(s.k1_out_azimuth);
    double kz = total[2];
    double c = etot * etot - dot(total, total)
               + 2 * (total[0] * ax + total[1] * ay);
    double m2a2 = s.mass * s.mass + a * a;
    double qa = 4 * (etot * etot - kz * kz);
    double qb = -4 * c * kz;
    double qc = 4 * etot * etot * m2a2 - c * c;
    double disc = qb * qb - 4 * qa * qc;
    if (disc < 0)
    {
        return false;
    }
    double sq = std::sqrt(disc);
    for (double z : {(-qb + sq) / (2 * qa), (-qb - sq) / (2 * qa)})
    {
        if (z * s.beam1.direction <= 0 || c + 2 * kz * z <= 0)
        {
            continue;
        }
        k1_out = {ax, ay, z};
        return std::sqrt(m2a2 + z * z) < etot;
    }
    return false;
}

double gaussian_node(CollidingBeam const& b, int n, int i, double& weight)
{
    if (n == 1 || b.kappa_width == 0)
    {
        weight = 1;
        return b.kappa;
    }
    double h = 6 * b.kappa_width / n;
    double u = -3 * b.kappa_width + (i + 0.5) * h;
    weight = std::exp(-0.5 * u * u / (b.kappa_width * b.kappa_width));
    return b.kappa + u;
}
}  // namespace

cplx standin_amplitude(CollisionSetup const& setup, Vec3 const& k1, Vec3 const& k2)
{
    Vec3 total{k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]};
    double m2 = setup.mass * setup.mass;
    double e1 = std::sqrt(m2 + dot(k1, k1));
    double etot = e1 + std::sqrt(m2 + dot(k2, k2));
    Vec3 k1p;
    if (!final_momentum(setup, total, etot, k1p))
    {
        return {0, 0};
    }
    double e1p = std::sqrt(m2 + dot(k1p, k1p));
    Vec3 q{k1[0] - k1p[0], k1[1] - k1p[1], k1[2] - k1p[2]};
    double de = e1 - e1p;
    double q2 = dot(q, q) - de * de;
    double mu = setup.screening;
    double mag = 1 / (q2 + mu * mu);
    double phase = setup.phase0;
    if (setup.alpha != 0)
    {
        double c = std::clamp(dot(k1, k1p) / (norm(k1) * norm(k1p)), -1.0, 1.0);
        phase = coulomb_phase(std::acos(c), setup.alpha, setup.phase0);
    }
    return std::polar(mag, phase);
}

TriangleAngles triangle_angles(double kappa1, double kappa2, double k_perp)
{
    TriangleAngles t;
    if (!(kappa1 > 0) || !(kappa2 > 0) || !(k_perp > 0)
        || k_perp < std::abs(kappa1 - kappa2) || k_perp > kappa1 + kappa2)
    {
        return t;
    }
    auto angle = [](double adj1, double adj2, double opp) {
        double c = (adj1 * adj1 + adj2 * adj2 - opp * opp) / (2 * adj1 * adj2);
        return std::acos(std::clamp(c, -1.0, 1.0));
    };
    t.delta1 = angle(kappa1, k_perp, kappa2);
    t.delta2 = angle(kappa2, k_perp, kappa1);
    t.twice_area = kappa1 * kappa2 * std::sin(t.delta1 + t.delta2);
    t.valid = t.twice_area > 0;
    return t;
}

double vortex_vortex_point(CollisionSetup const& setup,
                           double kappa1,
                           double kappa2,
                           double kx,
                           double ky)
{
    double kp = std::hypot(kx, ky);
    auto tri = triangle_angles(kappa1, kappa2, kp);
    if (!tri.valid)
    {
        return 0;
    }
    double phik = std::atan2(ky, kx);
    double z1 = longitudinal(setup.beam1, kappa1, setup.mass);
    double z2 = longitudinal(setup.beam2, kappa2, setup.mass);
    auto config = [&](double phi1, double phi2) {
        Vec3 k1{kappa1 * std::cos(phi1), kappa1 * std::sin(phi1), z1};
        Vec3 k2{kappa2 * std::cos(phi2), kappa2 * std::sin(phi2), z2};
        return standin_amplitude(setup, k1, k2);
    };
    cplx ma = config(phik + tri.delta1, phik - tri.delta2);
    cplx mb = config(phik - tri.delta1, phik + tri.delta2);
    double chi = 2 * (setup.beam1.jz * tri.delta1 + setup.beam2.jz * tri.delta2);
    double value = std::norm(ma) + std::norm(mb)
                   + 2 * std::real(ma * std::conj(mb) * std::polar(1.0, chi));
    return value / tri.twice_area;
}

KDistribution vortex_vortex_distribution(CollisionSetup const& setup,
                                         double half_extent,
                                         int n)
{
    if (n < 2 || !(half_extent > 0))
    {
        fail(ErrorKind::domain, "K grid needs n >= 2 and a positive extent");
    }
    if (setup.beam1.kappa_width < 0 || setup.beam2.kappa_width < 0)
    {
        fail(ErrorKind::domain, "smearing widths must be non-negative");
    }
    KDistribution d;
    d.singular_endpoints = setup.beam1.kappa_width == 0
                           || setup.beam2.kappa_width == 0;
    for (int i = 0; i < n; ++i)
    {
        double v = half_extent * (2.0 * i - (n - 1)) / (n - 1);
        d.kx.push_back(v);
        d.ky.push_back(v);
    }
    int n1 = setup.beam1.kappa_width > 0 ? setup.smearing_nodes : 1;
    int n2 = setup.beam2.kappa_width > 0 ? setup.smearing_nodes : 1;
    std::vector<double> kap1(n1), w1(n1), kap2(n2), w2(n2);
    double norm1 = 0;
    double norm2 = 0;
    for (int i = 0; i < n1; ++i)
    {
        kap1[i] = gaussian_node(setup.beam1, n1, i, w1[i]);
        norm1 += w1[i];
    }
    for (int i = 0; i < n2; ++i)
    {
        kap2[i] = gaussian_node(setup.beam2, n2, i, w2[i]);
        norm2 += w2[i];
    }
    d.value.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int iy = 0; iy < n; ++iy)
    {
        for (int ix = 0; ix < n; ++ix)
        {
            double sum = 0;
            for (int a = 0; a < n1; ++a)
            {
                for (int b = 0; b < n2; ++b)
                {
                    sum += w1[a] * w2[b]
                           * vortex_vortex_point(
                               setup, kap1[a], kap2[b], d.kx[ix], d.ky[iy]);
                }
            }
            d.value[static_cast<std::size_t>(iy) * n + ix]
                = sum / (norm1 * norm2);
        }
    }
    return d;
}

double updown_asymmetry(KDistribution const& dist, double axis_azimuth)
{
    double ux = std::cos(axis_azimuth);
    double uy = std::sin(axis_azimuth);
    double up = 0;
    double down = 0;
    for (std::size_t iy = 0; iy < dist.ky.size(); ++iy)
    {
        for (std::size_t ix = 0; ix < dist.kx.size(); ++ix)
        {
            double side = ux * dist.ky[iy] - uy * dist.kx[ix];
            if (std::abs(side)
                <= 1e-12 * (std::abs(dist.kx[ix]) + std::abs(dist.ky[iy])))
            {
                continue;
            }
            double v = dist(ix, iy);
            if (side > 0)
            {
                up += v;
            }
            else if (side < 0)
            {
                down += v;
            }
        }
    }
    if (!(up + down != 0))
    {
        fail(ErrorKind::undefined, "distribution has zero total weight");
    }
    return (up - down) / (up + down);
}

//---------------------------------------------------------------------------//
}  // namespace evx
