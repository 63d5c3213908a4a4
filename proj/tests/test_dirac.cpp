#include <algorithm>
#include <cmath>
#include <vector>
#include <doctest.h>

#include "evx/dirac.hpp"
#include "evx/metrology.hpp"
#include "evx/units.hpp"
#include "test_util.hpp"

using namespace evx;
using units::pi;

namespace
{
auto const fast = electron_state_from_momentum(2.4 * units::electron_mass);
double const k = fast.wavenumber;

DiracBesselSpec fixed(int l, double s, double kappa = 0.7 * k,
                      ElectronState const& st = fast)
{
    return DiracBesselSpec::make(st, kappa, l, SpinBasis::fixed_spin, s);
}

DiracBesselSpec helical(int l, double chi, double kappa = 0.7 * k)
{
    return DiracBesselSpec::make(fast, kappa, l, SpinBasis::helicity, chi);
}

// Grid resolving kappa with six samples per radian of kappa r
Grid grid_for(double kappa, int n = 256)
{
    return Grid::square(n, pi / (6 * kappa));
}
}  // namespace

TEST_CASE("SOI parameter")
{
    CHECK(soi_parameter(fixed(1, 0.5)) == rel_approx(0.3).epsilon(0.01 / 0.3));
    auto tem = electron_state(300);
    double lt = soi_parameter(fixed(1, 0.5, 0.1 * tem.wavenumber, tem));
    CHECK(lt > 1e-3);
    CHECK(lt < 3e-2);
    auto slow = electron_state(1e-3);
    CHECK(soi_parameter(fixed(1, 0.5, 0.5 * slow.wavenumber, slow)) < 1e-5);

    // Monotone in kappa at fixed E, and in E at fixed kappa / k
    double prev = 0;
    for (double f : {0.1, 0.3, 0.5, 0.7, 0.9})
    {
        double l = soi_parameter(fixed(0, 0.5, f * k));
        CHECK(l > prev);
        prev = l;
    }
    prev = 0;
    for (double e : {10.0, 100.0, 300.0, 1000.0, 5000.0})
    {
        auto st = electron_state(e);
        double l = soi_parameter(fixed(0, 0.5, 0.3 * st.wavenumber, st));
        CHECK(l > prev);
        prev = l;
    }
    CHECK(throws_kind([] { fixed(0, 0.5, 1.1 * k); }, ErrorKind::domain));
    CHECK(throws_kind([] { fixed(0, 1.0); }, ErrorKind::domain));
}

TEST_CASE("each spinor component is a winding eigenmode")
{
    for (auto const& spec : {fixed(1, 0.5), fixed(-2, -0.5), helical(3, 0.5),
                             helical(-1, -0.5)})
    {
        auto g = grid_for(spec.kappa);
        auto f = dirac_bessel(spec, g);
        CHECK(f.probability() == rel_approx(1).epsilon(1e-12));
        for (int c = 0; c < 4; ++c)
        {
            auto comp = f.component(c);
            if (comp.probability() < 1e-12)
            {
                continue;
            }
            int w = component_winding(spec, c);
            double sc = (c % 2 == 0) ? 0.5 : -0.5;
            CAPTURE(c);
            CHECK(w + sc == spec.total_angular_momentum());
            auto s = azimuthal_decompose(comp);
            CHECK(s.weight(w) > 0.9999);
        }
    }
}

TEST_CASE("fixed-spin components follow the two-Bessel structure")
{
    auto spec = fixed(2, 0.5);
    auto g = grid_for(spec.kappa);
    auto f = dirac_bessel(spec, g);
    double e = fast.total_energy, m = fast.rest_energy;
    double th = spec.cone_angle();
    // Power ratios of the components
    std::array<double, 4> p{};
    for (int c = 0; c < 4; ++c)
    {
        p[c] = f.component(c).probability();
    }
    CHECK(p[1] == 0);
    CHECK(p[2] / p[0]
          == rel_approx((e - m) * std::cos(th) * std::cos(th) / (e + m))
                 .epsilon(1e-12));
    double lambda = soi_parameter(spec);
    // Side component carries Lambda / 2 of the probability
    CHECK(p[3] == rel_approx(lambda / 2).epsilon(2e-3));
}

TEST_CASE("paraxial limit: bases agree and the side component vanishes")
{
    double kappa = 1e-3 * k;
    auto g = grid_for(kappa);
    auto a = dirac_bessel(fixed(2, 0.5, kappa), g);
    auto b = dirac_bessel(helical(2, 0.5, kappa), g);
    double diff = 0, peak = 0;
    for (int c = 0; c < 4; ++c)
    {
        for (std::size_t i = 0; i < g.size(); ++i)
        {
            diff = std::max(diff, std::abs(a.components[c][i] - b.components[c][i]));
            peak = std::max(peak, std::abs(a.components[c][i]));
        }
    }
    MESSAGE("fixed vs helicity max difference / peak at theta0 = 1e-3: "
            << diff / peak);
    CHECK(diff / peak < 2e-3);
    CHECK(a.component(3).probability() < 1e-6);
}

TEST_CASE("spin-to-orbit conversion")
{
    auto spec = fixed(1, 0.5);
    auto g = grid_for(spec.kappa);
    auto e = sam_oam_expectations(spec, g);
    double lambda = soi_parameter(spec);
    CHECK(e.orbital == rel_approx(1 + lambda / 2));
    CHECK(e.orbital == rel_approx(1.15).epsilon(0.01));
    CHECK(e.spin == rel_approx(0.35).epsilon(0.02));
    CHECK(std::abs(e.orbital + e.spin - 1.5) < 1e-12);
    MESSAGE("grid <L_z> " << e.grid_orbital << ", <S_z> " << e.grid_spin);
    CHECK(e.grid_orbital == rel_approx(e.orbital).epsilon(5e-3));
    CHECK(e.grid_spin == rel_approx(e.spin).epsilon(5e-3));
    CHECK(e.grid_orbital + e.grid_spin == rel_approx(1.5).epsilon(1e-9));

    for (int l = -3; l <= 3; ++l)
    {
        for (double s : {-0.5, 0.5})
        {
            auto x = sam_oam_expectations(fixed(l, s), g);
            CAPTURE(l);
            CAPTURE(s);
            CHECK(std::abs(x.orbital + x.spin - (l + s)) < 1e-12);
            CHECK(std::abs(x.grid_orbital + x.grid_spin - (l + s)) < 1e-9);
        }
    }

    // Lambda -> 0 leaves the non-relativistic values
    auto slow = electron_state(1e-3);
    auto nr = fixed(1, 0.5, 0.5 * slow.wavenumber, slow);
    auto enr = sam_oam_expectations(nr, grid_for(nr.kappa));
    CHECK(enr.orbital == rel_approx(1).epsilon(1e-5));
    CHECK(enr.spin == rel_approx(0.5).epsilon(1e-5));
    // g = 1 orbital, g = 2 spin: (e c / 2E) 2 hbar in Bohr magnetons
    CHECK(enr.magnetic_moment
          == rel_approx(-2 * slow.rest_energy / slow.total_energy)
                 .epsilon(1e-5));
    CHECK(e.magnetic_moment
          == rel_approx(-(fast.rest_energy / fast.total_energy)
                             * (1 + 1 - lambda / 2)));

    CHECK(throws_kind([&] { sam_oam_expectations(helical(1, 0.5), g); },
                      ErrorKind::domain));
}

TEST_CASE("helicity-basis angular momentum")
{
    auto spec = helical(2, -0.5);
    auto am = angular_momentum(dirac_bessel(spec, grid_for(spec.kappa)));
    double h = std::sin(spec.cone_angle() / 2);
    // Weights cos^2 and sin^2 of theta0/2 on windings l and l + 2 chi
    CHECK(am.orbital == rel_approx(2 - h * h).epsilon(5e-3));
    CHECK(am.orbital + am.spin == rel_approx(1.5).epsilon(1e-9));
}

TEST_CASE("spin-dependent density profiles")
{
    auto g = grid_for(0.7 * k);
    // On-axis density finite iff |l| = 1 and s = -l/2
    for (int l : {-1, 1})
    {
        for (double s : {-0.5, 0.5})
        {
            auto spec = fixed(l, s);
            auto f = dirac_bessel(spec, g);
            auto rho = f.density();
            double peak = *std::max_element(rho.begin(), rho.end());
            double axis = rho[g.index(g.nx / 2, g.ny / 2)] / peak;
            bool finite = (s == -l / 2.0);
            CAPTURE(l);
            CAPTURE(s);
            CHECK((axis > 1e-3) == finite);
            double r0[1] = {0};
            double prof = spin_dependent_density(spec, r0)[0];
            if (finite)
            {
                CHECK(prof == rel_approx(soi_parameter(spec) / 2));
            }
            else
            {
                CHECK(prof == 0);
            }
        }
    }

    // Grid density along +x follows the two-Bessel mixture
    auto spec = fixed(1, -0.5);
    auto f = dirac_bessel(spec, g);
    auto rho = f.density();
    std::vector<double> r;
    std::vector<double> sampled;
    for (int ix = g.nx / 2; ix < g.nx / 2 + 60; ++ix)
    {
        r.push_back(g.x(ix));
        sampled.push_back(rho[g.index(ix, g.ny / 2)]);
    }
    auto prof = spin_dependent_density(spec, r);
    double scale = sampled[20] / prof[20];
    for (std::size_t i = 0; i < r.size(); ++i)
    {
        REQUIRE(std::abs(sampled[i] - scale * prof[i]) < 1e-9 * scale);
    }

    // Parallel SAM and OAM give the wider first ring
    for (int l : {1, 3})
    {
        CHECK(first_ring_radius(fixed(l, 0.5))
              > first_ring_radius(fixed(l, -0.5)));
        CHECK(first_ring_radius(fixed(-l, -0.5))
              > first_ring_radius(fixed(-l, 0.5)));
    }
}

TEST_CASE("helicity and fixed-spin densities differ at second order")
{
    std::vector<double> r(200);
    double prev = 0;
    for (double theta : {0.04, 0.08})
    {
        double kappa = k * std::sin(theta);
        for (std::size_t i = 0; i < r.size(); ++i)
        {
            r[i] = 8.0 * i / (r.size() * kappa);
        }
        auto a = spin_dependent_density(fixed(1, 0.5, kappa), r);
        auto b = spin_dependent_density(helical(1, 0.5, kappa), r);
        double d = 0;
        for (std::size_t i = 0; i < r.size(); ++i)
        {
            d = std::max(d, std::abs(a[i] - b[i]));
        }
        if (prev > 0)
        {
            CHECK(d / prev == rel_approx(4).epsilon(0.02));
        }
        prev = d;
    }
}

TEST_CASE("Volkov-Bessel profile displacement")
{
    auto tem = electron_state(300);
    auto spec = DiracBesselSpec::make(tem, 0.02 * tem.wavenumber, 3,
                                      SpinBasis::helicity, 0.5);
    LaserWave off{0, 1e16, 0, 0};
    auto z = volkov_bessel_shift(spec, off, 1e-16);
    CHECK(z.displacement.x == 0);
    CHECK(z.displacement.y == 0);
    CHECK(z.spin_factor == 1);
    CHECK(z.mean_spin == 0.5);

    // Monochromatic y-polarized wave: oscillation along y at the Doppler rate
    LaserWave mono{10, 1e16, pi / 2, 0};
    auto s0 = volkov_bessel_shift(spec, mono, 0);
    double rate = s0.phase_rate;
    double beta = spec.kz * units::hbar_c / tem.total_energy;
    CHECK(rate == rel_approx(1e16 * (1 + beta)));
    double ea = 10 * units::ev * units::c_light / 1e16;
    double amp = ea * units::c_light
                 / (1e16 * (tem.total_energy + spec.kz * units::hbar_c));
    for (double t : {1e-17, 2.3e-16, 7e-16})
    {
        auto s = volkov_bessel_shift(spec, mono, t);
        // Trapezoid oracle for int_0^xi cos
        double xi = rate * t;
        int n = 20000;
        double integral = 0;
        for (int i = 0; i < n; ++i)
        {
            double a = xi * i / n, b = xi * (i + 1) / n;
            integral += 0.5 * (std::cos(a) + std::cos(b)) * (b - a);
        }
        CAPTURE(t);
        CHECK(std::abs(s.displacement.x) < 1e-12 * amp);
        CHECK(s.displacement.y == rel_approx(amp * integral).epsilon(1e-7));
    }
    MESSAGE("displacement amplitude " << amp << " nm vs core radius "
                                      << 1 / spec.kappa << " nm");

    // Five-cycle pulse leaves no net displacement
    LaserWave pulse{10, 1e16, 0, 5};
    double end = 2 * pi * 5 / rate;
    double swing = 0;
    for (int i = 0; i <= 100; ++i)
    {
        swing = std::max(swing, std::abs(volkov_bessel_shift(spec, pulse, end * i / 100)
                                             .displacement.x));
    }
    auto after = volkov_bessel_shift(spec, pulse, 1.5 * end);
    CHECK(swing > 0.5 * amp);
    CHECK(swing < amp);
    CHECK(std::abs(after.displacement.x) < 1e-10 * amp);

    // Spin reversal point x = 1
    double pk = tem.total_energy + spec.kz * units::hbar_c;
    double ea1 = std::sqrt(2 * tem.total_energy * pk);
    LaserWave strong{ea1 * 1e16 / (units::ev * units::c_light), 1e16, 0, 0};
    auto rev = volkov_bessel_shift(spec, strong, 0);
    CHECK(rev.x == rel_approx(1).epsilon(1e-12));
    CHECK(std::abs(rev.spin_factor) < 1e-12);
    CHECK(rev.eta == rel_approx(ea1 / tem.rest_energy));

    // Rendering shifts the density
    auto g = grid_for(spec.kappa, 64);
    auto rho = volkov_bessel_density(spec, {4 * g.dx, 0}, g);
    auto centred = volkov_bessel_density(spec, {}, g);
    double peak = *std::max_element(centred.begin(), centred.end());
    CHECK(std::abs(rho[g.index(g.nx / 2 + 4, g.ny / 2)]
                   - centred[g.index(g.nx / 2, g.ny / 2)])
          <= 1e-12 * peak);
}
