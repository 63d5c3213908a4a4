#include <algorithm>
#include <cmath>
#include <vector>
#include <doctest.h>

#include "evx/metrology.hpp"
#include "evx/modes.hpp"
#include "evx/optics.hpp"
#include "evx/units.hpp"
#include "test_util.hpp"

using namespace evx;
using units::pi;

namespace
{
auto const state = electron_state(200);
auto const grid = Grid::square(512, 1.0);

ComplexField2D gaussian(double w)
{
    return synthesize(ModeSpec::laguerre_gauss(w, 0), grid, state);
}

double second_moment_width(ComplexField2D const& f)
{
    auto const& g = f.grid;
    double p = 0, r2 = 0;
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            double v = std::norm(f(ix, iy));
            p += v;
            r2 += v * (g.x(ix) * g.x(ix) + g.y(iy) * g.y(iy));
        }
    }
    return std::sqrt(r2 / p);
}

PropagationPlan lossless()
{
    PropagationPlan plan;
    plan.absorber_width = 0;
    return plan;
}
}  // namespace

TEST_CASE("MIP plate of the 2pi thickness leaves the field unchanged")
{
    // Amorphous SiO2 inner potential taken as 10.1 V
    double mip = 10.1;
    double ce = interaction_constant(state);
    double d = 2 * pi / (ce * mip);
    CHECK(d == rel_approx(85).epsilon(0.01));
    auto f = gaussian(40);
    auto out = apply(MipPlate::uniform(grid, d, mip), f);
    CHECK(rms_difference(out, f) < 1e-12);
    auto half = apply(MipPlate::uniform(grid, d / 2, mip), f);
    CHECK(std::arg(half(256, 256) / f(256, 256)) == rel_approx(pi));
}

TEST_CASE("binary fork transmission follows the sign of the cosine")
{
    BinaryForkHologram h{1, 16.0};
    auto t = transmission(h, grid, Domain::real, state);
    // phi = 0 row: psi = -k_x x
    CHECK(std::abs(t[grid.index(256 + 16, 256)] - 1.0) < 1e-15);
    CHECK(std::abs(t[grid.index(256 + 8, 256)]) < 1e-15);
    // phi = pi row is shifted by l0 pi
    CHECK(std::abs(t[grid.index(256 - 32, 256)]) < 1e-15);
    CHECK(std::abs(t[grid.index(256 - 24, 256)] - 1.0) < 1e-15);
    h.duty = 0.25;
    t = transmission(h, grid, Domain::real, state);
    double open = 0;
    for (auto v : t)
    {
        open += v.real();
    }
    CHECK(std::abs(open / grid.size() - 0.25) < 1e-3);
}

TEST_CASE("binary fork orders carry N l0 with 1/N^2 power")
{
    double period = 32;
    auto f = gaussian(50);
    BinaryForkHologram h{1, period};
    auto orders = diffraction_orders(f, h, 32);
    double total = apply(h, f).probability();
    auto power = [&](int n) { return orders[n + 15].probability() / total; };

    for (int n : {2, 4, -2, -4})
    {
        CHECK(power(n) < 1e-4);
    }
    for (int n : {3, -3})
    {
        CHECK(n * n * power(n) / power(1) == rel_approx(1).epsilon(0.1));
    }
    for (int n : {0, 1, -1, 3, -3})
    {
        // Recentre the order on the far-field axis, then decompose
        auto c = orders[n + 15];
        for (int iy = 0; iy < grid.ny; ++iy)
        {
            for (int ix = 0; ix < grid.nx; ++ix)
            {
                c(ix, iy) *= std::polar(1.0, n * 2 * pi / period * grid.x(ix));
            }
        }
        auto s = azimuthal_decompose(far_field(c));
        CAPTURE(n);
        CHECK(s.dominant() == n);
        CHECK(std::lround(s.mean_lz) == n);
        CHECK(s.weight(n) > 0.99);
    }
}

TEST_CASE("fork without dislocation is a plain grating")
{
    auto f = gaussian(50);
    auto orders = diffraction_orders(f, BinaryForkHologram{0, 32.0}, 8);
    for (int n : {-1, 0, 1})
    {
        auto s = azimuthal_decompose(near_field(far_field(orders[n + 3])),
                                     {}, {16, 0.5, 1e-3});
        CHECK(std::abs(s.mean_lz) < 1e-9);
    }
}

TEST_CASE("fork design geometry")
{
    auto s = electron_state(200);
    auto d = design_fork(1, 500, 15 * units::um, s, 20 * units::mrad, 10.0);
    CHECK(d.diffraction_angle
          == rel_approx(s.wavelength() / 500).epsilon(1e-12));
    CHECK(d.camera_length == rel_approx(0.75 * units::mm));
    CHECK(d.separation == rel_approx(d.camera_length * s.wavelength()
                                          / 500));
    CHECK(throws_kind([&] { design_fork(1, 30, 1e4, s, 0.02, 10.0); },
                      ErrorKind::sampling));
    CHECK(throws_kind(
        [&] { transmission(BinaryForkHologram{1, 3.0}, grid, Domain::real, s); },
        ErrorKind::sampling));
}

TEST_CASE("spiral phase plate gives unit OAM in the far field")
{
    auto ff = far_field(apply(SpiralPhasePlate{1, 3}, gaussian(60)));
    auto o = observables(ff);
    CHECK(o.canonical_oam == rel_approx(1).epsilon(0.02));
    CHECK(azimuthal_decompose(ff).mean_lz == rel_approx(1).epsilon(0.02));
}

TEST_CASE("spiral plate charges add")
{
    auto f = apply(SpiralPhasePlate{2}, apply(SpiralPhasePlate{1}, gaussian(60)));
    auto s = azimuthal_decompose(far_field(f));
    CHECK(s.dominant() == 3);
    CHECK(s.mean_lz == rel_approx(3).epsilon(1e-3));
}

TEST_CASE("non-integer spiral plate gives a fractional mean")
{
    auto s = azimuthal_decompose(apply(SpiralPhasePlate{0.5}, gaussian(60)));
    CHECK(s.weight(0) == rel_approx(s.weight(1)).epsilon(1e-3));
    CHECK(std::abs(s.mean_lz - 0.5) < 1e-2);
}

TEST_CASE("uniform field has a spike far field")
{
    ComplexField2D f(grid, state);
    std::fill(f.samples.begin(), f.samples.end(), cplx(1));
    auto ff = far_field(f);
    double peak = std::norm(ff(256, 256));
    double total = 0;
    for (auto v : ff.samples)
    {
        total += std::norm(v);
    }
    CHECK(peak / total == rel_approx(1).epsilon(1e-12));
}

TEST_CASE("circular aperture gives the Airy first zero")
{
    auto g = Grid::square(1024, 0.5);
    double rmax = 20;
    ComplexField2D f(g, state);
    int const sub = 8;
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            int in = 0;
            for (int j = 0; j < sub; ++j)
            {
                for (int i = 0; i < sub; ++i)
                {
                    double x = g.x(ix) + ((i + 0.5) / sub - 0.5) * g.dx;
                    double y = g.y(iy) + ((j + 0.5) / sub - 0.5) * g.dy;
                    in += x * x + y * y <= rmax * rmax;
                }
            }
            f(ix, iy) = double(in) / (sub * sub);
        }
    }
    auto ff = far_field(f);
    auto const& fg = ff.grid;
    int c = fg.nx / 2;
    int best = c + 1;
    for (int ix = c + 1; ix < c + 40; ++ix)
    {
        if (std::norm(ff(ix, c)) < std::norm(ff(best, c)))
        {
            best = ix;
        }
        if (std::norm(ff(ix + 1, c)) > std::norm(ff(ix, c))
            && std::norm(ff(ix, c)) < 0.01 * std::norm(ff(c, c)))
        {
            break;
        }
    }
    // Amplitude changes sign through the zero: interpolate linearly
    double a = ff(best, c).real(), b = ff(best + 1, c).real();
    if (a * b > 0)
    {
        b = a;
        a = ff(best - 1, c).real();
        --best;
    }
    double k0 = fg.x(best) + fg.dx * a / (a - b);
    CHECK(k0 == rel_approx(3.8317 / rmax).epsilon(2e-3));
}

TEST_CASE("LG width at the Rayleigh range")
{
    double w0 = 40;
    double zr = gaussian_beam(state.wavenumber, w0, 0).rayleigh_range;
    for (auto [l, n] : {std::pair{0, 0}, std::pair{2, 1}})
    {
        auto f = synthesize(ModeSpec::laguerre_gauss(w0, l, n), grid, state);
        auto out = propagate(f, lossless(), zr);
        // <r^2> = w^2 (2n + |l| + 1) / 2
        double w = second_moment_width(out) / std::sqrt((2 * n + l + 1) / 2.0);
        CHECK(w == rel_approx(std::sqrt(2.0) * w0).epsilon(0.01));
        auto ref = synthesize(ModeSpec::laguerre_gauss(w0, l, n), grid, state,
                              zr);
        CHECK(rms_difference(out, ref) < 1e-6 * out.max_abs());
    }
}

TEST_CASE("propagation is invertible and composes")
{
    auto f = synthesize(ModeSpec::laguerre_gauss(30, 3, 1), grid, state);
    f = apply(SpiralPhasePlate{1}, f);
    auto back = propagate(propagate(f, lossless(), 5e4), lossless(), -5e4);
    CHECK(rms_difference(back, f) < 1e-10 * f.max_abs());

    auto two = propagate(propagate(f, lossless(), 2e4), lossless(), 3e4);
    auto one = propagate(f, lossless(), 5e4);
    CHECK(rms_difference(two, one) < 1e-12 * one.max_abs());

    auto plan = lossless();
    plan.z_step = 1e4;
    auto stepped = propagate(f, plan, 5e4);
    CHECK(rms_difference(stepped, one) < 1e-12 * one.max_abs());
    CHECK(stepped.probability() == rel_approx(f.probability()));
}

TEST_CASE("Bessel beam keeps its transverse profile")
{
    double kappa = 20 * pi / 150;
    auto f = synthesize(ModeSpec::bessel(kappa, 2), grid, state);
    auto out = propagate(f, lossless(), 2e4);
    double num = 0, den = 0;
    for (int iy = 0; iy < grid.ny; ++iy)
    {
        for (int ix = 0; ix < grid.nx; ++ix)
        {
            if (std::hypot(grid.x(ix), grid.y(iy)) > 100)
            {
                continue;
            }
            double a = std::norm(out(ix, iy)), b = std::norm(f(ix, iy));
            num += (a - b) * (a - b);
            den += b * b;
        }
    }
    CHECK(std::sqrt(num / den) < 1e-3);
}

TEST_CASE("propagation refuses aliased input")
{
    ComplexField2D f(grid, state);
    f.fill([](double x, double y) {
        return std::exp(-(x * x + y * y) / 1e4)
               * std::polar(1.0, 0.97 * pi * x);
    });
    CHECK(high_frequency_fraction(f) > 1e-6);
    CHECK(throws_kind([&] { propagate(f, {}, 100); }, ErrorKind::aliasing));
}

TEST_CASE("absorbing boundary only removes power")
{
    auto f = synthesize(ModeSpec::laguerre_gauss(20, 1), grid, state);
    auto out = propagate(f, {}, 2e5);
    CHECK(out.probability() < f.probability());
}

TEST_CASE("elements never add power")
{
    auto f = gaussian(60);
    double p = f.probability();
    std::vector<Element> lossless_elements{
        SpiralPhasePlate{2},
        MipPlate::uniform(grid, 30, 10),
        PhaseForkHologram{1, 16.0},
        AstigmaticLens{1e-3, 0.3},
        PhaseStepPlate{0.4},
    };
    std::vector<Element> lossy{
        SpiralPhasePlate{1, 5},
        BinaryForkHologram{1, 16.0},
        SpiralZonePlate{1, 2e6, 200},
        KnifeEdge{0.2, 0},
        needle_monopole(1, 4),
    };
    for (auto const& e : lossless_elements)
    {
        CHECK(apply(e, f).probability() == rel_approx(p).epsilon(1e-12));
    }
    for (auto const& e : lossy)
    {
        CHECK(apply(e, f).probability() < p);
    }
}

TEST_CASE("aberration-synthesized vortex")
{
    double k0 = state.wavenumber;
    double thi = 5.7 * units::mrad, tho = 8.3 * units::mrad;
    Grid rg = Grid::square(512, tho * k0 / 200);
    ComplexField2D aperture(rg, state);
    aperture.domain = Domain::reciprocal;
    std::fill(aperture.samples.begin(), aperture.samples.end(), cplx(1));

    for (int l : {1, -1})
    {
        auto s = azimuthal_decompose(apply(aberration_vortex(thi, tho, l),
                                           aperture));
        CAPTURE(l);
        CHECK(s.weight(l) > 0.6);
        CHECK(s.dominant() == l);
    }
    auto plain = azimuthal_decompose(apply(
        aberration_vortex(thi, tho, {0, 0, 0}, {0, 0, 0}), aperture));
    CHECK(plain.weight(1) == rel_approx(plain.weight(-1)));
    CHECK(plain.weight(0) > 0.999);

    double annulus = apply(AnnularAperture{thi, tho}, aperture).probability();
    double disc = apply(AnnularAperture{0, tho}, aperture).probability();
    MESSAGE("annulus transmits " << annulus / disc << " of the filled disc");
    CHECK(annulus / disc == rel_approx(0.5).epsilon(0.1));

    CHECK(throws_kind([&] { aberration_vortex(tho, thi); }, ErrorKind::domain));
    CHECK(throws_kind([&] { apply(AnnularAperture{thi, tho}, gaussian(60)); },
                      ErrorKind::domain));
}

TEST_CASE("needle monopole imprints its charge")
{
    auto f = gaussian(60);
    auto one = azimuthal_decompose(far_field(apply(needle_monopole(1, 4), f)));
    CHECK(one.mean_lz == rel_approx(1).epsilon(0.05));
    auto two = azimuthal_decompose(far_field(apply(needle_monopole(2, 4), f)));
    CHECK(two.dominant() == 2);

    auto t = transmission(needle_monopole(0, 4), grid, Domain::real, state);
    for (auto v : t)
    {
        REQUIRE((v == cplx(1) || v == cplx(0)));
    }
    CHECK(throws_kind(
        [&] { transmission(needle_monopole(1, 1), grid, Domain::real, state); },
        ErrorKind::sampling));
}

TEST_CASE("astigmatic conversion of an HG pair")
{
    double w = 60;
    auto hg = synthesize(std::vector<ModeSpec>{ModeSpec::laguerre_gauss(w, 1),
                                               ModeSpec::laguerre_gauss(w, -1)},
                         grid, state);
    double s = matched_astigmatism(w);
    auto plus = azimuthal_decompose(astigmatic_convert(hg, {s, pi / 4}));
    CHECK(plus.weight(1) > 0.99);
    auto minus = azimuthal_decompose(
        astigmatic_convert(hg, {s, pi / 4 + pi / 2}));
    CHECK(minus.weight(-1) > 0.99);
    auto none = azimuthal_decompose(astigmatic_convert(hg, {0, pi / 4}));
    CHECK(none.weight(1) == rel_approx(none.weight(-1)).epsilon(1e-6));
}

TEST_CASE("pi-step plate feeds the converter")
{
    double w = 60;
    auto step = apply(PhaseStepPlate{0}, gaussian(w));
    auto s = azimuthal_decompose(
        astigmatic_convert(step, {matched_astigmatism(w), pi / 4}));
    MESSAGE("pi-step l=1 weight " << s.weight(1));
    CHECK(s.dominant() == 1);
    CHECK(s.weight(1) > 0.7);
    CHECK(s.weight(-1) < 1e-2);
}
