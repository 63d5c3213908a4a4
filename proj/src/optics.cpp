#include "evx/optics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evx/error.hpp"
#include "evx/modes.hpp"

namespace evx
{
namespace
{
using units::pi;
using units::two_pi;

// Wrap to [0, 2pi)
double wrap_positive(double a)
{
    a = std::fmod(a, two_pi);
    return a < 0 ? a + two_pi : a;
}

// Wrap to [-pi, pi)
double wrap_centered(double a)
{
    return wrap_positive(a + pi) - pi;
}

void require_pixels(double feature, double pitch, char const* what)
{
    if (feature < 2 * pitch)
    {
        fail(ErrorKind::sampling,
             std::string(what) + " spans " + std::to_string(feature / pitch)
                 + " pixels, need at least 2");
    }
}

bool uses_angles(Element const& e)
{
    return std::holds_alternative<AnnularAperture>(e)
           || std::holds_alternative<AberrationVortex>(e);
}

struct Sampler
{
    Grid const& grid;
    Domain domain;
    ElectronState const& state;

    double pitch() const { return std::min(grid.dx, grid.dy); }

    template<class F>
    std::vector<cplx> sample(F&& f) const
    {
        std::vector<cplx> t(grid.size());
        for (int iy = 0; iy < grid.ny; ++iy)
        {
            for (int ix = 0; ix < grid.nx; ++ix)
            {
                t[grid.index(ix, iy)] = f(grid.x(ix), grid.y(iy));
            }
        }
        return t;
    }

    // Average of an indicator over sub-pixel points
    template<class F>
    std::vector<cplx> coverage(int sub, F&& open) const
    {
        sub = std::max(sub, 1);
        return sample([&](double x, double y) {
            int count = 0;
            for (int j = 0; j < sub; ++j)
            {
                double yy = y + ((j + 0.5) / sub - 0.5) * grid.dy;
                for (int i = 0; i < sub; ++i)
                {
                    double xx = x + ((i + 0.5) / sub - 0.5) * grid.dx;
                    count += open(xx, yy) ? 1 : 0;
                }
            }
            return cplx(static_cast<double>(count) / (sub * sub));
        });
    }

    std::vector<cplx> operator()(SpiralPhasePlate const& e) const
    {
        return sample([&](double x, double y) {
            if (std::hypot(x, y) < e.stop_radius)
            {
                return cplx(0);
            }
            return std::polar(1.0, e.charge * std::atan2(y, x));
        });
    }

    std::vector<cplx> operator()(MipPlate const& e) const
    {
        if (e.thickness.size() != grid.size())
        {
            fail(ErrorKind::domain, "thickness map does not match the grid");
        }
        double ce = interaction_constant(state);
        std::vector<cplx> t(grid.size());
        for (std::size_t i = 0; i < t.size(); ++i)
        {
            t[i] = std::polar(1.0, ce * e.mip * e.thickness[i]);
        }
        return t;
    }

    std::vector<cplx> operator()(BinaryForkHologram const& e) const
    {
        if (!(e.duty > 0 && e.duty < 1))
        {
            fail(ErrorKind::domain, "duty cycle must lie in (0, 1)");
        }
        require_pixels(e.period * std::min(e.duty, 1 - e.duty), pitch(),
                       "fork bar");
        double kx = two_pi / e.period;
        double half_open = pi * e.duty;
        double r2max = e.aperture_radius * e.aperture_radius;
        return coverage(e.supersample, [&](double x, double y) {
            if (r2max > 0 && x * x + y * y > r2max)
            {
                return false;
            }
            double psi = e.l0 * std::atan2(y, x) - kx * x + e.offset;
            return std::abs(wrap_centered(psi)) < half_open;
        });
    }

    std::vector<cplx> operator()(PhaseForkHologram const& e) const
    {
        require_pixels(e.period / 2, pitch(), "fork half-period");
        double kx = two_pi / e.period;
        double r2max = e.aperture_radius * e.aperture_radius;
        return sample([&](double x, double y) {
            if (r2max > 0 && x * x + y * y > r2max)
            {
                return cplx(0);
            }
            double psi = e.l0 * std::atan2(y, x) - kx * x;
            double phase = e.blazed ? e.depth * wrap_positive(psi) / two_pi
                                    : 0.5 * e.depth * std::cos(psi);
            return std::polar(1.0, phase);
        });
    }

    std::vector<cplx> operator()(SpiralZonePlate const& e) const
    {
        double k = state.wavenumber;
        double rmax = e.aperture_radius > 0 ? e.aperture_radius
                                            : grid.half_width();
        // Local half-period of the outermost zone
        require_pixels(pi * e.focal_length / (k * rmax), pitch(),
                       "outer zone");
        double r2max = e.aperture_radius * e.aperture_radius;
        return sample([&](double x, double y) {
            double r2 = x * x + y * y;
            if (r2max > 0 && r2 > r2max)
            {
                return cplx(0);
            }
            double psi = e.l0 * std::atan2(y, x)
                         + k * r2 / (2 * e.focal_length);
            return cplx(std::cos(psi) > 0 ? 1.0 : 0.0);
        });
    }

    std::vector<cplx> operator()(KnifeEdge const& e) const
    {
        double c = std::cos(e.azimuth), s = std::sin(e.azimuth);
        return sample([&](double x, double y) {
            return cplx(x * c + y * s < e.offset ? 0.0 : 1.0);
        });
    }

    std::vector<cplx> operator()(AnnularAperture const& e) const
    {
        if (!(e.theta_inner >= 0 && e.theta_outer > e.theta_inner))
        {
            fail(ErrorKind::domain, "annulus bounds must satisfy "
                                    "0 <= inner < outer");
        }
        double k = state.wavenumber;
        require_pixels((e.theta_outer - e.theta_inner) * k, pitch(),
                       "annulus width");
        return sample([&](double kx, double ky) {
            double th = std::hypot(kx, ky) / k;
            return cplx(th >= e.theta_inner && th <= e.theta_outer ? 1.0
                                                                  : 0.0);
        });
    }

    std::vector<cplx> operator()(AstigmaticLens const& e) const
    {
        double c = std::cos(e.axis_angle), s = std::sin(e.axis_angle);
        return sample([&](double x, double y) {
            double u = x * c + y * s;
            double v = -x * s + y * c;
            return std::polar(1.0, e.strength * (u * u - v * v));
        });
    }

    std::vector<cplx> operator()(PhaseStepPlate const& e) const
    {
        double c = std::cos(e.azimuth), s = std::sin(e.azimuth);
        return sample([&](double x, double y) {
            return x * c + y * s >= 0 ? std::polar(1.0, e.step) : cplx(1);
        });
    }

    std::vector<cplx> operator()(NeedleMonopole const& e) const
    {
        require_pixels(e.width, pitch(), "needle shadow");
        double c = std::cos(e.azimuth), s = std::sin(e.azimuth);
        return sample([&](double x, double y) {
            double along = x * c + y * s;
            double across = -x * s + y * c;
            if (along > 0 && std::abs(across) < e.width / 2)
            {
                return cplx(0);
            }
            double phi = wrap_positive(std::atan2(across, along));
            return std::polar(1.0, e.alpha * phi);
        });
    }

    std::vector<cplx> operator()(AberrationVortex const& e) const
    {
        auto annulus = (*this)(AnnularAperture{e.theta_inner, e.theta_outer});
        double k = state.wavenumber;
        auto phase = sample([&](double kx, double ky) {
            double th = std::hypot(kx, ky) / k;
            double phi = std::atan2(ky, kx);
            double chi = 0;
            for (int m = 1; m <= 3; ++m)
            {
                chi += e.amplitude[m - 1] * std::pow(th / e.theta_ref, m)
                       * std::sin(m * (phi - e.orientation[m - 1]));
            }
            return std::polar(1.0, chi);
        });
        for (std::size_t i = 0; i < phase.size(); ++i)
        {
            phase[i] *= annulus[i];
        }
        return phase;
    }
};

void absorb_edges(ComplexField2D& f, int width)
{
    if (width <= 0)
    {
        return;
    }
    auto ramp = [width](int i, int n) {
        int d = std::min(i, n - 1 - i);
        if (d >= width)
        {
            return 1.0;
        }
        return 0.5 * (1 - std::cos(pi * d / width));
    };
    for (int iy = 0; iy < f.grid.ny; ++iy)
    {
        double ry = ramp(iy, f.grid.ny);
        for (int ix = 0; ix < f.grid.nx; ++ix)
        {
            double r = ry * ramp(ix, f.grid.nx);
            if (r != 1.0)
            {
                f(ix, iy) *= r;
            }
        }
    }
}

void angular_spectrum_step(ComplexField2D& f, double dz)
{
    auto const& g = f.grid;
    auto kx = fft_wavenumbers(g.nx, g.dx);
    auto ky = fft_wavenumbers(g.ny, g.dy);
    double k = f.state.wavenumber;
    double norm = 1.0 / g.size();
    fft2(f.samples, g.nx, g.ny, FftDirection::forward);
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            double k2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
            f(ix, iy) *= std::polar(norm, -k2 * dz / (2 * k));
        }
    }
    fft2(f.samples, g.nx, g.ny, FftDirection::backward);
    f.z += dz;
}

// Single-transform Fresnel integral; output pitch 2 pi z / (k n dx)
void fresnel_far(ComplexField2D& f, double z)
{
    if (!(z > 0))
    {
        fail(ErrorKind::domain, "Fresnel transform needs positive distance");
    }
    double k = f.state.wavenumber;
    auto chirp = [&](ComplexField2D& g) {
        for (int iy = 0; iy < g.grid.ny; ++iy)
        {
            double y = g.grid.y(iy);
            for (int ix = 0; ix < g.grid.nx; ++ix)
            {
                double x = g.grid.x(ix);
                g(ix, iy) *= std::polar(1.0, k * (x * x + y * y) / (2 * z));
            }
        }
    };
    chirp(f);
    centered_transform(f, FftDirection::forward);
    // F(q) sampled at q = k x2 / z
    f.grid.dx *= z / k;
    f.grid.dy *= z / k;
    f.domain = Domain::real;
    chirp(f);
    cplx pre = cplx(0, -k / z);
    for (auto& v : f.samples)
    {
        v *= pre;
    }
    f.z += z;
}

}  // namespace

//---------------------------------------------------------------------------//
MipPlate MipPlate::uniform(Grid const& grid, double thickness, double mip)
{
    return {std::vector<double>(grid.size(), thickness), mip};
}

std::vector<cplx> transmission(Element const& element,
                               Grid const& grid,
                               Domain domain,
                               ElectronState const& state)
{
    bool angles = uses_angles(element);
    if (angles != (domain == Domain::reciprocal))
    {
        fail(ErrorKind::domain,
             angles ? "angular element needs a reciprocal-domain field"
                    : "spatial element needs a real-domain field");
    }
    return std::visit(Sampler{grid, domain, state}, element);
}

ComplexField2D apply(Element const& element, ComplexField2D field)
{
    auto t = transmission(element, field.grid, field.domain, field.state);
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        field.samples[i] *= t[i];
    }
    return field;
}

//---------------------------------------------------------------------------//
double high_frequency_fraction(ComplexField2D const& field)
{
    auto const& g = field.grid;
    std::vector<cplx> spec = field.samples;
    fft2(spec, g.nx, g.ny, FftDirection::forward);
    double total = 0, high = 0;
    int bx = static_cast<int>(0.9 * g.nx / 2);
    int by = static_cast<int>(0.9 * g.ny / 2);
    for (int iy = 0; iy < g.ny; ++iy)
    {
        int my = std::min(iy, g.ny - iy);
        for (int ix = 0; ix < g.nx; ++ix)
        {
            int mx = std::min(ix, g.nx - ix);
            double p = std::norm(spec[g.index(ix, iy)]);
            total += p;
            if (mx > bx || my > by)
            {
                high += p;
            }
        }
    }
    return total > 0 ? high / total : 0;
}

ComplexField2D propagate(ComplexField2D field,
                         PropagationPlan const& plan,
                         double distance)
{
    if (field.domain != Domain::real)
    {
        fail(ErrorKind::domain, "propagation needs a real-domain field");
    }
    double hf = high_frequency_fraction(field);
    if (hf > 1e-6)
    {
        fail(ErrorKind::aliasing,
             "spectral power above 0.9 Nyquist is " + std::to_string(hf));
    }
    if (plan.method == PropagationMethod::fresnel_far_field)
    {
        fresnel_far(field, distance);
        return field;
    }
    int steps = 1;
    if (plan.z_step > 0)
    {
        steps = std::max(1, static_cast<int>(std::ceil(std::abs(distance)
                                                        / plan.z_step)));
    }
    double dz = distance / steps;
    for (int s = 0; s < steps; ++s)
    {
        angular_spectrum_step(field, dz);
        absorb_edges(field, plan.absorber_width);
    }
    return field;
}

ComplexField2D far_field(ComplexField2D field)
{
    if (field.domain != Domain::real)
    {
        fail(ErrorKind::domain, "far_field expects a real-domain field");
    }
    centered_transform(field, FftDirection::forward);
    return field;
}

ComplexField2D near_field(ComplexField2D field)
{
    if (field.domain != Domain::reciprocal)
    {
        fail(ErrorKind::domain, "near_field expects a reciprocal field");
    }
    centered_transform(field, FftDirection::backward);
    return field;
}

//---------------------------------------------------------------------------//
ForkDesign design_fork(int l0,
                       double period,
                       double aperture_radius,
                       ElectronState const& state,
                       double theta_max,
                       std::optional<double> pitch)
{
    if (!(period > 0) || !(aperture_radius > 0) || !(theta_max > 0))
    {
        fail(ErrorKind::domain, "fork geometry must be positive");
    }
    if (pitch && period < 4 * *pitch)
    {
        fail(ErrorKind::sampling,
             "fork period spans " + std::to_string(period / *pitch)
                 + " pixels, need at least 4");
    }
    ForkDesign d;
    d.element.l0 = l0;
    d.element.period = period;
    d.element.aperture_radius = aperture_radius;
    d.diffraction_angle = (two_pi / period) / state.wavenumber;
    d.camera_length = aperture_radius / theta_max;
    d.separation = d.camera_length * d.diffraction_angle;
    return d;
}

AberrationVortex aberration_vortex(double theta_inner,
                                   double theta_outer,
                                   std::array<double, 3> const& amplitude,
                                   std::array<double, 3> const& orientation,
                                   double theta_ref)
{
    if (!(theta_inner >= 0 && theta_outer > theta_inner))
    {
        fail(ErrorKind::domain, "annulus bounds inverted");
    }
    AberrationVortex e;
    e.theta_inner = theta_inner;
    e.theta_outer = theta_outer;
    e.theta_ref = theta_ref > 0
                      ? theta_ref
                      : std::sqrt(0.5
                                  * (theta_inner * theta_inner
                                     + theta_outer * theta_outer));
    e.amplitude = amplitude;
    e.orientation = orientation;
    return e;
}

AberrationVortex aberration_vortex(double theta_inner,
                                   double theta_outer,
                                   int l)
{
    if (l != 1 && l != -1)
    {
        fail(ErrorKind::domain,
             "three harmonics only reach a charge of +-1");
    }
    // phi = pi - 2 sum_m sin(m phi) / m on [0, 2pi)
    std::array<double, 3> amp;
    for (int m = 1; m <= 3; ++m)
    {
        amp[m - 1] = -2.0 * l / m;
    }
    return aberration_vortex(theta_inner, theta_outer, amp, {0, 0, 0});
}

NeedleMonopole needle_monopole(double alpha, double width, double azimuth)
{
    return {alpha, azimuth, width};
}

std::vector<ComplexField2D> diffraction_orders(ComplexField2D const& field,
                                               BinaryForkHologram hologram,
                                               int steps)
{
    if (steps < 2)
    {
        fail(ErrorKind::domain, "phase stepping needs at least two steps");
    }
    // Offset a multiplies order N by exp(i N a)
    std::vector<ComplexField2D> orders(steps, field);
    for (auto& o : orders)
    {
        std::fill(o.samples.begin(), o.samples.end(), cplx(0));
    }
    double base = hologram.offset;
    for (int j = 0; j < steps; ++j)
    {
        double a = two_pi * j / steps;
        hologram.offset = base + a;
        auto t = apply(hologram, field);
        for (int n = 0; n < steps; ++n)
        {
            int order = n - steps / 2 + 1;
            cplx w = std::polar(1.0 / steps, -order * a);
            for (std::size_t i = 0; i < t.samples.size(); ++i)
            {
                orders[n].samples[i] += w * t.samples[i];
            }
        }
    }
    return orders;
}

double matched_astigmatism(double width)
{
    return 1 / (width * width);
}

ComplexField2D astigmatic_convert(ComplexField2D const& field,
                                  AstigmaticLens const& lens)
{
    auto out = far_field(apply(lens, field));
    if (lens.strength != 0)
    {
        double c = std::cos(lens.axis_angle), s = std::sin(lens.axis_angle);
        double q = 1 / (8 * lens.strength);
        auto const& g = out.grid;
        for (int iy = 0; iy < g.ny; ++iy)
        {
            for (int ix = 0; ix < g.nx; ++ix)
            {
                double kx = g.x(ix), ky = g.y(iy);
                double u = kx * c + ky * s;
                double v = -kx * s + ky * c;
                out(ix, iy) *= std::polar(1.0, q * (u * u - v * v));
            }
        }
    }
    return out;
}

}  // namespace evx
