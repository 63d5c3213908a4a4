#include "evx/modes.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>

#include "evx/error.hpp"
#include "evx/units.hpp"

namespace evx
{
namespace
{
using units::pi;

void check_pitch(Grid const& grid, double kappa, char const* what)
{
    double required = pi / (4 * kappa);
    double pitch = std::max(grid.dx, grid.dy);
    if (!(pitch < required))
    {
        fail(ErrorKind::sampling,
             std::string(what) + " needs pitch < " + std::to_string(required)
                 + " nm, got " + std::to_string(pitch) + " nm");
    }
}

cplx i_pow(int l)
{
    switch (((l % 4) + 4) % 4)
    {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

// Signed-order Bessel function
double bessel_j(int l, double x)
{
    double v = std::cyl_bessel_j(static_cast<double>(std::abs(l)), x);
    return (l < 0 && (l % 2)) ? -v : v;
}

// Cumulative table of G(X) = int_0^X J_l(u) u du on a uniform X grid,
// interpolated with a 4-point Lagrange stencil
class CumulativeBesselMoment
{
  public:
    CumulativeBesselMoment(int l, double x_max) : l_(l)
    {
        int n = static_cast<int>(std::ceil(x_max / h_)) + 4;
        table_.assign(n + 1, 0.0);
        // 4-point Gauss-Legendre per interval
        static constexpr double nodes[]
            = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
               0.8611363115940526};
        static constexpr double weights[]
            = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
               0.3478548451374538};
        for (int i = 0; i < n; ++i)
        {
            double a = i * h_;
            double acc = 0;
            for (int q = 0; q < 4; ++q)
            {
                double u = a + 0.5 * h_ * (1 + nodes[q]);
                acc += weights[q] * bessel_j(l_, u) * u;
            }
            table_[i + 1] = table_[i] + 0.5 * h_ * acc;
        }
    }

    double operator()(double x) const
    {
        double s = x / h_;
        int i = std::clamp(static_cast<int>(s) - 1, 0,
                           static_cast<int>(table_.size()) - 4);
        double t = s - i;
        double const* y = &table_[i];
        // Lagrange basis on nodes 0..3
        double l0 = -(t - 1) * (t - 2) * (t - 3) / 6;
        double l1 = t * (t - 2) * (t - 3) / 2;
        double l2 = -t * (t - 1) * (t - 3) / 2;
        double l3 = t * (t - 1) * (t - 2) / 6;
        return l0 * y[0] + l1 * y[1] + l2 * y[2] + l3 * y[3];
    }

  private:
    static constexpr double h_ = 0.05;
    int l_;
    std::vector<double> table_;
};

void apply_taper(ComplexField2D& f, SynthesisOptions const& opts)
{
    double hw = f.grid.half_width();
    double r0 = opts.taper_start * hw;
    double r1 = opts.taper_end * hw;
    for (int iy = 0; iy < f.grid.ny; ++iy)
    {
        double y = f.grid.y(iy) - opts.y0;
        for (int ix = 0; ix < f.grid.nx; ++ix)
        {
            double x = f.grid.x(ix) - opts.x0;
            f(ix, iy) *= radial_taper(std::hypot(x, y), r0, r1);
        }
    }
}

// Paraxial free-space advance, used for families without a closed z form
void paraxial_advance(ComplexField2D& f, double z)
{
    if (z == 0)
    {
        return;
    }
    auto kx = fft_wavenumbers(f.grid.nx, f.grid.dx);
    auto ky = fft_wavenumbers(f.grid.ny, f.grid.dy);
    double k = f.state.wavenumber;
    fft2(f.samples, f.grid.nx, f.grid.ny, FftDirection::forward);
    double norm = 1.0 / f.grid.size();
    for (int iy = 0; iy < f.grid.ny; ++iy)
    {
        for (int ix = 0; ix < f.grid.nx; ++ix)
        {
            double k2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
            f(ix, iy) *= std::polar(norm, -k2 * z / (2 * k));
        }
    }
    fft2(f.samples, f.grid.nx, f.grid.ny, FftDirection::backward);
}

ComplexField2D synthesize_raw(ModeSpec const& spec,
                              Grid const& grid,
                              ElectronState const& state,
                              double z,
                              SynthesisOptions const& opts)
{
    ComplexField2D f(grid, state, z);
    switch (spec.kind)
    {
        case ModeKind::bessel: {
            if (!(spec.kappa > 0) || spec.kappa >= state.wavenumber)
            {
                fail(ErrorKind::domain, "Bessel kappa must lie in (0, k)");
            }
            check_pitch(grid, spec.kappa, "Bessel mode");
            double kz = bessel_kz(state, spec.kappa);
            cplx zphase = std::polar(1.0, kz * z);
            int l = spec.l;
            double kappa = spec.kappa;
            f.fill([&](double x, double y) {
                x -= opts.x0;
                y -= opts.y0;
                double r = std::hypot(x, y);
                return zphase * bessel_j(l, kappa * r)
                       * std::polar(1.0, l * std::atan2(y, x));
            });
            apply_taper(f, opts);
            break;
        }
        case ModeKind::laguerre_gauss: {
            if (!(spec.waist > 0))
            {
                fail(ErrorKind::domain, "LG waist must be positive");
            }
            if (spec.radial_index < 0)
            {
                fail(ErrorKind::domain, "LG radial index must be >= 0");
            }
            auto gb = gaussian_beam(state.wavenumber, spec.waist, z);
            double window = std::min(grid.nx * grid.dx, grid.ny * grid.dy);
            if (window < 6 * gb.width)
            {
                fail(ErrorKind::sampling,
                     "grid window " + std::to_string(window)
                         + " nm is below 6 w(z) = "
                         + std::to_string(6 * gb.width) + " nm");
            }
            int l = spec.l;
            int n = spec.radial_index;
            double k = state.wavenumber;
            cplx gouy = std::polar(1.0, -(2 * n + std::abs(l) + 1)
                                            * gb.gouy_angle);
            double inv_r = std::isinf(gb.curvature_radius)
                               ? 0.0
                               : 1 / gb.curvature_radius;
            double amp = spec.waist / gb.width;
            f.fill([&](double x, double y) {
                x -= opts.x0;
                y -= opts.y0;
                double r = std::hypot(x, y);
                return amp * gouy
                       * laguerre_gauss_profile(l, n, r, std::atan2(y, x),
                                                gb.width)
                       * std::polar(1.0, k * r * r * inv_r / 2);
            });
            break;
        }
        case ModeKind::aperture_limited: {
            if (!(spec.kappa_max > 0))
            {
                fail(ErrorKind::domain, "aperture kappa_max must be positive");
            }
            check_pitch(grid, spec.kappa_max, "aperture-limited mode");
            // Inverse transform of the disc: psi = i^l e^{il phi}
            // int_0^kmax J_l(k r) k dk, evaluated as G(kmax r) / r^2
            int l = spec.l;
            double kmax = spec.kappa_max;
            double rmax = std::hypot(grid.nx * grid.dx, grid.ny * grid.dy);
            CumulativeBesselMoment moment(l, kmax * rmax);
            cplx il = i_pow(l);
            f.fill([&](double x, double y) -> cplx {
                x -= opts.x0;
                y -= opts.y0;
                double r = std::hypot(x, y);
                if (r == 0)
                {
                    return l == 0 ? cplx(kmax * kmax / 2) : cplx(0);
                }
                return il * (moment(kmax * r) / (r * r))
                       * std::polar(1.0, l * std::atan2(y, x));
            });
            apply_taper(f, opts);
            paraxial_advance(f, z);
            break;
        }
    }
    f.normalize();
    return f;
}

}  // namespace

//---------------------------------------------------------------------------//
ModeSpec ModeSpec::bessel(double kappa, int l)
{
    ModeSpec s;
    s.kind = ModeKind::bessel;
    s.kappa = kappa;
    s.l = l;
    return s;
}

ModeSpec ModeSpec::laguerre_gauss(double waist, int l, int n)
{
    ModeSpec s;
    s.kind = ModeKind::laguerre_gauss;
    s.waist = waist;
    s.l = l;
    s.radial_index = n;
    return s;
}

ModeSpec ModeSpec::aperture_limited(double kappa_max, int l)
{
    ModeSpec s;
    s.kind = ModeKind::aperture_limited;
    s.kappa_max = kappa_max;
    s.l = l;
    return s;
}

double bessel_kz(ElectronState const& state, double kappa)
{
    double k = state.wavenumber;
    return std::sqrt(k * k - kappa * kappa);
}

GaussianBeamParams gaussian_beam(double k, double waist, double z)
{
    GaussianBeamParams p;
    p.rayleigh_range = k * waist * waist / 2;
    double s = z / p.rayleigh_range;
    p.width = waist * std::sqrt(1 + s * s);
    p.curvature_radius = z == 0 ? std::numeric_limits<double>::infinity()
                                : z * (1 + 1 / (s * s));
    p.gouy_angle = std::atan(s);
    return p;
}

cplx laguerre_gauss_profile(int l, int n, double r, double phi, double w)
{
    int al = std::abs(l);
    double rho2 = 2 * r * r / (w * w);
    double radial = std::pow(std::sqrt(rho2), al)
                    * std::assoc_laguerre(n, al, rho2)
                    * std::exp(-r * r / (w * w));
    return std::polar(radial, l * phi);
}

ComplexField2D synthesize(ModeSpec const& spec,
                          Grid const& grid,
                          ElectronState const& state,
                          double z,
                          SynthesisOptions const& opts)
{
    auto f = synthesize_raw(spec, grid, state, z, opts);
    double mag = std::abs(spec.amplitude);
    if (mag > 0)
    {
        cplx phase = spec.amplitude / mag;
        for (auto& v : f.samples)
        {
            v *= phase;
        }
    }
    return f;
}

ComplexField2D synthesize(std::span<ModeSpec const> specs,
                          Grid const& grid,
                          ElectronState const& state,
                          double z,
                          SynthesisOptions const& opts)
{
    if (specs.empty())
    {
        fail(ErrorKind::domain, "empty superposition");
    }
    ComplexField2D total(grid, state, z);
    for (auto const& s : specs)
    {
        auto f = synthesize_raw(s, grid, state, z, opts);
        for (std::size_t i = 0; i < f.samples.size(); ++i)
        {
            total.samples[i] += s.amplitude * f.samples[i];
        }
    }
    total.normalize();
    return total;
}

//---------------------------------------------------------------------------//
FieldGradient spectral_gradient(ComplexField2D const& field)
{
    auto const& g = field.grid;
    auto kx = fft_wavenumbers(g.nx, g.dx);
    auto ky = fft_wavenumbers(g.ny, g.dy);
    // Odd derivative: drop the unpaired Nyquist bin
    kx[g.nx / 2] = 0;
    ky[g.ny / 2] = 0;

    std::vector<cplx> spec = field.samples;
    fft2(spec, g.nx, g.ny, FftDirection::forward);
    FieldGradient out{spec, spec};
    double norm = 1.0 / g.size();
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            auto idx = g.index(ix, iy);
            out.dx[idx] *= cplx(0, kx[ix] * norm);
            out.dy[idx] *= cplx(0, ky[iy] * norm);
        }
    }
    fft2(out.dx, g.nx, g.ny, FftDirection::backward);
    fft2(out.dy, g.nx, g.ny, FftDirection::backward);
    return out;
}

DensityCurrent density_current(ComplexField2D const& field)
{
    auto grad = spectral_gradient(field);
    DensityCurrent dc;
    auto n = field.samples.size();
    dc.rho.resize(n);
    dc.jx.resize(n);
    dc.jy.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        cplx c = std::conj(field.samples[i]);
        dc.rho[i] = std::norm(field.samples[i]);
        dc.jx[i] = std::imag(c * grad.dx[i]);
        dc.jy[i] = std::imag(c * grad.dy[i]);
    }
    return dc;
}

BeamObservables observables(ComplexField2D const& field)
{
    auto const& g = field.grid;
    auto grad = spectral_gradient(field);

    double norm = 0;
    double sx = 0, sy = 0;
    double spx = 0, spy = 0;
    cplx lop = 0;
    double circ = 0;
    for (int iy = 0; iy < g.ny; ++iy)
    {
        double y = g.y(iy);
        for (int ix = 0; ix < g.nx; ++ix)
        {
            double x = g.x(ix);
            auto i = g.index(ix, iy);
            cplx psi = field.samples[i];
            cplx c = std::conj(psi);
            double rho = std::norm(psi);
            norm += rho;
            sx += x * rho;
            sy += y * rho;
            cplx tx = c * grad.dx[i];
            cplx ty = c * grad.dy[i];
            spx += tx.imag();
            spy += ty.imag();
            // psi* (-i)(x d_y - y d_x) psi
            lop += cplx(0, -1) * (x * ty - y * tx);
            // r j_phi = x j_y - y j_x
            circ += x * ty.imag() - y * tx.imag();
        }
    }
    if (!(norm > 0))
    {
        fail(ErrorKind::domain, "observables of a zero field");
    }

    BeamObservables o;
    o.canonical_oam = lop.real() / norm;
    o.operator_residual = lop.imag() / norm;
    o.circulation_oam = circ / norm;
    o.centroid = {sx / norm, sy / norm};
    o.mean_momentum = {spx / norm, spy / norm};
    o.extrinsic_oam = o.centroid.x * o.mean_momentum.y
                      - o.centroid.y * o.mean_momentum.x;
    o.intrinsic_oam = o.canonical_oam - o.extrinsic_oam;
    o.magnetic_moment = -o.canonical_oam;
    o.boundary_leakage = field.boundary_ratio() > 1e-8;
    return o;
}

BeamObservables observables(ComplexField2D const& field, ModeSpec const& spec)
{
    auto o = observables(field);
    if (spec.kind != ModeKind::bessel)
    {
        o.gouy_phase = gouy_phase(spec.l, spec.radial_index);
    }
    return o;
}

double gouy_phase(int l, int n)
{
    if (n < 0)
    {
        fail(ErrorKind::domain, "radial index must be non-negative");
    }
    return (2 * n + std::abs(l) + 1) * pi;
}

//---------------------------------------------------------------------------//
void centered_transform(ComplexField2D& field, FftDirection dir)
{
    auto& g = field.grid;
    int nx = g.nx;
    int ny = g.ny;
    double sign = dir == FftDirection::forward ? -1 : 1;
    double scale = g.dx * g.dy / units::two_pi;
    cplx global = scale * std::polar(1.0, sign * pi * (nx + ny) / 2);
    auto checker = [](int ix, int iy) { return ((ix + iy) & 1) ? -1.0 : 1.0; };
    for (int iy = 0; iy < ny; ++iy)
    {
        for (int ix = 0; ix < nx; ++ix)
        {
            field(ix, iy) *= checker(ix, iy);
        }
    }
    fft2(field.samples, nx, ny, dir);
    for (int iy = 0; iy < ny; ++iy)
    {
        for (int ix = 0; ix < nx; ++ix)
        {
            field(ix, iy) *= checker(ix, iy) * global;
        }
    }
    g.dx = units::two_pi / (nx * g.dx);
    g.dy = units::two_pi / (ny * g.dy);
    field.domain = dir == FftDirection::forward ? Domain::reciprocal
                                                : Domain::real;
}

}  // namespace evx
