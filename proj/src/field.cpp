#include "evx/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evx/error.hpp"
#include "evx/units.hpp"

namespace evx
{
namespace
{
bool is_pow2(int n)
{
    return n > 1 && (n & (n - 1)) == 0;
}

// Keys cubic kernel, a = -1/2
double keys(double t)
{
    t = std::abs(t);
    if (t < 1)
    {
        return (1.5 * t - 2.5) * t * t + 1;
    }
    if (t < 2)
    {
        return ((-0.5 * t + 2.5) * t - 4) * t + 2;
    }
    return 0;
}

// Shift each row (or column) by a * coordinate of the other axis
void shear(ComplexField2D& f, double a, bool along_x)
{
    auto const& g = f.grid;
    int n = along_x ? g.nx : g.ny;
    int m = along_x ? g.ny : g.nx;
    auto k = fft_wavenumbers(n, along_x ? g.dx : g.dy);
    std::vector<cplx> line(n);
    for (int j = 0; j < m; ++j)
    {
        double shift = a * (along_x ? g.y(j) : g.x(j));
        for (int i = 0; i < n; ++i)
        {
            line[i] = along_x ? f(i, j) : f(j, i);
        }
        fft1(line, FftDirection::forward);
        for (int i = 0; i < n; ++i)
        {
            // The Nyquist bin has no sign; drop it to keep the shift exact
            double kk = (2 * i == n) ? 0.0 : k[i];
            line[i] *= std::polar(1.0 / n, -kk * shift);
        }
        fft1(line, FftDirection::backward);
        for (int i = 0; i < n; ++i)
        {
            (along_x ? f(i, j) : f(j, i)) = line[i];
        }
    }
}
}  // namespace

double Grid::half_width() const
{
    return 0.5 * std::min(nx * dx, ny * dy);
}

void Grid::validate() const
{
    if (!is_pow2(nx) || !is_pow2(ny))
    {
        fail(ErrorKind::domain,
             "grid sizes must be powers of two, got " + std::to_string(nx)
                 + "x" + std::to_string(ny));
    }
    if (!(dx > 0) || !(dy > 0))
    {
        fail(ErrorKind::domain, "grid pitch must be positive");
    }
}

ComplexField2D::ComplexField2D(Grid g, ElectronState s, double z_plane)
    : grid(g), samples(g.size()), state(s), z(z_plane)
{
    grid.validate();
}

double ComplexField2D::probability() const
{
    double sum = 0;
    for (auto const& v : samples)
    {
        sum += std::norm(v);
    }
    return sum * grid.cell_area();
}

double ComplexField2D::normalize()
{
    double p = probability();
    if (!(p > 0))
    {
        fail(ErrorKind::domain, "cannot normalize a zero field");
    }
    double f = 1 / std::sqrt(p);
    for (auto& v : samples)
    {
        v *= f;
    }
    return f;
}

double ComplexField2D::max_abs() const
{
    double m = 0;
    for (auto const& v : samples)
    {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double ComplexField2D::boundary_ratio() const
{
    double edge = 0;
    int nx = grid.nx;
    int ny = grid.ny;
    for (int i = 0; i < nx; ++i)
    {
        edge = std::max({edge, std::abs((*this)(i, 0)),
                         std::abs((*this)(i, ny - 1))});
    }
    for (int j = 0; j < ny; ++j)
    {
        edge = std::max({edge, std::abs((*this)(0, j)),
                         std::abs((*this)(nx - 1, j))});
    }
    double m = max_abs();
    return m > 0 ? edge / m : 0;
}

void ComplexField2D::fill(std::function<cplx(double, double)> const& f)
{
    for (int iy = 0; iy < grid.ny; ++iy)
    {
        double y = grid.y(iy);
        for (int ix = 0; ix < grid.nx; ++ix)
        {
            (*this)(ix, iy) = f(grid.x(ix), y);
        }
    }
}

double rms_difference(ComplexField2D const& a, ComplexField2D const& b)
{
    if (a.samples.size() != b.samples.size())
    {
        fail(ErrorKind::domain, "field shapes differ");
    }
    double sum = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
    {
        sum += std::norm(a.samples[i] - b.samples[i]);
    }
    return std::sqrt(sum / a.samples.size());
}

double radial_taper(double r, double r0, double r1)
{
    if (r <= r0)
    {
        return 1;
    }
    if (r >= r1)
    {
        return 0;
    }
    // C-infinity step built from exp(-1/t), so the taper adds no
    // algebraic spectral tail
    double t = (r - r0) / (r1 - r0);
    auto bump = [](double u) { return u > 0 ? std::exp(-1 / u) : 0.0; };
    double a = bump(1 - t);
    return a / (a + bump(t));
}

cplx interpolate(ComplexField2D const& f, double x, double y)
{
    auto const& g = f.grid;
    double fx = x / g.dx + g.nx / 2;
    double fy = y / g.dy + g.ny / 2;
    int ix = static_cast<int>(std::floor(fx));
    int iy = static_cast<int>(std::floor(fy));
    double tx = fx - ix, ty = fy - iy;
    cplx acc = 0;
    for (int j = -1; j <= 2; ++j)
    {
        int yy = std::clamp(iy + j, 0, g.ny - 1);
        cplx row = 0;
        for (int i = -1; i <= 2; ++i)
        {
            int xx = std::clamp(ix + i, 0, g.nx - 1);
            row += keys(i - tx) * f(xx, yy);
        }
        acc += keys(j - ty) * row;
    }
    return acc;
}

ComplexField2D rotate(ComplexField2D field, double angle)
{
    auto const& g = field.grid;
    if (g.nx != g.ny || g.dx != g.dy)
    {
        fail(ErrorKind::domain, "rotation needs a square grid");
    }
    // Quarter turns are exact index permutations
    int quarters = static_cast<int>(std::lround(angle / (units::pi / 2)));
    angle -= quarters * units::pi / 2;
    int n = g.nx;
    for (int q = 0; q < ((quarters % 4) + 4) % 4; ++q)
    {
        auto src = field.samples;
        for (int iy = 0; iy < n; ++iy)
        {
            for (int ix = 0; ix < n; ++ix)
            {
                // (x, y) -> (-y, x)
                int tx = (n - iy) % n;
                field(tx, ix) = src[g.index(ix, iy)];
            }
        }
    }
    if (angle != 0)
    {
        // Paeth decomposition: x-shear, y-shear, x-shear
        double t = -std::tan(angle / 2);
        shear(field, t, true);
        shear(field, std::sin(angle), false);
        shear(field, t, true);
    }
    return field;
}

}  // namespace evx
