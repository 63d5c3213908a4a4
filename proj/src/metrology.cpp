#include "evx/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "evx/error.hpp"
#include "evx/units.hpp"

namespace evx
{
namespace
{
using units::pi;
using units::two_pi;

int next_pow2(int n)
{
    int p = 1;
    while (p < n)
    {
        p <<= 1;
    }
    return p;
}

std::vector<double> intensity(ComplexField2D const& f)
{
    std::vector<double> out(f.samples.size());
    std::transform(f.samples.begin(), f.samples.end(), out.begin(),
                   [](cplx v) { return std::norm(v); });
    return out;
}

struct Centroid
{
    double x{0}, y{0}, total{0};
};

Centroid centroid(std::vector<double> const& img, Grid const& g)
{
    Centroid c;
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            double v = img[g.index(ix, iy)];
            c.total += v;
            c.x += v * g.x(ix);
            c.y += v * g.y(iy);
        }
    }
    if (c.total > 0)
    {
        c.x /= c.total;
        c.y /= c.total;
    }
    return c;
}

std::vector<cplx> gaussian_filtered(std::vector<cplx> data,
                                    Grid const& g,
                                    double sx,
                                    double sy)
{
    auto kx = fft_wavenumbers(g.nx, 1.0);
    auto ky = fft_wavenumbers(g.ny, 1.0);
    fft2(data, g.nx, g.ny, FftDirection::forward);
    double norm = 1.0 / g.size();
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            double e = 0.5 * (sx * sx * kx[ix] * kx[ix]
                              + sy * sy * ky[iy] * ky[iy]);
            data[g.index(ix, iy)] *= norm * std::exp(-e);
        }
    }
    fft2(data, g.nx, g.ny, FftDirection::backward);
    return data;
}

ChargeReadout magnitude_only(int m)
{
    return {m, 0};
}

}  // namespace

//---------------------------------------------------------------------------//
double OamSpectrum::weight(int l) const
{
    auto it = weights.find(l);
    return it == weights.end() ? 0.0 : it->second;
}

int OamSpectrum::dominant() const
{
    auto it = std::max_element(
        weights.begin(), weights.end(),
        [](auto const& a, auto const& b) { return a.second < b.second; });
    return it == weights.end() ? 0 : it->first;
}

OamSpectrum azimuthal_decompose(ComplexField2D const& field,
                                Vec2 axis,
                                DecomposeOptions const& opts)
{
    auto const& g = field.grid;
    double pitch = std::min(g.dx, g.dy);
    double ax = axis.x / g.dx + g.nx / 2;
    double ay = axis.y / g.dy + g.ny / 2;
    // Keep the 4x4 stencil inside the grid
    double rmax = std::min({(ax - 2) * g.dx, (g.nx - 3 - ax) * g.dx,
                            (ay - 2) * g.dy, (g.ny - 3 - ay) * g.dy});
    if (!(rmax > 4 * pitch))
    {
        fail(ErrorKind::domain, "decomposition axis is too close to the "
                                "grid boundary");
    }
    double total = 0, outside = 0;
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            double p = std::norm(field(ix, iy));
            total += p;
            if (std::hypot(g.x(ix) - axis.x, g.y(iy) - axis.y) > rmax)
            {
                outside += p;
            }
        }
    }
    if (!(total > 0))
    {
        fail(ErrorKind::domain, "cannot decompose a zero field");
    }
    if (outside > opts.truncation_tolerance * total)
    {
        fail(ErrorKind::domain,
             "rings about the axis truncate " + std::to_string(outside / total)
                 + " of the power");
    }

    int lmax = opts.l_max;
    double dr = opts.radial_step * pitch;
    int nr = static_cast<int>(rmax / dr);
    std::vector<double> power(2 * lmax + 1, 0.0);
    double out_power = 0;
    std::vector<cplx> ring;
    for (int j = 0; j < nr; ++j)
    {
        double r = (j + 0.5) * dr;
        int m = next_pow2(std::max(4 * (2 * lmax + 1),
                                   static_cast<int>(4 * pi * r / pitch)));
        m = std::min(m, 1 << 14);
        ring.resize(m);
        for (int q = 0; q < m; ++q)
        {
            double phi = two_pi * q / m;
            double x = axis.x + r * std::cos(phi);
            double y = axis.y + r * std::sin(phi);
            ring[q] = interpolate(field, x, y);
        }
        fft1(ring, FftDirection::forward);
        double w = r * dr / (static_cast<double>(m) * m);
        for (int q = 0; q < m; ++q)
        {
            int l = q < m / 2 ? q : q - m;
            double p = std::norm(ring[q]) * w;
            if (std::abs(l) <= lmax)
            {
                power[l + lmax] += p;
            }
            else
            {
                out_power += p;
            }
        }
    }
    double in_power = std::accumulate(power.begin(), power.end(), 0.0);
    OamSpectrum s;
    s.axis = axis;
    s.out_of_range = out_power / (in_power + out_power);
    for (int l = -lmax; l <= lmax; ++l)
    {
        double w = power[l + lmax] / in_power;
        s.weights[l] = w;
        s.mean_lz += l * w;
    }
    return s;
}

//---------------------------------------------------------------------------//
ForkReadout fork_readout(ComplexField2D const& field,
                         BinaryForkHologram const& probe)
{
    auto ff = far_field(apply(probe, field));
    auto img = intensity(ff);
    auto const& g = ff.grid;
    double kx = two_pi / probe.period;
    double window = 0.5 * kx;
    double dk2 = g.dx * g.dy;

    ForkReadout out;
    std::array<double, 7> order_power{}, peak_fraction{};
    for (int n = -3; n <= 3; ++n)
    {
        double cx = -n * kx;
        int icx = static_cast<int>(std::lround(cx / g.dx)) + g.nx / 2;
        int icy = g.ny / 2;
        if (icx < 0 || icx >= g.nx)
        {
            fail(ErrorKind::domain, "diffraction order falls off the grid");
        }
        double p = 0, r2 = 0, peak = 0;
        for (int iy = 0; iy < g.ny; ++iy)
        {
            for (int ix = 0; ix < g.nx; ++ix)
            {
                double dx = g.x(ix) - cx, dy = g.y(iy);
                double d2 = dx * dx + dy * dy;
                if (d2 > window * window)
                {
                    continue;
                }
                double v = img[g.index(ix, iy)];
                p += v;
                r2 += v * d2;
                peak = std::max(peak, v);
            }
        }
        int i = n + 3;
        order_power[i] = p;
        if (p > 0)
        {
            out.center_intensity[i] = img[g.index(icx, icy)] / p / dk2;
            out.rms_radius[i] = std::sqrt(r2 / p);
            peak_fraction[i] = peak / p / dk2;
        }
    }

    double pmax = *std::max_element(order_power.begin(), order_power.end());
    std::vector<int> present;
    for (int i = 0; i < 7; ++i)
    {
        if (order_power[i] > 1e-6 * pmax)
        {
            present.push_back(i);
        }
    }
    std::sort(present.begin(), present.end(), [&](int a, int b) {
        return out.center_intensity[a] > out.center_intensity[b];
    });
    int best = present.front();
    bool bright_core = out.center_intensity[best]
                       > 0.2 * peak_fraction[best];
    if (bright_core)
    {
        if (present.size() > 1
            && out.center_intensity[present[1]]
                   >= 0.9 * out.center_intensity[best])
        {
            fail(ErrorKind::ambiguity,
                 "two diffraction orders have comparable central intensity");
        }
        out.order = best - 3;
        out.charge = -out.order * probe.l0;
        return out;
    }

    // Every order is a doughnut. Order N carries l + N l0, and its squared
    // k-space radius is affine in (l + N l0)^2: fit over candidate l
    if (present.size() < 3)
    {
        fail(ErrorKind::measurement, "too few diffraction orders to fit");
    }
    double best_res = std::numeric_limits<double>::infinity();
    int best_l = 0;
    for (int l = -16; l <= 16; ++l)
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = static_cast<int>(present.size());
        for (int i : present)
        {
            double x = std::pow(l + (i - 3) * probe.l0, 2);
            double y = out.rms_radius[i] * out.rms_radius[i];
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double den = n * sxx - sx * sx;
        if (den <= 0)
        {
            continue;
        }
        double b = (n * sxy - sx * sy) / den;
        double a = (sy - b * sx) / n;
        if (b <= 0)
        {
            continue;
        }
        double res = 0;
        for (int i : present)
        {
            double x = std::pow(l + (i - 3) * probe.l0, 2);
            double y = out.rms_radius[i] * out.rms_radius[i];
            res += (y - a - b * x) * (y - a - b * x);
        }
        if (res < best_res)
        {
            best_res = res;
            best_l = l;
        }
    }
    out.charge = best_l;
    out.order = 0;
    out.reduced_confidence = true;
    return out;
}

//---------------------------------------------------------------------------//
std::vector<double> smooth(std::vector<double> const& image,
                           Grid const& grid,
                           double sigma_pixels)
{
    if (sigma_pixels <= 0)
    {
        return image;
    }
    std::vector<cplx> data(image.begin(), image.end());
    data = gaussian_filtered(std::move(data), grid, sigma_pixels,
                             sigma_pixels);
    std::vector<double> out(image.size());
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        out[i] = data[i].real();
    }
    return out;
}

std::vector<std::size_t> find_spots(std::vector<double> const& image,
                                    Grid const& g,
                                    double threshold)
{
    double vmax = *std::max_element(image.begin(), image.end());
    std::vector<std::size_t> spots;
    for (int iy = 1; iy + 1 < g.ny; ++iy)
    {
        for (int ix = 1; ix + 1 < g.nx; ++ix)
        {
            auto i = g.index(ix, iy);
            double v = image[i];
            if (v < threshold * vmax)
            {
                continue;
            }
            bool is_max = true;
            for (int dy = -1; dy <= 1 && is_max; ++dy)
            {
                for (int dx = -1; dx <= 1; ++dx)
                {
                    if (dx == 0 && dy == 0)
                    {
                        continue;
                    }
                    auto j = g.index(ix + dx, iy + dy);
                    // Plateaus resolve to their first node
                    if (image[j] > v || (image[j] == v && j < i))
                    {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max)
            {
                spots.push_back(i);
            }
        }
    }
    return spots;
}

std::vector<double> source_size_blur(std::vector<double> const& intensity,
                                     Grid const& grid,
                                     double sigma)
{
    if (sigma < 0)
    {
        fail(ErrorKind::domain, "source size must be non-negative");
    }
    if (intensity.size() != grid.size())
    {
        fail(ErrorKind::domain, "intensity map does not match the grid");
    }
    if (sigma == 0)
    {
        return intensity;
    }
    std::vector<cplx> data(intensity.begin(), intensity.end());
    data = gaussian_filtered(std::move(data), grid, sigma / grid.dx,
                             sigma / grid.dy);
    std::vector<double> out(intensity.size());
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        out[i] = data[i].real();
    }
    return out;
}

//---------------------------------------------------------------------------//
TriangleReadout triangular_aperture_count(ComplexField2D const& field,
                                          TriangleAperture const& triangle,
                                          SpotOptions const& opts)
{
    auto const& g = field.grid;
    // Equilateral triangle centred on the origin, first vertex along
    // +y rotated by triangle.rotation
    double circum = triangle.side / std::sqrt(3.0);
    double inradius = circum / 2;
    std::array<double, 3> nx{}, ny{};
    for (int v = 0; v < 3; ++v)
    {
        // Outward edge normals point away from each vertex
        double a = pi / 2 + triangle.rotation + pi + two_pi * v / 3;
        nx[v] = std::cos(a);
        ny[v] = std::sin(a);
    }
    auto masked = field;
    int const sub = 4;
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            int inside = 0;
            for (int j = 0; j < sub; ++j)
            {
                double y = g.y(iy) + ((j + 0.5) / sub - 0.5) * g.dy;
                for (int i = 0; i < sub; ++i)
                {
                    double x = g.x(ix) + ((i + 0.5) / sub - 0.5) * g.dx;
                    bool in = true;
                    for (int v = 0; v < 3; ++v)
                    {
                        in = in && (x * nx[v] + y * ny[v] <= inradius);
                    }
                    inside += in;
                }
            }
            masked(ix, iy) *= static_cast<double>(inside) / (sub * sub);
        }
    }
    auto ff = far_field(masked);
    auto img = smooth(intensity(ff), ff.grid, opts.smoothing);
    auto spots = find_spots(img, ff.grid, opts.threshold);
    TriangleReadout out;
    out.spots = static_cast<int>(spots.size());
    double m = (std::sqrt(1.0 + 8.0 * out.spots) - 1) / 2;
    int mi = static_cast<int>(std::lround(m));
    if (out.spots == 0 || mi * (mi + 1) / 2 != out.spots)
    {
        fail(ErrorKind::measurement,
             std::to_string(out.spots)
                 + " spots do not form a triangular lattice");
    }
    out.readout = magnitude_only(mi - 1);
    if (mi > 1)
    {
        // Third-harmonic moment of the spot positions in the triangle frame
        auto const& fg = ff.grid;
        double cx = 0, cy = 0, wsum = 0;
        for (auto i : spots)
        {
            double w = img[i];
            cx += w * fg.x(static_cast<int>(i % fg.nx));
            cy += w * fg.y(static_cast<int>(i / fg.nx));
            wsum += w;
        }
        cx /= wsum;
        cy /= wsum;
        cplx rot = std::polar(1.0, -triangle.rotation);
        cplx moment = 0;
        double scale = 0;
        for (auto i : spots)
        {
            cplx p(fg.x(static_cast<int>(i % fg.nx)) - cx,
                   fg.y(static_cast<int>(i / fg.nx)) - cy);
            p *= rot;
            moment += img[i] * p * p * p;
            scale += img[i] * std::pow(std::abs(p), 3);
        }
        // The lattice points along +-x of the triangle frame: +1 for +x
        out.orientation = moment.real() / scale;
        out.readout.sign = out.orientation > 0 ? -1 : 1;
    }
    return out;
}

//---------------------------------------------------------------------------//
KnifeEdgeShift knife_edge_shift(ComplexField2D const& field,
                                double edge_azimuth)
{
    auto full = far_field(field);
    auto cut = far_field(apply(KnifeEdge{edge_azimuth, 0}, field));
    auto c0 = centroid(intensity(full), full.grid);
    auto c1 = centroid(intensity(cut), cut.grid);
    KnifeEdgeShift out;
    out.displacement = {c1.x - c0.x, c1.y - c0.y};
    double nx = std::cos(edge_azimuth), ny = std::sin(edge_azimuth);
    out.along_normal = out.displacement.x * nx + out.displacement.y * ny;
    out.perpendicular = -out.displacement.x * ny + out.displacement.y * nx;
    return out;
}

//---------------------------------------------------------------------------//
LobeReadout astigmatic_lobes(ComplexField2D const& field,
                             AstigmaticLens const& lens,
                             SpotOptions const& opts)
{
    auto out_field = astigmatic_convert(field, lens);
    auto raw = intensity(out_field);
    auto const& g = out_field.grid;
    auto img = smooth(raw, g, opts.smoothing);
    auto spots = find_spots(img, g, opts.threshold);
    LobeReadout out;
    out.lobes = static_cast<int>(spots.size());
    if (out.lobes == 0)
    {
        fail(ErrorKind::measurement, "no lobes resolved");
    }
    out.readout = magnitude_only(out.lobes - 1);
    if (out.lobes == 1)
    {
        return out;
    }
    auto c = centroid(raw, g);
    double sxx = 0, syy = 0, sxy = 0;
    for (int iy = 0; iy < g.ny; ++iy)
    {
        for (int ix = 0; ix < g.nx; ++ix)
        {
            double v = raw[g.index(ix, iy)];
            double dx = g.x(ix) - c.x, dy = g.y(iy) - c.y;
            sxx += v * dx * dx;
            syy += v * dy * dy;
            sxy += v * dx * dy;
        }
    }
    double axis = 0.5 * std::atan2(2 * sxy, sxx - syy);
    double rel = std::remainder(axis - lens.axis_angle, pi);
    out.orientation = rel;
    if (std::abs(std::abs(rel) - pi / 4) > pi / 8)
    {
        fail(ErrorKind::measurement,
             "lobe pattern is not diagonal to the lens axis");
    }
    out.readout.sign = rel > 0 ? 1 : -1;
    return out;
}

//---------------------------------------------------------------------------//
std::vector<cplx> mpi_mask(MpiLayout const& layout, Grid const& g)
{
    std::vector<cplx> mask(g.size(), 0.0);
    double rad = layout.diameter / 2;
    int const sub = 4;
    for (int p = 0; p < layout.pinholes; ++p)
    {
        double a = two_pi * p / layout.pinholes;
        double px = layout.radius * std::cos(a);
        double py = layout.radius * std::sin(a);
        int ix0 = static_cast<int>(std::floor((px - rad) / g.dx)) + g.nx / 2
                  - 1;
        int ix1 = static_cast<int>(std::ceil((px + rad) / g.dx)) + g.nx / 2
                  + 1;
        int iy0 = static_cast<int>(std::floor((py - rad) / g.dy)) + g.ny / 2
                  - 1;
        int iy1 = static_cast<int>(std::ceil((py + rad) / g.dy)) + g.ny / 2
                  + 1;
        if (ix0 < 0 || iy0 < 0 || ix1 >= g.nx || iy1 >= g.ny)
        {
            fail(ErrorKind::layout, "pinhole falls outside the grid");
        }
        for (int iy = iy0; iy <= iy1; ++iy)
        {
            for (int ix = ix0; ix <= ix1; ++ix)
            {
                int inside = 0;
                for (int j = 0; j < sub; ++j)
                {
                    double y = g.y(iy) + ((j + 0.5) / sub - 0.5) * g.dy;
                    for (int i = 0; i < sub; ++i)
                    {
                        double x = g.x(ix) + ((i + 0.5) / sub - 0.5) * g.dx;
                        inside += std::hypot(x - px, y - py) <= rad;
                    }
                }
                mask[g.index(ix, iy)] += static_cast<double>(inside)
                                         / (sub * sub);
            }
        }
    }
    return mask;
}

OamSpectrum mpi_spectrum(ComplexField2D const& field, MpiLayout const& layout)
{
    int n = layout.pinholes;
    if (n < 3)
    {
        fail(ErrorKind::layout, "need at least three pinholes");
    }
    double d = layout.diameter;
    double chord = 2 * layout.radius * std::sin(pi / n);
    if (!(d > 0) || chord <= d)
    {
        fail(ErrorKind::layout, "pinholes overlap");
    }
    // Autocorrelation peaks sit at r_j - r_k; each has radius d
    std::vector<cplx> pos(n);
    for (int j = 0; j < n; ++j)
    {
        pos[j] = std::polar(layout.radius, two_pi * j / n);
    }
    std::vector<cplx> seps{0};
    for (int j = 0; j < n; ++j)
    {
        for (int k = 0; k < n; ++k)
        {
            if (j != k)
            {
                seps.push_back(pos[j] - pos[k]);
            }
        }
    }
    for (std::size_t a = 0; a < seps.size(); ++a)
    {
        for (std::size_t b = a + 1; b < seps.size(); ++b)
        {
            if (std::abs(seps[a] - seps[b]) <= 2 * d)
            {
                fail(ErrorKind::layout, "autocorrelation peaks overlap");
            }
        }
    }

    auto masked = field;
    auto mask = mpi_mask(layout, field.grid);
    for (std::size_t i = 0; i < mask.size(); ++i)
    {
        masked.samples[i] *= mask[i];
    }
    auto ff = far_field(masked);
    for (auto& v : ff.samples)
    {
        v = std::norm(v);
    }
    auto ac = near_field(ff);
    auto const& g = ac.grid;
    if (std::abs(seps.back().real()) + d > g.half_width()
        || 2 * layout.radius + d > g.half_width())
    {
        fail(ErrorKind::layout, "autocorrelation exceeds the grid");
    }
    auto peak = [&](cplx at) {
        cplx acc = 0;
        int cx = static_cast<int>(std::lround(at.real() / g.dx)) + g.nx / 2;
        int cy = static_cast<int>(std::lround(at.imag() / g.dy)) + g.ny / 2;
        int span = static_cast<int>(std::ceil(d / g.dx)) + 1;
        for (int iy = cy - span; iy <= cy + span; ++iy)
        {
            for (int ix = cx - span; ix <= cx + span; ++ix)
            {
                if (std::hypot(g.x(ix) - at.real(), g.y(iy) - at.imag()) <= d)
                {
                    acc += ac(ix, iy);
                }
            }
        }
        return acc;
    };
    // p_j p_0^* from the (j, 0) peaks; |p_0|^2 from a closed triangle
    std::vector<cplx> cross(n);
    for (int j = 1; j < n; ++j)
    {
        cross[j] = peak(pos[j] - pos[0]);
    }
    double p21 = std::abs(peak(pos[2] - pos[1]));
    if (!(p21 > 0))
    {
        fail(ErrorKind::measurement, "pinhole signal vanished");
    }
    double c0 = std::sqrt(std::abs(cross[1]) * std::abs(cross[2]) / p21);
    std::vector<cplx> c(n);
    c[0] = c0;
    for (int j = 1; j < n; ++j)
    {
        c[j] = cross[j] / c0;
    }

    OamSpectrum s;
    s.modulus = n;
    double total = 0;
    std::vector<double> w(n);
    for (int m = 0; m < n; ++m)
    {
        cplx acc = 0;
        for (int j = 0; j < n; ++j)
        {
            acc += c[j] * std::polar(1.0, -two_pi * m * j / n);
        }
        w[m] = std::norm(acc);
        total += w[m];
    }
    for (int m = 0; m < n; ++m)
    {
        int l = m > n / 2 ? m - n : m;
        s.weights[l] = w[m] / total;
        s.mean_lz += l * w[m] / total;
    }
    return s;
}

//---------------------------------------------------------------------------//
SpiralImages spiral_phase_images(ComplexField2D const& exit_wave,
                                 int stop_pixels)
{
    auto ff = far_field(exit_wave);
    auto const& g = ff.grid;
    auto filtered = [&](int sign) {
        auto f = ff;
        for (int iy = 0; iy < g.ny; ++iy)
        {
            for (int ix = 0; ix < g.nx; ++ix)
            {
                int mx = ix - g.nx / 2, my = iy - g.ny / 2;
                if (mx * mx + my * my <= stop_pixels * stop_pixels)
                {
                    f(ix, iy) = 0;
                    continue;
                }
                f(ix, iy) *= std::polar(1.0, sign * std::atan2(g.y(iy),
                                                               g.x(ix)));
            }
        }
        return intensity(near_field(f));
    };
    SpiralImages out;
    out.rho_plus = filtered(1);
    out.rho_minus = filtered(-1);
    auto n = out.rho_plus.size();
    out.sum.resize(n);
    out.diff.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        out.sum[i] = out.rho_plus[i] + out.rho_minus[i];
        out.diff[i] = out.rho_plus[i] - out.rho_minus[i];
    }
    return out;
}

}  // namespace evx
