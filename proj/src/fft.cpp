#include "evx/fft.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <tuple>
#include <fftw3.h>

#include "evx/error.hpp"
#include "evx/units.hpp"

namespace evx
{
namespace
{
struct PlanCache
{
    std::mutex lock;
    std::map<std::tuple<int, int, int, int>, fftw_plan> plans;
    int threads{0};

    ~PlanCache()
    {
        for (auto& [key, plan] : plans)
        {
            fftw_destroy_plan(plan);
        }
    }
};

PlanCache& cache()
{
    static PlanCache c;
    return c;
}

int env_threads()
{
    if (char const* env = std::getenv("EVX_THREADS"))
    {
        int n = std::atoi(env);
        if (n > 0)
        {
            return n;
        }
    }
    return 1;
}

void ensure_threads_locked(PlanCache& c)
{
    if (c.threads == 0)
    {
        fftw_init_threads();
        c.threads = env_threads();
        fftw_plan_with_nthreads(c.threads);
    }
}

fftw_plan get_plan(int n0, int n1, int rank, FftDirection dir)
{
    auto& c = cache();
    std::lock_guard<std::mutex> guard(c.lock);
    ensure_threads_locked(c);
    int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    auto key = std::make_tuple(n0, n1, rank, sign);
    auto it = c.plans.find(key);
    if (it != c.plans.end())
    {
        return it->second;
    }
    std::vector<cplx> scratch(static_cast<std::size_t>(n0) * n1);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = rank == 2
                         ? fftw_plan_dft_2d(n0, n1, buf, buf, sign, flags)
                         : fftw_plan_dft_1d(n1, buf, buf, sign, flags);
    if (!plan)
    {
        fail(ErrorKind::domain, "FFTW planning failed");
    }
    c.plans.emplace(key, plan);
    return plan;
}
}  // namespace

void fft2(std::span<cplx> data, int nx, int ny, FftDirection dir)
{
    if (data.size() != static_cast<std::size_t>(nx) * ny)
    {
        fail(ErrorKind::domain, "fft2 size mismatch");
    }
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(get_plan(ny, nx, 2, dir), buf, buf);
}

void fft1(std::span<cplx> data, FftDirection dir)
{
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    int n = static_cast<int>(data.size());
    fftw_execute_dft(get_plan(1, n, 1, dir), buf, buf);
}

std::vector<double> fft_wavenumbers(int n, double d)
{
    std::vector<double> k(n);
    for (int i = 0; i < n; ++i)
    {
        int m = i < (n + 1) / 2 ? i : i - n;
        k[i] = units::two_pi * m / (n * d);
    }
    return k;
}

int fft_threads()
{
    auto& c = cache();
    std::lock_guard<std::mutex> guard(c.lock);
    ensure_threads_locked(c);
    return c.threads;
}

void set_fft_threads(int n)
{
    auto& c = cache();
    std::lock_guard<std::mutex> guard(c.lock);
    ensure_threads_locked(c);
    c.threads = n > 0 ? n : 1;
    fftw_plan_with_nthreads(c.threads);
    for (auto& [key, plan] : c.plans)
    {
        fftw_destroy_plan(plan);
    }
    c.plans.clear();
}

}  // namespace evx
