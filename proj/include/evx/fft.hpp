#pragma once

#include <complex>
#include <span>
#include <vector>

namespace evx
{
using cplx = std::complex<double>;

enum class FftDirection
{
    forward,  //!< exp(-i k x)
    backward,  //!< exp(+i k x), unnormalized
};

// In-place 2-D transform of a row-major ny x nx array
void fft2(std::span<cplx> data, int nx, int ny, FftDirection dir);

// In-place 1-D transform
void fft1(std::span<cplx> data, FftDirection dir);

// Angular wavenumbers 2*pi*f in FFT (unshifted) order for n samples of pitch d
std::vector<double> fft_wavenumbers(int n, double d);

// Number of FFT threads: EVX_THREADS if set, else 1
int fft_threads();
void set_fft_threads(int n);

}  // namespace evx
