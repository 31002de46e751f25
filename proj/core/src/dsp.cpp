#include "axwind/dsp.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "axwind/constants.hpp"

namespace axwind::dsp {
namespace {

// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> transform(std::span<const std::complex<double>> x, int sign) {
  const int n = static_cast<int>(x.size());
  std::vector<std::complex<double>> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(x.size());
  if (n == 0) return out;
  auto* pin = reinterpret_cast<fftw_complex*>(in.data());
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, pin, pout, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<double> window(Window kind, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (kind == Window::Hann) {
    // Periodic Hann: exact two-bin mainlobe on DFT grids.
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
    }
  }
  return w;
}

std::vector<std::complex<double>> fft(std::span<const std::complex<double>> x) {
  return transform(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> ifft(std::span<const std::complex<double>> x) {
  auto out = transform(x, FFTW_BACKWARD);
  const double scale = out.empty() ? 1.0 : 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<std::complex<double>> rfft(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(x.size() / 2 + 1);
  if (n == 0) return out;
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

std::vector<std::complex<double>> analytic_signal(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> z(x.begin(), x.end());
  auto spec = fft(z);
  // Keep DC and Nyquist, double positive frequencies, drop negative ones.
  for (std::size_t k = 1; k < n; ++k) {
    if (2 * k < n) {
      spec[k] *= 2.0;
    } else if (2 * k > n) {
      spec[k] = 0.0;
    }
  }
  return ifft(spec);
}

}  // namespace axwind::dsp
