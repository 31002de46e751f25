#include "axwind/series.hpp"

#include <cmath>

#include "axwind/errors.hpp"

namespace axwind {
namespace {
bool is_finite(double x) { return std::isfinite(x); }
bool is_finite(const std::complex<double>& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace

template <class T>
void Series<T>::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("series '" + label + "': dt must be > 0");
  if (samples.size() < 2) throw DomainError("series '" + label + "': need at least 2 samples");
  for (const auto& s : samples) {
    if (!is_finite(s)) throw DomainError("series '" + label + "': non-finite sample");
  }
}

template struct Series<double>;
template struct Series<std::complex<double>>;

}  // namespace axwind
