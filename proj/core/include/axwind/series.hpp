#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace axwind {

/// Uniformly sampled series. TimeSeries carries real samples (field in T or
/// a dimensionless observable); EnvelopeSeries carries a complex baseband
/// envelope whose carrier is Re[env(t) exp(i w t)].
template <class T>
struct Series {
  double start = 0.0;  ///< epoch of sample 0, s
  double dt = 1.0;     ///< s
  std::vector<T> samples;
  std::string label;

  std::size_t size() const { return samples.size(); }
  double time(std::size_t i) const { return start + static_cast<double>(i) * dt; }
  double duration() const { return static_cast<double>(samples.size()) * dt; }
  /// Throws DomainError unless dt > 0, at least 2 samples and all finite.
  void validate() const;
};

using TimeSeries = Series<double>;
using EnvelopeSeries = Series<std::complex<double>>;

extern template struct Series<double>;
extern template struct Series<std::complex<double>>;

}  // namespace axwind
