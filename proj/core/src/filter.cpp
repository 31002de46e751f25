#include "axwind/filter.hpp"

#include <boost/algorithm/string/predicate.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "axwind/constants.hpp"
#include "axwind/errors.hpp"
#include "axwind/parallel.hpp"

namespace axwind {
namespace {

constexpr std::size_t kMinPointsAcrossFwhm = 8;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

void check_grid(std::span<const double> omega) {
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!std::isfinite(omega[i])) throw DomainError("frequency grid contains a non-finite value");
    if (i > 0 && !(omega[i] > omega[i - 1])) throw DomainError("frequency grid must be strictly increasing");
  }
}

FilterResponse transform(const PulseSequence& seq, std::span<const double> omega, unsigned threads,
                         std::string descriptor) {
  check_grid(omega);
  FilterResponse out;
  out.omega.assign(omega.begin(), omega.end());
  out.values.resize(omega.size());
  out.magnitude.resize(omega.size());
  parallel_for(omega.size(), threads, [&](std::size_t i) {
    out.values[i] = filter_value(seq, omega[i]);
    out.magnitude[i] = std::abs(out.values[i]);
  });
  out.descriptor = std::move(descriptor);
  return out;
}

double interpolate_crossing(double x0, double y0, double x1, double y1, double level) {
  return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

}  // namespace

std::string_view to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::Ramsey: return "ramsey";
    case SequenceKind::Hahn: return "hahn";
    case SequenceKind::Cpmg: return "cpmg";
    case SequenceKind::Xy8: return "xy8";
  }
  return "?";
}

SequenceKind parse_sequence_kind(std::string_view name) {
  if (boost::iequals(name, "ramsey")) return SequenceKind::Ramsey;
  if (boost::iequals(name, "hahn")) return SequenceKind::Hahn;
  if (boost::iequals(name, "cpmg")) return SequenceKind::Cpmg;
  if (boost::iequals(name, "xy8")) return SequenceKind::Xy8;
  throw ConfigError("unknown sequence kind '" + std::string(name) + "' (ramsey|hahn|cpmg|xy8)");
}

double sin_pi(double x) {
  // Reduce to [-1, 1] so integers map to exact zeros.
  const double r = x - 2.0 * std::round(0.5 * x);
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  return std::sin(std::numbers::pi * r);
}

PulseSequence PulseSequence::build(SequenceKind kind, double tau, std::uint64_t n_pi) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("sequence duration tau must be > 0");
  const bool ok = [&] {
    switch (kind) {
      case SequenceKind::Ramsey: return n_pi == 0;
      case SequenceKind::Hahn: return n_pi == 1;
      case SequenceKind::Cpmg: return n_pi >= 1;
      case SequenceKind::Xy8: return n_pi >= 8 && n_pi % 8 == 0;
    }
    return false;
  }();
  if (!ok) {
    std::ostringstream msg;
    msg << to_string(kind) << " cannot have N_pi = " << n_pi
        << " (ramsey: 0, hahn: 1, cpmg: >= 1, xy8: multiple of 8)";
    throw ConfigError(msg.str());
  }
  return PulseSequence(kind, tau, n_pi);
}

double PulseSequence::pulse_time(std::uint64_t k) const {
  if (k < 1 || k > n_pi_) throw DomainError("pulse index out of range");
  return (static_cast<double>(k) - 0.5) * tau_ / static_cast<double>(n_pi_);
}

std::vector<double> PulseSequence::pulse_times() const {
  std::vector<double> t(n_pi_);
  for (std::uint64_t k = 1; k <= n_pi_; ++k) t[k - 1] = pulse_time(k);
  return t;
}

Segment PulseSequence::segment(std::uint64_t i) const {
  const double a = i == 0 ? 0.0 : pulse_time(i);
  const double b = i == n_pi_ ? tau_ : pulse_time(i + 1);
  return {a, b, (i % 2 == 0) ? 1 : -1};
}

int PulseSequence::toggling(double t) const {
  if (t < 0.0 || t > tau_) return 0;
  if (n_pi_ == 0) return 1;
  const double cells = t * static_cast<double>(n_pi_) / tau_ + 0.5;
  const auto passed = std::min<std::uint64_t>(n_pi_, static_cast<std::uint64_t>(std::floor(cells)));
  return passed % 2 == 0 ? 1 : -1;
}

std::string PulseSequence::describe() const {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << to_string(kind_) << "(tau=" << tau_ << " s, n_pi=" << n_pi_ << ")";
  return out.str();
}

std::vector<double> xi_grid(double tau, double xi_max, std::size_t points) {
  if (!(tau > 0.0) || !(xi_max > 0.0) || points < 2) throw DomainError("xi grid needs tau > 0, xi_max > 0, points >= 2");
  std::vector<double> w(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double xi = xi_max * static_cast<double>(i) / static_cast<double>(points - 1);
    w[i] = kTwoPi * xi / tau;
  }
  return w;
}

std::complex<double> filter_value(const PulseSequence& seq, double omega) {
  std::complex<double> sum = 0.0;
  for (std::uint64_t i = 0; i < seq.segment_count(); ++i) {
    const Segment s = seq.segment(i);
    const double width = s.end - s.start;
    const double mid = 0.5 * (s.start + s.end);
    // integral_a^b exp(i w t) dt = (b - a) exp(i w m) sinc(w (b - a) / 2)
    sum += static_cast<double>(s.sign) * width * sinc(0.5 * omega * width) * std::polar(1.0, omega * mid);
  }
  return sum;
}

FilterResponse filter_numeric(const PulseSequence& seq, std::span<const double> omega, unsigned threads) {
  return transform(seq, omega, threads, "nuclear " + seq.describe());
}

double filter_analytic_ramsey(double tau, double omega) {
  if (!(tau > 0.0)) throw DomainError("tau must be > 0");
  const double xi = omega * tau / kTwoPi;
  if (xi == 0.0) return tau;
  return tau * std::abs(sin_pi(xi) / (std::numbers::pi * xi));
}

double filter_analytic_echo_family(const PulseSequence& seq, double omega) {
  if (seq.kind() == SequenceKind::Ramsey) {
    throw ConfigError("echo-family closed form called with a Ramsey sequence");
  }
  const double n = static_cast<double>(seq.pulse_count());
  const double cell = seq.duration() / n;
  // u = w cell / 2 pi. Each cell is a +1/-1 half-cell pair, consecutive
  // cells alternate in sign:
  //   |Y| = cell sin^2(pi u / 2) / (pi u / 2) * |sin(N pi r) / sin(pi r)|,
  // with r = u + 1/2 reduced to [-1/2, 1/2].
  const double u = omega * cell / kTwoPi;
  if (u == 0.0) return 0.0;
  const double half = 0.5 * u;
  const double s = sin_pi(half);
  const double envelope = cell * s * s / (std::numbers::pi * std::abs(half));
  const double shifted = u + 0.5;
  const double r = shifted - std::round(shifted);
  const double dirichlet = r == 0.0 ? n : std::abs(sin_pi(n * r) / sin_pi(r));
  return envelope * dirichlet;
}

double filter_magnitude(const PulseSequence& seq, double omega) {
  return seq.kind() == SequenceKind::Ramsey ? filter_analytic_ramsey(seq.duration(), omega)
                                            : filter_analytic_echo_family(seq, omega);
}

FilterResponse electron_filter(const PulseSequence& probe, std::span<const double> omega, unsigned threads) {
  return transform(probe, omega, threads, "electron " + probe.describe());
}

std::vector<double> normalized_power(const FilterResponse& response, double tau) {
  std::vector<double> out(response.magnitude.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double m = response.magnitude[i] / tau;
    out[i] = m * m;
  }
  return out;
}

FilterResponse combined_response(const FilterResponse& electron, const FilterResponse& nuclear) {
  if (electron.omega != nuclear.omega) {
    throw ConfigError("combined_response: electron and nuclear filters are on different grids");
  }
  FilterResponse out;
  out.omega = electron.omega;
  out.values.resize(out.omega.size());
  out.magnitude.resize(out.omega.size());
  for (std::size_t i = 0; i < out.omega.size(); ++i) {
    out.values[i] = electron.values[i] * nuclear.values[i];
    out.magnitude[i] = std::abs(out.values[i]);
  }
  out.descriptor = "H = [" + electron.descriptor + "] x [" + nuclear.descriptor + "]";
  out.convention = nuclear.convention;
  return out;
}

PassbandReport passband_analysis(const FilterResponse& response) {
  const auto& w = response.omega;
  const auto& m = response.magnitude;
  if (w.size() < 3 || m.size() != w.size()) throw ResolutionError("passband analysis needs at least 3 grid points");
  const auto peak_it = std::max_element(m.begin(), m.end());
  const auto ip = static_cast<std::size_t>(peak_it - m.begin());
  const double peak = *peak_it;
  if (!(peak > 0.0)) throw ResolutionError("passband analysis: response is identically zero");
  const double half = 0.5 * peak;

  std::size_t i = ip;
  while (i > 0 && m[i] >= half) --i;
  const bool low_pass = m[i] >= half;
  double left = 0.0;
  if (low_pass) {
    if (w.front() != 0.0) {
      throw ResolutionError("passband analysis: main lobe extends below the grid start; extend the grid to w = 0");
    }
  } else {
    left = interpolate_crossing(w[i], m[i], w[i + 1], m[i + 1], half);
  }

  std::size_t j = ip;
  while (j + 1 < m.size() && m[j] >= half) ++j;
  if (m[j] >= half) {
    throw ResolutionError("passband analysis: main lobe extends beyond the grid end; extend the grid");
  }
  const double right = interpolate_crossing(w[j - 1], m[j - 1], w[j], m[j], half);

  const double fwhm_rad = low_pass ? 2.0 * right : right - left;
  const std::size_t across = low_pass ? 2 * j - 1 : j - i - 1;
  if (across < kMinPointsAcrossFwhm) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << "passband under-resolved: " << across << " grid points across FWHM ~"
        << units::rad_to_hz(fwhm_rad) << " Hz; need >= " << kMinPointsAcrossFwhm
        << " (grid spacing <= " << fwhm_rad / static_cast<double>(kMinPointsAcrossFwhm) << " rad/s)";
    throw ResolutionError(msg.str());
  }

  PassbandReport report;
  report.peak = peak;
  report.center_hz = low_pass ? 0.0 : units::rad_to_hz(w[ip]);
  report.fwhm_hz = units::rad_to_hz(fwhm_rad);
  report.quality = report.center_hz / report.fwhm_hz;
  return report;
}

}  // namespace axwind
