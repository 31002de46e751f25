// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Tolerances are fixed here and never read from the environment.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "axwind/constants.hpp"
#include "axwind/detection.hpp"
#include "axwind/errors.hpp"
#include "axwind/filter.hpp"
#include "axwind/montecarlo.hpp"
#include "axwind/physics.hpp"
#include "axwind/sensitivity.hpp"
#include "axwind/transduction.hpp"
#include "axwind/wind.hpp"
#include "oracle_values.hpp"

namespace axwind::acceptance {
namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[fail] ";
    }
    detail << what << "; ";
  }
};

std::string fmt(double x, int digits = 6) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(digits);
  s << x;
  return s.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const HaloModel& shm() { return ParameterTable::builtin().halo("shm"); }
const IsotopeParams& bismuth() { return ParameterTable::builtin().isotope("Bi209"); }
const IsotopeParams& phosphorus() { return ParameterTable::builtin().isotope("P31"); }

constexpr double kSiderealDay = kTwoPi / kSiderealRate;
constexpr double kHalfPi = 0.25 * kTwoPi;

SensorStack fig4_stack() {
  SensorStack s = SensorStack::for_isotope(bismuth());
  s.ensemble_size = 1e6;
  s.quality_factor = 1e5;
  s.entanglement = EntanglementModel::Ideal;
  s.t_obs = kYearSeconds;
  return s;
}

// 1. Closed forms against the piecewise-exact transform.
void filter_equivalence(Outcome& out) {
  constexpr double kRelTol = 1e-9;
  constexpr std::size_t kPoints = 2048;
  struct Case {
    SequenceKind kind;
    std::uint64_t n;
  };
  const Case cases[] = {{SequenceKind::Ramsey, 0}, {SequenceKind::Hahn, 1}, {SequenceKind::Cpmg, 4},
                        {SequenceKind::Cpmg, 8},   {SequenceKind::Cpmg, 16}, {SequenceKind::Xy8, 8}};
  const double tau = 1.0;
  for (const auto& c : cases) {
    const auto seq = PulseSequence::build(c.kind, tau, c.n);
    const double xi_max = 2.0 * static_cast<double>(std::max<std::uint64_t>(c.n, 1));
    const auto omega = xi_grid(tau, xi_max, kPoints);
    const auto numeric = filter_numeric(seq, omega);
    double worst = 0.0;
    for (std::size_t i = 0; i < kPoints; ++i) {
      const double a = filter_magnitude(seq, omega[i]);
      // Near exact zeros both sides are rounding noise; measure against 1e-6 tau there.
      const double scale = std::max(numeric.magnitude[i], 1e-6 * tau);
      worst = std::max(worst, std::abs(a - numeric.magnitude[i]) / scale);
    }
    out.check(worst < kRelTol, seq.describe() + " max rel err " + fmt(worst, 3));
  }
}

// Index of the first local minimum of |Y| after the origin.
std::size_t first_zero(const FilterResponse& r) {
  for (std::size_t i = 1; i + 1 < r.magnitude.size(); ++i)
    if (r.magnitude[i] <= r.magnitude[i - 1] && r.magnitude[i] <= r.magnitude[i + 1]) return i;
  return r.magnitude.size();
}

// 2. Landmarks of the normalized filter plots.
void filter_landmarks(Outcome& out) {
  constexpr double kCentreRatioTol = 0.05;
  constexpr double kQualityFactor = 2.0;
  const double tau = 1.0;
  const auto grid = xi_grid(tau, 4.0, 2048);
  const double bin = 4.0 / 2047.0;

  const auto ramsey = filter_numeric(PulseSequence::build(SequenceKind::Ramsey, tau, 0), grid);
  const double xr = grid[first_zero(ramsey)] / kTwoPi;
  out.check(std::abs(xr - 1.0) <= bin, "Ramsey first zero xi=" + fmt(xr));

  // Hahn vanishes at the origin too; start the search past it.
  auto hahn = filter_numeric(PulseSequence::build(SequenceKind::Hahn, tau, 1), grid);
  std::size_t i = 1;
  while (i + 1 < hahn.magnitude.size() && hahn.magnitude[i + 1] >= hahn.magnitude[i]) ++i;
  hahn.magnitude.erase(hahn.magnitude.begin(), hahn.magnitude.begin() + static_cast<std::ptrdiff_t>(i));
  const double xh = grid[i + first_zero(hahn)] / kTwoPi;
  out.check(std::abs(xh - 2.0) <= bin, "Hahn first zero xi=" + fmt(xh));

  PassbandReport pb[2];
  const std::uint64_t ns[2] = {8, 16};
  for (int k = 0; k < 2; ++k) {
    const auto seq = PulseSequence::build(SequenceKind::Cpmg, tau, ns[k]);
    pb[k] = passband_analysis(filter_numeric(seq, xi_grid(tau, 2.0 * static_cast<double>(ns[k]), 2048)));
  }
  const double ratio = pb[1].center_hz / pb[0].center_hz;
  out.check(std::abs(ratio - 2.0) <= 2.0 * kCentreRatioTol, "f_c(16)/f_c(8)=" + fmt(ratio));
  for (int k = 0; k < 2; ++k) {
    const double n = static_cast<double>(ns[k]);
    const double q = pb[k].quality;
    out.check(q >= n / kQualityFactor && q <= n * kQualityFactor,
              "CPMG" + std::to_string(ns[k]) + " Q_f=" + fmt(q, 4) + " (N/Q=" + fmt(n / q, 3) + ")");
  }
}

// 3. Spin-lock FM triplet.
void spin_lock_triplet(Outcome& out) {
  constexpr double kSymmetryTol = 0.01;
  constexpr double kRatioTol = 0.05;
  const double rabi = kTwoPi * 50e3;
  const double omega_a = kTwoPi * 5e3;
  for (double beta : {0.01, 0.1}) {
    const auto s = spin_lock_series(rabi, omega_a, beta * omega_a, 10e-3, 1e-6);
    const auto p = psd(s, dsp::Window::Rectangular);
    std::vector<std::size_t> peaks;
    for (std::size_t k = 1; k + 1 < p.density.size(); ++k)
      if (p.density[k] > p.density[k - 1] && p.density[k] >= p.density[k + 1]) peaks.push_back(k);
    std::sort(peaks.begin(), peaks.end(), [&](auto a, auto b) { return p.density[a] > p.density[b]; });
    if (peaks.size() < 3) {
      out.check(false, "fewer than three spectral peaks at beta=" + fmt(beta));
      continue;
    }
    std::vector<double> f{p.frequency_hz[peaks[0]], p.frequency_hz[peaks[1]], p.frequency_hz[peaks[2]]};
    std::sort(f.begin(), f.end());
    const bool placed = std::abs(f[0] - 45e3) <= p.df && std::abs(f[1] - 50e3) <= p.df && std::abs(f[2] - 55e3) <= p.df;
    out.check(placed, "beta=" + fmt(beta) + " peaks " + fmt(f[0]) + "/" + fmt(f[1]) + "/" + fmt(f[2]) + " Hz");
    const auto at = [&](double hz) { return p.density[static_cast<std::size_t>(std::lround(hz / p.df))]; };
    const double lower = at(45e3);
    const double upper = at(55e3);
    const double carrier = at(50e3);
    out.check(rel(lower, upper) < kSymmetryTol, "sideband asymmetry " + fmt(rel(lower, upper), 3));
    const double expected = 0.25 * beta * beta;
    const double measured = 0.5 * (lower + upper) / carrier;
    out.check(rel(measured, expected) < kRatioTol, "sideband/carrier / (beta/2)^2 = " + fmt(measured / expected));
  }
}

// 4. Sidereal line and annual sidebands of the demodulated envelope.
void sidereal_fingerprint(Outcome& out) {
  constexpr double kSidebandTol = 0.10;
  WindOptions opts;
  opts.phase_renewal = false;
  const LabSite equator{0.0, 0.0, 0.0};
  const WindDirection equatorial{kHalfPi, 0.0};

  HaloModel flat = shm();
  flat.annual_depth = 0.0;
  const auto short_env = wind_envelope_series(1e-10, 1e-12, flat, bismuth(), equator, equatorial,
                                              4.0 * kSiderealDay, kSiderealDay / 144.0, 7, opts);
  const auto short_spec = envelope_spectrum(short_env);
  double dominant = -1.0;
  double best = -1.0;
  for (const auto& line : short_spec.lines)
    if (line.omega > 0.5 * short_spec.bin_width && line.amplitude > best) {
      best = line.amplitude;
      dominant = line.omega;
    }
  out.check(std::abs(dominant - kSiderealRate) <= short_spec.bin_width,
            "4-day dominant line " + fmt(dominant / kSiderealRate) + " Omega_star");

  HaloModel modulated = shm();
  modulated.annual_depth = 0.1;
  SpectrumOptions so;
  so.require_annual = true;
  const auto long_env = wind_envelope_series(1e-10, 1e-12, modulated, bismuth(), equator, equatorial,
                                             4.0 * kYearSeconds, kSiderealDay / 24.0, 7, opts);
  const auto spec = envelope_spectrum(long_env, so);
  const auto nearest = [&](double omega) {
    const SpectralLine* hit = nullptr;
    for (const auto& line : spec.lines)
      if (std::abs(line.omega - omega) <= spec.bin_width && (!hit || line.amplitude > hit->amplitude)) hit = &line;
    return hit;
  };
  const auto* centre = nearest(kSiderealRate);
  const auto* low = nearest(kSiderealRate - kAnnualRate);
  const auto* high = nearest(kSiderealRate + kAnnualRate);
  if (!centre || !low || !high) {
    out.check(false, "4-year triplet lines not all found");
    return;
  }
  const double half_eps = 0.5 * modulated.annual_depth;
  out.check(rel(low->amplitude / centre->amplitude, half_eps) < kSidebandTol,
            "lower sideband ratio " + fmt(low->amplitude / centre->amplitude));
  out.check(rel(high->amplitude / centre->amplitude, half_eps) < kSidebandTol,
            "upper sideband ratio " + fmt(high->amplitude / centre->amplitude));
}

// 5. Literal SNR-ratio formula against independently computed channel SNRs.
void snr_identity(Outcome& out) {
  constexpr double kRelTol = 1e-12;
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const StackingRule rule;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    SensorStack s = SensorStack::for_isotope(u(rng) < 0.5 ? bismuth() : phosphorus());
    s.ensemble_size = std::pow(10.0, 6.0 * u(rng));
    s.quality_factor = std::pow(10.0, 5.0 * u(rng));
    s.noise_electron = 1e-16 * std::pow(10.0, 2.0 * u(rng));
    s.noise_nuclear = 1e-13 * std::pow(10.0, 2.0 * u(rng));
    s.t2_electron = 0.01 + 2.0 * u(rng);
    s.t2_nuclear = 0.01 + 10.0 * u(rng);
    s.t_obs = 1e5 + kYearSeconds * u(rng);
    const double mass = std::pow(10.0, -16.0 + 10.0 * u(rng));
    const double omega = axion_angular_frequency(mass);
    const auto choice = match_protocol(static_cast<Protocol>(rng() % 3), omega, s.t2_nuclear);
    s.sequence = *choice.sequence;

    const double tau_a = axion_coherence_time(mass, shm());
    const double b = axion_field_amplitude(1e-10, shm(), s.isotope);
    const auto e = channel_snr(Channel::Electron, hybrid_gain(s, omega) * b, s.noise_electron,
                               effective_integration(s.t2_electron, tau_a, s.t_obs), rule);
    const auto n = channel_snr(Channel::Nuclear, b, s.noise_nuclear,
                               effective_integration(s.t2_nuclear, tau_a, s.t_obs), rule);
    worst = std::max(worst, rel(snr_ratio(s, omega, shm(), rule), e.total / n.total));
  }
  out.check(worst < kRelTol, "1000 stacks, max rel err " + fmt(worst, 3));
}

// 6. Coherence time against the constants oracle and its mass invariance.
void axion_timescales(Outcome& out) {
  constexpr double kOracleTol = 1e-3;
  constexpr double kInvarianceTol = 1e-12;
  const double tau = axion_coherence_time(1e-12, shm());
  out.check(rel(tau, oracle::kTauA1e12) < kOracleTol,
            "tau_a(1e-12 eV)=" + fmt(tau, 8) + " s vs oracle " + fmt(oracle::kTauA1e12, 8));
  double worst = 0.0;
  for (int d = 0; d <= 100; ++d) {
    const double m = std::pow(10.0, -16.0 + 0.1 * d);
    worst = std::max(worst, rel(axion_coherence_time(m, shm()) * axion_angular_frequency(m), oracle::kTauTimesOmega));
  }
  out.check(worst < kInvarianceTol, "tau_a*omega_a spread over 1e-16..1e-6 eV " + fmt(worst, 3));
}

// 7. Each factor of the analytic chain scales g5 exactly.
void scaling_ladder(Outcome& out) {
  constexpr double kRelTol = 1e-12;
  const double mass = 1e-13;
  const SensorStack base = fig4_stack();
  const double g0 = five_sigma_threshold(mass, base, Protocol::Xy8, shm()).g5;
  const auto ratio_for = [&](const std::function<void(SensorStack&)>& edit) {
    SensorStack s = base;
    edit(s);
    return five_sigma_threshold(mass, s, Protocol::Xy8, shm()).g5 / g0;
  };
  const double f_ent = ratio_for([](SensorStack& s) {
    s.entanglement = EntanglementModel::StandardQuantumLimit;
    s.ensemble_size = 4e6;
  }) / ratio_for([](SensorStack& s) { s.entanglement = EntanglementModel::StandardQuantumLimit; });
  out.check(rel(f_ent, 0.5) < kRelTol, "2x F_ent -> " + fmt(f_ent, 15));
  const double g_res = ratio_for([](SensorStack& s) { s.quality_factor *= 4.0; });
  out.check(rel(g_res, 0.5) < kRelTol, "2x G_res -> " + fmt(g_res, 15));
  const double a = ratio_for([](SensorStack& s) { s.isotope.hyperfine *= 2.0; });
  out.check(rel(a, 0.5) < kRelTol, "2x A -> " + fmt(a, 15));
  const double eta = ratio_for([](SensorStack& s) { s.noise_electron *= 2.0; });
  out.check(rel(eta, 2.0) < kRelTol, "2x eta_e -> " + fmt(eta, 15));

  // |Y_N| has no knob of its own on a stack; perturb it in the chain.
  const auto p = five_sigma_threshold(mass, base, Protocol::Xy8, shm());
  ChainInputs chain{base.entanglement_gain(),
                    base.resonator_gain(),
                    hybrid_gain_from_filter(base.isotope, p.filter_magnitude),
                    axion_field_amplitude(1.0, shm(), base.isotope),
                    base.noise_electron,
                    {p.t_coh, p.stacking},
                    StackingRule{},
                    5.0};
  const double c0 = coupling_threshold(chain);
  out.check(rel(c0, g0) < kRelTol, "chain reproduces five_sigma_threshold (" + fmt(rel(c0, g0), 3) + ")");
  chain.hybrid_gain = hybrid_gain_from_filter(base.isotope, 2.0 * p.filter_magnitude);
  const double y = coupling_threshold(chain) / c0;
  out.check(rel(y, 0.5) < kRelTol, "2x |Y_N| -> " + fmt(y, 15));

  const double sql = ratio_for([](SensorStack& s) { s.entanglement = EntanglementModel::StandardQuantumLimit; });
  out.check(rel(sql, 1e3) < kRelTol, "SQL/ideal at N=1e6 = " + fmt(sql, 15));
}

// 8. Order of magnitude of the projected reach.
void fig4_reach(Outcome& out) {
  constexpr double kReach = 1e-24;
  constexpr double kHybridAdvantage = 10.0;
  const auto masses = log_mass_grid(1e-16, 1e-6, 20);
  const std::vector<Protocol> bank{Protocol::Ramsey, Protocol::Hahn, Protocol::Xy8, Protocol::SpinLock};
  const auto r = sensitivity_scan(masses, bank, fig4_stack(), shm());
  const SensitivityPoint* best = nullptr;
  double weakest = std::numeric_limits<double>::infinity();
  double weakest_mass = 0.0;
  std::size_t covered = 0;
  for (const auto& p : r.envelope.points) {
    if (p.out_of_band()) continue;
    ++covered;
    if (!best || p.g5 < best->g5) best = &p;
    if (p.hybrid_over_nuclear < weakest) {
      weakest = p.hybrid_over_nuclear;
      weakest_mass = p.mass_ev;
    }
  }
  out.check(covered == masses.size(), "in-band envelope at " + std::to_string(covered) + "/" +
                                          std::to_string(masses.size()) + " masses");
  if (!best) return;
  out.check(best->g5 <= kReach, "envelope minimum " + fmt(best->g5, 4) + " GeV^-1 at " + fmt(best->mass_ev, 3) +
                                    " eV (" + best->protocol + ")");
  out.check(weakest >= kHybridAdvantage,
            "min SNR_e/SNR_N " + fmt(weakest, 4) + " at " + fmt(weakest_mass, 3) + " eV");
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// 9. Monte Carlo band covers the analytic threshold; output independent of threads.
void monte_carlo_consistency(Outcome& out) {
  constexpr std::size_t kRuns = 20;
  constexpr std::size_t kRequired = 18;  // 90% of 20
  const SensorStack stack = fig4_stack();
  for (double mass : {1e-14, 1e-13, 1e-12}) {
    std::size_t hits = 0;
    for (std::size_t run = 0; run < kRuns; ++run) {
      MonteCarloOptions o;
      o.trials = 500;
      o.seed = 1000 + run;
      const auto r = monte_carlo_limit(mass, stack, Protocol::Ramsey, shm(), {}, o);
      if (r.band_low <= r.analytic.g5 && r.analytic.g5 <= r.band_high) ++hits;
    }
    out.check(hits >= kRequired, fmt(mass, 2) + " eV coverage " + std::to_string(hits) + "/" + std::to_string(kRuns));
  }
  MonteCarloOptions o;
  o.trials = 500;
  o.seed = 42;
  const auto one = monte_carlo_limit(1e-13, stack, Protocol::Ramsey, shm(), {}, o);
  o.threads = 4;
  const auto four = monte_carlo_limit(1e-13, stack, Protocol::Ramsey, shm(), {}, o);
  bool identical = same_bits(one.g5, four.g5) && same_bits(one.band_low, four.band_low) &&
                   same_bits(one.band_high, four.band_high) && one.brackets.size() == four.brackets.size();
  for (std::size_t i = 0; identical && i < one.brackets.size(); ++i)
    identical = same_bits(one.brackets[i].first, four.brackets[i].first) &&
                same_bits(one.brackets[i].second, four.brackets[i].second);
  out.check(identical, "seed 42 bit-identical at 1 and 4 threads");
}

// 10. Isotope ratio of the hybrid gain.
void isotope_ratio(Outcome& out) {
  constexpr double kRelTol = 1e-12;
  const auto& bi = bismuth();
  const auto& p = phosphorus();
  const double expected = (bi.hyperfine * bi.spin * std::abs(bi.gamma_nuclear)) /
                          (p.hyperfine * p.spin * std::abs(p.gamma_nuclear));
  const double omega = axion_angular_frequency(1e-13);
  const auto choice = match_protocol(Protocol::Xy8, omega, 1.0);
  SensorStack sb = SensorStack::for_isotope(bi);
  SensorStack sp = SensorStack::for_isotope(p);
  sb.sequence = sp.sequence = *choice.sequence;
  const double ratio = hybrid_gain(sb, omega) / hybrid_gain(sp, omega);
  out.check(rel(ratio, expected) < kRelTol, "G_hyb(Bi)/G_hyb(P)=" + fmt(ratio, 15));
  out.check(rel(ratio, oracle::kHybridRatioBiP) < kRelTol, "oracle " + fmt(oracle::kHybridRatioBiP, 15));
  out.check(rel(bi.hyperfine, kTwoPi * 1.475e9) < 1e-15 && rel(p.hyperfine, kTwoPi * 117e6) < 1e-15,
            "A = 1.475 GHz / 117 MHz");
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  void (*run)(Outcome&);
};

}  // namespace
}  // namespace axwind::acceptance

int main() {
  using namespace axwind::acceptance;
  const Criterion criteria[] = {
      {1, "filter closed forms match numeric transform", 1.0, filter_equivalence},
      {2, "filter landmarks", 0.0, filter_landmarks},
      {3, "spin-lock FM triplet", 5.0, spin_lock_triplet},
      {4, "sidereal fingerprint", 30.0, sidereal_fingerprint},
      {5, "SNR ratio identity", 0.0, snr_identity},
      {6, "axion timescales", 0.0, axion_timescales},
      {7, "scaling ladder", 0.0, scaling_ladder},
      {8, "projected reach and hybrid advantage", 60.0, fig4_reach},
      {9, "Monte Carlo consistency", 300.0, monte_carlo_consistency},
      {10, "isotope hybrid-gain ratio", 0.0, isotope_ratio},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0) out.check(seconds < c.budget_s, "runtime " + fmt(seconds, 3) + " s < " + fmt(c.budget_s) + " s");
    if (!out.pass) ++failures;
    std::cout << (out.pass ? "PASS" : "FAIL") << " AC" << c.id << " " << c.title << ": " << out.detail.str()
              << "(" << fmt(seconds, 3) << " s)" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
