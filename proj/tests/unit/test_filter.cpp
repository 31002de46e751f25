#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "axwind/constants.hpp"
#include "axwind/errors.hpp"
#include "axwind/filter.hpp"
#include "oracle_values.hpp"

namespace axwind {
namespace {

double omega_of(double xi, double tau = 1.0) { return kTwoPi * xi / tau; }

TEST(PulseSequence, BuildValidatesPulseCounts) {
  EXPECT_THROW(PulseSequence::build(SequenceKind::Ramsey, 1.0, 1), ConfigError);
  EXPECT_THROW(PulseSequence::build(SequenceKind::Hahn, 1.0, 2), ConfigError);
  EXPECT_THROW(PulseSequence::build(SequenceKind::Cpmg, 1.0, 0), ConfigError);
  EXPECT_THROW(PulseSequence::build(SequenceKind::Xy8, 1.0, 12), ConfigError);
  EXPECT_THROW(PulseSequence::build(SequenceKind::Cpmg, 0.0, 4), ConfigError);
  EXPECT_NO_THROW(PulseSequence::build(SequenceKind::Xy8, 1.0, 16));
}

TEST(PulseSequence, CpmgTimingAndToggling) {
  const auto seq = PulseSequence::build(SequenceKind::Cpmg, 1.0, 4);
  EXPECT_EQ(seq.pulse_times(), (std::vector<double>{0.125, 0.375, 0.625, 0.875}));
  EXPECT_EQ(seq.toggling(0.1), 1);
  EXPECT_EQ(seq.toggling(0.2), -1);
  EXPECT_EQ(seq.toggling(0.9), 1);
  EXPECT_EQ(seq.toggling(1.5), 0);
  EXPECT_EQ(seq.segment_count(), 5u);
}

TEST(PulseSequence, HahnFlipsAtMidpoint) {
  const auto seq = PulseSequence::build(SequenceKind::Hahn, 2.0, 1);
  EXPECT_EQ(seq.pulse_times(), (std::vector<double>{1.0}));
  EXPECT_EQ(seq.toggling(0.5), 1);
  EXPECT_EQ(seq.toggling(1.5), -1);
}

TEST(PulseSequence, ParseNames) {
  EXPECT_EQ(parse_sequence_kind("CPMG"), SequenceKind::Cpmg);
  EXPECT_EQ(parse_sequence_kind("xy8"), SequenceKind::Xy8);
  EXPECT_THROW(parse_sequence_kind("udd"), ConfigError);
}

TEST(SinPi, ExactAtIntegers) {
  for (int k = -5; k <= 5; ++k) EXPECT_EQ(sin_pi(k), 0.0);
  EXPECT_DOUBLE_EQ(sin_pi(0.5), 1.0);
  EXPECT_NEAR(sin_pi(1.0 / 6.0), 0.5, 1e-16);
}

TEST(Ramsey, ZeroFrequencyEqualsDuration) {
  EXPECT_DOUBLE_EQ(filter_analytic_ramsey(3.0, 0.0), 3.0);
  EXPECT_DOUBLE_EQ(std::abs(filter_value(PulseSequence::build(SequenceKind::Ramsey, 3.0, 0), 0.0)), 3.0);
}

TEST(Ramsey, ZerosAtIntegerXi) {
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(filter_analytic_ramsey(1.0, omega_of(k)), 0.0);
}

TEST(Cpmg8, AnalyticMatchesQuadratureOracle) {
  const auto seq = PulseSequence::build(SequenceKind::Cpmg, 1.0, 8);
  for (const auto& s : oracle::kCpmg8) {
    const double analytic = filter_analytic_echo_family(seq, omega_of(s.xi));
    const double numeric = std::abs(filter_value(seq, omega_of(s.xi)));
    EXPECT_NEAR(analytic, s.magnitude, 1e-12) << "xi = " << s.xi;
    EXPECT_NEAR(numeric, s.magnitude, 1e-12) << "xi = " << s.xi;
  }
}

TEST(Cpmg8, PeakNearOracleArgmax) {
  const auto seq = PulseSequence::build(SequenceKind::Cpmg, 1.0, 8);
  double best = 0.0;
  double best_xi = 0.0;
  for (int i = 6000; i <= 10000; ++i) {
    const double xi = i / 2000.0;
    const double m = filter_analytic_echo_family(seq, omega_of(xi));
    if (m > best) {
      best = m;
      best_xi = xi;
    }
  }
  EXPECT_NEAR(best_xi, oracle::kCpmg8ArgmaxXi, 5e-4);
  EXPECT_NEAR(best, oracle::kCpmg8Max, 1e-9);
}

TEST(Hahn, PowerPeakNearOracle) {
  const auto seq = PulseSequence::build(SequenceKind::Hahn, 1.0, 1);
  const auto omega = xi_grid(1.0, 2.0, 4001);
  const auto r = filter_numeric(seq, omega);
  const auto p = normalized_power(r, 1.0);
  const auto it = std::max_element(p.begin(), p.end());
  EXPECT_NEAR(omega[static_cast<std::size_t>(it - p.begin())] / kTwoPi, oracle::kHahnPowerArgmaxXi, 5e-4);
  EXPECT_NEAR(*it, oracle::kHahnPowerMax, 1e-7);
}

TEST(EchoFamily, VanishesAtZeroFrequency) {
  for (auto kind : {SequenceKind::Hahn, SequenceKind::Cpmg, SequenceKind::Xy8}) {
    const auto seq = PulseSequence::build(kind, 1.0, kind == SequenceKind::Hahn ? 1 : 8);
    EXPECT_EQ(filter_analytic_echo_family(seq, 0.0), 0.0);
    EXPECT_LT(std::abs(filter_value(seq, 0.0)), 1e-15);
  }
}

TEST(EchoFamily, XyEightMatchesCpmgTiming) {
  const auto a = PulseSequence::build(SequenceKind::Xy8, 0.3, 16);
  const auto b = PulseSequence::build(SequenceKind::Cpmg, 0.3, 16);
  for (double xi : {0.7, 3.3, 8.0, 8.2, 19.5})
    EXPECT_DOUBLE_EQ(filter_analytic_echo_family(a, omega_of(xi, 0.3)), filter_analytic_echo_family(b, omega_of(xi, 0.3)));
}

TEST(EchoFamily, RejectsRamsey) {
  EXPECT_THROW(filter_analytic_echo_family(PulseSequence::build(SequenceKind::Ramsey, 1.0, 0), 1.0), ConfigError);
}

TEST(FilterNumeric, ScalesWithDurationAtFixedXi) {
  const auto a = PulseSequence::build(SequenceKind::Cpmg, 1.0, 4);
  const auto b = PulseSequence::build(SequenceKind::Cpmg, 2.5, 4);
  for (double xi : {0.3, 1.7, 2.0, 5.5})
    EXPECT_NEAR(std::abs(filter_value(b, omega_of(xi, 2.5))), 2.5 * std::abs(filter_value(a, omega_of(xi))), 1e-12);
}

TEST(FilterNumeric, ThreadCountDoesNotChangeOutput) {
  const auto seq = PulseSequence::build(SequenceKind::Cpmg, 1.0, 16);
  const auto omega = xi_grid(1.0, 32.0, 513);
  const auto one = filter_numeric(seq, omega, 1);
  const auto four = filter_numeric(seq, omega, 4);
  EXPECT_EQ(one.magnitude, four.magnitude);
}

TEST(FilterNumeric, RejectsDecreasingGrid) {
  const auto seq = PulseSequence::build(SequenceKind::Ramsey, 1.0, 0);
  const std::vector<double> bad{2.0, 1.0};
  EXPECT_THROW(filter_numeric(seq, bad), DomainError);
}

TEST(Passband, CpmgCentreAndQuality) {
  for (std::uint64_t n : {8u, 16u}) {
    const auto seq = PulseSequence::build(SequenceKind::Cpmg, 1.0, n);
    const auto r = filter_numeric(seq, xi_grid(1.0, 2.0 * static_cast<double>(n), 8192));
    const auto pb = passband_analysis(r);
    EXPECT_NEAR(pb.center_hz / (static_cast<double>(n) / 2.0), 1.0, 0.02) << n;
    // Amplitude FWHM of an n-pulse lobe spans about 1.2 cycles of 1/tau.
    EXPECT_GT(pb.quality, static_cast<double>(n) / 3.0);
    EXPECT_LT(pb.quality, static_cast<double>(n) / 2.0);
  }
}

TEST(Passband, RamseyIsLowPass) {
  const auto seq = PulseSequence::build(SequenceKind::Ramsey, 1.0, 0);
  const auto pb = passband_analysis(filter_numeric(seq, xi_grid(1.0, 4.0, 2048)));
  EXPECT_EQ(pb.center_hz, 0.0);
  EXPECT_EQ(pb.quality, 0.0);
  EXPECT_NEAR(pb.fwhm_hz, 2.0 * 0.6034, 0.01);  // |sinc(pi xi)| = 1/2 at xi = 0.6034
}

TEST(Passband, CoarseGridIsResolutionError) {
  const auto seq = PulseSequence::build(SequenceKind::Cpmg, 1.0, 64);
  EXPECT_THROW(passband_analysis(filter_numeric(seq, xi_grid(1.0, 128.0, 64))), ResolutionError);
}

TEST(Combined, ProductOfMagnitudes) {
  const auto omega = xi_grid(1.0, 8.0, 65);
  const auto e = electron_filter(PulseSequence::build(SequenceKind::Ramsey, 1.0, 0), omega);
  const auto n = filter_numeric(PulseSequence::build(SequenceKind::Cpmg, 1.0, 8), omega);
  const auto c = combined_response(e, n);
  for (std::size_t i = 0; i < omega.size(); ++i)
    EXPECT_NEAR(c.magnitude[i], e.magnitude[i] * n.magnitude[i], 1e-15);
}

}  // namespace
}  // namespace axwind
