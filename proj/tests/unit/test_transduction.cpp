#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "axwind/constants.hpp"
#include "axwind/detection.hpp"
#include "axwind/errors.hpp"
#include "axwind/transduction.hpp"
#include "oracle_values.hpp"

namespace axwind {
namespace {

const IsotopeParams& bismuth() { return ParameterTable::builtin().isotope("Bi209"); }
const IsotopeParams& phosphorus() { return ParameterTable::builtin().isotope("P31"); }

TEST(Entanglement, SqlAndIdealScaling) {
  EXPECT_DOUBLE_EQ(entanglement_factor(EntanglementModel::StandardQuantumLimit, 1e6), 1e3);
  EXPECT_DOUBLE_EQ(entanglement_factor(EntanglementModel::Ideal, 1e6), 1e6);
  EXPECT_THROW(entanglement_factor(EntanglementModel::Ideal, 0.5), DomainError);
  EXPECT_EQ(parse_entanglement_model("SQL"), EntanglementModel::StandardQuantumLimit);
  EXPECT_EQ(parse_entanglement_model("ideal"), EntanglementModel::Ideal);
  EXPECT_THROW(parse_entanglement_model("ghz"), ConfigError);
}

TEST(Resonator, PowerLawGain) {
  EXPECT_NEAR(ResonatorModel{}.gain(1e4), 100.0, 1e-12);
  EXPECT_NEAR((ResonatorModel{10.0, 1.0}.gain(1e3)), 100.0, 1e-12);
}

TEST(HybridGain, MatchesOracle) {
  EXPECT_NEAR(hybrid_gain_from_filter(bismuth(), 1.0) / oracle::kHybridGainBiPerSecond, 1.0, 1e-14);
}

TEST(HybridGain, IsotopeRatio) {
  const double r = hybrid_gain_from_filter(bismuth(), 0.37) / hybrid_gain_from_filter(phosphorus(), 0.37);
  EXPECT_NEAR(r / oracle::kHybridRatioBiP, 1.0, 1e-13);
}

TEST(HybridGain, LinearInEachFactor) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int i = 0; i < 200; ++i) {
    IsotopeParams iso = bismuth();
    const double y = u(rng);
    const double drv = u(rng);
    const double base = hybrid_gain_from_filter(iso, y, drv);
    const double k = u(rng);
    EXPECT_NEAR(hybrid_gain_from_filter(iso, k * y, drv) / base, k, 1e-12 * k);
    EXPECT_NEAR(hybrid_gain_from_filter(iso, y, k * drv) / base, k, 1e-12 * k);
    IsotopeParams scaled = iso;
    scaled.hyperfine *= k;
    EXPECT_NEAR(hybrid_gain_from_filter(scaled, y, drv) / base, k, 1e-12 * k);
    scaled = iso;
    scaled.spin = 2.5;
    EXPECT_NEAR(hybrid_gain_from_filter(scaled, y, drv) / base, 2.5 / 4.5, 1e-12);
  }
}

TEST(NuclearPhase, SmallSignalFlag) {
  const auto seq = PulseSequence::build(SequenceKind::Ramsey, 1.0, 0);
  const double gamma = std::abs(bismuth().gamma_nuclear);
  const auto small = nuclear_phase(0.05 / gamma, seq, 0.0, bismuth());
  EXPECT_NEAR(small.amplitude, 0.05, 1e-15);
  EXPECT_TRUE(small.small_signal);
  EXPECT_FALSE(nuclear_phase(0.2 / gamma, seq, 0.0, bismuth()).small_signal);
  EXPECT_DOUBLE_EQ(iz_shift(0.01, 4.5), 0.045);
}

TEST(ElectronSignal, TwoFormulationsAgree) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    SensorStack s = SensorStack::for_isotope(i % 2 ? bismuth() : phosphorus());
    s.sequence = PulseSequence::build(SequenceKind::Cpmg, 0.1 + u(rng), 8);
    s.drive_gain = 0.5 + u(rng);
    s.dispersive_correction = 1.0 + 0.1 * u(rng);
    const double field = 1e-20 * (1.0 + u(rng));
    const double omega = 1.0 + 300.0 * u(rng);
    const ElectronSignal e = electron_fm_deviation(s, field, omega);
    EXPECT_NEAR(e.deviation / (kConstants.gamma_electron * e.effective_field), 1.0, 1e-15);
    EXPECT_NEAR(e.effective_field / (hybrid_gain(s, omega) * field), 1.0, 1e-14);
    EXPECT_NEAR(e.index, e.deviation / omega, 1e-15 * e.index + 1e-300);
  }
}

TEST(EffectiveField, MonotoneInEnsembleAndQuality) {
  SensorStack s = SensorStack::for_isotope(bismuth());
  for (auto model : {EntanglementModel::StandardQuantumLimit, EntanglementModel::Ideal}) {
    s.entanglement = model;
    double prev = 0.0;
    for (double n = 1.0; n <= 1e8; n *= 10.0) {
      s.ensemble_size = n;
      const double b = effective_electron_field(s, 1e-20, 10.0);
      EXPECT_GE(b, prev);
      prev = b;
    }
    prev = 0.0;
    for (double q = 1.0; q <= 1e6; q *= 10.0) {
      s.quality_factor = q;
      const double b = effective_electron_field(s, 1e-20, 10.0);
      EXPECT_GE(b, prev);
      prev = b;
    }
  }
}

TEST(Sidebands, BesselRatiosMatchOracle) {
  const auto a = fm_sideband_amplitudes(0.1, 3);
  EXPECT_NEAR(a[1].amplitude / a[0].amplitude, oracle::kBesselRatio0p1, 1e-14);
  const auto b = fm_sideband_amplitudes(2.0, 3);
  EXPECT_NEAR(b[1].amplitude / b[0].amplitude, oracle::kBesselRatio2, 1e-12);
}

TEST(Sidebands, CompletenessSum) {
  for (double beta : {0.0, 0.01, 0.5, 1.0, 2.4, 5.0}) {
    const auto s = fm_sideband_amplitudes(beta, 40);
    double sum = s[0].amplitude * s[0].amplitude;
    for (std::size_t n = 1; n < s.size(); ++n) sum += 2.0 * s[n].amplitude * s[n].amplitude;
    EXPECT_NEAR(sum, 1.0, 1e-9) << beta;
  }
}

TEST(SpinLock, ZeroDeviationIsPureRabiTone) {
  const double rabi = kTwoPi * 50e3;
  const auto s = spin_lock_series(rabi, kTwoPi * 5e3, 0.0, 1e-3, 1e-6);
  for (std::size_t i = 0; i < s.size(); i += 13) EXPECT_NEAR(s.samples[i], 0.5 * std::cos(rabi * s.time(i)), 1e-12);
}

TEST(SpinLock, UndersamplingIsConfigError) {
  EXPECT_THROW(spin_lock_series(kTwoPi * 50e3, kTwoPi * 5e3, 0.0, 1e-3, 3e-6), ConfigError);
}

TEST(SpinLock, SidebandPowerRatio) {
  const double rabi = kTwoPi * 50e3;
  const double wa = kTwoPi * 5e3;
  const double beta = 0.01;
  const auto s = spin_lock_series(rabi, wa, beta * wa, 0.01, 1e-6);
  const auto p = psd(s, dsp::Window::Rectangular);
  const auto bin = [&](double f) { return p.density[static_cast<std::size_t>(std::lround(f / p.df))]; };
  EXPECT_NEAR(bin(45e3) / bin(50e3), oracle::kSidebandPower0p01, 1e-3 * oracle::kSidebandPower0p01);
  EXPECT_NEAR(bin(55e3) / bin(45e3), 1.0, 1e-6);
}

TEST(SpinLock, DemodulatedPhaseRecoversModulation) {
  const double rabi = kTwoPi * 50e3;
  const double wa = kTwoPi * 5e3;
  for (double beta : {0.01, 0.05}) {
    const auto s = spin_lock_series(rabi, wa, beta * wa, 0.01, 1e-6);
    const auto phase = demodulated_phase(s, rabi);
    // Skip the Hilbert-transform edge effects.
    double err2 = 0.0;
    double ref2 = 0.0;
    std::size_t used = 0;
    for (std::size_t i = s.size() / 10; i < s.size() - s.size() / 10; ++i, ++used) {
      const double expect = beta * std::sin(wa * s.time(i));
      err2 += (phase[i] - expect) * (phase[i] - expect);
      ref2 += expect * expect;
    }
    EXPECT_LT(std::sqrt(err2 / ref2), 0.01) << beta;
    EXPECT_GT(used, 0u);
  }
}

}  // namespace
}  // namespace axwind
