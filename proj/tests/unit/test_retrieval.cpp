#include <gtest/gtest.h>

#include <numeric>

#include "shiftr/circulant.hpp"
#include "shiftr/numeric.hpp"
#include "shiftr/oracle.hpp"
#include "shiftr/retrieval.hpp"
#include "shiftr/spectral.hpp"
#include "support/test_util.hpp"

namespace shiftr {
namespace {

using testing::full_spectrum_signal;
using testing::max_abs_diff;
using testing::random_signal;

const Signal kX{1, 2, 3, 4};
const Signal kXDelayed{4, 1, 2, 3};

TEST(Crosscorr, Autocorrelation) {
  const auto est = shift_by_crosscorr(kX, kX);
  EXPECT_EQ(est.shift, 0u);
  EXPECT_NEAR(est.score, 30.0, 1e-12);
  EXPECT_EQ(est.method, Method::crosscorr);
}

TEST(Crosscorr, UnitDelay) {
  const auto est = shift_by_crosscorr(kX, kXDelayed);
  EXPECT_EQ(est.shift, 1u);
  EXPECT_NEAR(est.score, 30.0, 1e-12);
  // Frozen from numpy: real(ifft(conj(fft(x)) * fft(y))).
  EXPECT_LT(max_abs_diff(*est.scores, std::vector<double>{24, 30, 24, 22}), 1e-12);
}

TEST(Crosscorr, ScoresMatchBruteForce) {
  std::mt19937_64 gen(41);
  for (std::size_t n = 1; n <= 32; ++n) {
    const Signal x = random_signal(gen, n);
    const std::size_t s = gen() % n;
    const Signal y = delay(x, s);
    const auto fast = shift_by_crosscorr(x, y);
    const auto slow = oracle::brute_force_shift(x, y);
    EXPECT_EQ(fast.shift, s);
    const double scale = norm2(x) * norm2(y);
    EXPECT_LT(max_abs_diff(*fast.scores, *slow.scores), 1e-9 * scale) << n;
  }
}

TEST(Crosscorr, Errors) {
  EXPECT_THROW(shift_by_crosscorr(kX, Signal{1, 2}), DimensionError);
  EXPECT_THROW(shift_by_crosscorr(Signal{0, 0}, Signal{1, 2}), DimensionError);
  EXPECT_THROW(shift_by_crosscorr(Signal{}, Signal{}), DimensionError);
}

TEST(Ratio, UnitDelayGivesImpulse) {
  const auto est = shift_by_ratio(kX, kXDelayed);
  EXPECT_EQ(est.shift, 1u);
  EXPECT_LT(max_abs_diff(*est.scores, std::vector<double>{0, 1, 0, 0}), 1e-12);
  EXPECT_TRUE(est.flags.empty());
}

TEST(Ratio, IdentityGivesImpulseAtZero) {
  const auto est = shift_by_ratio(kX, kX);
  EXPECT_EQ(est.shift, 0u);
  EXPECT_LT(max_abs_diff(*est.scores, std::vector<double>{1, 0, 0, 0}), 1e-12);
}

TEST(Ratio, ExcludedBinsStillLocalizePeak) {
  // dft([1,0,1,0]) vanishes at bins 1 and 3.
  const Signal x{1, 0, 1, 0};
  const Signal y = delay(x, 1);
  const auto est = shift_by_ratio(x, y);
  EXPECT_EQ(est.shift, oracle::brute_force_shift(x, y).shift);
  EXPECT_EQ(est.shift, 1u);
  EXPECT_TRUE(est.has_flag(flags::excluded_bins));
}

TEST(Ratio, Errors) {
  EXPECT_THROW(shift_by_ratio(Signal{0, 0, 0}, Signal{1, 2, 3}), IdentifiabilityError);
  EXPECT_THROW(shift_by_ratio(kX, Signal{1}), DimensionError);
}

TEST(Ratio, ExactnessForEveryShift) {
  std::mt19937_64 gen(43);
  for (std::size_t n = 1; n <= 24; ++n) {
    const Signal x = full_spectrum_signal(gen, n);
    for (std::size_t s = 0; s < n; ++s) {
      const auto est = shift_by_ratio(x, delay(x, s));
      std::vector<double> e(n, 0.0);
      e[s] = 1.0;
      EXPECT_LT(max_abs_diff(*est.scores, e), 1e-9) << n << " " << s;
    }
  }
}

// idft(ỹ ⊘ x̃) = idft(conj(x̃) ⊙ ỹ ⊘ |x̃|²).
TEST(Ratio, WeightedCrossCorrelationIdentity) {
  std::mt19937_64 gen(47);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 20;
    const Signal x = full_spectrum_signal(gen, n);
    const Signal y = random_signal(gen, n);
    const ComplexVec xs = dft(x), ys = dft(y);
    const ComplexVec rho = ratio_spectrum(xs, ys);
    ComplexVec weighted(n);
    for (std::size_t i = 0; i < n; ++i) weighted[i] = std::conj(xs[i]) * ys[i] / std::norm(xs[i]);
    EXPECT_LT(max_abs_diff(idft(rho), idft(weighted)), 1e-10 * (1 + norm2(rho)));
  }
}

TEST(SelectBin, PicksLargestCoprimeBin) {
  ComplexVec X(8, Complex{1.0, 0.0});
  X[2] = 50.0;  // not coprime with 8
  X[5] = 3.0;
  X[7] = 2.0;
  EXPECT_EQ(select_bin(X), 5u);
  ComplexVec flat(8, Complex{1.0, 0.0});
  EXPECT_EQ(select_bin(flat), 1u);  // tie → smallest index
}

TEST(SelectBin, PrimeLengthAllBinsEligible) {
  for (std::size_t k = 1; k < 5; ++k) {
    ComplexVec X(5, Complex{0.0, 0.0});
    X[0] = 10.0;
    X[k] = 1.0;
    EXPECT_EQ(select_bin(X), k);
  }
}

TEST(SelectBin, ConstantSignalHasNoUsableBin) {
  EXPECT_THROW(select_bin(dft(Signal{2, 2, 2, 2, 2, 2})), IdentifiabilityError);
  EXPECT_THROW(select_bin(ComplexVec{1.0}), DimensionError);
}

TEST(SelectBin, ExcludesDcAndNyquist) {
  ComplexVec X(6, Complex{0.0, 0.0});
  X[0] = 5.0;
  X[3] = 5.0;
  X[2] = 5.0;
  EXPECT_THROW(select_bin(X), IdentifiabilityError);
  X[5] = 1e-3;
  EXPECT_EQ(select_bin(X), 5u);
}

TEST(SingleBin, FrozenPhase) {
  SingleBinOptions o;
  o.bin = 1;
  const auto est = shift_single_bin(kX, kXDelayed, o);
  // ρ = ỹ_1/x̃_1 = e^{-2πj/4} = −j: computed from the bin values directly.
  const Complex rho = dft_bin(kXDelayed, 1) / dft_bin(kX, 1);
  EXPECT_LT(std::abs(rho - Complex(0, -1)), 1e-14);
  EXPECT_EQ(est.shift, 1u);
  EXPECT_NEAR(est.score, 1.0, 1e-12);
  EXPECT_TRUE(est.flags.empty());
}

TEST(SingleBin, ZeroShiftForAnyValidBin) {
  const Signal x{0.3, -1.0, 2.0, 0.7, 1.1, -0.4, 0.9};
  for (std::size_t i = 1; i < 7; ++i) {
    SingleBinOptions o;
    o.bin = i;
    const auto est = shift_single_bin(x, x, o);
    EXPECT_EQ(est.shift, 0u);
    EXPECT_NEAR(est.score, 1.0, 1e-12);
  }
}

TEST(SingleBin, ExhaustiveRecovery) {
  std::mt19937_64 gen(53);
  for (std::size_t n : {5u, 8u, 12u}) {
    const Signal x = full_spectrum_signal(gen, n);
    for (std::size_t s = 0; s < n; ++s) {
      const Signal y = delay(x, s);
      EXPECT_EQ(shift_single_bin(x, y).shift, s);
      EXPECT_EQ(oracle::brute_force_shift(x, y).shift, s);
      for (std::size_t i = 1; i < n; ++i) {
        if (!is_disambiguating_bin(i, n)) continue;
        SingleBinOptions o;
        o.bin = i;
        EXPECT_EQ(shift_single_bin(x, y, o).shift, s) << n << " i=" << i;
        o.column_scan = true;
        EXPECT_EQ(shift_single_bin(x, y, o).shift, s) << n << " scan i=" << i;
      }
    }
  }
}

TEST(SingleBin, PreconditionsAndMisfitFlag) {
  SingleBinOptions o;
  o.bin = 2;
  EXPECT_THROW(shift_single_bin(kX, kXDelayed, o), IdentifiabilityError);
  o.bin = 1;
  EXPECT_THROW(shift_single_bin(Signal{1, 0, 1, 0}, Signal{0, 1, 0, 1}, o),
               IdentifiabilityError);
  EXPECT_THROW(shift_single_bin(Signal{3, 3, 3}, Signal{3, 3, 3}), IdentifiabilityError);
  EXPECT_THROW(shift_single_bin(kX, Signal{1, 2}), DimensionError);

  Signal y = kXDelayed;
  for (auto& v : y) v *= 2.0;
  const auto est = shift_single_bin(kX, y, o);
  EXPECT_EQ(est.shift, 1u);
  EXPECT_NEAR(est.score, 2.0, 1e-12);
  EXPECT_TRUE(est.has_flag(flags::modulus_misfit));
}

TEST(SingleBin, LargeSignal) {
  std::mt19937_64 gen(59);
  const std::size_t n = 1 << 16;
  const Signal x = random_signal(gen, n);
  for (std::size_t s : {0u, 1u, 12345u, 65535u}) {
    SingleBinOptions o;
    o.bin = 1;
    const auto est = shift_single_bin(x, delay(x, s), o);
    EXPECT_EQ(est.shift, s);
    EXPECT_NEAR(est.score, 1.0, 1e-9);
  }
}

TEST(Affine, GainAndOffset) {
  const Signal d = delay(kX, 1);
  Signal y(4);
  for (std::size_t i = 0; i < 4; ++i) y[i] = 2.0 * d[i] + 3.0;
  const AffineFit fit = shift_affine(kX, y);
  EXPECT_EQ(fit.model.shift, 1u);
  EXPECT_NEAR(fit.model.alpha, 2.0, 1e-12);
  EXPECT_NEAR(fit.model.beta, 3.0, 1e-12);
  EXPECT_LT(fit.residual, 1e-9);
  EXPECT_TRUE(fit.flags.empty());
}

TEST(Affine, Identity) {
  const AffineFit fit = shift_affine(kX, kX);
  EXPECT_EQ(fit.model.shift, 0u);
  EXPECT_NEAR(fit.model.alpha, 1.0, 1e-12);
  EXPECT_NEAR(fit.model.beta, 0.0, 1e-12);
}

TEST(Affine, NegativeGain) {
  std::mt19937_64 gen(61);
  const Signal x = full_spectrum_signal(gen, 9);
  Signal y = delay(x, 4);
  for (auto& v : y) v = -0.5 * v + 1.25;
  const AffineFit fit = shift_affine(x, y);
  EXPECT_EQ(fit.model.shift, 4u);
  EXPECT_NEAR(fit.model.alpha, -0.5, 1e-10);
  EXPECT_NEAR(fit.model.beta, 1.25, 1e-10);
  EXPECT_LT(fit.residual, 1e-9);
}

TEST(Affine, PureOffsetIsFlagged) {
  const Signal y(4, 5.0);
  const AffineFit fit = shift_affine(kX, y);
  EXPECT_NEAR(fit.model.alpha, 0.0, 1e-12);
  EXPECT_NEAR(fit.model.beta, 5.0, 1e-12);
  EXPECT_EQ(fit.flags, std::vector<std::string>{std::string(flags::gain_unidentifiable)});
}

TEST(Affine, ZeroMeanSignalRejected) {
  EXPECT_THROW(shift_affine(Signal{1, -1, 2, -2}, Signal{1, 2, 3, 4}),
               IdentifiabilityError);
  EXPECT_THROW(shift_affine(kX, Signal{1, 2}), DimensionError);
}

// Every estimator agrees with the oracle in the exact-shift regime.
TEST(Retrieval, OracleAgreementAllShifts) {
  std::mt19937_64 gen(67);
  for (std::size_t n = 2; n <= 48; ++n) {
    const Signal x = full_spectrum_signal(gen, n);
    const double energy = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      const Signal y = delay(x, s);
      const auto cc = shift_by_crosscorr(x, y);
      ASSERT_EQ(oracle::brute_force_shift(x, y).shift, s);
      ASSERT_EQ(cc.shift, s);
      ASSERT_EQ(shift_by_ratio(x, y).shift, s);
      ASSERT_EQ(shift_single_bin(x, y).shift, s);
      ASSERT_NEAR(cc.score, energy, 1e-9 * energy);
    }
  }
}

TEST(Method, NamesRoundTrip) {
  for (Method m : {Method::crosscorr, Method::ratio, Method::single_bin,
                   Method::compressive_argmax, Method::compressive_ratio,
                   Method::brute_force}) {
    EXPECT_EQ(parse_method(to_string(m)), m);
  }
  EXPECT_FALSE(parse_method("fft").has_value());
}

}  // namespace
}  // namespace shiftr
