#include <gtest/gtest.h>

#include "shiftr/circulant.hpp"
#include "shiftr/compressive.hpp"
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

TEST(SensingSet, ValidatesAndSorts) {
  const SensingSet K(8, {5, 1, 3});
  EXPECT_EQ(K.indices(), (std::vector<std::size_t>{1, 3, 5}));
  EXPECT_EQ(K.size(), 3u);
  EXPECT_THROW(SensingSet(8, {}), DimensionError);
  EXPECT_THROW(SensingSet(8, {1, 1}), DimensionError);
  EXPECT_THROW(SensingSet(8, {8}), DimensionError);
  EXPECT_EQ(SensingSet::full(4).indices(), (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(Measurement, LengthMustMatchSensingSet) {
  EXPECT_THROW(Measurement(ComplexVec{1, 2}, SensingSet(4, {1})), DimensionError);
}

TEST(Measure, FullSensingIsDft) {
  const Signal x{0.5, -1, 2, 3, -0.25};
  const Measurement m = measure(x, SensingSet::full(5));
  EXPECT_LT(max_abs_diff(m.values(), dft(x)), 1e-14);
}

TEST(Measure, DcBin) {
  const Measurement m = measure(Signal{1, 2, 3, 4}, SensingSet(4, {0}));
  ASSERT_EQ(m.values().size(), 1u);
  EXPECT_LT(std::abs(m.values()[0] - Complex(5.0, 0.0)), 1e-14);
}

TEST(Measure, SubsetsMatchDirectDft) {
  std::mt19937_64 gen(71);
  for (int trial = 0; trial < 50; ++trial) {
    const Signal x = random_signal(gen, 8);
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < 8; ++k) {
      if (gen() % 2) idx.push_back(k);
    }
    if (idx.empty()) idx.push_back(gen() % 8);
    const SensingSet K(8, idx);
    const ComplexVec full = oracle::direct_dft(x);
    const Measurement m = measure(x, K);
    for (std::size_t i = 0; i < K.size(); ++i) {
      EXPECT_LT(std::abs(m.values()[i] - full[K.indices()[i]]), 1e-13);
    }
  }
}

TEST(Measure, DimensionMismatch) {
  EXPECT_THROW(measure(Signal{1, 2, 3}, SensingSet(4, {1})), DimensionError);
}

TEST(Embed, Definition) {
  EXPECT_EQ(embed(ComplexVec{7}, SensingSet(4, {2})), (ComplexVec{0, 0, 7, 0}));
  const ComplexVec a{1, {2, 1}, 3};
  EXPECT_EQ(embed(a, SensingSet::full(3)), a);
  EXPECT_THROW(embed(ComplexVec{1, 2}, SensingSet(4, {2})), DimensionError);
}

// idft((measure(x,K))_K) is F^H Σ_K F x.
TEST(Embed, BandlimitedProjection) {
  std::mt19937_64 gen(73);
  for (std::size_t n = 2; n <= 16; ++n) {
    const Signal x = random_signal(gen, n);
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; k += 1 + gen() % 3) idx.push_back(k);
    const SensingSet K(n, idx);
    const ComplexVec fast = idft(embed(measure(x, K).values(), K));

    const oracle::DenseMatrix F = oracle::fourier_matrix(n);
    oracle::DenseMatrix S = oracle::DenseMatrix::Zero(n, n);
    for (std::size_t k : idx) S(k, k) = 1.0;
    Eigen::VectorXcd xv(n);
    for (std::size_t i = 0; i < n; ++i) xv[i] = x[i];
    const Eigen::VectorXcd slow = F.adjoint() * S * F * xv;
    for (std::size_t i = 0; i < n; ++i) EXPECT_LT(std::abs(fast[i] - slow[i]), 1e-12);
  }
}

TEST(SensingConditions, UnitFrequency) {
  const Signal x{1, 2, 3, 4, 5, 6, 7, 9};
  const auto r = check_sensing_conditions(x, SensingSet(8, {1}));
  EXPECT_TRUE(r.recovery_guaranteed);
  EXPECT_EQ(r.qualifying_bins, std::vector<std::size_t>{1});
  EXPECT_TRUE(r.columns_distinct);
  EXPECT_TRUE(r.alpha_condition);
  EXPECT_EQ(r.alpha, 1.0);
}

TEST(SensingConditions, HalfBandIsAmbiguous) {
  std::mt19937_64 gen(79);
  const Signal x = full_spectrum_signal(gen, 8);
  const SensingSet K(8, {4});
  const auto r = check_sensing_conditions(x, K);
  EXPECT_FALSE(r.recovery_guaranteed);
  EXPECT_FALSE(r.columns_distinct);
  EXPECT_EQ(r.ambiguous_lags, (std::vector<std::size_t>{2, 4, 6}));

  // Enumerate the 8 measurement columns literally: s and s+2 coincide.
  std::vector<ComplexVec> cols;
  for (std::size_t s = 0; s < 8; ++s) cols.push_back(measure(delay(x, s), K).values());
  for (std::size_t s = 0; s < 8; ++s) {
    EXPECT_LT(max_abs_diff(cols[s], cols[(s + 2) % 8]), 1e-12);
    EXPECT_GT(max_abs_diff(cols[s], cols[(s + 1) % 8]), 1e-3);
  }
}

TEST(SensingConditions, PrimeLength) {
  std::mt19937_64 gen(83);
  const auto r = check_sensing_conditions(full_spectrum_signal(gen, 5), SensingSet(5, {2}));
  EXPECT_TRUE(r.recovery_guaranteed);
  EXPECT_TRUE(r.columns_distinct);
}

TEST(SensingConditions, NoCoprimeBinButNoAmbiguity) {
  std::mt19937_64 gen(89);
  const auto r = check_sensing_conditions(full_spectrum_signal(gen, 6), SensingSet(6, {2, 3}));
  EXPECT_FALSE(r.recovery_guaranteed);
  EXPECT_TRUE(r.columns_distinct);
}

TEST(SensingConditions, ZeroBinDoesNotQualify) {
  const auto r = check_sensing_conditions(Signal{1, 0, 1, 0}, SensingSet(4, {1, 2}));
  EXPECT_FALSE(r.recovery_guaranteed);
  EXPECT_FALSE(r.columns_distinct);
}

// The lag-based duplicate test agrees with pairwise comparison of the
// literally shifted measurements.
TEST(SensingConditions, LagCheckMatchesPairwiseEnumeration) {
  std::mt19937_64 gen(97);
  for (std::size_t n = 2; n <= 12; ++n) {
    const Signal x = full_spectrum_signal(gen, n);
    for (std::size_t k1 = 0; k1 < n; ++k1) {
      for (std::size_t k2 = k1; k2 < n; ++k2) {
        std::vector<std::size_t> idx{k1};
        if (k2 != k1) idx.push_back(k2);
        const SensingSet K(n, idx);
        std::vector<ComplexVec> cols;
        for (std::size_t s = 0; s < n; ++s) cols.push_back(measure(delay(x, s), K).values());
        bool distinct = true;
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = a + 1; b < n; ++b) {
            if (max_abs_diff(cols[a], cols[b]) < 1e-9) distinct = false;
          }
        }
        EXPECT_EQ(check_sensing_conditions(x, K).columns_distinct, distinct)
            << n << " K=" << k1 << "," << k2;
      }
    }
  }
}

TEST(CompressiveArgmax, CalibratedDirection) {
  const Signal x{1, 2, 3, 4};
  const SensingSet K(4, {1});
  const auto est =
      shift_by_compressive_argmax(measure(delay(x, 1), K), measure(x, K));
  EXPECT_EQ(est.shift, 1u);
  EXPECT_EQ(est.shift, oracle::brute_force_shift(x, delay(x, 1)).shift);
}

TEST(CompressiveArgmax, ZeroShiftScoreIsEnergy) {
  const Signal x{0.2, 1.5, -0.7, 2.2, 0.1, -1.0};
  const SensingSet K(6, {1, 2, 5});
  const Measurement v = measure(x, K);
  const auto est = shift_by_compressive_argmax(v, v);
  EXPECT_EQ(est.shift, 0u);
  double energy = 0.0;
  for (const auto& c : v.values()) energy += std::norm(c);
  EXPECT_NEAR(est.score, energy, 1e-12);
}

TEST(CompressiveArgmax, FullSensingEqualsCrosscorr) {
  std::mt19937_64 gen(101);
  for (std::size_t n = 1; n <= 32; ++n) {
    const Signal x = random_signal(gen, n);
    const Signal y = delay(x, gen() % n);
    const SensingSet K = SensingSet::full(n);
    const auto c = shift_by_compressive_argmax(measure(y, K), measure(x, K));
    const auto cc = shift_by_crosscorr(x, y);
    EXPECT_EQ(c.shift, cc.shift);
    EXPECT_LT(max_abs_diff(*c.scores, *cc.scores), 1e-10 * (1 + cc.score)) << n;
  }
}

TEST(CompressiveArgmax, SensingMismatch) {
  const Signal x{1, 2, 3, 4};
  EXPECT_THROW(shift_by_compressive_argmax(measure(x, SensingSet(4, {1})),
                                           measure(x, SensingSet(4, {3}))),
               DimensionError);
}

TEST(CompressiveRatio, FullSensingEqualsRatio) {
  std::mt19937_64 gen(103);
  for (std::size_t n = 1; n <= 32; ++n) {
    const Signal x = full_spectrum_signal(gen, n);
    const std::size_t s = gen() % n;
    const Signal y = delay(x, s);
    const SensingSet K = SensingSet::full(n);
    const Measurement z = measure(y, K), v = measure(x, K);
    const auto c = shift_by_compressive_ratio(z, v);
    const auto r = shift_by_ratio(x, y);
    EXPECT_EQ(c.shift, s);
    EXPECT_EQ(c.shift, r.shift);
    EXPECT_LT(max_abs_diff(*c.scores, *r.scores), 1e-10) << n;
    EXPECT_LT(c.score, 1e-9);
    // ρ is the full ratio spectrum.
    const ComplexVec full = ratio_spectrum(dft(x), dft(y));
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_LT(std::abs(z.values()[i] / v.values()[i] - full[i]), 1e-12);
    }
  }
}

TEST(CompressiveRatio, SingleCoprimeBin) {
  const std::size_t n = 9;
  std::mt19937_64 gen(107);
  const Signal x = full_spectrum_signal(gen, n);
  for (std::size_t k : {1u, 2u, 4u, 5u, 7u, 8u}) {
    const SensingSet K(n, {k});
    const Measurement v = measure(x, K);
    for (std::size_t s = 0; s < n; ++s) {
      const Measurement z = measure(delay(x, s), K);
      const Complex rho = z.values()[0] / v.values()[0];
      EXPECT_LT(std::abs(rho - unit_root(n, mul_mod(k, s, n))), 1e-12);
      const auto est = shift_by_compressive_ratio(z, v);
      EXPECT_EQ(est.shift, s);
      EXPECT_LT(est.score, 1e-9);
      EXPECT_TRUE(est.flags.empty());
    }
  }
}

TEST(CompressiveRatio, IdenticalMeasurements) {
  const Measurement v = measure(Signal{3, 1, 4, 1, 5}, SensingSet(5, {1, 3}));
  const auto est = shift_by_compressive_ratio(v, v);
  EXPECT_EQ(est.shift, 0u);
  EXPECT_LT(est.score, 1e-12);
}

TEST(CompressiveRatio, DroppedBinsAndErrors) {
  const Signal x{1, 0, 1, 0};  // bins 1 and 3 vanish
  const SensingSet K(4, {1, 2});
  const auto est = shift_by_compressive_ratio(measure(delay(x, 1), K), measure(x, K));
  EXPECT_TRUE(est.has_flag(flags::excluded_bins));
  EXPECT_TRUE(est.has_flag(flags::no_recovery_guarantee));
  EXPECT_TRUE(est.has_flag(flags::ambiguous));
  EXPECT_EQ(est.shift % 2, 1u);

  const SensingSet K1(4, {1});
  const Measurement dead(ComplexVec{0.0}, K1);
  EXPECT_THROW(shift_by_compressive_ratio(measure(x, K1), dead), IdentifiabilityError);
  EXPECT_THROW(shift_by_compressive_ratio(measure(x, K1), measure(x, SensingSet(4, {2}))),
               DimensionError);
}

TEST(Compressive, AmbiguityIsFlaggedNotMisresolved) {
  std::mt19937_64 gen(109);
  const Signal x = full_spectrum_signal(gen, 8);
  const SensingSet K(8, {4});
  for (std::size_t s = 0; s < 8; ++s) {
    const Measurement z = measure(delay(x, s), K), v = measure(x, K);
    for (const auto& est :
         {shift_by_compressive_ratio(z, v), shift_by_compressive_argmax(z, v)}) {
      EXPECT_TRUE(est.has_flag(flags::ambiguous));
      EXPECT_EQ(est.shift % 2, s % 2);  // some member of the class {s, s±2, …}
    }
  }
}

TEST(Compressive, GuaranteedRecoveryExhaustive) {
  std::mt19937_64 gen(113);
  for (std::size_t n = 4; n <= 16; ++n) {
    const Signal x = full_spectrum_signal(gen, n);
    for (std::size_t k1 = 0; k1 < n; ++k1) {
      for (std::size_t k2 = k1; k2 < n; ++k2) {
        std::vector<std::size_t> idx{k1};
        if (k2 != k1) idx.push_back(k2);
        const SensingSet K(n, idx);
        if (!check_sensing_conditions(x, K).recovery_guaranteed) continue;
        const Measurement v = measure(x, K);
        for (std::size_t s = 0; s < n; ++s) {
          const Measurement z = measure(delay(x, s), K);
          ASSERT_EQ(shift_by_compressive_ratio(z, v).shift, s) << n << " " << k1 << "," << k2;
          ASSERT_EQ(shift_by_compressive_argmax(z, v).shift, s) << n << " " << k1 << "," << k2;
        }
      }
    }
  }
}

TEST(IdentityCheck, SparseSensing) {
  std::mt19937_64 gen(127);
  const Signal x = random_signal(gen, 8);
  const SensingSet K(8, {1, 3});
  for (std::size_t s = 0; s < 8; ++s) {
    const Measurement v = measure(x, K);
    const Measurement z = measure(delay(x, gen() % 8), K);
    const auto id = argmax_identity_check(z, v, s);
    EXPECT_NEAR(id.lhs, id.rhs, 1e-9);
    EXPECT_NEAR(id.lhs, (*shift_by_compressive_argmax(z, v).scores)[s], 1e-9);
  }
}

TEST(IdentityCheck, FullSensingIsClassicCorrelation) {
  std::mt19937_64 gen(131);
  const std::size_t n = 7;
  const Signal x = random_signal(gen, n);
  const Signal y = random_signal(gen, n);
  const SensingSet K = SensingSet::full(n);
  const auto brute = oracle::brute_force_shift(x, y);
  for (std::size_t s = 0; s < n; ++s) {
    const auto id = argmax_identity_check(measure(y, K), measure(x, K), s);
    EXPECT_NEAR(id.lhs, (*brute.scores)[s], 1e-10);
    EXPECT_NEAR(id.rhs, (*brute.scores)[s], 1e-10);
  }
}

TEST(IdentityCheck, SingleMeasurementTerm) {
  const Signal x{2, -1, 0.5, 3, 1};
  const SensingSet K(5, {2});
  const Measurement v = measure(x, K), z = measure(delay(x, 3), K);
  for (std::size_t s = 0; s < 5; ++s) {
    const double term =
        (std::conj(z.values()[0]) * v.values()[0] * unit_root(5, 2 * s)).real();
    const auto id = argmax_identity_check(z, v, s);
    EXPECT_NEAR(id.lhs, term, 1e-12);
    EXPECT_NEAR(id.rhs, term, 1e-12);
  }
}

TEST(IdentityCheck, RandomInstances) {
  std::mt19937_64 gen(137);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + gen() % 15;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k) {
      if (gen() % 3 == 0) idx.push_back(k);
    }
    if (idx.empty()) idx.push_back(gen() % n);
    const SensingSet K(n, idx);
    const Signal x = random_signal(gen, n);
    const Measurement v = measure(x, K), z = measure(delay(x, gen() % n), K);
    const auto id = argmax_identity_check(z, v, gen() % n);
    EXPECT_NEAR(id.lhs, id.rhs, 1e-9);
  }
}

TEST(IdentityCheck, Limits) {
  const Signal x(65, 1.0);
  const SensingSet K(65, {1});
  EXPECT_THROW(argmax_identity_check(measure(x, K), measure(x, K), 0), DimensionError);
  const Signal y{1, 2, 3};
  const SensingSet K3(3, {1});
  EXPECT_THROW(argmax_identity_check(measure(y, K3), measure(y, K3), 3), DimensionError);
}

// A^H A is circulant and commutes with every shift.
TEST(Compressive, CommutationPremise) {
  std::mt19937_64 gen(139);
  for (std::size_t n = 1; n <= 16; ++n) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k) {
      if (gen() % 2) idx.push_back(k);
    }
    if (idx.empty()) idx.push_back(0);
    const oracle::DenseMatrix A = oracle::partial_fourier(n, idx);
    const oracle::DenseMatrix AhA = A.adjoint() * A;
    EXPECT_LT((A * A.adjoint() - oracle::DenseMatrix::Identity(idx.size(), idx.size()))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
    for (std::size_t s = 0; s < n; ++s) {
      const oracle::DenseMatrix P = oracle::materialize(make_shift(n, s));
      EXPECT_LT((AhA * P - P * AhA).cwiseAbs().maxCoeff(), 1e-10) << n << " " << s;
    }
  }
}

}  // namespace
}  // namespace shiftr
