#include "shiftr/compressive.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "shiftr/circulant.hpp"
#include "shiftr/numeric.hpp"
#include "shiftr/oracle.hpp"
#include "shiftr/spectral.hpp"

namespace shiftr {
namespace {

void require_shared_sensing(const Measurement& z, const Measurement& v,
                            const char* who) {
  if (!(z.sensing() == v.sensing())) {
    throw DimensionError(std::string(who) + ": measurements use different "
                         "sensing sets");
  }
}

void attach_sensing_flags(ShiftEstimate& est, const SensingReport& report) {
  if (!report.columns_distinct) est.add_flag(flags::ambiguous);
  if (!report.recovery_guaranteed) est.add_flag(flags::no_recovery_guarantee);
}

}  // namespace

SensingSet::SensingSet(std::size_t n, std::vector<std::size_t> indices)
    : n_(n), indices_(std::move(indices)) {
  if (n_ == 0) throw DimensionError("SensingSet: n must be positive");
  if (indices_.empty()) throw DimensionError("SensingSet: K must be nonempty");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw DimensionError("SensingSet: duplicate frequency index");
  }
  if (indices_.back() >= n_) {
    throw DimensionError("SensingSet: index " + std::to_string(indices_.back()) +
                         " outside 0.." + std::to_string(n_ - 1));
  }
}

SensingSet SensingSet::full(std::size_t n) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return SensingSet(n, std::move(all));
}

Measurement::Measurement(ComplexVec values, SensingSet sensing)
    : values_(std::move(values)), sensing_(std::move(sensing)) {
  if (values_.size() != sensing_.size()) {
    throw DimensionError("Measurement: " + std::to_string(values_.size()) +
                         " values for " + std::to_string(sensing_.size()) +
                         " sensing indices");
  }
}

Measurement measure(std::span<const double> x, const SensingSet& K) {
  const std::size_t n = K.n();
  if (x.size() != n) {
    throw DimensionError("measure: signal length " + std::to_string(x.size()) +
                         " but sensing set is for n = " + std::to_string(n));
  }
  ComplexVec values;
  values.reserve(K.size());
  const auto log_n = static_cast<std::size_t>(std::bit_width(n));
  if (K.size() <= log_n) {
    for (std::size_t k : K.indices()) values.push_back(dft_bin(x, k));
  } else {
    const ComplexVec full = dft(x);
    for (std::size_t k : K.indices()) values.push_back(full[k]);
  }
  return Measurement(std::move(values), K);
}

ComplexVec embed(std::span<const Complex> a, const SensingSet& K) {
  if (a.size() != K.size()) {
    throw DimensionError("embed: " + std::to_string(a.size()) +
                         " values for " + std::to_string(K.size()) +
                         " sensing indices");
  }
  ComplexVec out(K.n(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) out[K.indices()[i]] = a[i];
  return out;
}

SensingReport check_measurement_conditions(const Measurement& v) {
  const SensingSet& K = v.sensing();
  const std::size_t n = K.n();
  const ComplexVec& vals = v.values();
  SensingReport report;

  const double eps = zero_threshold(vals);
  for (std::size_t i = 0; i < K.size(); ++i) {
    const std::size_t k = K.indices()[i];
    if (std::abs(vals[i]) > eps && gcd(k, n) == 1) {
      report.qualifying_bins.push_back(k);
    }
  }
  report.recovery_guaranteed = !report.qualifying_bins.empty();

  // Largest bins first, so a distinct lag is usually settled by one term.
  std::vector<std::size_t> order(K.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::norm(vals[a]) > std::norm(vals[b]);
  });
  const double tol = 1e-9 * norm2(vals);
  const double tol2 = tol * tol;
  for (std::size_t lag = 1; lag < n; ++lag) {
    double d2 = 0.0;
    for (std::size_t i : order) {
      const Complex w = unit_root(n, mul_mod(K.indices()[i], lag, n));
      d2 += std::norm(vals[i] * (w - 1.0));
      if (d2 > tol2) break;
    }
    if (d2 <= tol2) report.ambiguous_lags.push_back(lag);
  }
  report.columns_distinct = report.ambiguous_lags.empty();
  return report;
}

SensingReport check_sensing_conditions(std::span<const double> x,
                                       const SensingSet& K) {
  if (x.size() != K.n()) {
    throw DimensionError("check_sensing_conditions: length mismatch");
  }
  SensingReport report = check_measurement_conditions(measure(x, K));
  // Zero test against the full spectrum of x rather than the measured bins.
  const ComplexVec xs = dft(x);
  const double eps = zero_threshold(xs);
  std::erase_if(report.qualifying_bins,
                [&](std::size_t k) { return !(std::abs(xs[k]) > eps); });
  report.recovery_guaranteed = !report.qualifying_bins.empty();
  return report;
}

ShiftEstimate shift_by_compressive_argmax(const Measurement& z,
                                          const Measurement& v) {
  require_shared_sensing(z, v, "shift_by_compressive_argmax");
  const SensingSet& K = v.sensing();
  const std::size_t n = K.n();

  ComplexVec r(K.size());
  for (std::size_t i = 0; i < K.size(); ++i) {
    r[i] = std::conj(z.values()[i]) * v.values()[i];
  }
  // Σ_i r_i e^{-2πj·k_i·s/n} for all s at once is √n · dft((r)_K).
  const ComplexVec all = dft(embed(r, K));
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> scores(n);
  for (std::size_t s = 0; s < n; ++s) scores[s] = all[s].real() * root_n;

  ShiftEstimate est;
  est.method = Method::compressive_argmax;
  est.shift = argmax_first(scores);
  est.score = scores[est.shift];
  est.scores = std::move(scores);
  attach_sensing_flags(est, check_measurement_conditions(v));
  return est;
}

ShiftEstimate shift_by_compressive_ratio(const Measurement& z,
                                         const Measurement& v) {
  require_shared_sensing(z, v, "shift_by_compressive_ratio");
  const SensingSet& K = v.sensing();
  const std::size_t n = K.n();
  const double eps = zero_threshold(v.values());

  ComplexVec rho(K.size(), Complex{0.0, 0.0});
  std::vector<bool> kept(K.size(), false);
  std::size_t retained = 0;
  for (std::size_t i = 0; i < K.size(); ++i) {
    if (std::abs(v.values()[i]) > eps) {
      rho[i] = z.values()[i] / v.values()[i];
      kept[i] = true;
      ++retained;
    }
  }
  if (retained == 0) {
    throw IdentifiabilityError(
        "shift_by_compressive_ratio: every measured bin of v is zero");
  }

  // (1/n) Σ_i ρ_i e^{+2πj·k_i·s/n} = idft((ρ)_K)/√n.
  const ComplexVec back = idft(embed(rho, K));
  const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> scores(n);
  for (std::size_t s = 0; s < n; ++s) scores[s] = back[s].real() * inv_root_n;

  ShiftEstimate est;
  est.method = Method::compressive_ratio;
  est.shift = argmax_first(scores);
  double d2 = 0.0;
  for (std::size_t i = 0; i < K.size(); ++i) {
    if (!kept[i]) continue;
    const Complex w = unit_root(n, mul_mod(K.indices()[i], est.shift, n));
    d2 += std::norm(rho[i] - w);
  }
  est.score = std::sqrt(d2);
  est.scores = std::move(scores);
  if (retained < K.size()) est.add_flag(flags::excluded_bins);
  attach_sensing_flags(est, check_measurement_conditions(v));
  return est;
}

IdentityCheck argmax_identity_check(const Measurement& z, const Measurement& v,
                                    std::size_t s) {
  require_shared_sensing(z, v, "argmax_identity_check");
  const SensingSet& K = v.sensing();
  const std::size_t n = K.n();
  if (n > kIdentityCheckMaxN) {
    throw DimensionError("argmax_identity_check: n = " + std::to_string(n) +
                         " exceeds the materialization limit " +
                         std::to_string(kIdentityCheckMaxN));
  }
  if (s >= n) throw DimensionError("argmax_identity_check: shift out of range");

  const std::size_t m = K.size();
  const oracle::DenseMatrix A = oracle::partial_fourier(n, K.indices());
  const oracle::DenseMatrix P = oracle::materialize(make_shift(n, s));
  Eigen::VectorXcd zv(m), vv(m);
  for (std::size_t i = 0; i < m; ++i) {
    zv[i] = z.values()[i];
    vv[i] = v.values()[i];
  }
  const Complex lhs = zv.dot((A * P * A.adjoint()) * vv);

  ComplexVec r(m);
  for (std::size_t i = 0; i < m; ++i) r[i] = std::conj(z.values()[i]) * v.values()[i];
  const ComplexVec rk = embed(r, K);
  const ComplexVec f = fourier_column(n, s + 1);
  const double root_n = std::sqrt(static_cast<double>(n));
  Complex rhs{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) rhs += rk[k] * root_n * f[k];

  return {lhs.real(), rhs.real()};
}

}  // namespace shiftr
