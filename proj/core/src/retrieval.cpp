#include "shiftr/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

#include "shiftr/circulant.hpp"
#include "shiftr/numeric.hpp"
#include "shiftr/spectral.hpp"

namespace shiftr {
namespace {

void require_same_length(std::span<const double> x, std::span<const double> y,
                         const char* who) {
  if (x.empty()) throw DimensionError(std::string(who) + ": empty signal");
  if (x.size() != y.size()) {
    throw DimensionError(std::string(who) + ": length mismatch (" +
                         std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()) + ")");
  }
}

// Re idft(ρ)/√n, i.e. the conventional 1/n inverse transform.
std::vector<double> inverse_ratio(std::span<const Complex> rho) {
  const ComplexVec d = idft(rho);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rho.size()));
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i].real() * scale;
  return out;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::crosscorr: return "crosscorr";
    case Method::ratio: return "ratio";
    case Method::single_bin: return "single_bin";
    case Method::compressive_argmax: return "compressive_argmax";
    case Method::compressive_ratio: return "compressive_ratio";
    case Method::brute_force: return "brute_force";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::crosscorr, Method::ratio, Method::single_bin,
                   Method::compressive_argmax, Method::compressive_ratio,
                   Method::brute_force}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

bool ShiftEstimate::has_flag(std::string_view f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

void ShiftEstimate::add_flag(std::string_view f) {
  if (!has_flag(f)) flags.emplace_back(f);
}

ShiftEstimate shift_by_crosscorr(std::span<const double> x,
                                 std::span<const double> y) {
  require_same_length(x, y, "shift_by_crosscorr");
  if (norm2(x) == 0.0 || norm2(y) == 0.0) {
    throw DimensionError("shift_by_crosscorr: zero-norm input");
  }
  const std::size_t n = x.size();
  const ComplexVec xs = dft(x);
  ComplexVec prod = dft(y);
  for (std::size_t i = 0; i < n; ++i) prod[i] *= std::conj(xs[i]);
  const ComplexVec r = idft(prod);

  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) scores[i] = r[i].real() * root_n;

  ShiftEstimate est;
  est.method = Method::crosscorr;
  est.shift = argmax_first(scores);
  est.score = scores[est.shift];
  est.scores = std::move(scores);
  return est;
}

ComplexVec ratio_spectrum(std::span<const Complex> xspec,
                          std::span<const Complex> yspec,
                          std::size_t* excluded) {
  if (xspec.size() != yspec.size()) {
    throw DimensionError("ratio_spectrum: length mismatch");
  }
  const double eps = zero_threshold(xspec);
  ComplexVec rho(xspec.size(), Complex{0.0, 0.0});
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < xspec.size(); ++i) {
    if (std::abs(xspec[i]) > eps) {
      rho[i] = yspec[i] / xspec[i];
    } else {
      ++dropped;
    }
  }
  if (excluded != nullptr) *excluded = dropped;
  return rho;
}

ShiftEstimate shift_by_ratio(std::span<const double> x,
                             std::span<const double> y) {
  require_same_length(x, y, "shift_by_ratio");
  const ComplexVec xs = dft(x);
  std::size_t excluded = 0;
  const ComplexVec rho = ratio_spectrum(xs, dft(y), &excluded);
  if (excluded == xs.size()) {
    throw IdentifiabilityError("shift_by_ratio: no usable bin (x is zero)");
  }
  std::vector<double> d = inverse_ratio(rho);

  ShiftEstimate est;
  est.method = Method::ratio;
  est.shift = argmax_first(d);
  est.score = d[est.shift];
  est.scores = std::move(d);
  if (excluded > 0) est.add_flag(flags::excluded_bins);
  return est;
}

bool is_disambiguating_bin(std::size_t bin, std::size_t n) {
  return n >= 1 && bin < n && gcd(bin, n) == 1;
}

std::size_t select_bin(std::span<const Complex> xspec) {
  const std::size_t n = xspec.size();
  if (n < 2) throw DimensionError("select_bin: need n >= 2");
  const double eps = zero_threshold(xspec);
  std::optional<std::size_t> best;
  for (std::size_t i = 1; i < n; ++i) {
    if (!is_disambiguating_bin(i, n) || !(std::abs(xspec[i]) > eps)) continue;
    if (!best || std::abs(xspec[i]) > std::abs(xspec[*best])) best = i;
  }
  if (!best) {
    throw IdentifiabilityError(
        "select_bin: no usable bin; every bin coprime with n = " +
        std::to_string(n) + " is zero in the spectrum of x "
        "(excluded bins: zero magnitude or gcd(i, n) != 1)");
  }
  return *best;
}

ShiftEstimate shift_single_bin(std::span<const double> x,
                               std::span<const double> y,
                               const SingleBinOptions& options) {
  require_same_length(x, y, "shift_single_bin");
  const std::size_t n = x.size();
  if (n < 2) throw DimensionError("shift_single_bin: need n >= 2");

  std::size_t bin = 0;
  Complex xb, yb;
  if (options.bin) {
    bin = *options.bin;
    if (!is_disambiguating_bin(bin, n)) {
      throw IdentifiabilityError("shift_single_bin: bin " +
                                 std::to_string(bin) +
                                 " is not coprime with n = " +
                                 std::to_string(n));
    }
    std::tie(xb, yb) = dft_bin_pair(x, y, bin);
    // Zero test relative to the largest possible bin magnitude, ‖x‖₁/√n,
    // since the full spectrum is not available here.
    double l1 = 0.0;
    for (double v : x) l1 += std::abs(v);
    const double eps = kZeroRelTol * l1 / std::sqrt(static_cast<double>(n));
    if (!(std::abs(xb) > eps)) {
      throw IdentifiabilityError("shift_single_bin: bin " +
                                 std::to_string(bin) +
                                 " of x is zero (excluded bin)");
    }
  } else {
    const ComplexVec xs = dft(x);
    bin = select_bin(xs);
    xb = xs[bin];
    yb = dft_bin(y, bin);
  }

  const Complex rho = yb / xb;
  ShiftEstimate est;
  est.method = Method::single_bin;
  est.score = std::abs(rho);
  if (std::abs(est.score - 1.0) > options.modulus_tolerance) {
    est.add_flag(flags::modulus_misfit);
  }

  const double two_pi = 2.0 * std::numbers::pi;
  if (options.column_scan) {
    // Row `bin` of √n·F at column s+1 is e^{-2πj·bin·s/n}.
    std::vector<double> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
      dist[s] = std::abs(rho - unit_root(n, mul_mod(bin, s, n)));
    }
    est.shift = argmin_first(dist);
  } else {
    // ρ = e^{-2πj·t/n} with t ≡ bin·s (mod n).
    const double turns = -std::arg(rho) * static_cast<double>(n) / two_pi;
    const auto nn = static_cast<long long>(n);
    long long t = std::llround(turns) % nn;
    if (t < 0) t += nn;
    est.shift = static_cast<std::size_t>(
        mul_mod(static_cast<std::uint64_t>(t), mod_inverse(bin, n), n));
  }
  return est;
}

AffineFit shift_affine(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y, "shift_affine");
  const std::size_t n = x.size();
  if (n < 2) throw DimensionError("shift_affine: need n >= 2");
  const ComplexVec xs = dft(x);
  const double eps = zero_threshold(xs);
  const double sum_x = std::accumulate(x.begin(), x.end(), 0.0);
  if (std::abs(sum_x) < eps * static_cast<double>(n)) {
    throw IdentifiabilityError(
        "shift_affine: sum of x is zero, offset is unidentifiable");
  }
  bool coprime_bin = false;
  for (std::size_t i = 1; i < n && !coprime_bin; ++i) {
    coprime_bin = is_disambiguating_bin(i, n) && std::abs(xs[i]) > eps;
  }
  if (!coprime_bin) {
    throw IdentifiabilityError("shift_affine: no usable bin coprime with n");
  }

  const std::vector<double> d = inverse_ratio(ratio_spectrum(xs, dft(y)));
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / double(n);
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) dev[i] = std::abs(d[i] - mean);
  const std::size_t s = argmax_first(dev);

  // Off-peak entries all equal β/Σx.
  const double level = (mean * double(n) - d[s]) / double(n - 1);
  AffineFit fit;
  fit.model.shift = s;
  fit.model.alpha = d[s] - level;
  fit.model.beta = level * sum_x;

  const Signal shifted = delay(x, s);
  double r2 = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double e = y[t] - fit.model.alpha * shifted[t] - fit.model.beta;
    r2 += e * e;
  }
  fit.residual = std::sqrt(r2);

  double dmax = 0.0;
  for (double v : d) dmax = std::max(dmax, std::abs(v));
  if (std::abs(fit.model.alpha) <= 1e-9 * std::max(1.0, dmax)) {
    fit.flags.emplace_back(flags::gain_unidentifiable);
  }
  return fit;
}

}  // namespace shiftr
