#include "shiftr/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace shiftr {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per size and kept for the process.
class PlanCache {
 public:
  struct Plans {
    fftw_plan forward;
    fftw_plan backward;
  };

  ~PlanCache() {
    std::lock_guard lock(mutex_);
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  Plans get(std::size_t n) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(n); it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    const int size = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Plans p{fftw_plan_dft_1d(size, in, out, FFTW_FORWARD, flags),
            fftw_plan_dft_1d(size, in, out, FFTW_BACKWARD, flags)};
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, Plans> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

ComplexVec transform(ComplexVec in, bool forward) {
  const std::size_t n = in.size();
  if (n == 0) throw DimensionError("dft: empty input");
  const auto plans = plan_cache().get(n);
  ComplexVec out(n);
  fftw_execute_dft(forward ? plans.forward : plans.backward,
                   reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : out) v *= scale;
  return out;
}

// e^{-2πj·idx/n} = hi[idx >> shift] · lo[idx & mask]. Both tables are
// O(√n) long and built from exact angles, so per-sample error stays at a
// couple of ulps instead of growing with a running phasor product.
class PhasorTable {
 public:
  explicit PhasorTable(std::size_t n) {
    const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(double(n))));
    const std::size_t block = std::bit_ceil(std::max<std::size_t>(root, 1));
    shift_ = static_cast<unsigned>(std::countr_zero(block));
    mask_ = block - 1;
    lo_.resize(block);
    for (std::size_t l = 0; l < block; ++l) lo_[l] = unit_root(n, l);
    hi_.resize((n + block - 1) / block);
    for (std::size_t h = 0; h < hi_.size(); ++h) hi_[h] = unit_root(n, h * block);
  }

  Complex operator()(std::size_t idx) const {
    return hi_[idx >> shift_] * lo_[idx & mask_];
  }

 private:
  unsigned shift_ = 0;
  std::size_t mask_ = 0;
  ComplexVec lo_;
  ComplexVec hi_;
};

}  // namespace

ComplexVec dft(std::span<const double> x) {
  return transform(ComplexVec(x.begin(), x.end()), true);
}

ComplexVec dft(std::span<const Complex> x) {
  return transform(ComplexVec(x.begin(), x.end()), true);
}

ComplexVec idft(std::span<const Complex> X) {
  return transform(ComplexVec(X.begin(), X.end()), false);
}

ComplexVec fourier_column(std::size_t n, std::size_t q) {
  if (q < 1 || q > n) {
    throw DimensionError("fourier_column: q = " + std::to_string(q) +
                         " outside 1.." + std::to_string(n));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexVec col(n);
  const std::uint64_t j = q - 1;
  for (std::size_t a = 0; a < n; ++a) {
    col[a] = scale * unit_root(n, static_cast<std::uint64_t>(a) * j);
  }
  return col;
}

Complex unit_root(std::size_t n, std::uint64_t k) {
  if (n == 0) throw DimensionError("unit_root: n must be positive");
  const std::uint64_t r = k % n;
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) /
                       static_cast<double>(n);
  return std::polar(1.0, angle);
}

Complex dft_bin(std::span<const double> x, std::size_t bin) {
  return dft_bin_pair(x, x, bin).first;
}

std::pair<Complex, Complex> dft_bin_pair(std::span<const double> x,
                                         std::span<const double> y,
                                         std::size_t bin) {
  const std::size_t n = x.size();
  if (n == 0) throw DimensionError("dft_bin: empty input");
  if (y.size() != n) throw DimensionError("dft_bin: length mismatch");
  if (bin >= n) throw DimensionError("dft_bin: bin out of range");
  const PhasorTable phasor(n);
  Complex sx{0.0, 0.0};
  Complex sy{0.0, 0.0};
  std::size_t idx = 0;
  for (std::size_t b = 0; b < n; ++b) {
    const Complex w = phasor(idx);
    sx += x[b] * w;
    sy += y[b] * w;
    idx += bin;
    if (idx >= n) idx -= n;
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  return {sx * scale, sy * scale};
}

}  // namespace shiftr
