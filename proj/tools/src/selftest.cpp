#include "shiftr/cli/selftest.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "shiftr/circulant.hpp"
#include "shiftr/cli/rng.hpp"
#include "shiftr/compressive.hpp"
#include "shiftr/numeric.hpp"
#include "shiftr/oracle.hpp"
#include "shiftr/retrieval.hpp"
#include "shiftr/spectral.hpp"

namespace shiftr::cli {
namespace {

constexpr std::size_t kMaxN = 16;

class Group {
 public:
  explicit Group(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++result_.checks;
    if (!ok) {
      if (result_.failures == 0) result_.first_failure = what;
      ++result_.failures;
    }
  }

  template <class F>
  void guarded(const std::string& what, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(false, what + ": threw " + e.what());
    }
  }

  GroupResult result() const { return result_; }

 private:
  GroupResult result_;
};

std::string label(const char* what, std::size_t n, std::size_t s = 0) {
  std::ostringstream ss;
  ss << what << " (n=" << n << ", s=" << s << ")";
  return ss.str();
}

Signal random_signal(Rng& rng, std::size_t n) {
  Signal x(n);
  for (auto& v : x) v = rng.normal();
  return x;
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

GroupResult spectral_group(const Transform& forward, Rng& rng) {
  Group g("spectral-unitarity");
  for (std::size_t n = 1; n <= kMaxN; ++n) {
    g.guarded(label("spectral", n), [&] {
      const Signal xr = random_signal(rng, n);
      const ComplexVec x(xr.begin(), xr.end());
      const ComplexVec X = forward(x);
      const double nx = norm2(x);
      g.check(std::abs(norm2(X) - nx) <= 1e-12 * nx, label("Parseval", n));
      g.check(max_abs_diff(idft(X), x) <= 1e-12 * nx, label("round trip", n));
      g.check(max_abs_diff(X, oracle::direct_dft(x)) <= 1e-10 * nx,
              label("direct-sum agreement", n));
    });
  }
  return g.result();
}

GroupResult circulant_group(Rng& rng) {
  Group g("circulant");
  for (std::size_t n = 1; n <= kMaxN; ++n) {
    g.guarded(label("circulant", n), [&] {
      const Circulant c(random_signal(rng, n));
      const Signal x = random_signal(rng, n);
      const Signal fast = shiftr::apply(c, x);
      const oracle::DenseMatrix M = oracle::materialize(c);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += M(i, j) * x[j];
        err = std::max(err, std::abs(acc - fast[i]));
      }
      g.check(err <= 1e-10 * std::max(1.0, norm2(x) * norm2(c.first_column())),
              label("apply vs materialized", n));
    });
  }
  for (std::size_t n = 1; n <= 8; ++n) {
    g.guarded(label("ls fit", n), [&] {
      const std::size_t N = 1 + n % 3;
      RealMatrix X(n, N), Y(n, N);
      for (Eigen::Index i = 0; i < X.size(); ++i) {
        X.data()[i] = rng.normal();
        Y.data()[i] = rng.normal();
      }
      const auto fast = ls_circulant_fit(X, Y);
      const auto slow = oracle::brute_force_circulant_fit(X, Y);
      g.check(std::abs(fast.residual - slow.residual) <= 1e-8,
              label("ls fit vs normal equations", n));
    });
  }
  return g.result();
}

GroupResult retrieval_group(Rng& rng) {
  Group g("retrieval-oracle");
  for (std::size_t n = 2; n <= kMaxN; ++n) {
    const Signal x = random_signal(rng, n);
    const double energy = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      g.guarded(label("retrieval", n, s), [&] {
        const Signal y = delay(x, s);
        const auto brute = oracle::brute_force_shift(x, y);
        const auto cc = shift_by_crosscorr(x, y);
        const auto ratio = shift_by_ratio(x, y);
        const auto single = shift_single_bin(x, y);
        g.check(brute.shift == s && cc.shift == s && ratio.shift == s &&
                    single.shift == s,
                label("estimators agree", n, s));
        g.check(std::abs(cc.score - energy) <= 1e-9 * energy,
                label("correlation peak", n, s));
        double exact = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          exact = std::max(exact, std::abs((*ratio.scores)[i] - (i == s ? 1.0 : 0.0)));
        }
        g.check(exact < 1e-9, label("ratio impulse", n, s));
      });
    }
  }
  return g.result();
}

GroupResult compressive_group(Rng& rng) {
  Group g("compressive");
  for (std::size_t n = 4; n <= kMaxN; ++n) {
    const Signal x = random_signal(rng, n);
    for (std::size_t k = 1; k < n; ++k) {
      if (!is_disambiguating_bin(k, n)) continue;
      const SensingSet K(n, {k});
      const Measurement v = measure(x, K);
      for (std::size_t s = 0; s < n; ++s) {
        g.guarded(label("singleton", n, s), [&] {
          const Measurement z = measure(delay(x, s), K);
          g.check(shift_by_compressive_ratio(z, v).shift == s &&
                      shift_by_compressive_argmax(z, v).shift == s,
                  label("single measurement recovery", n, s));
        });
      }
    }
    g.guarded(label("identity", n), [&] {
      const SensingSet K(n, {1, n / 2});
      const std::size_t s = rng.below(n);
      const Measurement v = measure(x, K);
      const Measurement z = measure(delay(x, s), K);
      const auto id = argmax_identity_check(z, v, s);
      g.check(std::abs(id.lhs - id.rhs) <= 1e-9, label("vectorization identity", n, s));
    });
  }
  g.guarded("ambiguity", [&] {
    const Signal x = random_signal(rng, 8);
    g.check(!check_sensing_conditions(x, SensingSet(8, {4})).columns_distinct,
            "n=8 K={4} ambiguity detected");
    g.check(check_sensing_conditions(x, SensingSet(8, {1})).recovery_guaranteed,
            "n=8 K={1} guarantee holds");
  });
  return g.result();
}

ComplexVec sign_flipped_dft(std::span<const Complex> x) {
  // e^{+2πj·a·b/n}: conj(dft(conj(x))).
  ComplexVec c(x.begin(), x.end());
  for (auto& v : c) v = std::conj(v);
  ComplexVec out = dft(c);
  for (auto& v : out) v = std::conj(v);
  return out;
}

}  // namespace

std::vector<GroupResult> run_selftest(const SelftestOptions& options) {
  Transform forward = options.forward;
  if (!forward) forward = [](std::span<const Complex> x) { return dft(x); };
  if (options.corrupt_dft_sign) forward = sign_flipped_dft;
  Rng rng(options.seed);
  return {spectral_group(forward, rng), circulant_group(rng),
          retrieval_group(rng), compressive_group(rng)};
}

int report_selftest(const std::vector<GroupResult>& groups, std::ostream& out) {
  bool all = true;
  for (const auto& g : groups) {
    out << (g.passed() ? "PASS " : "FAIL ") << g.name << " (" << g.checks
        << " checks";
    if (!g.passed()) out << ", " << g.failures << " failed; first: " << g.first_failure;
    out << ")\n";
    all = all && g.passed();
  }
  out << (all ? "selftest: all groups passed" : "selftest: FAILED") << '\n';
  return all ? 0 : 1;
}

}  // namespace shiftr::cli
