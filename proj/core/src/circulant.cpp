#include "shiftr/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "shiftr/numeric.hpp"
#include "shiftr/spectral.hpp"

namespace shiftr {
namespace {

ComplexVec column_spectrum(const RealMatrix& M, Eigen::Index j) {
  Signal col(static_cast<std::size_t>(M.rows()));
  for (Eigen::Index i = 0; i < M.rows(); ++i) col[i] = M(i, j);
  return dft(col);
}

}  // namespace

Circulant::Circulant(Signal first_column) : column_(std::move(first_column)) {
  if (column_.empty()) throw DimensionError("Circulant: empty first column");
}

Circulant make_shift(std::size_t n, std::size_t s) {
  if (n == 0) throw DimensionError("make_shift: n must be positive");
  if (s >= n) {
    throw DimensionError("make_shift: shift " + std::to_string(s) +
                         " outside 0.." + std::to_string(n - 1));
  }
  Signal c(n, 0.0);
  c[s] = 1.0;
  return Circulant(std::move(c));
}

EigenDiagonal eigenvalues(const Circulant& c) {
  ComplexVec sigma = dft(c.first_column());
  const double root_n = std::sqrt(static_cast<double>(c.size()));
  for (auto& v : sigma) v *= root_n;
  return {std::move(sigma)};
}

Circulant from_eigenvalues(const EigenDiagonal& d) {
  const std::size_t n = d.sigma.size();
  if (n == 0) throw DimensionError("from_eigenvalues: empty spectrum");
  const ComplexVec c = idft(d.sigma);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Signal out(n);
  double imag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = c[i].real() * scale;
    imag = std::max(imag, std::abs(c[i].imag()) * scale);
  }
  if (imag > 1e-10 * std::max(1.0, norm_inf(d.sigma))) {
    throw std::invalid_argument(
        "from_eigenvalues: spectrum is not conjugate-symmetric");
  }
  return Circulant(std::move(out));
}

Signal apply(const Circulant& c, std::span<const double> x) {
  const std::size_t n = c.size();
  if (x.size() != n) {
    throw DimensionError("apply: circulant is " + std::to_string(n) +
                         "x" + std::to_string(n) + ", signal has length " +
                         std::to_string(x.size()));
  }
  const EigenDiagonal e = eigenvalues(c);
  ComplexVec spec = dft(x);
  for (std::size_t i = 0; i < n; ++i) spec[i] *= e.sigma[i];
  const ComplexVec y = idft(spec);

  const double tol = 1e-10 * norm2(x) * std::max(1.0, norm_inf(e.sigma));
  Signal out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(y[i].imag()) > tol) {
      throw std::logic_error("apply: imaginary residual " +
                             std::to_string(y[i].imag()) +
                             " exceeds tolerance");
    }
    out[i] = y[i].real();
  }
  return out;
}

Signal delay(std::span<const double> x, std::size_t s) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  s %= n;
  Signal out(n);
  for (std::size_t t = 0; t < n; ++t) out[(t + s) % n] = x[t];
  return out;
}

CirculantFit ls_circulant_fit(const RealMatrix& X, const RealMatrix& Y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) {
    throw DimensionError("ls_circulant_fit: X and Y must have the same shape");
  }
  if (X.rows() < 1 || X.cols() < 1) {
    throw DimensionError("ls_circulant_fit: need n >= 1 and N >= 1");
  }
  const auto n = static_cast<std::size_t>(X.rows());
  const Eigen::Index N = X.cols();

  // Spectra laid out as rows of FX and FY: row k, column j.
  std::vector<ComplexVec> xs, ys;
  xs.reserve(N);
  ys.reserve(N);
  for (Eigen::Index j = 0; j < N; ++j) {
    xs.push_back(column_spectrum(X, j));
    ys.push_back(column_spectrum(Y, j));
  }

  std::vector<double> row_energy(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < N; ++j) row_energy[k] += std::norm(xs[j][k]);
  }
  const double eps =
      kZeroRelTol * *std::max_element(row_energy.begin(), row_energy.end());

  // Half spectrum k = 0..⌊n/2⌋, mirrored into σ_{n−k} = conj(σ_k).
  ComplexVec sigma(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k <= n / 2; ++k) {
    if (row_energy[k] <= eps || row_energy[k] == 0.0) continue;
    Complex num{0.0, 0.0};
    for (Eigen::Index j = 0; j < N; ++j) num += std::conj(xs[j][k]) * ys[j][k];
    Complex s = num / row_energy[k];
    const std::size_t mirror = (n - k) % n;
    if (mirror == k) {
      s = Complex{s.real(), 0.0};
    } else {
      sigma[mirror] = std::conj(s);
    }
    sigma[k] = s;
  }

  // ‖Y − CX‖_F equals the spectral residual by Parseval.
  double r2 = 0.0;
  for (Eigen::Index j = 0; j < N; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      r2 += std::norm(ys[j][k] - sigma[k] * xs[j][k]);
    }
  }

  EigenDiagonal eigen{sigma};
  return {from_eigenvalues(eigen), std::move(eigen), std::sqrt(r2)};
}

}  // namespace shiftr
