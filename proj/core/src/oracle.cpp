#include "shiftr/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/QR>

#include "shiftr/numeric.hpp"

namespace shiftr::oracle {
namespace {

Complex kernel(std::size_t n, std::size_t a, std::size_t b, double sign) {
  const double angle = sign * 2.0 * std::numbers::pi *
                       static_cast<double>((a * b) % n) /
                       static_cast<double>(n);
  return std::polar(1.0, angle);
}

ComplexVec direct(std::span<const Complex> x, double sign) {
  const std::size_t n = x.size();
  if (n == 0) throw DimensionError("direct_dft: empty input");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexVec out(n);
  for (std::size_t a = 0; a < n; ++a) {
    Complex acc{0.0, 0.0};
    for (std::size_t b = 0; b < n; ++b) acc += x[b] * kernel(n, a, b, sign);
    out[a] = acc * scale;
  }
  return out;
}

}  // namespace

ComplexVec direct_dft(std::span<const Complex> x) { return direct(x, -1.0); }

ComplexVec direct_dft(std::span<const double> x) {
  const ComplexVec c(x.begin(), x.end());
  return direct(c, -1.0);
}

ComplexVec direct_idft(std::span<const Complex> X) { return direct(X, +1.0); }

DenseMatrix fourier_matrix(std::size_t n) {
  if (n == 0) throw DimensionError("fourier_matrix: n must be positive");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  DenseMatrix F(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) F(a, b) = scale * kernel(n, a, b, -1.0);
  }
  return F;
}

DenseMatrix partial_fourier(std::size_t n, std::span<const std::size_t> rows) {
  const DenseMatrix F = fourier_matrix(n);
  DenseMatrix A(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= n) throw DimensionError("partial_fourier: row out of range");
    A.row(i) = F.row(rows[i]);
  }
  return A;
}

DenseMatrix materialize(const Circulant& c) {
  const std::size_t n = c.size();
  const Signal& col = c.first_column();
  DenseMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) M(i, j) = col[(i + n - j) % n];
  }
  return M;
}

ShiftEstimate brute_force_shift(std::span<const double> x,
                                std::span<const double> y) {
  const std::size_t n = x.size();
  if (n == 0) throw DimensionError("brute_force_shift: empty signal");
  if (y.size() != n) throw DimensionError("brute_force_shift: length mismatch");
  std::vector<double> scores(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    // (P^s x)_t = x_{(t−s) mod n}
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) acc += x[(t + n - s) % n] * y[t];
    scores[s] = acc;
  }
  ShiftEstimate est;
  est.method = Method::brute_force;
  est.shift = argmax_first(scores);
  est.score = scores[est.shift];
  est.scores = std::move(scores);
  return est;
}

CirculantFitResult brute_force_circulant_fit(const RealMatrix& X,
                                             const RealMatrix& Y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) {
    throw DimensionError("brute_force_circulant_fit: shape mismatch");
  }
  const Eigen::Index n = X.rows();
  const Eigen::Index N = X.cols();
  if (n < 1 || N < 1) throw DimensionError("brute_force_circulant_fit: empty");

  // Column q of the design matrix is vec(circ(e_{q+1}) X).
  Eigen::MatrixXd design(n * N, n);
  for (Eigen::Index q = 0; q < n; ++q) {
    const DenseMatrix Pq = materialize(make_shift(static_cast<std::size_t>(n),
                                                  static_cast<std::size_t>(q)));
    const Eigen::MatrixXd PX = Pq.real() * X;
    design.col(q) = Eigen::Map<const Eigen::VectorXd>(PX.data(), n * N);
  }
  const Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(
      Eigen::MatrixXd(Y).data(), n * N);

  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
  const Eigen::VectorXd c = cod.solve(target);
  const double residual = (target - design * c).norm();
  return {Signal(c.data(), c.data() + n), residual};
}

}  // namespace shiftr::oracle
