#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "shiftr/types.hpp"

namespace shiftr {

/// circ(c): column j is c cyclically shifted down by j. Only c is stored.
class Circulant {
 public:
  explicit Circulant(Signal first_column);

  std::size_t size() const noexcept { return column_.size(); }
  const Signal& first_column() const noexcept { return column_; }

 private:
  Signal column_;
};

/// Eigenvalues σ of a circulant, C = F^H diag(σ) F.
struct EigenDiagonal {
  ComplexVec sigma;
};

/// circ(e_{s+1}): delays a signal cyclically by s, x_t ↦ x_{(t−s) mod n}.
Circulant make_shift(std::size_t n, std::size_t s);

/// Cx via idft(σ ⊙ dft(x)). Throws DimensionError on size mismatch and
/// std::logic_error if the result is not real to tolerance.
Signal apply(const Circulant& c, std::span<const double> x);

/// σ = √n · dft(c).
EigenDiagonal eigenvalues(const Circulant& c);

/// Inverse of eigenvalues(): c = idft(σ)/√n, which must be real.
Circulant from_eigenvalues(const EigenDiagonal& d);

/// Time-domain cyclic delay by s.
Signal delay(std::span<const double> x, std::size_t s);

using RealMatrix = Eigen::MatrixXd;

struct CirculantFit {
  Circulant circulant;
  EigenDiagonal eigen;
  /// ‖Y − CX‖_F.
  double residual;
};

/// Least-squares circulant: argmin_C ‖Y − CX‖_F over real circulants,
/// solved per frequency row. Rows of FX that vanish get σ_k = 0.
CirculantFit ls_circulant_fit(const RealMatrix& X, const RealMatrix& Y);

}  // namespace shiftr
