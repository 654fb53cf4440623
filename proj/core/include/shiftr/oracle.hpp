#pragma once

// Slow reference implementations. Everything here is evaluated literally:
// explicit sums and explicit matrices, no transforms.

#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "shiftr/circulant.hpp"
#include "shiftr/estimate.hpp"
#include "shiftr/types.hpp"

namespace shiftr::oracle {

using DenseMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// O(n²) unitary DFT by direct summation.
ComplexVec direct_dft(std::span<const Complex> x);
ComplexVec direct_dft(std::span<const double> x);
ComplexVec direct_idft(std::span<const Complex> X);

/// Unitary Fourier matrix F.
DenseMatrix fourier_matrix(std::size_t n);

/// Rows `rows` of F; the partial-Fourier sensing matrix A.
DenseMatrix partial_fourier(std::size_t n, std::span<const std::size_t> rows);

/// The n×n matrix [c, Pc, …, P^{n−1}c].
DenseMatrix materialize(const Circulant& c);

/// Literal argmax_s (P^s x)^T y with smallest-index tie-break.
ShiftEstimate brute_force_shift(std::span<const double> x,
                                std::span<const double> y);

struct CirculantFitResult {
  Signal c;
  double residual;
};

/// min_c ‖Y − circ(c)X‖_F as an unstructured least-squares problem over
/// the basis {circ(e_q)X}; minimum-norm solution on rank deficiency.
CirculantFitResult brute_force_circulant_fit(const RealMatrix& X,
                                             const RealMatrix& Y);

}  // namespace shiftr::oracle
