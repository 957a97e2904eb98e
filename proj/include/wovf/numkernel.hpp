#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "wovf/errors.hpp"

namespace wovf {

using Complex = std::complex<double>;

// Every bounded operator in the library is a dense complex matrix.  The
// adjoint is `X.adjoint()`, products are `X * Y`.
using Op = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Caller-owned generator; every random helper takes one by reference so that
// determinism is a property of the seed alone.
using Rng = std::mt19937_64;

// Numerical surrogate for "bounded invertible" and for exact identities.
struct Tolerance {
  double residual_eps = 1e-9;  // absolute bound on identity residuals
  double invert_eps = 1e-8;    // smallest admissible sigma_min / sigma_max

  // Throws std::invalid_argument unless residual_eps > 0 and 0 < invert_eps < 1.
  void validate() const;

  // Threshold used by most identity checks.
  double loose() const { return 10.0 * residual_eps; }
};

namespace num {

double spectral_norm(const Op& x);

// Smallest singular value (of a possibly rectangular matrix; min(rows, cols)
// values are considered).
double smallest_singular_value(const Op& x);

// Ratio sigma_min / sigma_max; zero for the zero matrix.
double inverse_condition(const Op& x);

bool passes_invertibility(const Op& x, const Tolerance& tol);

// Inverse of a square matrix.  Throws NotInvertible when the relative
// smallest singular value is below tol.invert_eps, or when the refined
// inverse still misses ||XY - I|| <= residual_eps on either side.
Op try_invert(const Op& x, const Tolerance& tol);

Op kron(const Op& x, const Op& y);

// Block-diagonal diag(x, y).
Op direct_sum(const Op& x, const Op& y);

// Orthonormal basis (as columns) of range(x)^perp.  Requires full column rank
// at tolerance, otherwise throws RankDeficient.
Op orthonormal_complement(const Op& x, const Tolerance& tol);

// Orthonormal basis of range(x), numerical rank decided by tol.invert_eps
// relative to the largest singular value.
Op range_basis(const Op& x, const Tolerance& tol);

// Numerical rank at tolerance.
Eigen::Index numerical_rank(const Op& x, const Tolerance& tol);

// Hermitian square root inverse of a positive definite matrix.
Op inverse_sqrt_psd(const Op& x, const Tolerance& tol);

// Smallest eigenvalue of the Hermitian part (X + X*)/2.
double min_hermitian_part_eigenvalue(const Op& x);

Op identity(Eigen::Index n);

// Complex Gaussian entries (independent N(0,1) real and imaginary parts).
Op random_op(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Op random_op(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

// Haar-distributed unitary via QR with phase correction.
Op random_unitary(Eigen::Index n, Rng& rng);
Op random_unitary(Eigen::Index n, std::uint64_t seed);

}  // namespace num
}  // namespace wovf
