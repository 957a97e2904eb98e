#include "wovf/numkernel.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wovf {

void Tolerance::validate() const {
  if (!(residual_eps > 0.0)) throw std::invalid_argument("residual_eps must be positive");
  if (!(invert_eps > 0.0 && invert_eps < 1.0))
    throw std::invalid_argument("invert_eps must lie in (0, 1)");
}

namespace num {
namespace {

Eigen::VectorXd singular_values(const Op& x) {
  if (x.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<Op> svd(x);
  return svd.singularValues();
}

}  // namespace

double spectral_norm(const Op& x) {
  const Eigen::VectorXd s = singular_values(x);
  return s.size() == 0 ? 0.0 : s(0);
}

double smallest_singular_value(const Op& x) {
  const Eigen::VectorXd s = singular_values(x);
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

double inverse_condition(const Op& x) {
  const Eigen::VectorXd s = singular_values(x);
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

bool passes_invertibility(const Op& x, const Tolerance& tol) {
  return x.rows() == x.cols() && x.rows() > 0 && inverse_condition(x) >= tol.invert_eps;
}

Op identity(Eigen::Index n) { return Op::Identity(n, n); }

Op try_invert(const Op& x, const Tolerance& tol) {
  if (x.rows() != x.cols()) throw ShapeMismatch("try_invert: matrix is not square");
  if (x.rows() == 0) throw NotInvertible("try_invert: empty matrix");
  const double rcond = inverse_condition(x);
  if (rcond < tol.invert_eps) {
    std::ostringstream msg;
    msg << "relative smallest singular value " << rcond << " below " << tol.invert_eps;
    throw NotInvertible(msg.str());
  }
  const Eigen::Index n = x.rows();
  const Op eye = identity(n);
  const Op y = x.fullPivLu().inverse();
  const double res = std::max(spectral_norm(x * y - eye), spectral_norm(y * x - eye));
  if (res > tol.residual_eps) {
    std::ostringstream msg;
    msg << "inverse residual " << res << " exceeds " << tol.residual_eps;
    throw NotInvertible(msg.str());
  }
  return y;
}

Op kron(const Op& x, const Op& y) {
  Op out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

Op direct_sum(const Op& x, const Op& y) {
  Op out = Op::Zero(x.rows() + y.rows(), x.cols() + y.cols());
  out.topLeftCorner(x.rows(), x.cols()) = x;
  out.bottomRightCorner(y.rows(), y.cols()) = y;
  return out;
}

Eigen::Index numerical_rank(const Op& x, const Tolerance& tol) {
  const Eigen::VectorXd s = singular_values(x);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) >= tol.invert_eps * s(0)) ++r;
  return r;
}

Op range_basis(const Op& x, const Tolerance& tol) {
  if (x.size() == 0) return Op(x.rows(), 0);
  Eigen::JacobiSVD<Op> svd(x, Eigen::ComputeThinU);
  const Eigen::Index r = numerical_rank(x, tol);
  return svd.matrixU().leftCols(r);
}

Op orthonormal_complement(const Op& x, const Tolerance& tol) {
  const Eigen::Index m = x.rows();
  const Eigen::Index k = x.cols();
  if (k > m) throw RankDeficient("orthonormal_complement: more columns than rows");
  if (k == 0) return identity(m);
  if (inverse_condition(x) < tol.invert_eps)
    throw RankDeficient("orthonormal_complement: column space smaller than column count");
  Eigen::JacobiSVD<Op> svd(x, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(m - k);
}

Op inverse_sqrt_psd(const Op& x, const Tolerance& tol) {
  const Op herm = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<Op> eig(herm);
  const Eigen::VectorXd& w = eig.eigenvalues();
  if (w.size() == 0 || w(0) <= 0.0 || w(0) < tol.invert_eps * w(w.size() - 1))
    throw NotInvertible("inverse_sqrt_psd: matrix is not positive definite at tolerance");
  const Eigen::VectorXd inv_sqrt = w.array().rsqrt();
  return eig.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

double min_hermitian_part_eigenvalue(const Op& x) {
  const Op herm = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<Op> eig(herm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

Op random_op(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("random_op: dimensions must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  Op out(rows, cols);
  // Fill row-major so that the stream order does not depend on storage order.
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im);
    }
  return out;
}

Op random_op(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Rng rng(seed);
  return random_op(rows, cols, rng);
}

Op random_unitary(Eigen::Index n, Rng& rng) {
  const Op z = random_op(n, n, rng);
  Eigen::HouseholderQR<Op> qr(z);
  Op q = qr.householderQ() * identity(n);
  const Op r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

Op random_unitary(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(n, rng);
}

}  // namespace num
}  // namespace wovf
