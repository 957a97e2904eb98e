#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wovf/numkernel.hpp"

namespace wovf {

// A finite pair of operator sequences ({A_n}, {Psi_n}), each operator d0 x d.
// Indices are zero-based throughout the C++ API.
class WeakOvf {
 public:
  // Throws ShapeMismatch when the sequences are empty, differ in length, or
  // contain operators of differing shape.
  WeakOvf(std::vector<Op> a, std::vector<Op> psi, Tolerance tol = {});

  Eigen::Index d() const { return d_; }
  Eigen::Index d0() const { return d0_; }
  std::size_t size() const { return a_.size(); }
  const Op& A(std::size_t n) const { return a_.at(n); }
  const Op& Psi(std::size_t n) const { return psi_.at(n); }
  const std::vector<Op>& As() const { return a_; }
  const std::vector<Op>& Psis() const { return psi_; }
  const Tolerance& tol() const { return tol_; }

  WeakOvf with_tolerance(const Tolerance& tol) const { return WeakOvf(a_, psi_, tol); }

 private:
  std::vector<Op> a_;
  std::vector<Op> psi_;
  Tolerance tol_;
  Eigen::Index d_ = 0;
  Eigen::Index d0_ = 0;
};

struct FrameReport {
  Op S;
  bool is_weak = false;
  bool is_parseval = false;
  bool is_riesz = false;
  bool is_orthonormal = false;
  // Optimal bounds a = ||S^{-1}||^{-1}, b = ||S||; unset unless is_weak.
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  double factorization_residual = 0.0;
  // ||S - I|| and ||P - I||, kept for reporting.
  double parseval_residual = 0.0;
  std::optional<double> riesz_residual;
};

struct ClassicOvfReport {
  FrameReport frame;
  double min_hermitian_eigenvalue = 0.0;
  bool is_positive = false;
};

// Orthonormal basis {F_n} in B(H, H0): F_n F_k* = delta I and sum F_n* F_n = I.
class OperatorOnb {
 public:
  // Validates d == N * d0 and both defining relations within tol.loose().
  // Throws PreconditionFailed("NotOnb", ...) otherwise.
  explicit OperatorOnb(std::vector<Op> f, Tolerance tol = {});

  const std::vector<Op>& F() const { return f_; }
  std::size_t size() const { return f_.size(); }
  Eigen::Index d() const { return f_.front().cols(); }
  Eigen::Index d0() const { return f_.front().rows(); }

 private:
  std::vector<Op> f_;
};

// L_n : H0 -> C^N (x) H0, the block injection e_n (x) (.).
Op embedding(std::size_t n, std::size_t count, Eigen::Index d0);

Op frame_operator(const WeakOvf& f);

// Block-stacked (N d0) x d matrix whose block n is seq[n].
Op analysis_operator(const std::vector<Op>& seq);

// Equivalent helpers for the two sequences of a frame.
inline Op theta_A(const WeakOvf& f) { return analysis_operator(f.As()); }
inline Op theta_Psi(const WeakOvf& f) { return analysis_operator(f.Psis()); }

FrameReport classify(const WeakOvf& f);

// P = theta_A S^{-1} theta_Psi*.  Throws NotInvertible when S is singular.
Op idempotent_P(const WeakOvf& f);

// A_n = L_n* U, Psi_n = L_n* V.  Throws NotInvertible unless V*U passes.
WeakOvf from_factors(const Op& u, const Op& v, std::size_t count, Eigen::Index d0,
                     const Tolerance& tol = {});

// A_n = F_n U, Psi_n = F_n V.  Throws NotInvertible unless V*U passes.
WeakOvf from_operator_onb(const OperatorOnb& onb, const Op& u, const Op& v,
                          const Tolerance& tol = {});

OperatorOnb onb_from_embeddings(std::size_t count, Eigen::Index d0);

// Residual of the canonical-dual decomposition identity for consistent
// coefficient sequences y, z (sum A_n* y_n == sum Psi_n* z_n).  Throws
// InconsistentDecomposition when the two reconstructions disagree.
double check_representation_identity(const WeakOvf& f, const std::vector<Vec>& y,
                                     const std::vector<Vec>& z);

ClassicOvfReport classic_ovf_check(const std::vector<Op>& a, const Tolerance& tol = {});

// Largest ||A_n Psi_m* - delta_{nm} I|| over all pairs.
double cross_gram_residual(const WeakOvf& f);

}  // namespace wovf
