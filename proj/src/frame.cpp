#include "wovf/frame.hpp"

#include <algorithm>
#include <sstream>

namespace wovf {

WeakOvf::WeakOvf(std::vector<Op> a, std::vector<Op> psi, Tolerance tol)
    : a_(std::move(a)), psi_(std::move(psi)), tol_(tol) {
  tol_.validate();
  if (a_.empty()) throw ShapeMismatch("weak OVF needs at least one index");
  if (a_.size() != psi_.size()) throw ShapeMismatch("A and Psi have different lengths");
  d0_ = a_.front().rows();
  d_ = a_.front().cols();
  if (d0_ <= 0 || d_ <= 0) throw ShapeMismatch("operators must be nonempty");
  for (std::size_t n = 0; n < a_.size(); ++n) {
    if (a_[n].rows() != d0_ || a_[n].cols() != d_ || psi_[n].rows() != d0_ ||
        psi_[n].cols() != d_) {
      std::ostringstream msg;
      msg << "operator " << n << " does not have shape " << d0_ << "x" << d_;
      throw ShapeMismatch(msg.str());
    }
  }
}

OperatorOnb::OperatorOnb(std::vector<Op> f, Tolerance tol) : f_(std::move(f)) {
  if (f_.empty()) throw PreconditionFailed("NotOnb", "empty sequence");
  const Eigen::Index d0 = f_.front().rows();
  const Eigen::Index d = f_.front().cols();
  for (const Op& fn : f_)
    if (fn.rows() != d0 || fn.cols() != d) throw ShapeMismatch("ONB operators differ in shape");
  if (d != static_cast<Eigen::Index>(f_.size()) * d0)
    throw PreconditionFailed("NotOnb", "dimension must equal N * d0");
  const Op theta = analysis_operator(f_);
  // theta theta* = I encodes F_n F_k* = delta I; theta* theta = I is completeness.
  const double rows_res = num::spectral_norm(theta * theta.adjoint() - num::identity(theta.rows()));
  const double cols_res = num::spectral_norm(theta.adjoint() * theta - num::identity(d));
  if (rows_res > tol.loose() || cols_res > tol.loose())
    throw PreconditionFailed("NotOnb", "defining relations fail at tolerance");
}

Op embedding(std::size_t n, std::size_t count, Eigen::Index d0) {
  if (n >= count) throw IndexOutOfRange("embedding index out of range");
  Op l = Op::Zero(static_cast<Eigen::Index>(count) * d0, d0);
  l.block(static_cast<Eigen::Index>(n) * d0, 0, d0, d0).setIdentity();
  return l;
}

Op frame_operator(const WeakOvf& f) {
  Op s = Op::Zero(f.d(), f.d());
  for (std::size_t n = 0; n < f.size(); ++n) s.noalias() += f.Psi(n).adjoint() * f.A(n);
  return s;
}

Op analysis_operator(const std::vector<Op>& seq) {
  if (seq.empty()) return Op();
  const Eigen::Index d0 = seq.front().rows();
  const Eigen::Index d = seq.front().cols();
  Op theta(static_cast<Eigen::Index>(seq.size()) * d0, d);
  for (std::size_t n = 0; n < seq.size(); ++n) {
    if (seq[n].rows() != d0 || seq[n].cols() != d)
      throw ShapeMismatch("analysis_operator: operators differ in shape");
    theta.middleRows(static_cast<Eigen::Index>(n) * d0, d0) = seq[n];
  }
  return theta;
}

FrameReport classify(const WeakOvf& f) {
  const Tolerance& tol = f.tol();
  FrameReport rep;
  rep.S = frame_operator(f);
  const Op ta = theta_A(f);
  const Op tp = theta_Psi(f);
  rep.factorization_residual = num::spectral_norm(rep.S - tp.adjoint() * ta);
  rep.parseval_residual = num::spectral_norm(rep.S - num::identity(f.d()));
  Op s_inv;
  try {
    s_inv = num::try_invert(rep.S, tol);
  } catch (const NotInvertible&) {
    return rep;
  }
  rep.is_weak = true;
  rep.lower_bound = 1.0 / num::spectral_norm(s_inv);
  rep.upper_bound = num::spectral_norm(rep.S);
  rep.is_parseval = rep.parseval_residual <= tol.residual_eps;
  const Op p = ta * s_inv * tp.adjoint();
  rep.riesz_residual = num::spectral_norm(p - num::identity(p.rows()));
  rep.is_riesz = *rep.riesz_residual <= tol.residual_eps;
  rep.is_orthonormal = rep.is_parseval && rep.is_riesz;
  return rep;
}

Op idempotent_P(const WeakOvf& f) {
  const Op s_inv = num::try_invert(frame_operator(f), f.tol());
  return theta_A(f) * s_inv * theta_Psi(f).adjoint();
}

WeakOvf from_factors(const Op& u, const Op& v, std::size_t count, Eigen::Index d0,
                     const Tolerance& tol) {
  if (count == 0 || d0 <= 0) throw ShapeMismatch("from_factors: empty index set");
  const Eigen::Index rows = static_cast<Eigen::Index>(count) * d0;
  if (u.rows() != rows || v.rows() != rows || u.cols() != v.cols())
    throw ShapeMismatch("from_factors: U and V must both be (N d0) x d");
  if (!num::passes_invertibility(v.adjoint() * u, tol))
    throw NotInvertible("from_factors: V*U fails the invertibility surrogate");
  std::vector<Op> a, psi;
  a.reserve(count);
  psi.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    a.emplace_back(u.middleRows(static_cast<Eigen::Index>(n) * d0, d0));
    psi.emplace_back(v.middleRows(static_cast<Eigen::Index>(n) * d0, d0));
  }
  return WeakOvf(std::move(a), std::move(psi), tol);
}

WeakOvf from_operator_onb(const OperatorOnb& onb, const Op& u, const Op& v,
                          const Tolerance& tol) {
  const Eigen::Index d = onb.d();
  if (u.rows() != d || u.cols() != d || v.rows() != d || v.cols() != d)
    throw ShapeMismatch("from_operator_onb: U and V must be d x d");
  if (!num::passes_invertibility(v.adjoint() * u, tol))
    throw NotInvertible("from_operator_onb: V*U fails the invertibility surrogate");
  std::vector<Op> a, psi;
  for (const Op& fn : onb.F()) {
    a.emplace_back(fn * u);
    psi.emplace_back(fn * v);
  }
  return WeakOvf(std::move(a), std::move(psi), tol);
}

OperatorOnb onb_from_embeddings(std::size_t count, Eigen::Index d0) {
  std::vector<Op> f;
  for (std::size_t n = 0; n < count; ++n) f.emplace_back(embedding(n, count, d0).adjoint());
  return OperatorOnb(std::move(f));
}

double check_representation_identity(const WeakOvf& f, const std::vector<Vec>& y,
                                     const std::vector<Vec>& z) {
  if (y.size() != f.size() || z.size() != f.size())
    throw ShapeMismatch("coefficient sequences must have one entry per index");
  Vec hy = Vec::Zero(f.d());
  Vec hz = Vec::Zero(f.d());
  for (std::size_t n = 0; n < f.size(); ++n) {
    if (y[n].size() != f.d0() || z[n].size() != f.d0())
      throw ShapeMismatch("coefficients must be d0-vectors");
    hy += f.A(n).adjoint() * y[n];
    hz += f.Psi(n).adjoint() * z[n];
  }
  if ((hy - hz).norm() > f.tol().residual_eps * std::max(1.0, hy.norm()))
    throw InconsistentDecomposition("sum A_n* y_n and sum Psi_n* z_n differ");
  const Vec& h = hy;
  const Op s_inv = num::try_invert(frame_operator(f), f.tol());
  const Op s_inv_adj = s_inv.adjoint();
  // <u, v> is linear in the first slot: v* u.
  Complex lhs = 0, canonical = 0, cross = 0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const Vec psi_t = f.Psi(n) * (s_inv_adj * h);
    const Vec a_t = f.A(n) * (s_inv * h);
    lhs += z[n].dot(y[n]);
    canonical += a_t.dot(psi_t);
    cross += (z[n] - a_t).dot(y[n] - psi_t);
  }
  return std::abs(lhs - canonical - cross);
}

ClassicOvfReport classic_ovf_check(const std::vector<Op>& a, const Tolerance& tol) {
  ClassicOvfReport out;
  out.frame = classify(WeakOvf(a, a, tol));
  out.min_hermitian_eigenvalue = num::min_hermitian_part_eigenvalue(out.frame.S);
  out.is_positive = out.frame.is_weak &&
                    out.min_hermitian_eigenvalue >= *out.frame.lower_bound - tol.residual_eps;
  return out;
}

double cross_gram_residual(const WeakOvf& f) {
  double worst = 0.0;
  const Op eye = num::identity(f.d0());
  for (std::size_t n = 0; n < f.size(); ++n)
    for (std::size_t m = 0; m < f.size(); ++m) {
      Op g = f.A(n) * f.Psi(m).adjoint();
      if (n == m) g -= eye;
      worst = std::max(worst, num::spectral_norm(g));
    }
  return worst;
}

}  // namespace wovf
