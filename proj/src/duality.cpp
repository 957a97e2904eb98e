#include "wovf/duality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wovf {
namespace {

void require_conformable(const WeakOvf& f, const WeakOvf& g) {
  if (f.size() != g.size() || f.d() != g.d() || f.d0() != g.d0())
    throw ShapeMismatch("frames must share (d, d0, N)");
}

// n-th d0-row block of a stacked operator.
Op block_row(const Op& stacked, std::size_t n, Eigen::Index d0) {
  return stacked.middleRows(static_cast<Eigen::Index>(n) * d0, d0);
}

}  // namespace

std::pair<Op, Op> mixed_frame_operators(const WeakOvf& f, const WeakOvf& g) {
  require_conformable(f, g);
  Op psi_b = Op::Zero(f.d(), f.d());
  Op phi_a = Op::Zero(f.d(), f.d());
  for (std::size_t n = 0; n < f.size(); ++n) {
    psi_b.noalias() += f.Psi(n).adjoint() * g.A(n);
    phi_a.noalias() += g.Psi(n).adjoint() * f.A(n);
  }
  return {psi_b, phi_a};
}

WeakOvf canonical_dual(const WeakOvf& f) {
  const Op s_inv = num::try_invert(frame_operator(f), f.tol());
  const Op s_inv_adj = s_inv.adjoint();
  std::vector<Op> a, psi;
  for (std::size_t n = 0; n < f.size(); ++n) {
    a.emplace_back(f.A(n) * s_inv);
    psi.emplace_back(f.Psi(n) * s_inv_adj);
  }
  return WeakOvf(std::move(a), std::move(psi), f.tol());
}

DualBounds dual_bounds_check(const WeakOvf& f) {
  const FrameReport primal = classify(f);
  if (!primal.is_weak) throw NotInvertible("dual_bounds_check: frame operator is singular");
  const FrameReport dual = classify(canonical_dual(f));
  if (!dual.is_weak) throw NotInvertible("dual_bounds_check: dual frame operator is singular");
  const DualBounds out{*dual.lower_bound, *dual.upper_bound};
  const double expect_lower = 1.0 / *primal.upper_bound;
  const double expect_upper = 1.0 / *primal.lower_bound;
  const double rel = f.tol().loose();
  if (std::abs(out.lower - expect_lower) > rel * expect_lower ||
      std::abs(out.upper - expect_upper) > rel * expect_upper)
    throw TheoremViolated("canonical dual bounds are not (1/b, 1/a)");
  return out;
}

DualPair is_dual(const WeakOvf& f, const WeakOvf& g) {
  const auto [psi_b, phi_a] = mixed_frame_operators(f, g);
  const Op eye = num::identity(f.d());
  const double res =
      std::max(num::spectral_norm(psi_b - eye), num::spectral_norm(phi_a - eye));
  if (res > f.tol().loose()) {
    std::ostringstream msg;
    msg << "duality residual " << res << " exceeds " << f.tol().loose();
    throw NotDual(msg.str(), res);
  }
  return DualPair{f, g, res};
}

Op right_inverses_of_synthesis(const WeakOvf& f, const Op& u) {
  const Op ta = theta_A(f);
  if (u.rows() != ta.rows() || u.cols() != f.d())
    throw ShapeMismatch("U must be (N d0) x d");
  const Op s_inv = num::try_invert(frame_operator(f), f.tol());
  const Op tp = theta_Psi(f);
  const Op base = ta * s_inv;
  return base + u - base * (tp.adjoint() * u);
}

Op left_inverses_of_analysis(const WeakOvf& f, const Op& v) {
  const Op ta = theta_A(f);
  if (v.rows() != f.d() || v.cols() != ta.rows())
    throw ShapeMismatch("V must be d x (N d0)");
  const Op s_inv = num::try_invert(frame_operator(f), f.tol());
  const Op tp = theta_Psi(f);
  const Op base = s_inv * tp.adjoint();
  return base + v - (v * ta) * base;
}

WeakOvf dual_from_parameters(const WeakOvf& f, const Op& u, const Op& v) {
  const Op ta = theta_A(f);
  const Op tp = theta_Psi(f);
  const Op s_inv = num::try_invert(frame_operator(f), f.tol());
  if (u.rows() != ta.rows() || u.cols() != f.d()) throw ShapeMismatch("U must be (N d0) x d");
  if (v.rows() != f.d() || v.cols() != ta.rows()) throw ShapeMismatch("V must be d x (N d0)");
  const Op combined = s_inv + v * u - v * ta * s_inv * tp.adjoint() * u;
  if (!num::passes_invertibility(combined, f.tol()))
    throw NotInvertible("dual_from_parameters: S^{-1} + VU - V theta_A S^{-1} theta_Psi* U is singular");
  // theta_B is the right inverse R, theta_Phi is the adjoint of the left inverse.
  const Op theta_b = right_inverses_of_synthesis(f, u);
  const Op theta_phi = left_inverses_of_analysis(f, v).adjoint();
  std::vector<Op> b, phi;
  for (std::size_t n = 0; n < f.size(); ++n) {
    b.emplace_back(block_row(theta_b, n, f.d0()));
    phi.emplace_back(block_row(theta_phi, n, f.d0()));
  }
  return WeakOvf(std::move(b), std::move(phi), f.tol());
}

OrthogonalityResult is_orthogonal(const WeakOvf& f, const WeakOvf& g) {
  const auto [psi_b, phi_a] = mixed_frame_operators(f, g);
  const double res = std::max(num::spectral_norm(psi_b), num::spectral_norm(phi_a));
  return {res <= f.tol().loose(), res};
}

WeakOvf interpolate(const WeakOvf& f, const WeakOvf& g, const Op& c, const Op& d, const Op& e,
                    const Op& fmat) {
  require_conformable(f, g);
  const Eigen::Index dim = f.d();
  for (const Op* m : {&c, &d, &e, &fmat})
    if (m->rows() != dim || m->cols() != dim) throw ShapeMismatch("C, D, E, F must be d x d");
  const double eps = f.tol().loose();
  const Op eye = num::identity(dim);
  if (num::spectral_norm(frame_operator(f) - eye) > eps)
    throw PreconditionFailed("NotParseval", "first frame is not Parseval");
  if (num::spectral_norm(frame_operator(g) - eye) > eps)
    throw PreconditionFailed("NotParseval", "second frame is not Parseval");
  if (!is_orthogonal(f, g).orthogonal)
    throw PreconditionFailed("NotOrthogonal", "frames are not orthogonal");
  if (num::spectral_norm(c.adjoint() * e + d.adjoint() * fmat - eye) > eps)
    throw PreconditionFailed("CoefficientIdentity", "C*E + D*F differs from I");
  std::vector<Op> a, psi;
  for (std::size_t n = 0; n < f.size(); ++n) {
    a.emplace_back(f.A(n) * c + g.A(n) * d);
    psi.emplace_back(f.Psi(n) * e + g.Psi(n) * fmat);
  }
  return WeakOvf(std::move(a), std::move(psi), f.tol());
}

WeakOvf direct_sum_frames(const WeakOvf& f, const WeakOvf& g) {
  require_conformable(f, g);
  if (!is_orthogonal(f, g).orthogonal)
    throw PreconditionFailed("NotOrthogonal", "direct sum needs orthogonal frames");
  std::vector<Op> a, psi;
  for (std::size_t n = 0; n < f.size(); ++n) {
    Op an(f.d0(), 2 * f.d());
    an << f.A(n), g.A(n);
    Op pn(f.d0(), 2 * f.d());
    pn << f.Psi(n), g.Psi(n);
    a.push_back(std::move(an));
    psi.push_back(std::move(pn));
  }
  return WeakOvf(std::move(a), std::move(psi), f.tol());
}

}  // namespace wovf
