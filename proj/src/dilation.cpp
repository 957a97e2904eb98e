#include "wovf/dilation.hpp"

#include <algorithm>
#include <sstream>

#include "wovf/duality.hpp"

namespace wovf {

double range_mismatch(const WeakOvf& f) {
  const Tolerance& tol = f.tol();
  const Op qa = num::range_basis(theta_A(f), tol);
  const Op qp = num::range_basis(theta_Psi(f), tol);
  // Subspaces of different dimension are maximally apart.
  if (qa.cols() != qp.cols()) return 1.0;
  const double a_in_p = num::spectral_norm(qa - qp * (qp.adjoint() * qa));
  const double p_in_a = num::spectral_norm(qp - qa * (qa.adjoint() * qp));
  return std::max(a_in_p, p_in_a);
}

Dilation dilate(const WeakOvf& f) {
  const Tolerance& tol = f.tol();
  const Op s = frame_operator(f);
  const double parseval_res = num::spectral_norm(s - num::identity(f.d()));
  if (parseval_res > tol.loose()) {
    std::ostringstream msg;
    msg << "||S - I|| = " << parseval_res;
    throw PreconditionFailed("NotParseval", msg.str());
  }
  const double mismatch = range_mismatch(f);
  if (mismatch > tol.loose()) {
    std::ostringstream msg;
    msg << "range(theta_A) and range(theta_Psi) differ by " << mismatch;
    throw PreconditionFailed("RangesDiffer", msg.str());
  }
  const Op ta = theta_A(f);
  const Op p = idempotent_P(f);
  const double skew = num::spectral_norm(p - p.adjoint());
  if (skew > tol.loose()) {
    std::ostringstream msg;
    msg << "||P - P*|| = " << skew;
    throw PreconditionFailed("PNotProjection", msg.str());
  }

  const Op complement = num::orthonormal_complement(ta, tol);
  const Eigen::Index k = complement.cols();
  const Op p_perp = num::identity(p.rows()) - p;
  const Op tail = p_perp * complement;  // columns g -> P^perp g in C^N (x) H0

  Dilation out;
  out.extended_dim = f.d() + k;
  out.embed = Op::Zero(out.extended_dim, f.d());
  out.embed.topRows(f.d()).setIdentity();
  const Eigen::Index d0 = f.d0();
  for (std::size_t n = 0; n < f.size(); ++n) {
    const Op tail_n = tail.middleRows(static_cast<Eigen::Index>(n) * d0, d0);
    Op b(d0, out.extended_dim), phi(d0, out.extended_dim);
    b << f.A(n), tail_n;
    phi << f.Psi(n), tail_n;
    out.B.push_back(std::move(b));
    out.Phi.push_back(std::move(phi));
  }
  return out;
}

SimilarityWitness similarity_witness(const WeakOvf& f, const WeakOvf& g) {
  if (f.size() != g.size() || f.d() != g.d() || f.d0() != g.d0())
    throw ShapeMismatch("similarity needs frames with equal (d, d0, N)");
  const Tolerance& tol = f.tol();
  const Op s_inv = num::try_invert(frame_operator(f), tol);
  const Op ta = theta_A(f), tp = theta_Psi(f);
  const Op tb = theta_A(g), tphi = theta_Psi(g);

  SimilarityWitness w;
  w.R_AB = s_inv * (tp.adjoint() * tb);
  w.R_PsiPhi = s_inv.adjoint() * (ta.adjoint() * tphi);
  for (std::size_t n = 0; n < f.size(); ++n) {
    w.residual = std::max(w.residual, num::spectral_norm(g.A(n) - f.A(n) * w.R_AB));
    w.residual = std::max(w.residual, num::spectral_norm(g.Psi(n) - f.Psi(n) * w.R_PsiPhi));
  }

  Op p_g;
  try {
    p_g = idempotent_P(g);
  } catch (const NotInvertible&) {
    throw NotSimilar("second frame is not a weak OVF", w.residual);
  }
  const Op p_f = ta * s_inv * tp.adjoint();
  w.p_residual = num::spectral_norm(p_g - p_f);

  const bool sequences_match = w.residual <= tol.loose();
  const bool invertible = num::passes_invertibility(w.R_AB, tol) &&
                          num::passes_invertibility(w.R_PsiPhi, tol);
  const bool p_match = w.p_residual <= tol.loose() * std::max(1.0, num::spectral_norm(p_f));
  if (!(sequences_match && invertible)) {
    std::ostringstream msg;
    msg << "reconstruction residual " << w.residual << (invertible ? "" : ", singular candidate");
    throw NotSimilar(msg.str(), w.residual);
  }
  if (!p_match) {
    std::ostringstream msg;
    msg << "sequence test passed but ||P_g - P_f|| = " << w.p_residual;
    throw NotSimilar(msg.str(), w.p_residual);
  }
  return w;
}

WeakOvf parsevalize(const WeakOvf& f, Side side) {
  const Op s_inv = num::try_invert(frame_operator(f), f.tol());
  std::vector<Op> a = f.As(), psi = f.Psis();
  if (side == Side::Left) {
    for (Op& an : a) an = an * s_inv;
  } else {
    const Op s_inv_adj = s_inv.adjoint();
    for (Op& pn : psi) pn = pn * s_inv_adj;
  }
  return WeakOvf(std::move(a), std::move(psi), f.tol());
}

bool unique_similar_dual_check(const WeakOvf& f, std::size_t samples, std::uint64_t seed) {
  const Tolerance& tol = f.tol();
  const WeakOvf canon = canonical_dual(f);
  const Op s_inv = num::try_invert(frame_operator(f), tol);
  try {
    const SimilarityWitness w = similarity_witness(f, canon);
    if (num::spectral_norm(w.R_AB - s_inv) > tol.loose() ||
        num::spectral_norm(w.R_PsiPhi - s_inv.adjoint()) > tol.loose())
      return false;
  } catch (const NotSimilar&) {
    return false;
  }

  const auto dist_to_canonical = [&](const WeakOvf& g) {
    double worst = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
      worst = std::max(worst, num::spectral_norm(g.A(n) - canon.A(n)));
      worst = std::max(worst, num::spectral_norm(g.Psi(n) - canon.Psi(n)));
    }
    return worst;
  };

  Rng rng(seed);
  const Eigen::Index big = static_cast<Eigen::Index>(f.size()) * f.d0();
  std::size_t drawn = 0;
  for (std::size_t attempt = 0; drawn < samples && attempt < 20 * samples + 20; ++attempt) {
    const Op u = 0.5 * num::random_op(big, f.d(), rng);
    const Op v = 0.5 * num::random_op(f.d(), big, rng);
    WeakOvf g = canon;
    try {
      g = dual_from_parameters(f, u, v);
    } catch (const NotInvertible&) {
      continue;
    }
    ++drawn;
    const bool is_canonical = dist_to_canonical(g) <= 1e3 * tol.loose();
    bool similar = true;
    try {
      similarity_witness(f, g);
    } catch (const NotSimilar&) {
      similar = false;
    }
    if (similar != is_canonical) return false;
  }
  return drawn == samples;
}

std::string to_string(Side side) { return side == Side::Left ? "left" : "right"; }

}  // namespace wovf
