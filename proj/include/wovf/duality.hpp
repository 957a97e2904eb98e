#pragma once

#include <utility>

#include "wovf/frame.hpp"

namespace wovf {

struct DualPair {
  WeakOvf primal;
  WeakOvf dual;
  // max(||sum Psi_n* B_n - I||, ||sum Phi_n* A_n - I||)
  double duality_residual;
};

// Mixed frame operators (sum Psi_n* B_n, sum Phi_n* A_n) of f = (A, Psi) and
// g = (B, Phi).  Throws ShapeMismatch when the frames are not conformable.
std::pair<Op, Op> mixed_frame_operators(const WeakOvf& f, const WeakOvf& g);

// ({A_n S^{-1}}, {Psi_n (S^{-1})*}).
WeakOvf canonical_dual(const WeakOvf& f);

struct DualBounds {
  double lower;
  double upper;
};

// Optimal bounds of the canonical dual.  Throws TheoremViolated when they do
// not match (1/b, 1/a) to 10 * residual_eps relative.
DualBounds dual_bounds_check(const WeakOvf& f);

// Throws NotDual when the duality residual exceeds tol.loose().
DualPair is_dual(const WeakOvf& f, const WeakOvf& g);

// theta_A S^{-1} + (I - theta_A S^{-1} theta_Psi*) U; always a right inverse
// of theta_Psi*.
Op right_inverses_of_synthesis(const WeakOvf& f, const Op& u);

// S^{-1} theta_Psi* + V (I - theta_A S^{-1} theta_Psi*); always a left inverse
// of theta_A.
Op left_inverses_of_analysis(const WeakOvf& f, const Op& v);

// The dual generated by the parameter pair (U, V).  Throws NotInvertible when
// S^{-1} + VU - V theta_A S^{-1} theta_Psi* U fails the surrogate.
WeakOvf dual_from_parameters(const WeakOvf& f, const Op& u, const Op& v);

struct OrthogonalityResult {
  bool orthogonal;
  double residual;  // max of the two mixed-sum norms
};

OrthogonalityResult is_orthogonal(const WeakOvf& f, const WeakOvf& g);

// ({A_n C + B_n D}, {Psi_n E + Phi_n F}) for an orthogonal Parseval pair.
// Throws PreconditionFailed when any hypothesis is off by more than
// tol.loose().
WeakOvf interpolate(const WeakOvf& f, const WeakOvf& g, const Op& c, const Op& d, const Op& e,
                    const Op& fmat);

// ({A_n (+) B_n}, {Psi_n (+) Phi_n}) acting on H (+) H.  Throws
// PreconditionFailed unless f and g are orthogonal.
WeakOvf direct_sum_frames(const WeakOvf& f, const WeakOvf& g);

}  // namespace wovf
