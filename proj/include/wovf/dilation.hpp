#pragma once

#include <string>

#include "wovf/frame.hpp"

namespace wovf {

// Orthonormal extension of a Parseval weak OVF to H1 = H (+) range(theta_A)^perp.
struct Dilation {
  Eigen::Index extended_dim = 0;
  std::vector<Op> B;    // d0 x extended_dim
  std::vector<Op> Phi;  // d0 x extended_dim
  Op embed;             // extended_dim x d isometry h -> h (+) 0

  WeakOvf as_frame(const Tolerance& tol) const { return WeakOvf(B, Phi, tol); }
};

// Throws PreconditionFailed with reason NotParseval, RangesDiffer or
// PNotProjection when a hypothesis fails.
Dilation dilate(const WeakOvf& f);

// Mutual projection residual between range(theta_A) and range(theta_Psi).
double range_mismatch(const WeakOvf& f);

struct SimilarityWitness {
  Op R_AB;
  Op R_PsiPhi;
  double residual = 0.0;    // max_n ||B_n - A_n R_AB||, ||Phi_n - Psi_n R_PsiPhi||
  double p_residual = 0.0;  // ||P_{B,Phi} - P_{A,Psi}||
};

// Candidate operators R_AB = S^{-1} theta_Psi* theta_B and
// R_PsiPhi = (S^{-1})* theta_A* theta_Phi.  Throws NotSimilar when the
// reconstruction misses by more than tol.loose() or a candidate is singular.
SimilarityWitness similarity_witness(const WeakOvf& f, const WeakOvf& g);

enum class Side { Left, Right };

// Left: ({A_n S^{-1}}, {Psi_n}); right: ({A_n}, {Psi_n (S^{-1})*}).
WeakOvf parsevalize(const WeakOvf& f, Side side);

// Samples `samples` parameterized duals of f and confirms that exactly the
// canonical one is similar to f.
bool unique_similar_dual_check(const WeakOvf& f, std::size_t samples, std::uint64_t seed);

std::string to_string(Side side);

}  // namespace wovf
