#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "wovf/dilation.hpp"
#include "wovf/frame.hpp"

namespace wovf {

// Finite group given by its multiplication table.  Elements are indices
// 0..order-1 and the identity is always element 0 (tables are relabelled on
// construction, keeping the relative order of the other elements).
class FiniteGroup {
 public:
  // Validates closure, identity, inverses and associativity; throws
  // InvalidSystem on failure.  `names` may be empty.
  static FiniteGroup from_table(std::vector<std::vector<std::size_t>> mul,
                                std::vector<std::string> names = {});

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup dihedral(std::size_t n);  // order 2n: rotations r^k then reflections s r^k
  static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);

  std::size_t order() const { return mul_.size(); }
  static constexpr std::size_t identity() { return 0; }
  std::size_t mul(std::size_t g, std::size_t h) const { return mul_[g][h]; }
  std::size_t inv(std::size_t g) const { return inv_[g]; }
  const std::vector<std::vector<std::size_t>>& table() const { return mul_; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::vector<std::size_t>> mul_;
  std::vector<std::size_t> inv_;
  std::vector<std::string> names_;
};

struct Representation {
  FiniteGroup group;
  std::vector<Op> pi;

  Eigen::Index dim() const { return pi.front().rows(); }
  // max over pairs of ||pi_g pi_h - pi_gh|| and over g of ||pi_g* pi_g - I||.
  double residual() const;
};

struct RegularRepresentations {
  Representation left;   // lambda_g chi_q = chi_{gq}
  Representation right;  // rho_g chi_q = chi_{q g^{-1}}
};

Representation left_regular(const FiniteGroup& g);
RegularRepresentations regular_representations(const FiniteGroup& g);

// A_g = A pi_{g^{-1}}, Psi_g = Psi pi_{g^{-1}}, indexed by group element.
WeakOvf generate_frame(const Representation& rep, const Op& a, const Op& psi,
                       const Tolerance& tol = {});

struct ShiftReport {
  bool passed = true;
  double max_residual = 0.0;
  // Worst (g, p, q) and which family (0: AA*, 1: A Psi*, 2: Psi Psi*).
  std::array<std::size_t, 3> worst_triple{0, 0, 0};
  int worst_family = 0;
};

// A_{gp} A_{gq}* = A_p A_q*, A_{gp} Psi_{gq}* = A_p Psi_q*,
// Psi_{gp} Psi_{gq}* = Psi_p Psi_q* for all (g, p, q).
ShiftReport check_shift_conditions(const WeakOvf& f, const FiniteGroup& g);

// pi_g := theta_Psi* (lambda_g (x) I) theta_A.  Throws PreconditionFailed
// with reason NotParseval or ShiftConditionsFail.
Representation reconstruct_representation(const WeakOvf& f, const FiniteGroup& g);

struct CommutationReport {
  double theta_A = 0.0;    // max_g ||theta_A pi_g - (lambda_g (x) I) theta_A||
  double theta_Psi = 0.0;  // same for theta_Psi
  double frame_op = 0.0;   // max_g ||S pi_g - pi_g S||
  std::vector<double> per_element;                     // worst of the three, per g
  std::vector<std::vector<std::size_t>> offending_blocks;  // frame indices off by > tol.loose()
  double max() const;
};

CommutationReport check_commutation(const WeakOvf& f, const Representation& rep);

// check_shift_conditions applied to the left ({A_g S^{-1}}, {Psi_g}) or right
// ({A_g}, {Psi_g (S^{-1})*}) Parseval normalization.
ShiftReport twisted_shift_conditions(const WeakOvf& f, const FiniteGroup& g, Side side);

// lambda_g (x) I_{d0}.
Op lifted_left_regular(const Representation& lambda, std::size_t g, Eigen::Index d0);

}  // namespace wovf
