#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "wovf/group_frames.hpp"

namespace wovf {

// omega^turn * U_index with omega = exp(2 pi i / m).
struct Phased {
  std::size_t turn = 0;
  std::size_t index = 0;
  bool operator==(const Phased&) const = default;
};

// Finite group-like unitary system stored as an exact phased table: mul[u][v]
// encodes U V = omega^k W and inv[u] encodes U^{-1} = omega^k W.  The
// identity is relabelled to element 0 on construction.
class GroupLikeSystem {
 public:
  // Checks shapes, index and turn ranges and the presence of an identity
  // (row and column with phase 0); throws InvalidSystem otherwise.  The
  // remaining axioms are diagnosed by validate_system.
  GroupLikeSystem(std::size_t phase_order, std::vector<std::vector<Phased>> mul,
                  std::vector<Phased> inv, std::vector<std::string> names = {});

  // mul[g][h] = (c(g, h), gh) and inv[g] = (-c(g, g^{-1}), g^{-1}).
  static GroupLikeSystem from_group(const FiniteGroup& g,
                                    const std::vector<std::vector<std::size_t>>& cocycle,
                                    std::size_t phase_order);
  static GroupLikeSystem from_group(const FiniteGroup& g);

  // Reads the table off a list of unitaries (the first must be the identity)
  // by matching every product and inverse to omega^k U_j.  Throws
  // InvalidSystem when a product leaves T_m U.
  static GroupLikeSystem from_unitaries(const std::vector<Op>& us, std::size_t phase_order,
                                        double eps = 1e-9);

  std::size_t size() const { return mul_.size(); }
  std::size_t phase_order() const { return m_; }
  static constexpr std::size_t identity() { return 0; }
  const Phased& mul(std::size_t u, std::size_t v) const { return mul_[u][v]; }
  const Phased& inv(std::size_t u) const { return inv_[u]; }
  const std::vector<std::vector<Phased>>& table() const { return mul_; }
  const std::vector<Phased>& inverses() const { return inv_; }
  const std::vector<std::string>& names() const { return names_; }

  // omega^turn, exact for multiples of a quarter turn.
  Complex phase(std::size_t turn) const;

  // The plain group behind a table whose phases are all zero.  Throws
  // InvalidSystem otherwise.
  FiniteGroup underlying_group() const;

 private:
  std::size_t m_;
  std::vector<std::vector<Phased>> mul_;
  std::vector<Phased> inv_;
  std::vector<std::string> names_;
};

struct SystemReport {
  bool ok = true;
  std::string violation;                 // empty when ok
  std::array<std::size_t, 3> where{0, 0, 0};
};

// Checks the cocycle identity f(U s(VW)) f(VW) = f(s(UV) W) f(UV), the
// associativity s(U s(VW)) = s(s(UV) W), the identity row and column, the
// inverse table, and injectivity of the seven reindexing maps.  Returns the
// first violation.
SystemReport validate_system(const GroupLikeSystem& sys);

struct GroupLikeRepresentation {
  GroupLikeSystem system;
  std::vector<Op> pi;

  Eigen::Index dim() const { return pi.front().rows(); }
  // omega^k pi(sigma), the phased operator for an encoded element.
  Op phased(const Phased& p) const;
  // pi(U)^{-1} computed as f(U^{-1}) pi(sigma(U^{-1})).
  Op inverse(std::size_t u) const;
  // Largest of the product-rule, inverse-rule and unitarity residuals.
  double residual() const;
  // Smallest ||pi(U) - pi(V)|| over distinct pairs; infinity for size 1.
  double separation() const;
};

struct GroupLikeRegular {
  GroupLikeRepresentation left;   // lambda_U chi_V = f(UV) chi_{s(UV)}
  GroupLikeRepresentation right;  // rho_U chi_V = f(VU^{-1}) chi_{s(VU^{-1})}
};

// Throws InvalidSystem when validate_system fails.
GroupLikeRegular grouplike_regular_representations(const GroupLikeSystem& sys);
GroupLikeRepresentation grouplike_left_regular(const GroupLikeSystem& sys);

// A_U = A pi(U)^{-1}, Psi_U = Psi pi(U)^{-1}.
WeakOvf generate_grouplike_frame(const GroupLikeRepresentation& rep, const Op& a, const Op& psi,
                                 const Tolerance& tol = {});

// A_{s(UV)} A_{s(UW)}* = f(UV) conj(f(UW)) A_V A_W* and the A Psi*, Psi Psi*
// analogues, over all (U, V, W).
ShiftReport check_grouplike_conditions(const WeakOvf& f, const GroupLikeSystem& sys);

// Same conditions for the left or right Parseval normalization.
ShiftReport twisted_grouplike_conditions(const WeakOvf& f, const GroupLikeSystem& sys, Side side);

// pi(U) := theta_Psi* (lambda_U (x) I) theta_A.  Throws PreconditionFailed
// with reason NotParseval, AnalysisNotSurjective or ConditionsFail.
GroupLikeRepresentation reconstruct_grouplike_representation(const WeakOvf& f,
                                                             const GroupLikeSystem& sys);

}  // namespace wovf
