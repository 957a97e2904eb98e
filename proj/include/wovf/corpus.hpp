#pragma once

#include <cstdint>
#include <string>

#include "wovf/grouplike.hpp"

namespace wovf {

// Random frames of a requested class.  Dimension errors throw
// std::invalid_argument.

// Gaussian (A, Psi) with N d0 >= d, redrawn until weak.
WeakOvf random_weak(Eigen::Index d, Eigen::Index d0, std::size_t n, std::uint64_t seed,
                    const Tolerance& tol = {});

// A = L* U with U an isometry and Psi = A when symmetric; otherwise U random
// and Psi = L* U (U*U)^{-1}.  Both variants have equal ranges and a
// self-adjoint P.
WeakOvf random_parseval(Eigen::Index d, Eigen::Index d0, std::size_t n, std::uint64_t seed,
                        bool symmetric = true, const Tolerance& tol = {});

// A_n = Psi_n = L_n* W for a random unitary W; needs d == N d0.
WeakOvf random_operator_onb_frame(Eigen::Index d, Eigen::Index d0, std::size_t n,
                                  std::uint64_t seed, const Tolerance& tol = {});

struct GroupFrameSample {
  Representation rep;
  Op generator;  // A = Psi
  WeakOvf frame;
};

// Parseval frame generated by pi = W (lambda (x) I_k) W* with d = |G| k,
// k <= d0, and a random generator normalized by S^{-1/2}.
GroupFrameSample random_group_frame(const FiniteGroup& g, Eigen::Index d, Eigen::Index d0,
                                    std::uint64_t seed, const Tolerance& tol = {});

struct GroupLikeFrameSample {
  GroupLikeRepresentation rep;
  Op generator;
  WeakOvf frame;
};

GroupLikeFrameSample random_grouplike_frame(const GroupLikeSystem& sys, Eigen::Index d,
                                            Eigen::Index d0, std::uint64_t seed,
                                            const Tolerance& tol = {});

// "trivial", "cyclic:n", "dihedral:n" (order 2n) or "klein".
FiniteGroup named_group(const std::string& name);

// "iz2" ({I, iX}, m = 4), "pauli" ({I, X, Y, Z}, m = 4), "heisenberg:n"
// (X^a Z^b on C^n, m = n), or any named group with trivial phases.
GroupLikeSystem named_system(const std::string& name);

// Clock and shift unitaries on C^n.
Op shift_matrix(Eigen::Index n);
Op clock_matrix(Eigen::Index n);

}  // namespace wovf
