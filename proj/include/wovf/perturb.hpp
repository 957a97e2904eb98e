#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wovf/frame.hpp"

namespace wovf {

enum class HildingStatus { Certified, HypothesisUncertified, HypothesisViolated, TheoremViolated };

std::string to_string(HildingStatus s);

struct HildingReport {
  HildingStatus status = HildingStatus::Certified;
  std::size_t vectors_checked = 0;
  // max over x of ||Ux - Vx|| - alpha ||Ux|| - beta ||Vx|| (<= 0 when the
  // hypothesis holds on every sample).
  double hypothesis_excess = 0.0;
  // ||U - V|| - alpha * sigma_min(U); the certificate needs this <= 0.
  double certificate_gap = 0.0;
  bool v_invertible = false;
  // Extremes of ||Vx|| / ||Ux|| over the samples.
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

// Tests ||Ux - Vx|| <= alpha ||Ux|| + beta ||Vx|| on the samples plus the
// extreme right singular vectors of U - V, U and V.  The conclusion (V
// invertible and the norm sandwich) is only claimed under the certificate
// ||U - V|| <= alpha * sigma_min(U).  Throws NotInvertible when U fails the
// surrogate and std::invalid_argument unless 0 <= alpha, beta < 1.
HildingReport hilding_check(const Op& u, const Op& v, double alpha, double beta,
                            const std::vector<Vec>& samples, const Tolerance& tol = {});

struct PerturbCert {
  // Constants of the general path, certified as alpha = beta = 0 and
  // gamma = ||theta_A - theta_B||.
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double r = 0.0;          // sum ||A_n - B_n||^2
  double mixed_sum = 0.0;  // sum ||A_n - B_n|| ||Psi_n (S*)^{-1}||
  double theta_psi_s_adj_inv = 0.0;  // ||theta_Psi (S*)^{-1}||
  double s_adj_inv = 0.0;            // ||(S*)^{-1}||
  double theta_a = 0.0;
  double theta_psi = 0.0;

  bool general_holds = false;
  bool corollary_holds = false;
  bool quadratic_holds = false;
  std::optional<double> general_lower, general_upper;
  std::optional<double> corollary_lower, corollary_upper;
  std::optional<double> quadratic_lower, quadratic_upper;

  // Best bounds over the paths whose hypotheses hold; 0 and +inf otherwise.
  double theoretical_lower = 0.0;
  double theoretical_upper = 0.0;

  bool any_path() const { return general_holds || corollary_holds || quadratic_holds; }
};

PerturbCert perturbation_constants(const WeakOvf& f, const std::vector<Op>& b);

struct PerturbReport {
  PerturbCert cert;
  double measured_lower = 0.0;
  double measured_upper = 0.0;
};

// Classifies ({B_n}, {Psi_n}) and checks its optimal bounds against the
// certificate.  Throws HypothesisFailed when no path applies and
// TheoremViolated when the pair is not weak or a bound is broken by more than
// tol.loose().
PerturbReport verify_perturbation(const WeakOvf& f, const std::vector<Op>& b);

// B = A + E with sum ||E_n|| ||Psi_n (S*)^{-1}|| == budget_fraction.
// Throws std::invalid_argument unless 0 < budget_fraction < 1.
std::vector<Op> sample_admissible_perturbation(const WeakOvf& f, double budget_fraction,
                                               std::uint64_t seed);

struct TightnessRow {
  std::uint64_t seed = 0;
  double budget_fraction = 0.0;
  double theoretical_lower = 0.0;
  double measured_lower = 0.0;
  double theoretical_upper = 0.0;
  double measured_upper = 0.0;
  bool violated = false;
};

// One row per (budget, seed) pair, seeds first_seed .. first_seed + seeds - 1.
std::vector<TightnessRow> tightness_table(const WeakOvf& f, const std::vector<double>& budgets,
                                          std::size_t seeds, std::uint64_t first_seed = 0);

void write_tightness_csv(std::ostream& out, const std::vector<TightnessRow>& rows);

}  // namespace wovf
