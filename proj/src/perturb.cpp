#include "wovf/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wovf {

std::string to_string(HildingStatus s) {
  switch (s) {
    case HildingStatus::Certified: return "Certified";
    case HildingStatus::HypothesisUncertified: return "HypothesisUncertified";
    case HildingStatus::HypothesisViolated: return "HypothesisViolated";
    case HildingStatus::TheoremViolated: return "TheoremViolated";
  }
  return "Unknown";
}

HildingReport hilding_check(const Op& u, const Op& v, double alpha, double beta,
                            const std::vector<Vec>& samples, const Tolerance& tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) throw ShapeMismatch("U and V differ in shape");
  if (!(alpha >= 0.0 && alpha < 1.0 && beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("alpha and beta must lie in [0, 1)");
  if (!num::passes_invertibility(u, tol)) throw NotInvertible("hilding_check: U is not invertible");

  std::vector<Vec> xs;
  for (const Vec& x : samples) {
    if (x.size() != u.cols()) throw ShapeMismatch("sample vector has the wrong length");
    xs.push_back(x);
  }
  for (const Op* m : {&u, &v}) {
    Eigen::JacobiSVD<Op> svd(*m, Eigen::ComputeFullV);
    xs.push_back(svd.matrixV().col(0));
    xs.push_back(svd.matrixV().col(svd.matrixV().cols() - 1));
  }
  const Op diff = u - v;
  Eigen::JacobiSVD<Op> svd(diff, Eigen::ComputeFullV);
  xs.push_back(svd.matrixV().col(0));
  xs.push_back(svd.matrixV().col(svd.matrixV().cols() - 1));

  HildingReport rep;
  rep.vectors_checked = xs.size();
  rep.hypothesis_excess = -std::numeric_limits<double>::infinity();
  rep.min_ratio = std::numeric_limits<double>::infinity();
  const double u_norm = num::spectral_norm(u);
  for (const Vec& x : xs) {
    const double ux = (u * x).norm(), vx = (v * x).norm(), dx = (diff * x).norm();
    rep.hypothesis_excess = std::max(rep.hypothesis_excess, dx - alpha * ux - beta * vx);
    if (ux > 0.0) {
      rep.min_ratio = std::min(rep.min_ratio, vx / ux);
      rep.max_ratio = std::max(rep.max_ratio, vx / ux);
    }
  }
  const double slack = tol.loose() * std::max(1.0, u_norm);
  rep.certificate_gap = svd.singularValues()(0) - alpha * num::smallest_singular_value(u);
  rep.v_invertible = num::passes_invertibility(v, tol);

  if (rep.hypothesis_excess > slack) {
    rep.status = HildingStatus::HypothesisViolated;
  } else if (rep.certificate_gap > slack) {
    rep.status = HildingStatus::HypothesisUncertified;
  } else {
    const double lo = (1.0 - alpha) / (1.0 + beta);
    const double hi = (1.0 + alpha) / (1.0 - beta);
    const bool sandwich = rep.min_ratio >= lo - tol.loose() && rep.max_ratio <= hi + tol.loose();
    rep.status = sandwich && rep.v_invertible ? HildingStatus::Certified
                                              : HildingStatus::TheoremViolated;
  }
  return rep;
}

PerturbCert perturbation_constants(const WeakOvf& f, const std::vector<Op>& b) {
  if (b.size() != f.size()) throw ShapeMismatch("perturbation has the wrong length");
  for (const Op& bn : b)
    if (bn.rows() != f.d0() || bn.cols() != f.d()) throw ShapeMismatch("perturbation shape");
  const Op s_adj_inv = num::try_invert(frame_operator(f).adjoint(), f.tol());
  const Op ta = theta_A(f), tp = theta_Psi(f);

  PerturbCert c;
  c.s_adj_inv = num::spectral_norm(s_adj_inv);
  c.theta_psi_s_adj_inv = num::spectral_norm(tp * s_adj_inv);
  c.theta_a = num::spectral_norm(ta);
  c.theta_psi = num::spectral_norm(tp);
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double e = num::spectral_norm(f.A(n) - b[n]);
    c.r += e * e;
    c.mixed_sum += e * num::spectral_norm(f.Psi(n) * s_adj_inv);
  }
  c.gamma = num::spectral_norm(ta - analysis_operator(b));

  c.theoretical_lower = 0.0;
  c.theoretical_upper = std::numeric_limits<double>::infinity();
  const auto take = [&](double lo, double hi) {
    c.theoretical_lower = std::max(c.theoretical_lower, lo);
    c.theoretical_upper = std::min(c.theoretical_upper, hi);
  };

  const double general = c.alpha + c.gamma * c.theta_psi_s_adj_inv;
  if (std::max(general, c.beta) < 1.0) {
    c.general_holds = true;
    c.general_lower = (1.0 - general) / ((1.0 + c.beta) * c.s_adj_inv);
    c.general_upper = c.theta_psi * ((1.0 + c.alpha) * c.theta_a + c.gamma) / (1.0 - c.beta);
    take(*c.general_lower, *c.general_upper);
  }
  const double sqrt_r = std::sqrt(c.r);
  if (sqrt_r * c.theta_psi_s_adj_inv < 1.0) {
    c.corollary_holds = true;
    c.corollary_lower = (1.0 - sqrt_r * c.theta_psi_s_adj_inv) / c.s_adj_inv;
    c.corollary_upper = c.theta_psi * (c.theta_a + sqrt_r);
    take(*c.corollary_lower, *c.corollary_upper);
  }
  if (c.mixed_sum < 1.0) {
    c.quadratic_holds = true;
    c.quadratic_lower = (1.0 - c.mixed_sum) / c.s_adj_inv;
    c.quadratic_upper = c.theta_psi * (sqrt_r + c.theta_a);
    take(*c.quadratic_lower, *c.quadratic_upper);
  }
  return c;
}

PerturbReport verify_perturbation(const WeakOvf& f, const std::vector<Op>& b) {
  PerturbReport rep;
  rep.cert = perturbation_constants(f, b);
  if (!rep.cert.any_path())
    throw HypothesisFailed("no perturbation hypothesis holds for this B");
  const FrameReport measured = classify(WeakOvf(b, f.Psis(), f.tol()));
  if (!measured.is_weak) throw TheoremViolated("perturbed pair is not a weak OVF");
  rep.measured_lower = *measured.lower_bound;
  rep.measured_upper = *measured.upper_bound;
  const double eps = f.tol().loose();
  if (rep.measured_lower < rep.cert.theoretical_lower - eps ||
      rep.measured_upper > rep.cert.theoretical_upper + eps) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "measured bounds (" << rep.measured_lower << ", "
        << rep.measured_upper << ") outside (" << rep.cert.theoretical_lower << ", "
        << rep.cert.theoretical_upper << ")";
    throw TheoremViolated(msg.str());
  }
  return rep;
}

std::vector<Op> sample_admissible_perturbation(const WeakOvf& f, double budget_fraction,
                                               std::uint64_t seed) {
  if (!(budget_fraction > 0.0 && budget_fraction < 1.0))
    throw std::invalid_argument("budget_fraction must lie in (0, 1)");
  const Op s_adj_inv = num::try_invert(frame_operator(f).adjoint(), f.tol());
  Rng rng(seed);
  std::vector<Op> e;
  double raw = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    e.push_back(num::random_op(f.d0(), f.d(), rng));
    raw += num::spectral_norm(e.back()) * num::spectral_norm(f.Psi(n) * s_adj_inv);
  }
  const double scale = budget_fraction / raw;
  std::vector<Op> b;
  for (std::size_t n = 0; n < f.size(); ++n) b.emplace_back(f.A(n) + scale * e[n]);
  return b;
}

std::vector<TightnessRow> tightness_table(const WeakOvf& f, const std::vector<double>& budgets,
                                          std::size_t seeds, std::uint64_t first_seed) {
  std::vector<TightnessRow> rows;
  for (double budget : budgets)
    for (std::size_t k = 0; k < seeds; ++k) {
      TightnessRow row;
      row.seed = first_seed + k;
      row.budget_fraction = budget;
      const std::vector<Op> b = sample_admissible_perturbation(f, budget, row.seed);
      const PerturbCert cert = perturbation_constants(f, b);
      row.theoretical_lower = cert.theoretical_lower;
      row.theoretical_upper = cert.theoretical_upper;
      const FrameReport measured = classify(WeakOvf(b, f.Psis(), f.tol()));
      if (measured.is_weak) {
        row.measured_lower = *measured.lower_bound;
        row.measured_upper = *measured.upper_bound;
      }
      try {
        verify_perturbation(f, b);
      } catch (const TheoremViolated&) {
        row.violated = true;
      }
      rows.push_back(row);
    }
  return rows;
}

void write_tightness_csv(std::ostream& out, const std::vector<TightnessRow>& rows) {
  out << "seed,budget_fraction,theoretical_lower,measured_lower,theoretical_upper,measured_upper\n";
  const auto old = out.precision(17);
  for (const TightnessRow& r : rows)
    out << r.seed << ',' << r.budget_fraction << ',' << r.theoretical_lower << ','
        << r.measured_lower << ',' << r.theoretical_upper << ',' << r.measured_upper << '\n';
  out.precision(old);
}

}  // namespace wovf
