#include <doctest.h>

#include <algorithm>
#include <limits>
#include <sstream>

#include "support.hpp"
#include "wovf/corpus.hpp"
#include "wovf/perturb.hpp"

using namespace wovf;
using testing::scalars;

namespace {

double norm2(const Op& x) { return Eigen::JacobiSVD<Op>(x).singularValues()(0); }

double mixed_sum_oracle(const WeakOvf& f, const std::vector<Op>& b) {
  const Op s_adj_inv = frame_operator(f).adjoint().inverse();
  double total = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n)
    total += norm2(f.A(n) - b[n]) * norm2(f.Psi(n) * s_adj_inv);
  return total;
}

}  // namespace

TEST_CASE("hilding check") {
  const Op u = 2.0 * num::random_unitary(3, 1);
  Rng rng(2);
  std::vector<Vec> samples;
  for (int k = 0; k < 50; ++k) samples.emplace_back(num::random_op(3, 1, rng));

  const HildingReport same = hilding_check(u, u, 0.0, 0.0, samples);
  CHECK(same.status == HildingStatus::Certified);
  CHECK(same.min_ratio == doctest::Approx(1.0));
  CHECK(same.max_ratio == doctest::Approx(1.0));
  CHECK(same.vectors_checked == samples.size() + 6);

  const HildingReport scaled = hilding_check(u, 0.9 * u, 0.1, 0.0, samples);
  CHECK(scaled.status == HildingStatus::Certified);
  CHECK(scaled.v_invertible);
  CHECK(scaled.min_ratio == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(scaled.max_ratio == doctest::Approx(0.9).epsilon(1e-12));

  const Op eye = num::identity(2);
  const HildingReport singular = hilding_check(eye, testing::diag({1.0, 0.0}), 0.5, 0.5, {});
  CHECK(singular.status == HildingStatus::HypothesisViolated);
  CHECK_FALSE(singular.v_invertible);

  // The hypothesis holds pointwise but ||U - V|| exceeds alpha sigma_min(U).
  const HildingReport loose = hilding_check(eye, 0.6 * eye, 0.2, 0.5, {});
  CHECK(loose.status == HildingStatus::HypothesisUncertified);
  CHECK(loose.hypothesis_excess <= 0.0);
  CHECK(loose.certificate_gap > 0.0);

  // alpha = beta = 0 accepts nothing but V = U.
  const Op nudged = u + 1e-6 * num::random_op(3, 3, 5);
  CHECK(hilding_check(u, nudged, 0.0, 0.0, samples).status == HildingStatus::HypothesisViolated);
  CHECK(hilding_check(u, u + 1e-12 * num::random_op(3, 3, 5), 0.0, 0.0, samples).status ==
        HildingStatus::Certified);

  CHECK_THROWS_AS(hilding_check(u, u, 1.0, 0.0, samples), std::invalid_argument);
  CHECK_THROWS_AS(hilding_check(u, u, 0.0, -0.1, samples), std::invalid_argument);
  CHECK_THROWS_AS(hilding_check(testing::diag({1.0, 0.0}), eye, 0.5, 0.5, {}), NotInvertible);
  CHECK_THROWS_AS(hilding_check(eye, num::identity(3), 0.5, 0.5, {}), ShapeMismatch);
  CHECK(to_string(HildingStatus::HypothesisUncertified) == "HypothesisUncertified");
}

TEST_CASE("hilding certificate implies the sandwich on random pairs") {
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const Op u = num::random_op(4, 4, rng);
    const double smin = num::smallest_singular_value(u);
    Op e = num::random_op(4, 4, rng);
    const double alpha = 0.3;
    e *= 0.9 * alpha * smin / num::spectral_norm(e);
    std::vector<Vec> samples;
    for (int j = 0; j < 20; ++j) samples.emplace_back(num::random_op(4, 1, rng));
    const HildingReport r = hilding_check(u, u + e, alpha, 0.0, samples);
    CHECK(r.status == HildingStatus::Certified);
    CHECK(r.v_invertible);
    CHECK(r.min_ratio >= 1.0 - alpha - 1e-12);
    CHECK(r.max_ratio <= 1.0 + alpha + 1e-12);
  }
}

TEST_CASE("perturbation constants") {
  const WeakOvf f = random_weak(3, 1, 5, 1);
  const PerturbCert same = perturbation_constants(f, f.As());
  CHECK(same.r == 0.0);
  CHECK(same.mixed_sum == 0.0);
  CHECK(same.gamma == 0.0);
  CHECK(same.general_holds);
  CHECK(same.corollary_holds);
  CHECK(same.quadratic_holds);
  const Op s = frame_operator(f);
  CHECK(same.theoretical_lower == doctest::Approx(1.0 / norm2(s.adjoint().inverse())));
  CHECK(same.theoretical_upper ==
        doctest::Approx(norm2(theta_Psi(f)) * norm2(theta_A(f))));

  const WeakOvf one(scalars({1.0}), scalars({1.0}));
  const PerturbCert c = perturbation_constants(one, scalars({0.9}));
  CHECK(c.r == doctest::Approx(0.01));
  CHECK(c.mixed_sum == doctest::Approx(0.1));
  CHECK(c.theta_psi_s_adj_inv == doctest::Approx(1.0));
  CHECK(*c.quadratic_lower == doctest::Approx(0.9));
  CHECK(*c.corollary_lower == doctest::Approx(0.9));
  CHECK(*c.corollary_upper == doctest::Approx(1.1));
  CHECK(c.theoretical_lower == doctest::Approx(0.9));
  CHECK(c.theoretical_upper == doctest::Approx(1.1));

  const PerturbCert far = perturbation_constants(one, scalars({-1.0}));
  CHECK_FALSE(far.corollary_holds);
  CHECK_FALSE(far.quadratic_holds);
  CHECK_FALSE(far.general_holds);
  CHECK_FALSE(far.corollary_lower.has_value());
  CHECK(far.theoretical_lower == 0.0);
  CHECK(far.theoretical_upper == std::numeric_limits<double>::infinity());

  // Norm homogeneity in E.
  const std::vector<Op> b = sample_admissible_perturbation(f, 0.6, 3);
  std::vector<Op> half;
  for (std::size_t n = 0; n < f.size(); ++n) half.push_back(f.A(n) + 0.5 * (b[n] - f.A(n)));
  const PerturbCert full_c = perturbation_constants(f, b), half_c = perturbation_constants(f, half);
  CHECK(half_c.mixed_sum == doctest::Approx(0.5 * full_c.mixed_sum).epsilon(1e-12));
  CHECK(half_c.r == doctest::Approx(0.25 * full_c.r).epsilon(1e-12));

  CHECK_THROWS_AS(perturbation_constants(f, scalars({1.0})), ShapeMismatch);
}

TEST_CASE("verify perturbation") {
  const WeakOvf one(scalars({1.0}), scalars({1.0}));
  const PerturbReport r = verify_perturbation(one, scalars({0.9}));
  CHECK(r.measured_lower == doctest::Approx(0.9));
  CHECK(r.measured_upper == doctest::Approx(0.9));
  CHECK(std::abs(r.measured_lower - r.cert.theoretical_lower) <= 1e-15);

  const WeakOvf f = random_weak(3, 1, 5, 2);
  const PerturbReport self = verify_perturbation(f, f.As());
  CHECK(self.measured_lower >= self.cert.theoretical_lower - 1e-8);

  const std::vector<Op> b = sample_admissible_perturbation(f, 0.5, 4);
  const PerturbReport half = verify_perturbation(f, b);
  CHECK(half.measured_lower >= half.cert.theoretical_lower - 1e-8);
  CHECK(half.measured_upper <= half.cert.theoretical_upper + 1e-8);

  CHECK_THROWS_AS(verify_perturbation(one, scalars({-1.0})), HypothesisFailed);
}

TEST_CASE("admissible perturbations") {
  const WeakOvf f = random_weak(2, 1, 4, 5);
  for (double budget : {0.1, 0.5, 0.9, 0.99}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const std::vector<Op> b = sample_admissible_perturbation(f, budget, seed);
      CHECK(std::abs(mixed_sum_oracle(f, b) - budget) <= 1e-12);
      CHECK_NOTHROW(verify_perturbation(f, b));
    }
  }
  CHECK(testing::max_diff(sample_admissible_perturbation(f, 0.5, 1),
                          sample_admissible_perturbation(f, 0.5, 1)) == 0.0);
  CHECK_THROWS_AS(sample_admissible_perturbation(f, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_admissible_perturbation(f, 1.0, 1), std::invalid_argument);
}

TEST_CASE("scalar family B = tA") {
  const WeakOvf f = random_weak(3, 2, 3, 6);
  const double base = 1.0 / norm2(frame_operator(f).adjoint().inverse());
  for (double t : {0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
    std::vector<Op> b;
    for (const Op& a : f.As()) b.push_back(t * a);
    const FrameReport measured = classify(WeakOvf(b, f.Psis()));
    CHECK(std::abs(*measured.lower_bound - t * base) <= 1e-10);
    const PerturbCert c = perturbation_constants(f, b);
    if (c.quadratic_holds) CHECK(*c.quadratic_lower <= *measured.lower_bound + 1e-10);
  }
}

TEST_CASE("tightness table") {
  const WeakOvf f = random_weak(2, 1, 4, 8);
  const std::vector<TightnessRow> rows = tightness_table(f, {0.1, 0.9}, 5, 10);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].seed == 10);
  CHECK(rows[9].seed == 14);
  CHECK(rows[9].budget_fraction == 0.9);
  for (const TightnessRow& r : rows) {
    CHECK_FALSE(r.violated);
    CHECK(r.measured_lower >= r.theoretical_lower - 1e-8);
    CHECK(r.measured_upper <= r.theoretical_upper + 1e-8);
  }
  std::ostringstream csv;
  write_tightness_csv(csv, rows);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "seed,budget_fraction,theoretical_lower,measured_lower,theoretical_upper,measured_upper");
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
  }
  CHECK(count == 10);
}
