#include <doctest.h>

#include "support.hpp"
#include "wovf/corpus.hpp"
#include "wovf/dilation.hpp"
#include "wovf/duality.hpp"

using namespace wovf;
using testing::scalars;

namespace {

void check_dilation_invariants(const WeakOvf& f, const Dilation& dil) {
  const double eps = f.tol().loose();
  CHECK(num::spectral_norm(dil.embed.adjoint() * dil.embed - num::identity(f.d())) <= eps);
  for (std::size_t n = 0; n < f.size(); ++n) {
    CHECK(num::spectral_norm(dil.B[n] * dil.embed - f.A(n)) <= eps);
    CHECK(num::spectral_norm(dil.Phi[n] * dil.embed - f.Psi(n)) <= eps);
  }
  const WeakOvf g = dil.as_frame(f.tol());
  CHECK(num::spectral_norm(frame_operator(g) - num::identity(dil.extended_dim)) <= eps);
  CHECK(cross_gram_residual(g) <= eps);
  CHECK(classify(g).is_orthonormal);
}

WeakOvf scaled(const WeakOvf& f, const Op& r, const Op& t) {
  std::vector<Op> b, phi;
  for (std::size_t n = 0; n < f.size(); ++n) {
    b.push_back(f.A(n) * r);
    phi.push_back(f.Psi(n) * t);
  }
  return WeakOvf(b, phi, f.tol());
}

}  // namespace

TEST_CASE("dilating an orthonormal frame adds nothing") {
  const WeakOvf f = random_operator_onb_frame(4, 2, 2, 1);
  const Dilation dil = dilate(f);
  CHECK(dil.extended_dim == 4);
  CHECK(testing::max_diff(dil.B, f.As()) == 0.0);
  CHECK(testing::max_diff(dil.Phi, f.Psis()) == 0.0);
  check_dilation_invariants(f, dil);
}

TEST_CASE("explicit two-dimensional dilation") {
  const double h = 1.0 / std::sqrt(2.0);
  const WeakOvf f(scalars({h, h}), scalars({h, h}));
  const Dilation dil = dilate(f);
  REQUIRE(dil.extended_dim == 2);
  // The added column is the complement (1, -1)/sqrt(2) up to sign.
  CHECK(std::abs(dil.B[0](0, 0) - h) < 1e-15);
  CHECK(std::abs(dil.B[1](0, 0) - h) < 1e-15);
  CHECK(std::abs(std::abs(dil.B[0](0, 1)) - h) < 1e-12);
  CHECK(std::abs(dil.B[0](0, 1) + dil.B[1](0, 1)) < 1e-12);
  Op gram(2, 2);
  gram << dil.B[0], dil.B[1];
  CHECK(num::spectral_norm(gram.adjoint() * gram - num::identity(2)) <= 1e-12);
  check_dilation_invariants(f, dil);
}

TEST_CASE("random Parseval dilations are orthonormal") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const WeakOvf f = random_parseval(2, 1, 3, seed);
    const Dilation dil = dilate(f);
    CHECK(dil.extended_dim == 3);
    check_dilation_invariants(f, dil);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const WeakOvf f = random_parseval(3, 2, 4, seed, false);
    const Dilation dil = dilate(f);
    CHECK(dil.extended_dim == 8);
    check_dilation_invariants(f, dil);
  }
}

TEST_CASE("dilation hypotheses are reported") {
  try {
    dilate(random_weak(2, 1, 3, 4));
    FAIL("expected PreconditionFailed");
  } catch (const PreconditionFailed& e) {
    CHECK(e.reason() == "NotParseval");
  }
  try {
    dilate(WeakOvf(scalars({1.0, 1.0}), scalars({1.0, 0.0})));
    FAIL("expected PreconditionFailed");
  } catch (const PreconditionFailed& e) {
    CHECK(e.reason() == "RangesDiffer");
  }
  CHECK(range_mismatch(WeakOvf(scalars({1.0, 1.0}), scalars({1.0, 0.0}))) > 0.1);
  CHECK(range_mismatch(random_parseval(2, 1, 4, 1, false)) <= 1e-9);
}

TEST_CASE("similarity witnesses") {
  const WeakOvf f = random_weak(3, 1, 5, 2);
  const SimilarityWitness self = similarity_witness(f, f);
  CHECK(num::spectral_norm(self.R_AB - num::identity(3)) <= 1e-9);
  CHECK(num::spectral_norm(self.R_PsiPhi - num::identity(3)) <= 1e-9);

  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const Op r = num::random_op(3, 3, rng), t = num::random_op(3, 3, rng);
    const WeakOvf g = scaled(f, r, t);
    const SimilarityWitness w = similarity_witness(f, g);
    CHECK(num::spectral_norm(w.R_AB - r) <= 1e-8 * std::max(1.0, num::spectral_norm(r)));
    CHECK(num::spectral_norm(w.R_PsiPhi - t) <= 1e-8 * std::max(1.0, num::spectral_norm(t)));
    // Transport of the frame operator and of P.
    CHECK(num::spectral_norm(frame_operator(g) - w.R_PsiPhi.adjoint() * frame_operator(f) * w.R_AB) <=
          1e-8 * num::spectral_norm(frame_operator(g)));
    CHECK(w.p_residual <= 1e-8);
    // Similar frames are not orthogonal.
    const auto ortho = is_orthogonal(f, g);
    CHECK_FALSE(ortho.orthogonal);
    const FrameReport rf = classify(f);
    CHECK(ortho.residual >= *rf.lower_bound * num::smallest_singular_value(w.R_AB) - 1e-8);
  }

  // Permuted blocks change P.
  std::vector<Op> b = f.As(), phi = f.Psis();
  std::rotate(b.begin(), b.begin() + 1, b.end());
  std::rotate(phi.begin(), phi.begin() + 1, phi.end());
  CHECK_THROWS_AS(similarity_witness(f, WeakOvf(b, phi)), NotSimilar);

  // A singular right factor is never a witness.
  Op r = num::identity(3);
  r(2, 2) = 0.0;
  CHECK_THROWS_AS(similarity_witness(f, scaled(f, r, num::identity(3))), NotSimilar);
  CHECK_THROWS_AS(similarity_witness(f, random_weak(3, 1, 4, 0)), ShapeMismatch);
}

TEST_CASE("Parseval transport under similarity") {
  const WeakOvf f = random_parseval(2, 1, 4, 5);
  Rng rng(6);
  for (int k = 0; k < 10; ++k) {
    const Op r = num::random_op(2, 2, rng);
    // T = (R*)^{-1} keeps S = T* R = I.
    const Op t = num::try_invert(r.adjoint(), Tolerance{});
    const SimilarityWitness keep = similarity_witness(f, scaled(f, r, t));
    CHECK(num::spectral_norm(keep.R_PsiPhi.adjoint() * keep.R_AB - num::identity(2)) <= 1e-8);
    CHECK(classify(scaled(f, r, t)).is_parseval);

    const SimilarityWitness lose = similarity_witness(f, scaled(f, r, r));
    const bool parseval = classify(scaled(f, r, r)).is_parseval;
    CHECK(parseval == (num::spectral_norm(lose.R_PsiPhi.adjoint() * lose.R_AB -
                                          num::identity(2)) <= 1e-8));
  }
}

TEST_CASE("one-sided Parseval normalization") {
  const WeakOvf p = random_parseval(2, 1, 3, 7);
  CHECK(testing::frame_diff(parsevalize(p, Side::Left), p) <= 1e-9);
  CHECK(testing::frame_diff(parsevalize(p, Side::Right), p) <= 1e-9);

  const WeakOvf two(scalars({1.0, 1.0}), scalars({1.0, 1.0}));
  const WeakOvf left = parsevalize(two, Side::Left);
  CHECK(left.A(0)(0, 0) == Complex(0.5));
  CHECK(left.Psi(0)(0, 0) == Complex(1.0));
  CHECK(frame_operator(left)(0, 0) == Complex(1.0));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const WeakOvf f = random_weak(3, 2, 3, seed);
    for (Side side : {Side::Left, Side::Right}) {
      const WeakOvf g = parsevalize(f, side);
      CHECK(num::spectral_norm(frame_operator(g) - num::identity(3)) <= 1e-8);
      CHECK_NOTHROW(similarity_witness(f, g));
    }
  }
  CHECK(to_string(Side::Left) == "left");
  CHECK(to_string(Side::Right) == "right");
}

TEST_CASE("the canonical dual is the only similar dual") {
  const WeakOvf f = random_weak(2, 1, 3, 8);
  const SimilarityWitness w = similarity_witness(f, canonical_dual(f));
  const Op s_inv = num::try_invert(frame_operator(f), f.tol());
  CHECK(num::spectral_norm(w.R_AB - s_inv) <= 1e-9);
  CHECK(num::spectral_norm(w.R_PsiPhi - s_inv.adjoint()) <= 1e-9);

  CHECK(unique_similar_dual_check(f, 20, 1));
  CHECK(unique_similar_dual_check(random_parseval(2, 1, 3, 2), 20, 2));
  CHECK(unique_similar_dual_check(random_weak(3, 2, 4, 3), 20, 3));

  Rng rng(9);
  std::size_t rejected = 0;
  for (int k = 0; k < 20; ++k) {
    const WeakOvf g = dual_from_parameters(f, 0.5 * num::random_op(3, 2, rng),
                                           0.5 * num::random_op(2, 3, rng));
    try {
      similarity_witness(f, g);
    } catch (const NotSimilar&) {
      ++rejected;
    }
  }
  CHECK(rejected == 20);
}
