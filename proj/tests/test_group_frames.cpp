#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "wovf/corpus.hpp"
#include "wovf/group_frames.hpp"

using namespace wovf;

namespace {

Op swap2() {
  Op s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

Op row(std::initializer_list<double> xs) {
  Op out(1, static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) out(0, k++) = x;
  return out;
}

WeakOvf tamper(const WeakOvf& f, std::size_t at) {
  std::vector<Op> a = f.As();
  a[at] *= 2.0;
  return WeakOvf(a, f.Psis(), f.tol());
}

bool touches(const ShiftReport& r, const FiniteGroup& g, std::size_t t) {
  const auto [h, p, q] = r.worst_triple;
  return g.mul(h, p) == t || g.mul(h, q) == t || p == t || q == t;
}

}  // namespace

TEST_CASE("finite groups") {
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  CHECK(z3.order() == 3);
  CHECK(z3.mul(1, 2) == 0);
  CHECK(z3.inv(1) == 2);

  const FiniteGroup d3 = FiniteGroup::dihedral(3);
  CHECK(d3.order() == 6);
  // s r s = r^{-1}
  const std::size_t r = 1, s = 3;
  CHECK(d3.mul(d3.mul(s, r), s) == d3.inv(r));
  CHECK(d3.mul(r, s) != d3.mul(s, r));

  const FiniteGroup k4 = FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(k4.order() == 4);
  for (std::size_t g = 0; g < 4; ++g) CHECK(k4.mul(g, g) == 0);

  // Identity placed last is relabelled to index 0.
  const FiniteGroup relabelled = FiniteGroup::from_table({{1, 0}, {0, 1}}, {"s", "e"});
  CHECK(relabelled.names()[0] == "e");
  CHECK(relabelled.mul(1, 1) == 0);

  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {0, 1}}), InvalidSystem);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 2}}), InvalidSystem);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}}), InvalidSystem);
  // Latin square with identity 0 but not associative.
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1, 2, 3, 4},
                                           {1, 0, 3, 4, 2},
                                           {2, 4, 0, 1, 3},
                                           {3, 2, 4, 0, 1},
                                           {4, 3, 1, 2, 0}}),
                  InvalidSystem);
}

TEST_CASE("regular representations") {
  const Representation t = left_regular(FiniteGroup::trivial());
  CHECK(t.pi.size() == 1);
  CHECK(t.pi[0](0, 0) == Complex(1.0));

  const Representation z2 = left_regular(FiniteGroup::cyclic(2));
  CHECK((z2.pi[1] - swap2()).norm() == 0.0);

  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const Representation l3 = left_regular(z3);
  for (std::size_t g = 0; g < 3; ++g)
    for (std::size_t h = 0; h < 3; ++h) CHECK((l3.pi[g] * l3.pi[h] - l3.pi[z3.mul(g, h)]).norm() == 0.0);

  for (const FiniteGroup& g : {FiniteGroup::dihedral(3), FiniteGroup::dihedral(4), named_group("klein")}) {
    const RegularRepresentations reg = regular_representations(g);
    CHECK(reg.left.residual() == 0.0);
    CHECK(reg.right.residual() == 0.0);
    for (std::size_t a = 0; a < g.order(); ++a) {
      // lambda_g chi_q = chi_{gq}, rho_g chi_q = chi_{q g^{-1}}
      for (std::size_t q = 0; q < g.order(); ++q) {
        CHECK(reg.left.pi[a](static_cast<Eigen::Index>(g.mul(a, q)), static_cast<Eigen::Index>(q)) == Complex(1.0));
        CHECK(reg.right.pi[a](static_cast<Eigen::Index>(g.mul(q, g.inv(a))), static_cast<Eigen::Index>(q)) ==
              Complex(1.0));
      }
      for (std::size_t b = 0; b < g.order(); ++b)
        CHECK((reg.left.pi[a] * reg.right.pi[b] - reg.right.pi[b] * reg.left.pi[a]).norm() == 0.0);
    }
  }
}

TEST_CASE("generated frames") {
  const Representation t{FiniteGroup::trivial(), {num::identity(2)}};
  const WeakOvf single = generate_frame(t, num::identity(2), num::identity(2));
  CHECK(single.size() == 1);
  CHECK((frame_operator(single) - num::identity(2)).norm() == 0.0);

  const Representation z2{FiniteGroup::cyclic(2), {num::identity(2), swap2()}};
  const double h = 1.0 / std::sqrt(2.0);
  const WeakOvf half = generate_frame(z2, row({h, 0.0}), row({h, 0.0}));
  CHECK((frame_operator(half) - 0.5 * num::identity(2)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_FALSE(classify(half).is_parseval);
  const WeakOvf full = generate_frame(z2, row({1.0, 0.0}), row({1.0, 0.0}));
  CHECK(classify(full).is_parseval);

  // Random unitary representation of Z_4.
  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  const Representation lam = left_regular(z4);
  const Op w = num::random_unitary(4, 3);
  Representation rep{z4, {}};
  for (const Op& l : lam.pi) rep.pi.push_back(w * l * w.adjoint());
  const Op a = num::random_op(1, 4, 4);
  const WeakOvf f = generate_frame(rep, a, a);
  Op expected = Op::Zero(4, 4);
  for (std::size_t g = 0; g < 4; ++g) expected += rep.pi[g] * a.adjoint() * a * rep.pi[g].adjoint();
  CHECK(num::spectral_norm(frame_operator(f) - expected) <= 1e-12);
  CHECK(num::min_hermitian_part_eigenvalue(frame_operator(f)) >= -1e-12);
  for (std::size_t g = 0; g < 4; ++g)
    CHECK(num::spectral_norm(f.A(g) - a * rep.pi[z4.inv(g)]) == 0.0);
}

TEST_CASE("shift conditions") {
  const FiniteGroup d3 = FiniteGroup::dihedral(3);
  const GroupFrameSample s = random_group_frame(d3, 6, 1, 1);
  const ShiftReport ok = check_shift_conditions(s.frame, d3);
  CHECK(ok.passed);
  CHECK(ok.max_residual <= 1e-9);

  for (std::size_t t = 1; t < 6; ++t) {
    const ShiftReport bad = check_shift_conditions(tamper(s.frame, t), d3);
    CHECK_FALSE(bad.passed);
    CHECK(touches(bad, d3, t));
  }

  const WeakOvf single({num::random_op(2, 3, 1)}, {num::random_op(2, 3, 2)});
  CHECK(check_shift_conditions(single, FiniteGroup::trivial()).passed);
  CHECK(check_shift_conditions(single, FiniteGroup::trivial()).max_residual == 0.0);

  // Non-Parseval generated frames pass too.
  const Representation lam = left_regular(FiniteGroup::cyclic(5));
  const WeakOvf loose = generate_frame(lam, num::random_op(2, 5, 3), num::random_op(2, 5, 4));
  CHECK(check_shift_conditions(loose, FiniteGroup::cyclic(5)).passed);

  // Right multiplication by a unitary.
  const Op u = num::random_unitary(6, 5);
  std::vector<Op> a, psi;
  for (std::size_t g = 0; g < 6; ++g) {
    a.push_back(s.frame.A(g) * u);
    psi.push_back(s.frame.Psi(g) * u);
  }
  CHECK(check_shift_conditions(WeakOvf(a, psi), d3).passed);
  const ShiftReport bad = check_shift_conditions(tamper(s.frame, 2), d3);
  const ShiftReport bad_rot = check_shift_conditions(tamper(WeakOvf(a, psi), 2), d3);
  CHECK(bad_rot.max_residual == doctest::Approx(bad.max_residual).epsilon(1e-9));

  CHECK_THROWS_AS(check_shift_conditions(s.frame, FiniteGroup::cyclic(5)), ShapeMismatch);
}

TEST_CASE("representation reconstruction") {
  const WeakOvf single({num::identity(2)}, {num::identity(2)});
  const Representation t = reconstruct_representation(single, FiniteGroup::trivial());
  CHECK((t.pi[0] - num::identity(2)).norm() <= 1e-15);

  const Representation z2{FiniteGroup::cyclic(2), {num::identity(2), swap2()}};
  const WeakOvf f2 = generate_frame(z2, row({1.0, 0.0}), row({1.0, 0.0}));
  const Representation back2 = reconstruct_representation(f2, z2.group);
  CHECK(testing::max_diff(back2.pi, z2.pi) <= 1e-8);

  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const Representation perm = left_regular(z3);
  const WeakOvf f3 = generate_frame(perm, row({1.0, 0.0, 0.0}), row({1.0, 0.0, 0.0}));
  const Representation back3 = reconstruct_representation(f3, z3);
  for (std::size_t g = 0; g < 3; ++g)
    for (std::size_t h = 0; h < 3; ++h)
      CHECK(num::spectral_norm(back3.pi[g] * back3.pi[h] - back3.pi[z3.mul(g, h)]) <= 1e-9);

  for (const char* name : {"cyclic:4", "dihedral:3", "dihedral:4", "klein"}) {
    const FiniteGroup g = named_group(name);
    for (Eigen::Index k : {1, 2}) {
      const auto d = static_cast<Eigen::Index>(g.order()) * k;
      const GroupFrameSample s = random_group_frame(g, d, k, 10 + k);
      const Representation back = reconstruct_representation(s.frame, g);
      CHECK(testing::max_diff(back.pi, s.rep.pi) <= 10 * s.frame.tol().residual_eps);
      CHECK(back.residual() <= s.frame.tol().loose());
      for (std::size_t e = 0; e < g.order(); ++e) {
        CHECK(num::spectral_norm(s.frame.A(e) - s.frame.A(0) * back.pi[g.inv(e)]) <= 1e-8);
        CHECK(num::spectral_norm(s.frame.Psi(e) - s.frame.Psi(0) * back.pi[g.inv(e)]) <= 1e-8);
      }
    }
  }

  try {
    reconstruct_representation(generate_frame(z2, row({2.0, 0.0}), row({1.0, 0.0})), z2.group);
    FAIL("expected PreconditionFailed");
  } catch (const PreconditionFailed& e) {
    CHECK(e.reason() == "NotParseval");
  }
  // Parseval but not shift invariant.
  const WeakOvf skew = random_parseval(2, 1, 3, 6);
  try {
    reconstruct_representation(skew, z3);
    FAIL("expected PreconditionFailed");
  } catch (const PreconditionFailed& e) {
    CHECK(e.reason() == "ShiftConditionsFail");
  }
}

TEST_CASE("commutation") {
  const Representation z2{FiniteGroup::cyclic(2), {num::identity(2), swap2()}};
  const WeakOvf f = generate_frame(z2, num::random_op(1, 2, 1), num::random_op(1, 2, 2));
  const CommutationReport r = check_commutation(f, z2);
  CHECK(r.max() <= 1e-9);

  const WeakOvf single({num::random_op(1, 2, 3)}, {num::random_op(1, 2, 4)});
  CHECK(check_commutation(single, Representation{FiniteGroup::trivial(), {num::identity(2)}}).max() == 0.0);

  const FiniteGroup d4 = FiniteGroup::dihedral(4);
  const GroupFrameSample s = random_group_frame(d4, 8, 1, 5);
  CHECK(check_commutation(s.frame, s.rep).max() <= 1e-9);
  const std::size_t t = 3;
  const CommutationReport bad = check_commutation(tamper(s.frame, t), s.rep);
  CHECK(bad.max() > 0.1);
  CHECK(bad.per_element[0] <= 1e-12);
  for (std::size_t g = 1; g < d4.order(); ++g) {
    CHECK(bad.per_element[g] > 0.1);
    const auto& blocks = bad.offending_blocks[g];
    CHECK(std::find(blocks.begin(), blocks.end(), t) != blocks.end());
    for (std::size_t b : blocks) CHECK((b == t || b == d4.mul(g, t)));
  }
}

TEST_CASE("twisted shift conditions") {
  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  // Redundant two dimensional rep g -> diag(i^g, (-i)^g).
  std::vector<Op> pi;
  using C = std::complex<double>;
  for (const C w : {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)}) {
    Op p = Op::Zero(2, 2);
    p(0, 0) = w;
    p(1, 1) = std::conj(w);
    pi.push_back(p);
  }
  const Representation lam{z4, pi};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const WeakOvf f = generate_frame(lam, num::random_op(1, 2, seed), num::random_op(1, 2, seed + 50));
    if (!classify(f).is_weak) continue;
    CHECK(twisted_shift_conditions(f, z4, Side::Left).passed);
    CHECK(twisted_shift_conditions(f, z4, Side::Right).passed);
    CHECK_FALSE(twisted_shift_conditions(tamper(f, 1), z4, Side::Left).passed);
    CHECK_FALSE(twisted_shift_conditions(tamper(f, 1), z4, Side::Right).passed);
  }
  const GroupFrameSample s = random_group_frame(z4, 4, 1, 2);
  CHECK(twisted_shift_conditions(s.frame, z4, Side::Left).max_residual ==
        doctest::Approx(check_shift_conditions(s.frame, z4).max_residual).epsilon(1e-6).scale(1e-9));

  CHECK_THROWS_AS(twisted_shift_conditions(WeakOvf({Op::Zero(1, 1)}, {Op::Zero(1, 1)}),
                                           FiniteGroup::trivial(), Side::Left),
                  NotInvertible);
}
