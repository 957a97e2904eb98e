#include "wovf/group_frames.hpp"

#include <algorithm>
#include <sstream>

namespace wovf {
namespace {

using Table = std::vector<std::vector<std::size_t>>;

std::string describe(std::size_t a, std::size_t b, std::size_t c) {
  std::ostringstream msg;
  msg << "(" << a << ", " << b << ", " << c << ")";
  return msg.str();
}

}  // namespace

FiniteGroup FiniteGroup::from_table(Table mul, std::vector<std::string> names) {
  const std::size_t n = mul.size();
  if (n == 0) throw InvalidSystem("group table is empty");
  for (const auto& row : mul) {
    if (row.size() != n) throw InvalidSystem("group table is not square");
    for (std::size_t x : row)
      if (x >= n) throw InvalidSystem("group table entry out of range");
  }
  if (!names.empty() && names.size() != n) throw InvalidSystem("names must match the order");

  std::size_t e = n;
  for (std::size_t c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = mul[c][x] == x && mul[x][c] == x;
    if (ok) e = c;
  }
  if (e == n) throw InvalidSystem("group table has no identity element");

  // Relabel so that the identity is element 0.
  std::vector<std::size_t> to_new(n), to_old;
  to_old.push_back(e);
  for (std::size_t x = 0; x < n; ++x)
    if (x != e) to_old.push_back(x);
  for (std::size_t k = 0; k < n; ++k) to_new[to_old[k]] = k;

  FiniteGroup g;
  g.mul_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.mul_[a][b] = to_new[mul[to_old[a]][to_old[b]]];
  if (!names.empty())
    for (std::size_t k = 0; k < n; ++k) g.names_.push_back(names[to_old[k]]);

  g.inv_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g.mul_[a][b] == 0 && g.mul_[b][a] == 0) g.inv_[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (g.inv_[a] == n) throw InvalidSystem("element " + std::to_string(a) + " has no inverse");

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g.mul_[g.mul_[a][b]][c] != g.mul_[a][g.mul_[b][c]])
          throw InvalidSystem("associativity fails at " + describe(a, b, c));
  return g;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw InvalidSystem("cyclic group needs positive order");
  Table mul(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  return from_table(std::move(mul));
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  if (n == 0) throw InvalidSystem("dihedral group needs n >= 1");
  // Element index f * n + k stands for s^f r^k; r^k s = s r^{-k}.
  const std::size_t order = 2 * n;
  Table mul(order, std::vector<std::size_t>(order));
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t fa = x / n, ka = x % n, fb = y / n, kb = y % n;
      const std::size_t k = (fb == 0 ? ka : (n - ka) % n);
      mul[x][y] = ((fa + fb) % 2) * n + (k + kb) % n;
    }
  return from_table(std::move(mul));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = h.order();
  const std::size_t order = g.order() * m;
  Table mul(order, std::vector<std::size_t>(order));
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y)
      mul[x][y] = g.mul(x / m, y / m) * m + h.mul(x % m, y % m);
  return from_table(std::move(mul));
}

double Representation::residual() const {
  double worst = 0.0;
  const std::size_t n = group.order();
  const Op eye = num::identity(dim());
  for (std::size_t g = 0; g < n; ++g) {
    worst = std::max(worst, num::spectral_norm(pi[g].adjoint() * pi[g] - eye));
    for (std::size_t h = 0; h < n; ++h)
      worst = std::max(worst, num::spectral_norm(pi[g] * pi[h] - pi[group.mul(g, h)]));
  }
  return worst;
}

RegularRepresentations regular_representations(const FiniteGroup& g) {
  const std::size_t n = g.order();
  const auto size = static_cast<Eigen::Index>(n);
  RegularRepresentations out{{g, {}}, {g, {}}};
  for (std::size_t x = 0; x < n; ++x) {
    Op lam = Op::Zero(size, size), rho = Op::Zero(size, size);
    for (std::size_t q = 0; q < n; ++q) {
      lam(static_cast<Eigen::Index>(g.mul(x, q)), static_cast<Eigen::Index>(q)) = 1.0;
      rho(static_cast<Eigen::Index>(g.mul(q, g.inv(x))), static_cast<Eigen::Index>(q)) = 1.0;
    }
    out.left.pi.push_back(std::move(lam));
    out.right.pi.push_back(std::move(rho));
  }
  return out;
}

Representation left_regular(const FiniteGroup& g) { return regular_representations(g).left; }

WeakOvf generate_frame(const Representation& rep, const Op& a, const Op& psi,
                       const Tolerance& tol) {
  if (a.cols() != rep.dim() || psi.cols() != rep.dim() || a.rows() != psi.rows())
    throw ShapeMismatch("generator shapes do not match the representation");
  std::vector<Op> as, psis;
  for (std::size_t g = 0; g < rep.group.order(); ++g) {
    const Op& pinv = rep.pi[rep.group.inv(g)];
    as.emplace_back(a * pinv);
    psis.emplace_back(psi * pinv);
  }
  return WeakOvf(std::move(as), std::move(psis), tol);
}

ShiftReport check_shift_conditions(const WeakOvf& f, const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (f.size() != n) throw ShapeMismatch("frame length must equal the group order");
  // Gram blocks X_p Y_q* for the three families.
  std::vector<std::vector<std::array<Op, 3>>> gram(n, std::vector<std::array<Op, 3>>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      gram[p][q] = {f.A(p) * f.A(q).adjoint(), f.A(p) * f.Psi(q).adjoint(),
                    f.Psi(p) * f.Psi(q).adjoint()};
  ShiftReport rep;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const auto& shifted = gram[g.mul(x, p)][g.mul(x, q)];
        for (int fam = 0; fam < 3; ++fam) {
          const double r = num::spectral_norm(shifted[fam] - gram[p][q][fam]);
          if (r > rep.max_residual) {
            rep.max_residual = r;
            rep.worst_triple = {x, p, q};
            rep.worst_family = fam;
          }
        }
      }
  rep.passed = rep.max_residual <= f.tol().loose();
  return rep;
}

Op lifted_left_regular(const Representation& lambda, std::size_t g, Eigen::Index d0) {
  return num::kron(lambda.pi[g], num::identity(d0));
}

Representation reconstruct_representation(const WeakOvf& f, const FiniteGroup& g) {
  const double parseval_res = num::spectral_norm(frame_operator(f) - num::identity(f.d()));
  if (parseval_res > f.tol().loose())
    throw PreconditionFailed("NotParseval", "reconstruction needs a Parseval frame");
  const ShiftReport shift = check_shift_conditions(f, g);
  if (!shift.passed)
    throw PreconditionFailed("ShiftConditionsFail",
                             "shift identities fail at " +
                                 describe(shift.worst_triple[0], shift.worst_triple[1],
                                          shift.worst_triple[2]));
  const Representation lambda = left_regular(g);
  const Op ta = theta_A(f);
  const Op tp_adj = theta_Psi(f).adjoint();
  Representation out{g, {}};
  for (std::size_t x = 0; x < g.order(); ++x)
    out.pi.push_back(tp_adj * lifted_left_regular(lambda, x, f.d0()) * ta);
  return out;
}

double CommutationReport::max() const { return std::max({theta_A, theta_Psi, frame_op}); }

CommutationReport check_commutation(const WeakOvf& f, const Representation& rep) {
  const std::size_t n = rep.group.order();
  if (f.size() != n || rep.dim() != f.d())
    throw ShapeMismatch("frame and representation do not conform");
  const Representation lambda = left_regular(rep.group);
  const Op ta = theta_A(f), tp = theta_Psi(f);
  const Op s = frame_operator(f);
  const Eigen::Index d0 = f.d0();
  CommutationReport out;
  out.per_element.assign(n, 0.0);
  out.offending_blocks.assign(n, {});
  for (std::size_t g = 0; g < n; ++g) {
    const Op lift = lifted_left_regular(lambda, g, d0);
    const Op da = ta * rep.pi[g] - lift * ta;
    const Op dp = tp * rep.pi[g] - lift * tp;
    const double ra = num::spectral_norm(da);
    const double rp = num::spectral_norm(dp);
    const double rs = num::spectral_norm(s * rep.pi[g] - rep.pi[g] * s);
    out.theta_A = std::max(out.theta_A, ra);
    out.theta_Psi = std::max(out.theta_Psi, rp);
    out.frame_op = std::max(out.frame_op, rs);
    out.per_element[g] = std::max({ra, rp, rs});
    for (std::size_t b = 0; b < n; ++b) {
      const auto row = static_cast<Eigen::Index>(b) * d0;
      const double rb = std::max(num::spectral_norm(da.middleRows(row, d0)),
                                 num::spectral_norm(dp.middleRows(row, d0)));
      if (rb > f.tol().loose()) out.offending_blocks[g].push_back(b);
    }
  }
  return out;
}

ShiftReport twisted_shift_conditions(const WeakOvf& f, const FiniteGroup& g, Side side) {
  return check_shift_conditions(parsevalize(f, side), g);
}

}  // namespace wovf
