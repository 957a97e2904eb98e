#include "wovf/grouplike.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wovf {
namespace {

std::string triple(const char* what, std::size_t a, std::size_t b, std::size_t c) {
  std::ostringstream msg;
  msg << what << " at (" << a << ", " << b << ", " << c << ")";
  return msg.str();
}

}  // namespace

GroupLikeSystem::GroupLikeSystem(std::size_t phase_order, std::vector<std::vector<Phased>> mul,
                                 std::vector<Phased> inv, std::vector<std::string> names)
    : m_(phase_order) {
  const std::size_t n = mul.size();
  if (m_ == 0) throw InvalidSystem("phase_order must be positive");
  if (n == 0) throw InvalidSystem("system is empty");
  if (inv.size() != n) throw InvalidSystem("inverse table has the wrong length");
  if (!names.empty() && names.size() != n) throw InvalidSystem("names must match the size");
  const auto check_entry = [&](const Phased& p) {
    if (p.index >= n) throw InvalidSystem("table index out of range");
    if (p.turn >= m_) throw InvalidSystem("phase turn out of range");
  };
  for (const auto& row : mul) {
    if (row.size() != n) throw InvalidSystem("multiplication table is not square");
    for (const Phased& p : row) check_entry(p);
  }
  for (const Phased& p : inv) check_entry(p);

  std::size_t e = n;
  for (std::size_t c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      ok = mul[c][x] == Phased{0, x} && mul[x][c] == Phased{0, x};
    if (ok) e = c;
  }
  if (e == n) throw InvalidSystem("system has no identity element");

  std::vector<std::size_t> to_new(n), to_old;
  to_old.push_back(e);
  for (std::size_t x = 0; x < n; ++x)
    if (x != e) to_old.push_back(x);
  for (std::size_t k = 0; k < n; ++k) to_new[to_old[k]] = k;
  const auto relabel = [&](const Phased& p) { return Phased{p.turn, to_new[p.index]}; };

  mul_.assign(n, std::vector<Phased>(n));
  inv_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) mul_[a][b] = relabel(mul[to_old[a]][to_old[b]]);
    inv_[a] = relabel(inv[to_old[a]]);
    if (!names.empty()) names_.push_back(names[to_old[a]]);
  }
}

GroupLikeSystem GroupLikeSystem::from_group(const FiniteGroup& g,
                                            const std::vector<std::vector<std::size_t>>& cocycle,
                                            std::size_t phase_order) {
  const std::size_t n = g.order();
  if (phase_order == 0) throw InvalidSystem("phase_order must be positive");
  if (cocycle.size() != n) throw InvalidSystem("cocycle table has the wrong size");
  std::vector<std::vector<Phased>> mul(n, std::vector<Phased>(n));
  std::vector<Phased> inv(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (cocycle[a].size() != n) throw InvalidSystem("cocycle table is not square");
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = {cocycle[a][b] % phase_order, g.mul(a, b)};
    const std::size_t c = cocycle[a][g.inv(a)] % phase_order;
    inv[a] = {(phase_order - c) % phase_order, g.inv(a)};
  }
  return GroupLikeSystem(phase_order, std::move(mul), std::move(inv), g.names());
}

GroupLikeSystem GroupLikeSystem::from_group(const FiniteGroup& g) {
  const std::vector<std::vector<std::size_t>> zero(g.order(),
                                                   std::vector<std::size_t>(g.order(), 0));
  return from_group(g, zero, 1);
}

GroupLikeSystem GroupLikeSystem::from_unitaries(const std::vector<Op>& us,
                                                std::size_t phase_order, double eps) {
  if (us.empty()) throw InvalidSystem("no unitaries given");
  if (phase_order == 0) throw InvalidSystem("phase_order must be positive");
  const Eigen::Index dim = us.front().rows();
  for (const Op& u : us)
    if (u.rows() != dim || u.cols() != dim) throw InvalidSystem("unitaries differ in shape");
  if (num::spectral_norm(us.front() - num::identity(dim)) > eps)
    throw InvalidSystem("first unitary must be the identity");

  const double turn_size = 2.0 * std::numbers::pi / static_cast<double>(phase_order);
  const auto locate = [&](const Op& x) -> Phased {
    for (std::size_t j = 0; j < us.size(); ++j) {
      const Complex c = (us[j].adjoint() * x).trace() / static_cast<double>(dim);
      if (std::abs(std::abs(c) - 1.0) > std::sqrt(eps)) continue;
      const long k = std::lround(std::arg(c) / turn_size);
      const auto turn = static_cast<std::size_t>(
          ((k % static_cast<long>(phase_order)) + static_cast<long>(phase_order)) %
          static_cast<long>(phase_order));
      const Complex w = std::polar(1.0, turn_size * static_cast<double>(turn));
      if (num::spectral_norm(x - w * us[j]) <= eps) return {turn, j};
    }
    throw InvalidSystem("product is not a phase multiple of a listed unitary");
  };

  const std::size_t n = us.size();
  std::vector<std::vector<Phased>> mul(n, std::vector<Phased>(n));
  std::vector<Phased> inv(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = locate(us[a] * us[b]);
    inv[a] = locate(us[a].adjoint());
  }
  return GroupLikeSystem(phase_order, std::move(mul), std::move(inv));
}

Complex GroupLikeSystem::phase(std::size_t turn) const {
  const std::size_t t = turn % m_;
  if ((4 * t) % m_ == 0) {
    static constexpr std::array<Complex, 4> quarter{Complex(1, 0), Complex(0, 1), Complex(-1, 0),
                                                    Complex(0, -1)};
    return quarter[(4 * t) / m_];
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) /
                             static_cast<double>(m_));
}

FiniteGroup GroupLikeSystem::underlying_group() const {
  std::vector<std::vector<std::size_t>> table(size(), std::vector<std::size_t>(size()));
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b) {
      if (mul_[a][b].turn != 0) throw InvalidSystem("system carries nonzero phases");
      table[a][b] = mul_[a][b].index;
    }
  return FiniteGroup::from_table(std::move(table), names_);
}

SystemReport validate_system(const GroupLikeSystem& sys) {
  const std::size_t n = sys.size();
  const std::size_t m = sys.phase_order();
  const auto s = [&](std::size_t a, std::size_t b) { return sys.mul(a, b).index; };
  const auto k = [&](std::size_t a, std::size_t b) { return sys.mul(a, b).turn; };
  const auto iv = [&](std::size_t a) { return sys.inv(a).index; };
  SystemReport rep;
  const auto fail = [&](std::string what, std::size_t a, std::size_t b, std::size_t c) {
    rep.ok = false;
    rep.violation = std::move(what);
    rep.where = {a, b, c};
    return rep;
  };

  for (std::size_t x = 0; x < n; ++x)
    if (sys.mul(0, x) != Phased{0, x} || sys.mul(x, 0) != Phased{0, x})
      return fail(triple("identity row or column carries a phase", 0, x, 0), 0, x, 0);

  for (std::size_t u = 0; u < n; ++u) {
    const Phased inverse = sys.inv(u);
    const Phased right = sys.mul(u, inverse.index);
    const Phased left = sys.mul(inverse.index, u);
    if (right.index != 0 || (inverse.turn + right.turn) % m != 0 || left.index != 0 ||
        (inverse.turn + left.turn) % m != 0)
      return fail(triple("inverse table is inconsistent", u, inverse.index, 0), u,
                  inverse.index, 0);
  }

  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w) {
        const std::size_t left = s(u, s(v, w));
        const std::size_t right = s(s(u, v), w);
        if (left != right) return fail(triple("sigma associativity fails", u, v, w), u, v, w);
        if ((k(u, s(v, w)) + k(v, w)) % m != (k(s(u, v), w) + k(u, v)) % m)
          return fail(triple("cocycle identity fails", u, v, w), u, v, w);
      }

  // U -> s(VU), s(UV), s(UV^-1), s(V^-1 U), s(VU^-1), s(U^-1 V), s(VU^-1 W).
  const std::array<const char*, 7> map_names{"s(VU)",   "s(UV)",    "s(UV^-1)",   "s(V^-1U)",
                                             "s(VU^-1)", "s(U^-1V)", "s(VU^-1W)"};
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t which = 0; which < map_names.size(); ++which) {
        std::vector<bool> hit(n, false);
        for (std::size_t u = 0; u < n; ++u) {
          std::size_t image = 0;
          switch (which) {
            case 0: image = s(v, u); break;
            case 1: image = s(u, v); break;
            case 2: image = s(u, iv(v)); break;
            case 3: image = s(iv(v), u); break;
            case 4: image = s(v, iv(u)); break;
            case 5: image = s(iv(u), v); break;
            default: image = s(s(v, iv(u)), w); break;
          }
          if (hit[image]) {
            std::ostringstream msg;
            msg << "map U -> " << map_names[which] << " is not injective for V = " << v
                << ", W = " << w;
            return fail(msg.str(), v, w, which);
          }
          hit[image] = true;
        }
      }
  return rep;
}

Op GroupLikeRepresentation::phased(const Phased& p) const {
  if (p.turn % system.phase_order() == 0) return pi[p.index];
  return system.phase(p.turn) * pi[p.index];
}

Op GroupLikeRepresentation::inverse(std::size_t u) const { return phased(system.inv(u)); }

double GroupLikeRepresentation::residual() const {
  const std::size_t n = system.size();
  const Op eye = num::identity(dim());
  double worst = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    worst = std::max(worst, num::spectral_norm(pi[u].adjoint() * pi[u] - eye));
    worst = std::max(worst, num::spectral_norm(pi[u] * inverse(u) - eye));
    for (std::size_t v = 0; v < n; ++v)
      worst = std::max(worst, num::spectral_norm(pi[u] * pi[v] - phased(system.mul(u, v))));
  }
  return worst;
}

double GroupLikeRepresentation::separation() const {
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < pi.size(); ++u)
    for (std::size_t v = u + 1; v < pi.size(); ++v)
      closest = std::min(closest, num::spectral_norm(pi[u] - pi[v]));
  return closest;
}

GroupLikeRegular grouplike_regular_representations(const GroupLikeSystem& sys) {
  const SystemReport check = validate_system(sys);
  if (!check.ok) throw InvalidSystem(check.violation);
  const std::size_t n = sys.size();
  const auto size = static_cast<Eigen::Index>(n);
  GroupLikeRegular out{{sys, {}}, {sys, {}}};
  const auto put = [&](Op& x, const Phased& p, std::size_t col) {
    x(static_cast<Eigen::Index>(p.index), static_cast<Eigen::Index>(col)) =
        p.turn == 0 ? Complex(1.0) : sys.phase(p.turn);
  };
  for (std::size_t u = 0; u < n; ++u) {
    Op lam = Op::Zero(size, size), rho = Op::Zero(size, size);
    const Phased u_inv = sys.inv(u);
    for (std::size_t v = 0; v < n; ++v) {
      put(lam, sys.mul(u, v), v);
      const Phased vu = sys.mul(v, u_inv.index);
      put(rho, Phased{(vu.turn + u_inv.turn) % sys.phase_order(), vu.index}, v);
    }
    out.left.pi.push_back(std::move(lam));
    out.right.pi.push_back(std::move(rho));
  }
  return out;
}

GroupLikeRepresentation grouplike_left_regular(const GroupLikeSystem& sys) {
  return grouplike_regular_representations(sys).left;
}

WeakOvf generate_grouplike_frame(const GroupLikeRepresentation& rep, const Op& a, const Op& psi,
                                 const Tolerance& tol) {
  if (a.cols() != rep.dim() || psi.cols() != rep.dim() || a.rows() != psi.rows())
    throw ShapeMismatch("generator shapes do not match the representation");
  std::vector<Op> as, psis;
  for (std::size_t u = 0; u < rep.system.size(); ++u) {
    const Op pinv = rep.inverse(u);
    as.emplace_back(a * pinv);
    psis.emplace_back(psi * pinv);
  }
  return WeakOvf(std::move(as), std::move(psis), tol);
}

ShiftReport check_grouplike_conditions(const WeakOvf& f, const GroupLikeSystem& sys) {
  const std::size_t n = sys.size();
  if (f.size() != n) throw ShapeMismatch("frame length must equal the system size");
  const std::size_t m = sys.phase_order();
  std::vector<std::vector<std::array<Op, 3>>> gram(n, std::vector<std::array<Op, 3>>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      gram[p][q] = {f.A(p) * f.A(q).adjoint(), f.A(p) * f.Psi(q).adjoint(),
                    f.Psi(p) * f.Psi(q).adjoint()};
  ShiftReport rep;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w) {
        const Phased uv = sys.mul(u, v), uw = sys.mul(u, w);
        const std::size_t turn = (uv.turn + m - uw.turn) % m;
        const Complex c = turn == 0 ? Complex(1.0) : sys.phase(turn);
        for (int fam = 0; fam < 3; ++fam) {
          const double r =
              num::spectral_norm(gram[uv.index][uw.index][fam] - c * gram[v][w][fam]);
          if (r > rep.max_residual) {
            rep.max_residual = r;
            rep.worst_triple = {u, v, w};
            rep.worst_family = fam;
          }
        }
      }
  rep.passed = rep.max_residual <= f.tol().loose();
  return rep;
}

ShiftReport twisted_grouplike_conditions(const WeakOvf& f, const GroupLikeSystem& sys,
                                         Side side) {
  return check_grouplike_conditions(parsevalize(f, side), sys);
}

GroupLikeRepresentation reconstruct_grouplike_representation(const WeakOvf& f,
                                                             const GroupLikeSystem& sys) {
  if (f.size() != sys.size()) throw ShapeMismatch("frame length must equal the system size");
  const Tolerance& tol = f.tol();
  const double parseval_res = num::spectral_norm(frame_operator(f) - num::identity(f.d()));
  if (parseval_res > tol.loose())
    throw PreconditionFailed("NotParseval", "reconstruction needs a Parseval frame");
  const Op ta = theta_A(f);
  if (ta.rows() > ta.cols() || num::numerical_rank(ta, tol) < ta.rows()) {
    std::ostringstream msg;
    msg << "theta_A (" << ta.rows() << " x " << ta.cols() << ") is not onto";
    throw PreconditionFailed("AnalysisNotSurjective", msg.str());
  }
  const ShiftReport cond = check_grouplike_conditions(f, sys);
  if (!cond.passed)
    throw PreconditionFailed("ConditionsFail",
                             triple("phased conditions fail", cond.worst_triple[0],
                                    cond.worst_triple[1], cond.worst_triple[2]));
  const GroupLikeRepresentation lambda = grouplike_left_regular(sys);
  const Op tp_adj = theta_Psi(f).adjoint();
  const Op eye0 = num::identity(f.d0());
  GroupLikeRepresentation out{sys, {}};
  for (std::size_t u = 0; u < sys.size(); ++u)
    out.pi.push_back(tp_adj * num::kron(lambda.pi[u], eye0) * ta);
  return out;
}

}  // namespace wovf
