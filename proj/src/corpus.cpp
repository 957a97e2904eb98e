#include "wovf/corpus.hpp"

#include <charconv>
#include <numbers>
#include <stdexcept>

namespace wovf {
namespace {

std::vector<Op> split_rows(const Op& stacked, std::size_t n, Eigen::Index d0) {
  std::vector<Op> out;
  for (std::size_t k = 0; k < n; ++k)
    out.emplace_back(stacked.middleRows(static_cast<Eigen::Index>(k) * d0, d0));
  return out;
}

void require_dims(Eigen::Index d, Eigen::Index d0, std::size_t n) {
  if (d < 1 || d0 < 1 || n < 1) throw std::invalid_argument("dimensions must be positive");
}

void require_cover(Eigen::Index d, Eigen::Index d0, std::size_t n) {
  require_dims(d, d0, n);
  if (static_cast<Eigen::Index>(n) * d0 < d)
    throw std::invalid_argument("need N * d0 >= d for an invertible frame operator");
}

// W (base (x) I_k) W*.
std::vector<Op> amplify(const std::vector<Op>& base, Eigen::Index k, const Op& w) {
  std::vector<Op> out;
  for (const Op& b : base) out.emplace_back(w * num::kron(b, num::identity(k)) * w.adjoint());
  return out;
}

// Parseval normalization A S^{-1/2} of a symmetric generated frame.
template <class Make>
std::pair<Op, WeakOvf> normalized(Make make, const Op& a, const Tolerance& tol) {
  const WeakOvf raw = make(a);
  const Op fixed = a * num::inverse_sqrt_psd(frame_operator(raw), tol);
  WeakOvf frame = make(fixed);
  if (!classify(frame).is_parseval)
    throw std::logic_error("normalized generated frame is not Parseval");
  return {fixed, std::move(frame)};
}

std::size_t parse_count(const std::string& text, const std::string& name) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0)
    throw std::invalid_argument("bad parameter in '" + name + "'");
  return value;
}

}  // namespace

WeakOvf random_weak(Eigen::Index d, Eigen::Index d0, std::size_t n, std::uint64_t seed,
                    const Tolerance& tol) {
  require_cover(d, d0, n);
  Rng rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Op> a, psi;
    for (std::size_t k = 0; k < n; ++k) a.push_back(num::random_op(d0, d, rng));
    for (std::size_t k = 0; k < n; ++k) psi.push_back(num::random_op(d0, d, rng));
    WeakOvf f(std::move(a), std::move(psi), tol);
    if (classify(f).is_weak) return f;
  }
  throw std::runtime_error("could not draw a weak frame");
}

WeakOvf random_parseval(Eigen::Index d, Eigen::Index d0, std::size_t n, std::uint64_t seed,
                        bool symmetric, const Tolerance& tol) {
  require_cover(d, d0, n);
  Rng rng(seed);
  const Eigen::Index big = static_cast<Eigen::Index>(n) * d0;
  const Op g = num::random_op(big, d, rng);
  Op u, v;
  if (symmetric) {
    Eigen::HouseholderQR<Op> qr(g);
    u = qr.householderQ() * Op::Identity(big, d);
    v = u;
  } else {
    u = g;
    v = g * num::try_invert(g.adjoint() * g, tol);
  }
  return WeakOvf(split_rows(u, n, d0), split_rows(v, n, d0), tol);
}

WeakOvf random_operator_onb_frame(Eigen::Index d, Eigen::Index d0, std::size_t n,
                                  std::uint64_t seed, const Tolerance& tol) {
  require_dims(d, d0, n);
  if (static_cast<Eigen::Index>(n) * d0 != d)
    throw std::invalid_argument("operator-onb needs d == N * d0");
  const Op w = num::random_unitary(d, seed);
  std::vector<Op> a = split_rows(w, n, d0);
  return WeakOvf(a, a, tol);
}

GroupFrameSample random_group_frame(const FiniteGroup& g, Eigen::Index d, Eigen::Index d0,
                                    std::uint64_t seed, const Tolerance& tol) {
  const auto order = static_cast<Eigen::Index>(g.order());
  require_dims(d, d0, g.order());
  if (d % order != 0) throw std::invalid_argument("d must be a multiple of the group order");
  const Eigen::Index k = d / order;
  if (d0 < k) throw std::invalid_argument("d0 must be at least d / |G|");
  Rng rng(seed);
  const Op w = num::random_unitary(d, rng);
  Representation rep{g, amplify(left_regular(g).pi, k, w)};
  const Op a = num::random_op(d0, d, rng);
  auto [gen, frame] =
      normalized([&](const Op& x) { return generate_frame(rep, x, x, tol); }, a, tol);
  return {std::move(rep), std::move(gen), std::move(frame)};
}

GroupLikeFrameSample random_grouplike_frame(const GroupLikeSystem& sys, Eigen::Index d,
                                            Eigen::Index d0, std::uint64_t seed,
                                            const Tolerance& tol) {
  const auto size = static_cast<Eigen::Index>(sys.size());
  require_dims(d, d0, sys.size());
  if (d % size != 0) throw std::invalid_argument("d must be a multiple of the system size");
  const Eigen::Index k = d / size;
  if (d0 < k) throw std::invalid_argument("d0 must be at least d / size");
  Rng rng(seed);
  const Op w = num::random_unitary(d, rng);
  GroupLikeRepresentation rep{sys, amplify(grouplike_left_regular(sys).pi, k, w)};
  const Op a = num::random_op(d0, d, rng);
  auto [gen, frame] =
      normalized([&](const Op& x) { return generate_grouplike_frame(rep, x, x, tol); }, a, tol);
  return {std::move(rep), std::move(gen), std::move(frame)};
}

FiniteGroup named_group(const std::string& name) {
  if (name == "trivial") return FiniteGroup::trivial();
  if (name == "klein") return FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string family = name.substr(0, colon);
    const std::size_t n = parse_count(name.substr(colon + 1), name);
    if (family == "cyclic") return FiniteGroup::cyclic(n);
    if (family == "dihedral") return FiniteGroup::dihedral(n);
  }
  throw std::invalid_argument("unknown group '" + name + "'");
}

Op shift_matrix(Eigen::Index n) {
  Op x = Op::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) x((j + 1) % n, j) = 1.0;
  return x;
}

Op clock_matrix(Eigen::Index n) {
  Op z = Op::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                  static_cast<double>(n));
  return z;
}

GroupLikeSystem named_system(const std::string& name) {
  const Complex i(0.0, 1.0);
  const Op eye = num::identity(2);
  const Op x = shift_matrix(2);
  Op y(2, 2);
  y << 0.0, -i, i, 0.0;
  const Op z = clock_matrix(2);
  if (name == "iz2") return GroupLikeSystem::from_unitaries({eye, i * x}, 4);
  if (name == "pauli") {
    const GroupLikeSystem s = GroupLikeSystem::from_unitaries({eye, x, y, z}, 4);
    return GroupLikeSystem(s.phase_order(), s.table(), s.inverses(), {"I", "X", "Y", "Z"});
  }
  if (name.rfind("heisenberg:", 0) == 0) {
    const std::size_t n = parse_count(name.substr(11), name);
    const FiniteGroup g = FiniteGroup::product(FiniteGroup::cyclic(n), FiniteGroup::cyclic(n));
    // X^a Z^b X^c Z^d = omega^{bc} X^{a+c} Z^{b+d}; element (a, b) has index a n + b.
    std::vector<std::vector<std::size_t>> c(n * n, std::vector<std::size_t>(n * n));
    for (std::size_t p = 0; p < n * n; ++p)
      for (std::size_t q = 0; q < n * n; ++q) c[p][q] = ((p % n) * (q / n)) % n;
    return GroupLikeSystem::from_group(g, c, n);
  }
  return GroupLikeSystem::from_group(named_group(name));
}

}  // namespace wovf
