#pragma once

#include <cmath>
#include <vector>

#include "wovf/frame.hpp"

namespace testing {

using wovf::Op;

inline double max_diff(const std::vector<Op>& x, const std::vector<Op>& y) {
  double worst = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n)
    worst = std::max(worst, (x[n] - y[n]).cwiseAbs().maxCoeff());
  return worst;
}

inline double frame_diff(const wovf::WeakOvf& f, const wovf::WeakOvf& g) {
  return std::max(max_diff(f.As(), g.As()), max_diff(f.Psis(), g.Psis()));
}

inline Op scalar(double x) { return Op::Constant(1, 1, x); }

inline std::vector<Op> scalars(std::initializer_list<double> xs) {
  std::vector<Op> out;
  for (double x : xs) out.push_back(scalar(x));
  return out;
}

inline Op diag(std::initializer_list<double> xs) {
  Op out = Op::Zero(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) {
    out(k, k) = x;
    ++k;
  }
  return out;
}

}  // namespace testing
