// Independent reference computations used only by the tests. None of these
// call into the library routines they are used to check.
#ifndef FRONTSEL_TESTS_ORACLES_HPP
#define FRONTSEL_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

/// Row indices of non-dominated rows of an oriented (minimization) matrix,
/// by exhaustive pairwise comparison.
inline std::vector<std::size_t> brute_frontier(const Eigen::MatrixXd &oriented) {
  std::vector<std::size_t> keep;
  for (Eigen::Index i = 0; i < oriented.rows(); ++i) {
    bool beaten = false;
    for (Eigen::Index j = 0; j < oriented.rows(); ++j) {
      if (i == j) continue;
      const bool no_worse = (oriented.row(j).array() <= oriented.row(i).array()).all();
      const bool better_somewhere = (oriented.row(j).array() < oriented.row(i).array()).any();
      if (no_worse && better_somewhere) {
        beaten = true;
        break;
      }
    }
    if (!beaten) keep.push_back(static_cast<std::size_t>(i));
  }
  return keep;
}

struct McEstimate {
  double mean;
  double std_error;
};

/// Lebesgue measure of {y : x < y < r} estimated by uniform sampling of the
/// bounding box [lo, r]. `lo` must be componentwise below x.
inline McEstimate mc_box_volume(const Eigen::VectorXd &x, const Eigen::VectorXd &r, const Eigen::VectorXd &lo,
                                std::size_t samples, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double box = (r - lo).prod();
  std::size_t hits = 0;
  Eigen::VectorXd y(x.size());
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < x.size(); ++i) y(i) = lo(i) + u(rng) * (r(i) - lo(i));
    if ((y.array() > x.array()).all() && (y.array() < r.array()).all()) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p * box, box * std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

/// Counter-clockwise angle in degrees from vector a to vector b, via acos and
/// the sign of the cross product.
inline double ccw_degrees(const Eigen::Vector2d &a, const Eigen::Vector2d &b) {
  const double c = std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0);
  const double inner = std::acos(c) * 180.0 / M_PI;
  const double cross = a.x() * b.y() - a.y() * b.x();
  return cross >= 0 ? inner : 360.0 - inner;
}

/// Reflex angles for distinct oriented 2-D frontier points, listed in any
/// order; result aligned with the input.
inline std::vector<double> knee_angles(const std::vector<Eigen::Vector2d> &pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pts[a].x() < pts[b].x(); });
  std::vector<double> out(pts.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Eigen::Vector2d b = pts[order[k]];
    const Eigen::Vector2d left = k > 0 ? Eigen::Vector2d(pts[order[k - 1]] - b) : Eigen::Vector2d(0, 2.5);
    const Eigen::Vector2d right = k + 1 < order.size() ? Eigen::Vector2d(pts[order[k + 1]] - b) : Eigen::Vector2d(0.7, 0);
    out[order[k]] = ccw_degrees(left, right);
  }
  return out;
}

struct CalibrationRow {
  double pop_u;
  double utopia;
};

/// Spreadsheet-style popularity utopia: explicit sums for means and
/// population standard deviations, anchors from the T least / most consumed
/// items (ties by item id), clamped to [0, 1].
inline std::map<std::string, CalibrationRow> calibration_table(
    const std::vector<std::pair<std::string, std::string>> &log, std::size_t T, double alpha = 1, double beta = 1) {
  std::map<std::string, double> pop;
  for (const auto &[u, i] : log) pop[i] += 1;
  auto mu_sigma = [&](const std::vector<double> &v) {
    double s = 0;
    for (double x : v) s += x;
    const double m = s / static_cast<double>(v.size());
    double q = 0;
    for (double x : v) q += (x - m) * (x - m);
    return alpha * m + beta * std::sqrt(q / static_cast<double>(v.size()));
  };
  std::vector<std::pair<double, std::string>> asc, desc;
  for (const auto &[i, p] : pop) {
    asc.emplace_back(p, i);
    desc.emplace_back(-p, i);
  }
  std::sort(asc.begin(), asc.end());
  std::sort(desc.begin(), desc.end());
  std::vector<double> tail, head;
  for (std::size_t t = 0; t < T; ++t) {
    tail.push_back(asc[t].first);
    head.push_back(-desc[t].first);
  }
  const double lo = mu_sigma(tail), hi = mu_sigma(head);
  std::map<std::string, std::vector<double>> gamma;
  for (const auto &[u, i] : log) gamma[u].push_back(pop[i]);
  std::map<std::string, CalibrationRow> out;
  for (const auto &[u, g] : gamma) {
    const double pu = mu_sigma(g);
    out[u] = {pu, std::min(1.0, std::max(0.0, (hi - pu) / (hi - lo)))};
  }
  return out;
}

}  // namespace oracle

#endif  // FRONTSEL_TESTS_ORACLES_HPP
