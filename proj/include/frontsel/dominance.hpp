#ifndef FRONTSEL_DOMINANCE_HPP
#define FRONTSEL_DOMINANCE_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "frontsel/core.hpp"

namespace frontsel {

/// True iff `a` Pareto-dominates `b`. Both vectors are minimization-oriented.
template <typename DerivedA, typename DerivedB>
bool dominates(const Eigen::MatrixBase<DerivedA> &a, const Eigen::MatrixBase<DerivedB> &b) {
  if (a.size() != b.size()) {
    throw InputError("dominance check on vectors of length " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  }
  bool strict = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) > b(i)) return false;
    if (a(i) < b(i)) strict = true;
  }
  return strict;
}

/// Non-dominated members of a candidate set, in ascending id order.
struct Frontier {
  std::vector<std::string> member_ids;
  std::vector<std::size_t> rows;  // indices into the parent CandidateSet, aligned with member_ids

  std::size_t size() const { return member_ids.size(); }
  bool contains(const std::string &id) const {
    return std::binary_search(member_ids.begin(), member_ids.end(), id);
  }
};

namespace detail {

template <typename Scalar>
Frontier frontier_from_rows(const CandidateSet<Scalar> &set, std::vector<std::size_t> rows) {
  std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) { return set.ids()[a] < set.ids()[b]; });
  Frontier f;
  f.rows = std::move(rows);
  for (auto r : f.rows) f.member_ids.push_back(set.ids()[r]);
  return f;
}

}  // namespace detail

/// All-pairs extraction. Exact duplicates are both kept since neither
/// strictly dominates the other.
template <typename Scalar>
Frontier pareto_frontier(const CandidateSet<Scalar> &set) {
  const Matrix<Scalar> o = set.oriented();
  const auto n = static_cast<Eigen::Index>(set.size());
  std::vector<std::size_t> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    bool dominated = false;
    for (Eigen::Index j = 0; j < n && !dominated; ++j) {
      dominated = j != i && dominates(o.row(j), o.row(i));
    }
    if (!dominated) keep.push_back(static_cast<std::size_t>(i));
  }
  return detail::frontier_from_rows(set, std::move(keep));
}

/// Sort-and-sweep extraction for two objectives. Same output as
/// pareto_frontier.
template <typename Scalar>
Frontier pareto_frontier_2d(const CandidateSet<Scalar> &set) {
  if (set.objectives() != 2) {
    throw UnsupportedError("sweep frontier requires exactly 2 objectives");
  }
  const Matrix<Scalar> o = set.oriented();
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
    if (o(ia, 0) != o(ib, 0)) return o(ia, 0) < o(ib, 0);
    return o(ia, 1) < o(ib, 1);
  });
  std::vector<std::size_t> keep;
  std::optional<Eigen::Index> last;
  for (auto r : order) {
    const auto i = static_cast<Eigen::Index>(r);
    if (!last || o(i, 1) < o(*last, 1)) {
      keep.push_back(r);
      last = i;
    } else if (o(i, 0) == o(*last, 0) && o(i, 1) == o(*last, 1)) {
      keep.push_back(r);
    }
  }
  return detail::frontier_from_rows(set, std::move(keep));
}

namespace detail {

template <typename Scalar>
std::vector<std::size_t> all_rows(const CandidateSet<Scalar> &set) {
  std::vector<std::size_t> r(set.size());
  std::iota(r.begin(), r.end(), 0);
  return r;
}

template <typename Scalar>
Vector<Scalar> oriented_extreme(const CandidateSet<Scalar> &set, const std::vector<std::size_t> &rows, bool best) {
  if (rows.empty()) throw InputError("empirical utopia/nadir over an empty set");
  const Matrix<Scalar> o = set.oriented();
  Vector<Scalar> out = o.row(static_cast<Eigen::Index>(rows.front())).transpose();
  for (auto r : rows) {
    const auto row = o.row(static_cast<Eigen::Index>(r)).transpose();
    if (best) {
      out = out.cwiseMin(row);
    } else {
      out = out.cwiseMax(row);
    }
  }
  // back to native orientation
  return out.cwiseProduct(orientation_signs(set.specs()));
}

}  // namespace detail

/// Componentwise best value over the candidates (or over `restrict_to`
/// rows), in native orientation. An empirical stand-in for the utopia point
/// of the unobservable feasible set.
template <typename Scalar>
Vector<Scalar> empirical_utopia(const CandidateSet<Scalar> &set,
                                const std::optional<Frontier> &restrict_to = std::nullopt) {
  return detail::oriented_extreme(set, restrict_to ? restrict_to->rows : detail::all_rows(set), true);
}

/// Componentwise worst value, native orientation.
template <typename Scalar>
Vector<Scalar> empirical_nadir(const CandidateSet<Scalar> &set,
                               const std::optional<Frontier> &restrict_to = std::nullopt) {
  return detail::oriented_extreme(set, restrict_to ? restrict_to->rows : detail::all_rows(set), false);
}

}  // namespace frontsel

#endif  // FRONTSEL_DOMINANCE_HPP
