#ifndef FRONTSEL_CORE_HPP
#define FRONTSEL_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frontsel/errors.hpp"

namespace frontsel {

template <typename Scalar = double>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar = double>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class Direction { Minimize, Maximize };

inline const char *to_string(Direction d) {
  return d == Direction::Minimize ? "min" : "max";
}

template <typename Scalar = double>
struct ObjectiveSpec {
  std::string name;
  Direction direction = Direction::Minimize;
  std::optional<Scalar> weight;
  std::optional<Scalar> utopia;
  std::optional<Scalar> reference;

  bool operator==(const ObjectiveSpec &) const = default;
};

template <typename Scalar>
void validate_specs(const std::vector<ObjectiveSpec<Scalar>> &specs) {
  if (specs.empty()) {
    throw InputError("objective list is empty");
  }
  std::set<std::string> seen;
  for (const auto &s : specs) {
    if (s.name.empty()) {
      throw InputError("objective with empty name");
    }
    if (!seen.insert(s.name).second) {
      throw InputError("duplicate objective name '" + s.name + "'");
    }
    for (const auto &opt : {s.weight, s.utopia, s.reference}) {
      if (opt && !std::isfinite(*opt)) {
        throw InputError("objective '" + s.name + "' has a non-finite component");
      }
    }
  }
}

/// +1 for minimized objectives, -1 for maximized ones. Multiplying a native
/// vector by this yields its minimization-oriented form.
template <typename Scalar>
Vector<Scalar> orientation_signs(const std::vector<ObjectiveSpec<Scalar>> &specs) {
  Vector<Scalar> s(static_cast<Eigen::Index>(specs.size()));
  for (std::size_t i = 0; i < specs.size(); ++i) {
    s(static_cast<Eigen::Index>(i)) = specs[i].direction == Direction::Maximize ? Scalar(-1) : Scalar(1);
  }
  return s;
}

template <typename Derived, typename Scalar>
void check_length(const Eigen::MatrixBase<Derived> &v, const std::vector<ObjectiveSpec<Scalar>> &specs,
                  const char *what) {
  if (static_cast<std::size_t>(v.size()) != specs.size()) {
    throw InputError(std::string(what) + " has length " + std::to_string(v.size()) + ", expected " +
                     std::to_string(specs.size()));
  }
}

/// Maps a native-orientation vector to minimization orientation.
template <typename Derived, typename Scalar = typename Derived::Scalar>
Vector<Scalar> orient(const Eigen::MatrixBase<Derived> &values, const std::vector<ObjectiveSpec<Scalar>> &specs) {
  check_length(values, specs, "value vector");
  return values.derived().template cast<Scalar>().cwiseProduct(orientation_signs(specs));
}

template <typename Scalar = double>
struct SolutionPoint {
  std::string id;
  Vector<Scalar> values;
};

/// The n candidate solutions evaluated on k objectives. Values are stored
/// row-per-solution in native orientation.
template <typename Scalar = double>
class CandidateSet {
 public:
  CandidateSet(std::vector<ObjectiveSpec<Scalar>> specs, std::vector<std::string> ids, Matrix<Scalar> values)
      : specs_(std::move(specs)), ids_(std::move(ids)), values_(std::move(values)) {
    validate_specs(specs_);
    if (ids_.empty()) {
      throw InputError("candidate set is empty");
    }
    if (values_.rows() != static_cast<Eigen::Index>(ids_.size()) ||
        values_.cols() != static_cast<Eigen::Index>(specs_.size())) {
      throw InputError("candidate value matrix is " + std::to_string(values_.rows()) + "x" +
                       std::to_string(values_.cols()) + ", expected " + std::to_string(ids_.size()) + "x" +
                       std::to_string(specs_.size()));
    }
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (ids_[i].empty()) {
        throw InputError("solution with empty id at position " + std::to_string(i));
      }
      if (!index_.emplace(ids_[i], i).second) {
        throw InputError("duplicate solution id '" + ids_[i] + "'");
      }
      if (!values_.row(static_cast<Eigen::Index>(i)).allFinite()) {
        throw InputError("solution '" + ids_[i] + "' has a non-finite value");
      }
    }
  }

  CandidateSet(std::vector<ObjectiveSpec<Scalar>> specs, const std::vector<SolutionPoint<Scalar>> &points)
      : CandidateSet(std::move(specs), collect_ids(points), stack(points)) {}

  std::size_t size() const { return ids_.size(); }
  std::size_t objectives() const { return specs_.size(); }
  const std::vector<ObjectiveSpec<Scalar>> &specs() const { return specs_; }
  const std::vector<std::string> &ids() const { return ids_; }
  const Matrix<Scalar> &values() const { return values_; }

  auto point(std::size_t i) const { return values_.row(static_cast<Eigen::Index>(i)).transpose(); }

  SolutionPoint<Scalar> solution(std::size_t i) const { return {ids_[i], point(i)}; }

  std::optional<std::size_t> index_of(const std::string &id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// All rows in minimization orientation.
  Matrix<Scalar> oriented() const { return values_ * orientation_signs(specs_).asDiagonal(); }

  CandidateSet with_values(Matrix<Scalar> values) const { return CandidateSet(specs_, ids_, std::move(values)); }

  CandidateSet subset(const std::vector<std::size_t> &rows) const {
    std::vector<std::string> ids;
    Matrix<Scalar> v(static_cast<Eigen::Index>(rows.size()), values_.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      ids.push_back(ids_[rows[r]]);
      v.row(static_cast<Eigen::Index>(r)) = values_.row(static_cast<Eigen::Index>(rows[r]));
    }
    return CandidateSet(specs_, std::move(ids), std::move(v));
  }

  bool operator==(const CandidateSet &o) const {
    return specs_ == o.specs_ && ids_ == o.ids_ && values_ == o.values_;
  }

 private:
  static std::vector<std::string> collect_ids(const std::vector<SolutionPoint<Scalar>> &points) {
    std::vector<std::string> ids;
    ids.reserve(points.size());
    for (const auto &p : points) ids.push_back(p.id);
    return ids;
  }

  static Matrix<Scalar> stack(const std::vector<SolutionPoint<Scalar>> &points) {
    if (points.empty()) return Matrix<Scalar>(0, 0);
    const auto k = points.front().values.size();
    Matrix<Scalar> v(static_cast<Eigen::Index>(points.size()), k);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].values.size() != k) {
        throw InputError("solution '" + points[i].id + "' has inconsistent vector length");
      }
      v.row(static_cast<Eigen::Index>(i)) = points[i].values.transpose();
    }
    return v;
  }

  std::vector<ObjectiveSpec<Scalar>> specs_;
  std::vector<std::string> ids_;
  Matrix<Scalar> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Per-sample (query, user) objective vectors behind one solution's
/// aggregate point. Rows of `values` align with `sample_ids`.
template <typename Scalar = double>
struct SamplePopulation {
  std::string solution_id;
  std::vector<std::string> sample_ids;
  Matrix<Scalar> values;

  std::size_t size() const { return sample_ids.size(); }
  bool operator==(const SamplePopulation &) const = default;
};

/// Populations for every solution of one analysis, keyed by solution id.
/// All populations share one sample_id sequence.
template <typename Scalar = double>
class PopulationSet {
 public:
  PopulationSet() = default;

  explicit PopulationSet(std::vector<SamplePopulation<Scalar>> pops) {
    for (auto &p : pops) {
      add(std::move(p));
    }
  }

  void add(SamplePopulation<Scalar> pop) {
    if (pop.sample_ids.empty()) {
      throw InputError("population of '" + pop.solution_id + "' is empty");
    }
    if (pop.values.rows() != static_cast<Eigen::Index>(pop.sample_ids.size())) {
      throw InputError("population of '" + pop.solution_id + "' has mismatched row count");
    }
    if (!pop.values.allFinite()) {
      throw InputError("population of '" + pop.solution_id + "' has a non-finite value");
    }
    std::set<std::string> unique(pop.sample_ids.begin(), pop.sample_ids.end());
    if (unique.size() != pop.sample_ids.size()) {
      throw InputError("population of '" + pop.solution_id + "' repeats a sample_id");
    }
    if (!pops_.empty()) {
      const auto &ref = pops_.begin()->second;
      if (pop.values.cols() != ref.values.cols()) {
        throw InputError("population of '" + pop.solution_id + "' has a different objective count");
      }
      if (pop.sample_ids != ref.sample_ids) {
        throw InputError("population of '" + pop.solution_id + "' does not share the sample_id sequence of '" +
                         ref.solution_id + "'");
      }
    }
    auto id = pop.solution_id;
    if (!pops_.emplace(id, std::move(pop)).second) {
      throw InputError("duplicate population for '" + id + "'");
    }
  }

  bool empty() const { return pops_.empty(); }
  std::size_t size() const { return pops_.size(); }

  const SamplePopulation<Scalar> &at(const std::string &solution_id) const {
    auto it = pops_.find(solution_id);
    if (it == pops_.end()) {
      throw InputError("no sample population for solution '" + solution_id + "'");
    }
    return it->second;
  }

  bool contains(const std::string &solution_id) const { return pops_.count(solution_id) != 0; }

  const std::vector<std::string> &sample_ids() const {
    static const std::vector<std::string> none;
    return pops_.empty() ? none : pops_.begin()->second.sample_ids;
  }

  const std::map<std::string, SamplePopulation<Scalar>> &all() const { return pops_; }

  bool operator==(const PopulationSet &) const = default;

 private:
  std::map<std::string, SamplePopulation<Scalar>> pops_;
};

/// Either one utopia vector shared by all samples, or one generalized utopia
/// vector per sample_id.
template <typename Scalar = double>
class UtopiaAssignment {
 public:
  static UtopiaAssignment global(Vector<Scalar> v) {
    if (!v.allFinite()) throw InputError("utopia vector has a non-finite component");
    UtopiaAssignment u;
    u.global_ = std::move(v);
    return u;
  }

  static UtopiaAssignment per_sample(std::map<std::string, Vector<Scalar>> rows) {
    if (rows.empty()) throw InputError("per-sample utopia table is empty");
    const auto k = rows.begin()->second.size();
    for (const auto &[id, v] : rows) {
      if (v.size() != k) throw InputError("utopia for sample '" + id + "' has inconsistent length");
      if (!v.allFinite()) throw InputError("utopia for sample '" + id + "' has a non-finite component");
    }
    UtopiaAssignment u;
    u.rows_ = std::move(rows);
    return u;
  }

  bool is_global() const { return global_.has_value(); }
  const Vector<Scalar> &global_vector() const { return *global_; }
  const std::map<std::string, Vector<Scalar>> &rows() const { return rows_; }

  Eigen::Index dimension() const { return global_ ? global_->size() : rows_.begin()->second.size(); }

  const Vector<Scalar> &for_sample(const std::string &sample_id) const {
    if (global_) return *global_;
    auto it = rows_.find(sample_id);
    if (it == rows_.end()) {
      throw InputError("no utopia point for sample '" + sample_id + "'");
    }
    return it->second;
  }

  /// Applies `f` to every stored vector.
  template <typename F>
  UtopiaAssignment map(F &&f) const {
    if (global_) return global(f(*global_));
    std::map<std::string, Vector<Scalar>> out;
    for (const auto &[id, v] : rows_) out.emplace(id, f(v));
    return per_sample(std::move(out));
  }

  bool operator==(const UtopiaAssignment &) const = default;

 private:
  UtopiaAssignment() = default;
  std::optional<Vector<Scalar>> global_;
  std::map<std::string, Vector<Scalar>> rows_;
};

/// Per-objective (min, max) of a min-max normalization, reusable on
/// populations and utopia vectors expressed in the same native units.
template <typename Scalar = double>
struct MinMaxTransform {
  Vector<Scalar> lo;
  Vector<Scalar> hi;
  std::vector<bool> constant;

  bool any_constant() const { return std::find(constant.begin(), constant.end(), true) != constant.end(); }

  template <typename Derived>
  Vector<Scalar> apply(const Eigen::MatrixBase<Derived> &v) const {
    Vector<Scalar> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      out(i) = constant[static_cast<std::size_t>(i)] ? Scalar(0) : (v(i) - lo(i)) / (hi(i) - lo(i));
    }
    return out;
  }

  /// Row-wise application to an (n x k) matrix.
  Matrix<Scalar> apply_rows(const Matrix<Scalar> &m) const {
    Matrix<Scalar> out(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out.row(r) = apply(m.row(r).transpose()).transpose();
    }
    return out;
  }
};

template <typename Derived>
MinMaxTransform<typename Derived::Scalar> fit_min_max(const Eigen::MatrixBase<Derived> &values) {
  using Scalar = typename Derived::Scalar;
  if (values.rows() == 0) throw InputError("cannot fit normalization on zero rows");
  MinMaxTransform<Scalar> t;
  t.lo = values.colwise().minCoeff().transpose();
  t.hi = values.colwise().maxCoeff().transpose();
  t.constant.resize(static_cast<std::size_t>(values.cols()));
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    t.constant[static_cast<std::size_t>(c)] = !(t.hi(c) > t.lo(c));
  }
  return t;
}

template <typename Scalar>
std::pair<CandidateSet<Scalar>, MinMaxTransform<Scalar>> min_max_normalize(const CandidateSet<Scalar> &set) {
  auto t = fit_min_max(set.values());
  return {set.with_values(t.apply_rows(set.values())), std::move(t)};
}

}  // namespace frontsel

#endif  // FRONTSEL_CORE_HPP
