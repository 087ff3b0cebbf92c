#ifndef FRONTSEL_STRATEGIES_HPP
#define FRONTSEL_STRATEGIES_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "frontsel/core.hpp"
#include "frontsel/dominance.hpp"

namespace frontsel {

enum class Strategy { AKP, UKP, HV, ED, WM, PDU, CPDU };

inline const std::vector<Strategy> &all_strategies() {
  static const std::vector<Strategy> all{Strategy::PDU, Strategy::CPDU, Strategy::HV, Strategy::UKP,
                                         Strategy::AKP, Strategy::ED,   Strategy::WM};
  return all;
}

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::AKP: return "AKP";
    case Strategy::UKP: return "UKP";
    case Strategy::HV: return "HV";
    case Strategy::ED: return "ED";
    case Strategy::WM: return "WM";
    case Strategy::PDU: return "PDU";
    case Strategy::CPDU: return "CPDU";
  }
  return "?";
}

/// Case-insensitive; accepts the hyphenated spellings too ("u-kp", "c-pdu").
inline Strategy parse_strategy(const std::string &name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    key += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  for (auto s : all_strategies()) {
    if (to_string(s) == key) return s;
  }
  throw InputError("unknown strategy '" + name + "'");
}

enum class Sense { Minimize, Maximize };

inline Sense sense_of(Strategy s) {
  switch (s) {
    case Strategy::ED:
    case Strategy::PDU:
    case Strategy::CPDU: return Sense::Minimize;
    default: return Sense::Maximize;
  }
}

enum class DistanceKind { Euclidean, Manhattan, Chebyshev };

inline std::string to_string(DistanceKind d) {
  switch (d) {
    case DistanceKind::Euclidean: return "euclidean";
    case DistanceKind::Manhattan: return "manhattan";
    case DistanceKind::Chebyshev: return "chebyshev";
  }
  return "?";
}

inline DistanceKind parse_distance(const std::string &name) {
  for (auto d : {DistanceKind::Euclidean, DistanceKind::Manhattan, DistanceKind::Chebyshev}) {
    if (to_string(d) == name) return d;
  }
  throw InputError("unknown distance '" + name + "' (expected euclidean, manhattan or chebyshev)");
}

template <typename Scalar = double>
struct StrategyParams {
  std::optional<UtopiaAssignment<Scalar>> utopia;
  std::optional<Vector<Scalar>> reference;
  std::optional<Vector<Scalar>> weights;
  std::size_t weight_samples = 1000;
  std::uint64_t seed = 42;
  DistanceKind distance = DistanceKind::Euclidean;
  bool normalize_first = false;
  // Fit the min-max transform on frontier members only instead of all candidates.
  bool fit_on_frontier = false;
  // Score and select among every candidate, dominated ones included.
  bool evaluate_all = false;
};

template <typename Scalar = double>
struct SelectionResult {
  Strategy strategy = Strategy::ED;
  std::string chosen_id;
  std::map<std::string, Scalar> scores;
  std::vector<std::string> tie_ids;
  std::vector<std::pair<std::string, std::string>> params_echo;

  Scalar chosen_score() const { return scores.at(chosen_id); }
};

// ---------------------------------------------------------------------------
// Per-solution scores
// ---------------------------------------------------------------------------

template <typename DerivedA, typename DerivedB>
void check_same_length(const Eigen::MatrixBase<DerivedA> &a, const Eigen::MatrixBase<DerivedB> &b,
                       const char *what) {
  if (a.size() != b.size()) {
    throw InputError(std::string(what) + ": length " + std::to_string(b.size()) + " does not match " +
                     std::to_string(a.size()) + " objectives");
  }
}

/// Euclidean distance to the utopia point. Orientation does not matter.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar score_ed(const Eigen::MatrixBase<DerivedA> &point, const Eigen::MatrixBase<DerivedB> &utopia) {
  check_same_length(point, utopia, "utopia");
  return (point - utopia).norm();
}

/// Sign-oriented weighted mean, (1/k) sum_i w_i s_i f_i with s_i = +1 for
/// maximized and -1 for minimized objectives. Higher is better.
template <typename DerivedA, typename DerivedB, typename Scalar = typename DerivedA::Scalar>
Scalar score_wm(const Eigen::MatrixBase<DerivedA> &point, const Eigen::MatrixBase<DerivedB> &weights,
                const std::vector<ObjectiveSpec<Scalar>> &specs) {
  check_same_length(point, weights, "weights");
  check_length(point, specs, "solution");
  const Vector<Scalar> gain = -orientation_signs(specs);
  return weights.cwiseProduct(gain).dot(point) / static_cast<Scalar>(point.size());
}

/// Volume of the box between the solution and the reference point, in
/// oriented space. Zero when the solution fails to strictly improve the
/// reference on some objective.
template <typename DerivedA, typename DerivedB, typename Scalar = typename DerivedA::Scalar>
Scalar score_hv(const Eigen::MatrixBase<DerivedA> &point, const Eigen::MatrixBase<DerivedB> &reference,
                const std::vector<ObjectiveSpec<Scalar>> &specs) {
  check_same_length(point, reference, "reference");
  const Vector<Scalar> x = orient(point, specs);
  const Vector<Scalar> r = orient(reference, specs);
  return (r - x).cwiseMax(Scalar(0)).prod();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar distance(const Eigen::MatrixBase<DerivedA> &a, const Eigen::MatrixBase<DerivedB> &b,
                                   DistanceKind kind) {
  switch (kind) {
    case DistanceKind::Manhattan: return (a - b).template lpNorm<1>();
    case DistanceKind::Chebyshev: return (a - b).template lpNorm<Eigen::Infinity>();
    case DistanceKind::Euclidean: break;
  }
  return (a - b).norm();
}

/// Score of a population sitting exactly on its utopia points.
template <typename Scalar = double>
constexpr Scalar pdu_perfect_score() {
  return std::numeric_limits<Scalar>::lowest();
}

/// Population distance from utopia: ln of the summed squared per-sample
/// distances. Samples are summed in ascending sample_id order so the result
/// does not depend on row order.
template <typename Scalar>
Scalar score_pdu(const SamplePopulation<Scalar> &population, const UtopiaAssignment<Scalar> &utopia,
                 DistanceKind kind = DistanceKind::Euclidean) {
  if (population.sample_ids.empty()) {
    throw InputError("population of '" + population.solution_id + "' is empty");
  }
  if (utopia.dimension() != population.values.cols()) {
    throw InputError("utopia dimension does not match population of '" + population.solution_id + "'");
  }
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return population.sample_ids[a] < population.sample_ids[b]; });
  Scalar sum = 0;
  for (auto j : order) {
    const auto &target = utopia.for_sample(population.sample_ids[j]);
    const auto x = population.values.row(static_cast<Eigen::Index>(j)).transpose();
    if (kind == DistanceKind::Euclidean) {
      sum += (x - target).squaredNorm();
    } else {
      const Scalar e = distance(x, target, kind);
      sum += e * e;
    }
  }
  if (sum == Scalar(0)) return pdu_perfect_score<Scalar>();
  return std::log(sum);
}

// ---------------------------------------------------------------------------
// Selection helpers
// ---------------------------------------------------------------------------

/// Every candidate as an evaluation scope, ascending id.
template <typename Scalar>
Frontier all_members(const CandidateSet<Scalar> &set) {
  return detail::frontier_from_rows(set, detail::all_rows(set));
}

namespace detail {

/// Picks the best score over members listed in ascending id order; the
/// first best is therefore the lowest id.
template <typename Scalar>
void settle(SelectionResult<Scalar> &result, const Frontier &members, const std::vector<Scalar> &scores) {
  if (members.size() == 0) {
    throw DomainError("no solutions to select from");
  }
  const bool maximize = sense_of(result.strategy) == Sense::Maximize;
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (maximize ? scores[i] > scores[best] : scores[i] < scores[best]) best = i;
  }
  result.chosen_id = members.member_ids[best];
  result.tie_ids.clear();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    result.scores[members.member_ids[i]] = scores[i];
    if (scores[i] == scores[best]) result.tie_ids.push_back(members.member_ids[i]);
  }
}

template <typename Scalar>
std::string join(const Vector<Scalar> &v) {
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ';';
    os << v(i);
  }
  return os.str();
}

template <typename Scalar>
SelectionResult<Scalar> make_result(Strategy s) {
  SelectionResult<Scalar> r;
  r.strategy = s;
  return r;
}

}  // namespace detail

template <typename Scalar>
SelectionResult<Scalar> select_ed(const CandidateSet<Scalar> &set, const Frontier &members,
                                  const Vector<Scalar> &utopia) {
  check_length(utopia, set.specs(), "utopia");
  auto result = detail::make_result<Scalar>(Strategy::ED);
  std::vector<Scalar> scores;
  for (auto r : members.rows) scores.push_back(score_ed(set.point(r), utopia));
  detail::settle(result, members, scores);
  return result;
}

template <typename Scalar>
SelectionResult<Scalar> select_wm(const CandidateSet<Scalar> &set, const Frontier &members,
                                  const Vector<Scalar> &weights) {
  check_length(weights, set.specs(), "weights");
  auto result = detail::make_result<Scalar>(Strategy::WM);
  std::vector<Scalar> scores;
  for (auto r : members.rows) scores.push_back(score_wm(set.point(r), weights, set.specs()));
  detail::settle(result, members, scores);
  return result;
}

template <typename Scalar>
SelectionResult<Scalar> select_hv(const CandidateSet<Scalar> &set, const Frontier &members,
                                  const Vector<Scalar> &reference) {
  check_length(reference, set.specs(), "reference");
  auto result = detail::make_result<Scalar>(Strategy::HV);
  std::vector<Scalar> scores;
  for (auto r : members.rows) scores.push_back(score_hv(set.point(r), reference, set.specs()));
  detail::settle(result, members, scores);
  return result;
}

template <typename Scalar>
SelectionResult<Scalar> select_pdu(const CandidateSet<Scalar> &set, const Frontier &members,
                                   const PopulationSet<Scalar> &populations, const UtopiaAssignment<Scalar> &utopia,
                                   DistanceKind kind, Strategy tag = Strategy::PDU) {
  if (static_cast<std::size_t>(utopia.dimension()) != set.objectives()) {
    throw InputError("utopia has length " + std::to_string(utopia.dimension()) + ", expected " +
                     std::to_string(set.objectives()));
  }
  auto result = detail::make_result<Scalar>(tag);
  std::vector<Scalar> scores;
  for (const auto &id : members.member_ids) scores.push_back(score_pdu(populations.at(id), utopia, kind));
  detail::settle(result, members, scores);
  return result;
}

/// Reflex angle, in degrees, at each of the given oriented 2-D points.
/// Points are visited by ascending first objective; a missing left neighbour
/// is replaced by a vertical unit segment, a missing right neighbour by a
/// horizontal one. The angle is swept counter-clockwise from the left
/// segment to the right one, i.e. on the side facing away from the dominated
/// region, so a sharp convex knee yields a large angle and a straight run
/// yields 180. Coincident points share one angle.
template <typename Scalar>
std::vector<Scalar> reflex_angles(const Matrix<Scalar> &oriented) {
  if (oriented.cols() != 2) {
    throw UnsupportedError("angle-based knee point needs exactly 2 objectives; it becomes impractical beyond two");
  }
  const auto n = static_cast<std::size_t>(oriented.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto at = [&](std::size_t i) -> Eigen::Matrix<Scalar, 2, 1> {
    return oriented.row(static_cast<Eigen::Index>(i)).transpose();
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto pa = at(a), pb = at(b);
    if (pa(0) != pb(0)) return pa(0) < pb(0);
    return pa(1) > pb(1);
  });

  // group coincident points
  std::vector<std::vector<std::size_t>> groups;
  for (auto i : order) {
    if (!groups.empty() && at(groups.back().front()) == at(i)) {
      groups.back().push_back(i);
    } else {
      groups.push_back({i});
    }
  }

  std::vector<Scalar> angles(n);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const Eigen::Matrix<Scalar, 2, 1> b = at(groups[g].front());
    const Eigen::Matrix<Scalar, 2, 1> to_left =
        g > 0 ? Eigen::Matrix<Scalar, 2, 1>(at(groups[g - 1].front()) - b) : Eigen::Matrix<Scalar, 2, 1>(0, 1);
    const Eigen::Matrix<Scalar, 2, 1> to_right = g + 1 < groups.size()
                                                     ? Eigen::Matrix<Scalar, 2, 1>(at(groups[g + 1].front()) - b)
                                                     : Eigen::Matrix<Scalar, 2, 1>(1, 0);
    const Scalar cross = to_left(0) * to_right(1) - to_left(1) * to_right(0);
    const Scalar dot = to_left.dot(to_right);
    Scalar a = std::atan2(cross, dot);
    if (a < 0) a += 2 * std::numbers::pi_v<Scalar>;
    a *= Scalar(180) / std::numbers::pi_v<Scalar>;
    for (auto i : groups[g]) angles[i] = a;
  }
  return angles;
}

/// Angle-based knee point (A-KP), two objectives only.
template <typename Scalar>
SelectionResult<Scalar> select_akp(const CandidateSet<Scalar> &set, const Frontier &members) {
  if (set.objectives() != 2) {
    throw UnsupportedError("strategy AKP supports exactly 2 objectives, got " + std::to_string(set.objectives()));
  }
  const Matrix<Scalar> o = set.oriented();
  Matrix<Scalar> pts(static_cast<Eigen::Index>(members.size()), 2);
  for (std::size_t i = 0; i < members.size(); ++i) {
    pts.row(static_cast<Eigen::Index>(i)) = o.row(static_cast<Eigen::Index>(members.rows[i]));
  }
  auto result = detail::make_result<Scalar>(Strategy::AKP);
  detail::settle(result, members, reflex_angles(pts));
  return result;
}

/// m weight vectors drawn uniformly from the (k-1)-simplex: i.i.d. unit
/// exponentials normalized by their sum. Deterministic per seed.
template <typename Scalar = double>
Matrix<Scalar> sample_weight_vectors(std::size_t k, std::size_t m, std::uint64_t seed) {
  if (k < 2) throw InputError("weight sampling needs at least 2 objectives");
  if (m < 1) throw InputError("weight sample count must be positive");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  Matrix<Scalar> w(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    double total = 0;
    do {
      total = 0;
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        const double e = expo(rng);
        w(r, c) = static_cast<Scalar>(e);
        total += e;
      }
    } while (!(total > 0));
    w.row(r) /= static_cast<Scalar>(total);
  }
  return w;
}

/// Utility-based knee point (U-KP). Each weight draw gives one win to the
/// member minimizing the weighted sum of oriented objectives, the lowest id
/// on ties. Scores are win counts. Draw columns are bound to objectives in
/// name order, so reordering the objectives leaves the outcome unchanged.
template <typename Scalar>
SelectionResult<Scalar> select_ukp(const CandidateSet<Scalar> &set, const Frontier &members,
                                   std::size_t weight_samples, std::uint64_t seed) {
  const Matrix<Scalar> draws = sample_weight_vectors<Scalar>(set.objectives(), weight_samples, seed);
  std::vector<std::size_t> by_name(set.objectives());
  std::iota(by_name.begin(), by_name.end(), 0);
  std::sort(by_name.begin(), by_name.end(),
            [&](std::size_t a, std::size_t b) { return set.specs()[a].name < set.specs()[b].name; });
  Matrix<Scalar> weights(draws.rows(), draws.cols());
  for (std::size_t r = 0; r < by_name.size(); ++r) {
    weights.col(static_cast<Eigen::Index>(by_name[r])) = draws.col(static_cast<Eigen::Index>(r));
  }
  const Matrix<Scalar> o = set.oriented();
  Matrix<Scalar> pts(static_cast<Eigen::Index>(members.size()), o.cols());
  for (std::size_t i = 0; i < members.size(); ++i) {
    pts.row(static_cast<Eigen::Index>(i)) = o.row(static_cast<Eigen::Index>(members.rows[i]));
  }
  std::vector<std::size_t> wins(members.size(), 0);
  if (members.size() > 0) {
    // utility(i, d) for member i under draw d
    const Matrix<Scalar> utility = pts * weights.transpose();
    for (Eigen::Index d = 0; d < utility.cols(); ++d) {
      Eigen::Index best = 0;
      for (Eigen::Index i = 1; i < utility.rows(); ++i) {
        if (utility(i, d) < utility(best, d)) best = i;
      }
      ++wins[static_cast<std::size_t>(best)];
    }
  }
  std::vector<Scalar> scores(wins.begin(), wins.end());
  auto result = detail::make_result<Scalar>(Strategy::UKP);
  detail::settle(result, members, scores);
  return result;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

namespace detail {

template <typename Scalar>
std::vector<std::pair<std::string, std::string>> echo(Strategy s, const StrategyParams<Scalar> &p,
                                                      std::size_t objectives) {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("strategy", to_string(s));
  std::string utopia;
  if (p.utopia) {
    utopia = p.utopia->is_global() ? join(p.utopia->global_vector())
                                   : "per-sample(" + std::to_string(p.utopia->rows().size()) + ")";
  }
  e.emplace_back("utopia", utopia);
  e.emplace_back("reference", p.reference ? join(*p.reference) : "");
  e.emplace_back("weights", p.weights ? join(*p.weights) : "");
  e.emplace_back("seed", std::to_string(p.seed));
  e.emplace_back("weight_samples", std::to_string(p.weight_samples));
  e.emplace_back("distance", to_string(p.distance));
  e.emplace_back("normalize", p.normalize_first ? "true" : "false");
  e.emplace_back("fit_on_frontier", p.fit_on_frontier ? "true" : "false");
  e.emplace_back("scope", p.evaluate_all ? "all" : "frontier");
  e.emplace_back("objectives", std::to_string(objectives));
  return e;
}

template <typename Scalar>
void require(bool present, Strategy s, const char *param) {
  if (!present) {
    throw InputError("strategy " + to_string(s) + " requires parameter '" + param + "'");
  }
}

template <typename Scalar>
void validate(Strategy s, const CandidateSet<Scalar> &set, const PopulationSet<Scalar> *populations,
              const StrategyParams<Scalar> &p, const Frontier &members) {
  const auto k = set.objectives();
  switch (s) {
    case Strategy::ED:
      require<Scalar>(p.utopia.has_value(), s, "utopia");
      if (!p.utopia->is_global()) throw InputError("strategy ED requires a global utopia vector");
      check_length(p.utopia->global_vector(), set.specs(), "utopia");
      break;
    case Strategy::WM:
      require<Scalar>(p.weights.has_value(), s, "weights");
      check_length(*p.weights, set.specs(), "weights");
      if (!p.weights->allFinite()) throw InputError("weights must be finite");
      break;
    case Strategy::HV:
      require<Scalar>(p.reference.has_value(), s, "reference");
      check_length(*p.reference, set.specs(), "reference");
      if (!p.reference->allFinite()) throw InputError("reference must be finite");
      break;
    case Strategy::AKP:
      if (k != 2) {
        throw UnsupportedError("strategy AKP supports exactly 2 objectives, got " + std::to_string(k));
      }
      break;
    case Strategy::UKP:
      if (p.weight_samples < 1) throw InputError("weight_samples must be positive");
      if (k < 2) throw InputError("strategy UKP needs at least 2 objectives");
      break;
    case Strategy::PDU:
    case Strategy::CPDU: {
      require<Scalar>(populations != nullptr && !populations->empty(), s, "samples");
      require<Scalar>(p.utopia.has_value(), s, "utopia");
      if (static_cast<std::size_t>(p.utopia->dimension()) != k) {
        throw InputError("utopia has length " + std::to_string(p.utopia->dimension()) + ", expected " +
                         std::to_string(k));
      }
      for (const auto &id : members.member_ids) {
        const auto &pop = populations->at(id);
        if (static_cast<std::size_t>(pop.values.cols()) != k) {
          throw InputError("population of '" + id + "' has " + std::to_string(pop.values.cols()) +
                           " objectives, expected " + std::to_string(k));
        }
      }
      if (!p.utopia->is_global()) {
        const auto &samples = populations->sample_ids();
        std::set<std::string> sample_set(samples.begin(), samples.end());
        for (const auto &sid : samples) {
          if (!p.utopia->rows().count(sid)) throw InputError("no utopia point for sample '" + sid + "'");
        }
        for (const auto &[sid, v] : p.utopia->rows()) {
          if (!sample_set.count(sid)) throw InputError("utopia table has unknown sample '" + sid + "'");
        }
      }
      break;
    }
  }
}

}  // namespace detail

/// Extracts the frontier, optionally normalizes (carrying populations,
/// utopia and reference through the same transform), and applies one
/// strategy over the frontier members.
template <typename Scalar>
SelectionResult<Scalar> select(Strategy strategy, const CandidateSet<Scalar> &set,
                               const std::type_identity_t<PopulationSet<Scalar>> *populations,
                               const std::type_identity_t<StrategyParams<Scalar>> &params) {
  const Frontier frontier = pareto_frontier(set);
  const Frontier members = params.evaluate_all ? all_members(set) : frontier;
  if (members.size() == 0) throw DomainError("frontier is empty");
  detail::validate(strategy, set, populations, params, members);

  const CandidateSet<Scalar> *work = &set;
  std::optional<CandidateSet<Scalar>> normalized;
  std::optional<UtopiaAssignment<Scalar>> utopia = params.utopia;
  std::optional<Vector<Scalar>> reference = params.reference;
  std::optional<PopulationSet<Scalar>> mapped_pops;
  if (params.normalize_first) {
    const auto t = params.fit_on_frontier ? fit_min_max(set.subset(frontier.rows).values()) : fit_min_max(set.values());
    normalized.emplace(set.with_values(t.apply_rows(set.values())));
    work = &*normalized;
    if (utopia) utopia = utopia->map([&](const Vector<Scalar> &v) { return t.apply(v); });
    if (reference) reference = t.apply(*reference);
    if (populations && (strategy == Strategy::PDU || strategy == Strategy::CPDU)) {
      PopulationSet<Scalar> out;
      for (const auto &id : members.member_ids) {
        auto pop = populations->at(id);
        pop.values = t.apply_rows(pop.values);
        out.add(std::move(pop));
      }
      mapped_pops.emplace(std::move(out));
      populations = &*mapped_pops;
    }
  }

  SelectionResult<Scalar> result;
  switch (strategy) {
    case Strategy::ED: result = select_ed(*work, members, utopia->global_vector()); break;
    case Strategy::WM: result = select_wm(*work, members, *params.weights); break;
    case Strategy::HV: result = select_hv(*work, members, *reference); break;
    case Strategy::AKP: result = select_akp(*work, members); break;
    case Strategy::UKP: result = select_ukp(*work, members, params.weight_samples, params.seed); break;
    case Strategy::PDU:
    case Strategy::CPDU:
      result = select_pdu(*work, members, *populations, *utopia, params.distance, strategy);
      break;
  }
  result.params_echo = detail::echo(strategy, params, set.objectives());
  return result;
}

}  // namespace frontsel

#endif  // FRONTSEL_STRATEGIES_HPP
