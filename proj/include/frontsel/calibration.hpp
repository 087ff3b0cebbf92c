#ifndef FRONTSEL_CALIBRATION_HPP
#define FRONTSEL_CALIBRATION_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frontsel/core.hpp"

namespace frontsel {

/// One (user, item) transaction. Repeated records count as repeated
/// transactions.
struct Interaction {
  std::string user_id;
  std::string item_id;

  bool operator==(const Interaction &) const = default;
};

struct InteractionLog {
  std::vector<Interaction> records;

  bool operator==(const InteractionLog &) const = default;
};

/// How the tail (least consumed) and head (most consumed) anchor sets are
/// reduced to a scalar.
enum class AnchorAggregation {
  MeanStd,  // alpha * mean + beta * std, the same operator as for users
  Mean,
};

struct CalibrationParams {
  double alpha = 1.0;
  double beta = 1.0;
  std::optional<std::size_t> T_override;
  double accuracy_utopia = 1.0;
  AnchorAggregation anchor_aggregation = AnchorAggregation::MeanStd;
};

struct UtopiaTable {
  /// user_id -> (accuracy utopia, long-tail exposure utopia)
  std::map<std::string, Vector<double>> rows;
  std::size_t T = 0;
  double tail_anchor = 0;
  double head_anchor = 0;
  std::size_t clamp_count = 0;
  double mean_tail_utopia = 0;

  UtopiaAssignment<double> assignment() const { return UtopiaAssignment<double>::per_sample(rows); }
};

/// alpha * mean + beta * population std of `values`. Summation runs over
/// the values in sorted order.
double mean_std_aggregate(std::span<const double> values, double alpha, double beta);

/// Number of transactions per item.
std::map<std::string, std::size_t> item_popularity(const InteractionLog &log);

/// alpha * mean + beta * std of the item popularities a user consumed,
/// counted with multiplicity.
std::map<std::string, double> user_popularity(const InteractionLog &log,
                                              const std::map<std::string, std::size_t> &pops, double alpha,
                                              double beta);

/// Aggregated popularity of the T least consumed and the T most consumed
/// items (ties at the cut broken by ascending item id). Throws
/// DegenerateCalibrationError unless head > tail.
std::pair<double, double> tail_head_anchors(const std::map<std::string, std::size_t> &pops, std::size_t T,
                                            double alpha, double beta,
                                            AnchorAggregation agg = AnchorAggregation::MeanStd);

/// (head - pop_u) / (head - tail), clamped to [0, 1]. `clamped` is set when
/// the raw value fell outside that range.
double aplt_utopia(double pop_u, double tail, double head, bool *clamped = nullptr);

/// Default anchor-set size: the rounded mean number of distinct items per user.
std::size_t default_anchor_size(const InteractionLog &log);

UtopiaTable calibrate(const InteractionLog &log, const CalibrationParams &params = {});

}  // namespace frontsel

#endif  // FRONTSEL_CALIBRATION_HPP
