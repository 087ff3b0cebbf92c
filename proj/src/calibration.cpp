#include "frontsel/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "frontsel/errors.hpp"

namespace frontsel {

namespace {

void check_log(const InteractionLog &log) {
  if (log.records.empty()) throw InputError("interaction log is empty");
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    if (log.records[i].user_id.empty() || log.records[i].item_id.empty()) {
      throw InputError("interaction record " + std::to_string(i) + " has an empty user or item id");
    }
  }
}

double aggregate(const std::vector<double> &values, double alpha, double beta, AnchorAggregation agg) {
  if (agg == AnchorAggregation::Mean) return mean_std_aggregate(values, 1.0, 0.0);
  return mean_std_aggregate(values, alpha, beta);
}

}  // namespace

double mean_std_aggregate(std::span<const double> values, double alpha, double beta) {
  if (values.empty()) throw InputError("cannot aggregate an empty popularity set");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return alpha * mean + beta * std::sqrt(ss / n);
}

std::map<std::string, std::size_t> item_popularity(const InteractionLog &log) {
  check_log(log);
  std::map<std::string, std::size_t> pops;
  for (const auto &r : log.records) ++pops[r.item_id];
  return pops;
}

std::map<std::string, double> user_popularity(const InteractionLog &log,
                                              const std::map<std::string, std::size_t> &pops, double alpha,
                                              double beta) {
  check_log(log);
  std::map<std::string, std::vector<double>> gamma;
  for (const auto &r : log.records) {
    auto it = pops.find(r.item_id);
    if (it == pops.end()) throw InputError("item '" + r.item_id + "' has no popularity count");
    gamma[r.user_id].push_back(static_cast<double>(it->second));
  }
  std::map<std::string, double> out;
  for (const auto &[user, g] : gamma) out.emplace(user, mean_std_aggregate(g, alpha, beta));
  return out;
}

std::pair<double, double> tail_head_anchors(const std::map<std::string, std::size_t> &pops, std::size_t T,
                                            double alpha, double beta, AnchorAggregation agg) {
  if (T == 0) throw InputError("anchor set size T must be positive");
  if (T > pops.size()) {
    throw InputError("anchor set size T=" + std::to_string(T) + " exceeds the " + std::to_string(pops.size()) +
                     " distinct items");
  }
  // map iteration is ascending item id, and stable_sort keeps that order among equal counts
  std::vector<std::pair<std::string, std::size_t>> items(pops.begin(), pops.end());
  auto by_count_asc = items;
  std::stable_sort(by_count_asc.begin(), by_count_asc.end(),
                   [](const auto &a, const auto &b) { return a.second < b.second; });
  auto by_count_desc = items;
  std::stable_sort(by_count_desc.begin(), by_count_desc.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });

  std::vector<double> tail, head;
  for (std::size_t i = 0; i < T; ++i) {
    tail.push_back(static_cast<double>(by_count_asc[i].second));
    head.push_back(static_cast<double>(by_count_desc[i].second));
  }
  const double tail_anchor = aggregate(tail, alpha, beta, agg);
  const double head_anchor = aggregate(head, alpha, beta, agg);
  if (!(head_anchor > tail_anchor)) {
    throw DegenerateCalibrationError("popularity anchors collapse: head " + std::to_string(head_anchor) +
                                     " is not above tail " + std::to_string(tail_anchor));
  }
  return {tail_anchor, head_anchor};
}

double aplt_utopia(double pop_u, double tail, double head, bool *clamped) {
  if (!(head > tail)) {
    throw InputError("head anchor must exceed tail anchor");
  }
  const double raw = (head - pop_u) / (head - tail);
  const double v = std::clamp(raw, 0.0, 1.0);
  if (clamped) *clamped = v != raw;
  return v;
}

std::size_t default_anchor_size(const InteractionLog &log) {
  check_log(log);
  std::set<std::pair<std::string, std::string>> distinct;
  std::set<std::string> users;
  for (const auto &r : log.records) {
    distinct.emplace(r.user_id, r.item_id);
    users.insert(r.user_id);
  }
  const double mean = static_cast<double>(distinct.size()) / static_cast<double>(users.size());
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(mean)));
}

UtopiaTable calibrate(const InteractionLog &log, const CalibrationParams &params) {
  const auto pops = item_popularity(log);
  const auto users = user_popularity(log, pops, params.alpha, params.beta);

  UtopiaTable table;
  table.T = params.T_override ? *params.T_override : default_anchor_size(log);
  std::tie(table.tail_anchor, table.head_anchor) =
      tail_head_anchors(pops, table.T, params.alpha, params.beta, params.anchor_aggregation);

  double total = 0;
  for (const auto &[user, pop_u] : users) {
    bool clamped = false;
    const double f2 = aplt_utopia(pop_u, table.tail_anchor, table.head_anchor, &clamped);
    if (clamped) ++table.clamp_count;
    total += f2;
    Vector<double> row(2);
    row << params.accuracy_utopia, f2;
    table.rows.emplace(user, std::move(row));
  }
  table.mean_tail_utopia = total / static_cast<double>(table.rows.size());
  return table;
}

}  // namespace frontsel
