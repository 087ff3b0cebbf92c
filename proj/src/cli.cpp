#include "frontsel/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <sstream>

#include "frontsel/calibration.hpp"
#include "frontsel/errors.hpp"
#include "frontsel/io.hpp"
#include "frontsel/strategies.hpp"

namespace frontsel::cli {

namespace {

struct InputFlags {
  std::string schema;
  std::string solutions;
};

struct StrategyFlags {
  std::string samples;
  std::string utopia;
  std::string utopia_file;
  std::string reference;
  std::string weights;
  std::uint64_t seed = 42;
  std::size_t weight_samples = 1000;
  std::string distance = "euclidean";
  bool normalize = false;
  bool fit_on_frontier = false;
  std::string scope = "frontier";
};

void add_input_flags(CLI::App *cmd, InputFlags &f) {
  cmd->add_option("--schema", f.schema, "objective schema CSV (name,direction,weight,utopia,reference)")
      ->required();
  cmd->add_option("--solutions", f.solutions, "candidate solutions CSV (id,<objectives...>)")->required();
}

void add_strategy_flags(CLI::App *cmd, StrategyFlags &f) {
  cmd->add_option("--samples", f.samples, "per-sample populations CSV (PDU, CPDU)");
  auto *inline_utopia = cmd->add_option("--utopia", f.utopia, "global utopia point, comma separated");
  auto *file_utopia = cmd->add_option("--utopia-file", f.utopia_file, "utopia CSV (global '*' row or per sample)");
  inline_utopia->excludes(file_utopia);
  cmd->add_option("--reference", f.reference, "hypervolume reference point, comma separated");
  cmd->add_option("--weights", f.weights, "weighted-mean weights, comma separated");
  cmd->add_option("--seed", f.seed, "U-KP weight sampling seed")->capture_default_str();
  cmd->add_option("--weight-samples", f.weight_samples, "U-KP number of weight vectors")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--distance", f.distance, "PDU error function")
      ->check(CLI::IsMember({"euclidean", "manhattan", "chebyshev"}))
      ->capture_default_str();
  cmd->add_flag("--normalize", f.normalize, "min-max normalize objectives before scoring");
  cmd->add_flag("--fit-on-frontier", f.fit_on_frontier, "fit the normalization on frontier members only");
  cmd->add_option("--scope", f.scope, "evaluate frontier members or all candidates")
      ->check(CLI::IsMember({"frontier", "all"}))
      ->capture_default_str();
}

struct Loaded {
  io::Specs specs;
  std::optional<CandidateSet<double>> set;
};

Loaded load_inputs(const InputFlags &f) {
  Loaded l;
  l.specs = io::load_schema(f.schema);
  l.set.emplace(io::load_solutions(f.solutions, l.specs));
  return l;
}

/// A vector from the inline flag, else from the schema column when every
/// objective declares it.
std::optional<Vector<double>> vector_param(const std::string &flag_value, const char *flag, const io::Specs &specs,
                                           std::optional<double> ObjectiveSpec<double>::*column) {
  if (!flag_value.empty()) {
    auto v = io::parse_vector(flag_value, flag);
    if (static_cast<std::size_t>(v.size()) != specs.size()) {
      throw InputError(std::string(flag) + " has " + std::to_string(v.size()) + " components, expected " +
                       std::to_string(specs.size()));
    }
    return v;
  }
  Vector<double> v(static_cast<Eigen::Index>(specs.size()));
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto &c = specs[i].*column;
    if (!c) return std::nullopt;
    v(static_cast<Eigen::Index>(i)) = *c;
  }
  return v;
}

StrategyParams<double> build_params(const StrategyFlags &f, const io::Specs &specs) {
  StrategyParams<double> p;
  if (!f.utopia_file.empty()) {
    p.utopia = io::load_utopia(f.utopia_file, specs);
  } else if (auto u = vector_param(f.utopia, "--utopia", specs, &ObjectiveSpec<double>::utopia)) {
    p.utopia = UtopiaAssignment<double>::global(*u);
  }
  p.reference = vector_param(f.reference, "--reference", specs, &ObjectiveSpec<double>::reference);
  p.weights = vector_param(f.weights, "--weights", specs, &ObjectiveSpec<double>::weight);
  p.seed = f.seed;
  p.weight_samples = f.weight_samples;
  p.distance = parse_distance(f.distance);
  p.normalize_first = f.normalize;
  p.fit_on_frontier = f.fit_on_frontier;
  p.evaluate_all = f.scope == "all";
  return p;
}

/// Fails before any computation when a strategy lacks its inputs.
void check_required(Strategy s, const StrategyFlags &f, const StrategyParams<double> &p, std::size_t k) {
  switch (s) {
    case Strategy::ED:
      if (!p.utopia) throw InputError("strategy ED requires --utopia (or a utopia column in the schema)");
      if (!p.utopia->is_global()) throw InputError("strategy ED requires a global utopia point");
      break;
    case Strategy::HV:
      if (!p.reference) throw InputError("strategy HV requires --reference (or a reference column in the schema)");
      break;
    case Strategy::WM:
      if (!p.weights) throw InputError("strategy WM requires --weights (or a weight column in the schema)");
      break;
    case Strategy::AKP:
      if (k != 2) throw UnsupportedError("strategy AKP supports exactly 2 objectives, got " + std::to_string(k));
      break;
    case Strategy::PDU:
    case Strategy::CPDU:
      if (f.samples.empty()) throw InputError("strategy " + to_string(s) + " requires --samples");
      if (!p.utopia) throw InputError("strategy " + to_string(s) + " requires --utopia or --utopia-file");
      break;
    case Strategy::UKP: break;
  }
}

void warn_constant_columns(const CandidateSet<double> &set, const StrategyParams<double> &p, std::ostream &err) {
  if (!p.normalize_first) return;
  const auto t = fit_min_max(set.values());
  for (std::size_t c = 0; c < t.constant.size(); ++c) {
    if (t.constant[c]) {
      err << "warning: objective '" << set.specs()[c].name << "' is constant; normalized to 0\n";
    }
  }
}

std::vector<Strategy> parse_strategy_list(const std::string &list) {
  std::vector<Strategy> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto s = parse_strategy(item);
    if (std::find(out.begin(), out.end(), s) != out.end()) {
      throw InputError("strategy '" + item + "' listed twice");
    }
    out.push_back(s);
  }
  if (out.empty()) throw InputError("--strategies lists no strategy");
  return out;
}

std::string join_ids(const std::vector<std::string> &ids) {
  std::string s;
  for (const auto &id : ids) s += (s.empty() ? "" : ", ") + id;
  return s;
}

int cmd_frontier(const InputFlags &in, const std::string &out_path, std::ostream &out) {
  const auto l = load_inputs(in);
  const auto frontier = pareto_frontier(*l.set);
  if (frontier.size() == 0) throw DomainError("frontier is empty");
  std::ostringstream csv;
  io::write_frontier(csv, *l.set, frontier);
  if (!out_path.empty()) {
    io::write_file(out_path, csv.str());
  } else {
    out << csv.str();
  }
  out << "frontier: " << frontier.size() << " of " << l.set->size() << " solutions\n";
  return kOk;
}

int cmd_select(const InputFlags &in, const StrategyFlags &sf, const std::string &strategy_name,
               const std::string &out_path, const std::string &params_path, std::ostream &out, std::ostream &err) {
  const auto strategy = parse_strategy(strategy_name);
  const auto specs = io::load_schema(in.schema);
  const auto params = build_params(sf, specs);
  check_required(strategy, sf, params, specs.size());
  const auto set = io::load_solutions(in.solutions, specs);
  std::optional<PopulationSet<double>> pops;
  if (!sf.samples.empty()) pops = io::load_samples(sf.samples, specs);
  warn_constant_columns(set, params, err);

  const auto result = select(strategy, set, pops ? &*pops : nullptr, params);
  const bool integral = strategy == Strategy::UKP;
  out << "strategy: " << to_string(strategy) << '\n';
  out << "chosen: " << result.chosen_id << '\n';
  out << "score: " << io::format_score(result.chosen_score(), integral) << '\n';
  out << "ties: " << join_ids(result.tie_ids) << '\n';
  out << "evaluated: " << result.scores.size() << '\n';
  for (const auto &[k, v] : result.params_echo) out << "  " << k << " = " << v << '\n';

  if (!out_path.empty()) {
    std::ostringstream csv;
    io::write_selection(csv, result);
    io::write_file(out_path, csv.str());
  }
  if (!params_path.empty()) {
    std::ostringstream csv;
    io::write_params(csv, result);
    io::write_file(params_path, csv.str());
  }
  return kOk;
}

struct CalibrateFlags {
  std::string interactions;
  double alpha = 1.0;
  double beta = 1.0;
  std::optional<std::size_t> T;
  double accuracy_utopia = 1.0;
  std::string anchor_agg = "musigma";
  std::string out;
};

int cmd_calibrate(const CalibrateFlags &f, const std::vector<std::string> &objectives, std::ostream &out) {
  const auto log = io::load_interactions(f.interactions);
  CalibrationParams p;
  p.alpha = f.alpha;
  p.beta = f.beta;
  p.T_override = f.T;
  p.accuracy_utopia = f.accuracy_utopia;
  p.anchor_aggregation = f.anchor_agg == "mean" ? AnchorAggregation::Mean : AnchorAggregation::MeanStd;
  const auto table = calibrate(log, p);

  io::Specs specs;
  for (const auto &name : objectives) specs.push_back({name, Direction::Maximize, {}, {}, {}});
  std::ostringstream csv;
  io::write_utopia(csv, specs, table.assignment());
  io::write_file(f.out, csv.str());

  out << "users: " << table.rows.size() << '\n';
  out << "T: " << table.T << '\n';
  out << "tail anchor: " << io::format_score(table.tail_anchor) << '\n';
  out << "head anchor: " << io::format_score(table.head_anchor) << '\n';
  out << "mean utopia: " << io::format_score(table.mean_tail_utopia) << '\n';
  out << "clamped: " << table.clamp_count << '\n';
  return kOk;
}

int cmd_report(const InputFlags &in, const StrategyFlags &sf, const std::string &strategies,
               const std::string &out_path, const std::string &plot_path, std::ostream &out, std::ostream &err) {
  const auto list = parse_strategy_list(strategies);
  const auto specs = io::load_schema(in.schema);
  const auto params = build_params(sf, specs);
  for (auto s : list) check_required(s, sf, params, specs.size());
  if (!plot_path.empty() && (specs.size() < 2 || specs.size() > 3)) {
    throw UnsupportedError("--plot supports 2 or 3 objectives, got " + std::to_string(specs.size()));
  }
  const auto set = io::load_solutions(in.solutions, specs);
  std::optional<PopulationSet<double>> pops;
  if (!sf.samples.empty()) pops = io::load_samples(sf.samples, specs);
  warn_constant_columns(set, params, err);

  const auto frontier = pareto_frontier(set);
  std::vector<io::Result> results;
  for (auto s : list) results.push_back(select(s, set, pops ? &*pops : nullptr, params));

  std::ostringstream csv;
  io::write_report(csv, results, set, frontier);
  io::write_file(out_path, csv.str());
  if (!plot_path.empty()) {
    std::ostringstream plot;
    io::emit_plot_data(plot, set, frontier, results);
    io::write_file(plot_path, plot.str());
  }
  io::render_report(out, results, set, frontier);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Pareto frontier extraction and single-solution selection"};
  app.require_subcommand(1);

  InputFlags inputs;
  StrategyFlags strat;
  std::string out_path, params_path, plot_path, strategy, strategies;
  CalibrateFlags cal;
  std::vector<std::string> cal_objectives{"accuracy", "aplt"};

  auto *frontier = app.add_subcommand("frontier", "extract the non-dominated solutions");
  add_input_flags(frontier, inputs);
  frontier->add_option("--out", out_path, "frontier CSV (default: stdout)");

  auto *sel = app.add_subcommand("select", "select one solution with one strategy");
  add_input_flags(sel, inputs);
  sel->add_option("--strategy", strategy, "akp, ukp, hv, ed, wm, pdu or cpdu")->required();
  add_strategy_flags(sel, strat);
  sel->add_option("--out", out_path, "selection CSV (id,score,chosen,tied)");
  sel->add_option("--params-out", params_path, "parameter echo CSV (param,value)");

  auto *calib = app.add_subcommand("calibrate", "per-user utopia points from interaction data");
  calib->add_option("--interactions", cal.interactions, "interactions CSV (user_id,item_id)")->required();
  calib->add_option("--alpha", cal.alpha, "weight of the mean popularity")->capture_default_str();
  calib->add_option("--beta", cal.beta, "weight of the popularity standard deviation")->capture_default_str();
  calib->add_option("--T", cal.T, "anchor set size (default: mean distinct items per user)")
      ->check(CLI::PositiveNumber);
  calib->add_option("--accuracy-utopia", cal.accuracy_utopia, "utopia value of the accuracy objective")
      ->capture_default_str();
  calib->add_option("--anchor-agg", cal.anchor_agg, "anchor reduction: musigma (alpha*mean+beta*std) or mean")
      ->check(CLI::IsMember({"musigma", "mean"}))
      ->capture_default_str();
  calib->add_option("--objectives", cal_objectives, "column names of the written utopia file")
      ->expected(2)
      ->delimiter(',')
      ->capture_default_str();
  calib->add_option("--out", cal.out, "utopia CSV to write")->required();

  auto *report = app.add_subcommand("report", "score the frontier with several strategies side by side");
  add_input_flags(report, inputs);
  report->add_option("--strategies", strategies, "comma-separated strategy list")->required();
  add_strategy_flags(report, strat);
  report->add_option("--plot", plot_path, "plot data CSV (2 or 3 objectives)");
  report->add_option("--out", out_path, "report CSV")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (frontier->parsed()) return cmd_frontier(inputs, out_path, out);
    if (sel->parsed()) return cmd_select(inputs, strat, strategy, out_path, params_path, out, err);
    if (calib->parsed()) return cmd_calibrate(cal, cal_objectives, out);
    if (report->parsed()) return cmd_report(inputs, strat, strategies, out_path, plot_path, out, err);
  } catch (const InputError &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInputError;
}

}  // namespace frontsel::cli
