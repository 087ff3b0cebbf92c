#include "frontsel/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "frontsel/errors.hpp"

namespace frontsel::io {

namespace {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

struct Table {
  std::string source;
  std::size_t header_line = 0;
  std::vector<std::string> header;
  std::vector<Row> rows;
};

[[noreturn]] void fail(const std::string &source, std::size_t line, const std::string &msg) {
  throw InputError(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + msg);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_line(const std::string &line, const std::string &source, std::size_t lineno) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && trim(cur).empty()) {
      quoted = true;
      was_quoted = true;
      cur.clear();
    } else if (c == ',') {
      cells.push_back(was_quoted ? cur : trim(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur += c;
    }
  }
  if (quoted) fail(source, lineno, "unterminated quoted field");
  cells.push_back(was_quoted ? cur : trim(cur));
  return cells;
}

Table read_table(std::istream &in, const std::string &source) {
  Table t;
  t.source = source;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    auto cells = split_line(line, source, lineno);
    if (!have_header) {
      t.header = std::move(cells);
      t.header_line = lineno;
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      fail(source, lineno,
           "expected " + std::to_string(t.header.size()) + " columns, found " + std::to_string(cells.size()));
    }
    t.rows.push_back({lineno, std::move(cells)});
  }
  if (!have_header) fail(source, 0, "file is empty");
  return t;
}

std::ifstream open(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

double parse_real(const std::string &cell, const std::string &source, std::size_t line, const std::string &column) {
  std::string_view s = cell;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    fail(source, line, "column '" + column + "': '" + cell + "' is not a finite number");
  }
  return v;
}

void expect_header(const Table &t, const std::vector<std::string> &expected) {
  if (t.header != expected) {
    std::string want, got;
    for (const auto &h : expected) want += (want.empty() ? "" : ",") + h;
    for (const auto &h : t.header) got += (got.empty() ? "" : ",") + h;
    fail(t.source, t.header_line, "header is '" + got + "', expected '" + want + "'");
  }
}

std::vector<std::string> objective_names(const Specs &specs) {
  std::vector<std::string> names;
  for (const auto &s : specs) names.push_back(s.name);
  return names;
}

std::vector<std::string> with_prefix(std::vector<std::string> prefix, const Specs &specs) {
  for (auto &n : objective_names(specs)) prefix.push_back(std::move(n));
  return prefix;
}

Vector<double> parse_objectives(const Table &t, const Row &r, std::size_t first) {
  Vector<double> v(static_cast<Eigen::Index>(r.cells.size() - first));
  for (std::size_t c = first; c < r.cells.size(); ++c) {
    v(static_cast<Eigen::Index>(c - first)) = parse_real(r.cells[c], t.source, r.line, t.header[c]);
  }
  return v;
}

std::string number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_cell(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos && trim(s) == s) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_row(std::ostream &out, const std::vector<std::string> &cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << csv_cell(cells[i]);
  }
  out << '\n';
}

std::string optional_number(const std::optional<double> &v) { return v ? number(*v) : std::string(); }

std::string selected_by(const std::vector<Result> &results, const std::string &id) {
  std::string s;
  for (const auto &r : results) {
    if (r.chosen_id == id) s += (s.empty() ? "" : ";") + to_string(r.strategy);
  }
  return s;
}

struct ReportCells {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::vector<bool>> chosen;
};

ReportCells build_report(const std::vector<Result> &results, const CandidateSet<double> &set,
                         const Frontier &frontier) {
  ReportCells rc;
  rc.header = with_prefix({"id"}, set.specs());
  for (const auto &r : results) rc.header.push_back(to_string(r.strategy));
  rc.header.push_back("selected_by");

  // frontier members, plus any extra ids a result scored (evaluate-all scope)
  std::set<std::string> ids(frontier.member_ids.begin(), frontier.member_ids.end());
  for (const auto &r : results) {
    for (const auto &[id, _] : r.scores) ids.insert(id);
  }
  for (const auto &id : ids) {
    const auto row = set.index_of(id);
    if (!row) throw InputError("report references unknown solution '" + id + "'");
    std::vector<std::string> cells{id};
    std::vector<bool> mark(rc.header.size(), false);
    const auto p = set.point(*row);
    for (Eigen::Index c = 0; c < p.size(); ++c) cells.push_back(format_score(p(c)));
    for (const auto &r : results) {
      auto it = r.scores.find(id);
      mark[cells.size()] = r.chosen_id == id;
      cells.push_back(it == r.scores.end() ? std::string() : format_score(it->second, r.strategy == Strategy::UKP));
    }
    cells.push_back(selected_by(results, id));
    rc.rows.push_back(std::move(cells));
    rc.chosen.push_back(std::move(mark));
  }
  return rc;
}

}  // namespace

std::string format_score(double v, bool integral) {
  if (integral && std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Vector<double> parse_vector(const std::string &text, const std::string &what) {
  const auto cells = split_line(text, what, 0);
  Vector<double> v(static_cast<Eigen::Index>(cells.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = parse_real(cells[i], what, 0, "component " + std::to_string(i + 1));
  }
  return v;
}

void write_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Readers
// ---------------------------------------------------------------------------

Specs read_schema(std::istream &in, const std::string &source) {
  const auto t = read_table(in, source);
  expect_header(t, {"name", "direction", "weight", "utopia", "reference"});
  if (t.rows.empty()) fail(source, 0, "no objectives declared");
  Specs specs;
  std::set<std::string> names;
  for (const auto &r : t.rows) {
    ObjectiveSpec<double> s;
    s.name = r.cells[0];
    if (s.name.empty()) fail(source, r.line, "empty objective name");
    if (!names.insert(s.name).second) fail(source, r.line, "duplicate objective name '" + s.name + "'");
    std::string dir = r.cells[1];
    std::transform(dir.begin(), dir.end(), dir.begin(), [](unsigned char c) { return std::tolower(c); });
    if (dir == "min" || dir == "minimize") {
      s.direction = Direction::Minimize;
    } else if (dir == "max" || dir == "maximize") {
      s.direction = Direction::Maximize;
    } else {
      fail(source, r.line, "direction '" + r.cells[1] + "' is not min or max");
    }
    auto opt = [&](std::size_t c) -> std::optional<double> {
      if (r.cells[c].empty()) return std::nullopt;
      return parse_real(r.cells[c], source, r.line, t.header[c]);
    };
    s.weight = opt(2);
    s.utopia = opt(3);
    s.reference = opt(4);
    specs.push_back(std::move(s));
  }
  return specs;
}

CandidateSet<double> read_solutions(std::istream &in, const Specs &specs, const std::string &source) {
  const auto t = read_table(in, source);
  expect_header(t, with_prefix({"id"}, specs));
  if (t.rows.empty()) fail(source, 0, "no solutions listed");
  std::vector<SolutionPoint<double>> points;
  std::set<std::string> ids;
  for (const auto &r : t.rows) {
    if (r.cells[0].empty()) fail(source, r.line, "empty solution id");
    if (!ids.insert(r.cells[0]).second) fail(source, r.line, "duplicate solution id '" + r.cells[0] + "'");
    points.push_back({r.cells[0], parse_objectives(t, r, 1)});
  }
  return CandidateSet<double>(specs, points);
}

PopulationSet<double> read_samples(std::istream &in, const Specs &specs, const std::string &source) {
  const auto t = read_table(in, source);
  expect_header(t, with_prefix({"solution_id", "sample_id"}, specs));
  if (t.rows.empty()) fail(source, 0, "no samples listed");

  struct Pending {
    std::vector<std::string> order;
    std::map<std::string, std::pair<Vector<double>, std::size_t>> rows;
  };
  std::vector<std::string> solution_order;
  std::map<std::string, Pending> by_solution;
  for (const auto &r : t.rows) {
    const auto &sol = r.cells[0];
    const auto &sample = r.cells[1];
    if (sol.empty() || sample.empty()) fail(source, r.line, "empty solution_id or sample_id");
    auto [it, fresh] = by_solution.try_emplace(sol);
    if (fresh) solution_order.push_back(sol);
    if (!it->second.rows.try_emplace(sample, parse_objectives(t, r, 2), r.line).second) {
      fail(source, r.line, "sample '" + sample + "' repeated for solution '" + sol + "'");
    }
    it->second.order.push_back(sample);
  }

  // every population follows the sample order of the first solution listed
  const auto &reference = by_solution.at(solution_order.front());
  PopulationSet<double> pops;
  for (const auto &sol : solution_order) {
    const auto &p = by_solution.at(sol);
    for (const auto &sample : reference.order) {
      if (!p.rows.count(sample)) fail(source, 0, "solution '" + sol + "' is missing sample '" + sample + "'");
    }
    for (const auto &sample : p.order) {
      if (!reference.rows.count(sample)) {
        fail(source, p.rows.at(sample).second,
             "sample '" + sample + "' of solution '" + sol + "' is absent from solution '" + solution_order.front() +
                 "'");
      }
    }
    SamplePopulation<double> pop;
    pop.solution_id = sol;
    pop.sample_ids = reference.order;
    pop.values.resize(static_cast<Eigen::Index>(reference.order.size()), static_cast<Eigen::Index>(specs.size()));
    for (std::size_t j = 0; j < reference.order.size(); ++j) {
      pop.values.row(static_cast<Eigen::Index>(j)) = p.rows.at(reference.order[j]).first.transpose();
    }
    pops.add(std::move(pop));
  }
  return pops;
}

InteractionLog read_interactions(std::istream &in, const std::string &source) {
  const auto t = read_table(in, source);
  expect_header(t, {"user_id", "item_id"});
  if (t.rows.empty()) fail(source, 0, "no interactions listed");
  InteractionLog log;
  for (const auto &r : t.rows) {
    if (r.cells[0].empty() || r.cells[1].empty()) fail(source, r.line, "empty user_id or item_id");
    log.records.push_back({r.cells[0], r.cells[1]});
  }
  return log;
}

UtopiaAssignment<double> read_utopia(std::istream &in, const Specs &specs, const std::string &source) {
  const auto t = read_table(in, source);
  expect_header(t, with_prefix({"sample_id"}, specs));
  if (t.rows.empty()) fail(source, 0, "no utopia rows listed");
  const bool global = std::any_of(t.rows.begin(), t.rows.end(), [](const Row &r) { return r.cells[0] == "*"; });
  if (global) {
    if (t.rows.size() != 1) fail(source, t.rows[1].line, "a global utopia file holds exactly one '*' row");
    return UtopiaAssignment<double>::global(parse_objectives(t, t.rows[0], 1));
  }
  std::map<std::string, Vector<double>> rows;
  for (const auto &r : t.rows) {
    if (r.cells[0].empty()) fail(source, r.line, "empty sample_id");
    if (!rows.emplace(r.cells[0], parse_objectives(t, r, 1)).second) {
      fail(source, r.line, "duplicate sample_id '" + r.cells[0] + "'");
    }
  }
  return UtopiaAssignment<double>::per_sample(std::move(rows));
}

Specs load_schema(const std::filesystem::path &path) {
  auto in = open(path);
  return read_schema(in, path.string());
}

CandidateSet<double> load_solutions(const std::filesystem::path &path, const Specs &specs) {
  auto in = open(path);
  return read_solutions(in, specs, path.string());
}

PopulationSet<double> load_samples(const std::filesystem::path &path, const Specs &specs) {
  auto in = open(path);
  return read_samples(in, specs, path.string());
}

InteractionLog load_interactions(const std::filesystem::path &path) {
  auto in = open(path);
  return read_interactions(in, path.string());
}

UtopiaAssignment<double> load_utopia(const std::filesystem::path &path, const Specs &specs) {
  auto in = open(path);
  return read_utopia(in, specs, path.string());
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

void write_schema(std::ostream &out, const Specs &specs) {
  write_row(out, {"name", "direction", "weight", "utopia", "reference"});
  for (const auto &s : specs) {
    write_row(out, {s.name, to_string(s.direction), optional_number(s.weight), optional_number(s.utopia),
                    optional_number(s.reference)});
  }
}

void write_solutions(std::ostream &out, const CandidateSet<double> &set) {
  write_row(out, with_prefix({"id"}, set.specs()));
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::vector<std::string> cells{set.ids()[i]};
    const auto p = set.point(i);
    for (Eigen::Index c = 0; c < p.size(); ++c) cells.push_back(number(p(c)));
    write_row(out, cells);
  }
}

void write_samples(std::ostream &out, const Specs &specs, const PopulationSet<double> &pops) {
  write_row(out, with_prefix({"solution_id", "sample_id"}, specs));
  for (const auto &[id, pop] : pops.all()) {
    for (std::size_t j = 0; j < pop.size(); ++j) {
      std::vector<std::string> cells{id, pop.sample_ids[j]};
      for (Eigen::Index c = 0; c < pop.values.cols(); ++c) {
        cells.push_back(number(pop.values(static_cast<Eigen::Index>(j), c)));
      }
      write_row(out, cells);
    }
  }
}

void write_interactions(std::ostream &out, const InteractionLog &log) {
  write_row(out, {"user_id", "item_id"});
  for (const auto &r : log.records) write_row(out, {r.user_id, r.item_id});
}

void write_utopia(std::ostream &out, const Specs &specs, const UtopiaAssignment<double> &utopia) {
  write_row(out, with_prefix({"sample_id"}, specs));
  auto emit = [&](const std::string &id, const Vector<double> &v) {
    std::vector<std::string> cells{id};
    for (Eigen::Index c = 0; c < v.size(); ++c) cells.push_back(number(v(c)));
    write_row(out, cells);
  };
  if (utopia.is_global()) {
    emit("*", utopia.global_vector());
  } else {
    for (const auto &[id, v] : utopia.rows()) emit(id, v);
  }
}

void write_frontier(std::ostream &out, const CandidateSet<double> &set, const Frontier &frontier) {
  write_row(out, with_prefix({"id"}, set.specs()));
  for (auto r : frontier.rows) {
    std::vector<std::string> cells{set.ids()[r]};
    const auto p = set.point(r);
    for (Eigen::Index c = 0; c < p.size(); ++c) cells.push_back(number(p(c)));
    write_row(out, cells);
  }
}

void write_selection(std::ostream &out, const Result &result) {
  write_row(out, {"id", "score", "chosen", "tied"});
  const bool integral = result.strategy == Strategy::UKP;
  for (const auto &[id, score] : result.scores) {
    const bool tied = std::find(result.tie_ids.begin(), result.tie_ids.end(), id) != result.tie_ids.end();
    write_row(out, {id, integral ? format_score(score, true) : number(score), id == result.chosen_id ? "1" : "0",
                    tied ? "1" : "0"});
  }
}

void write_params(std::ostream &out, const Result &result) {
  write_row(out, {"param", "value"});
  for (const auto &[k, v] : result.params_echo) write_row(out, {k, v});
}

void write_report(std::ostream &out, const std::vector<Result> &results, const CandidateSet<double> &set,
                  const Frontier &frontier) {
  const auto rc = build_report(results, set, frontier);
  write_row(out, rc.header);
  for (const auto &r : rc.rows) write_row(out, r);
}

void render_report(std::ostream &out, const std::vector<Result> &results, const CandidateSet<double> &set,
                   const Frontier &frontier) {
  auto rc = build_report(results, set, frontier);
  for (std::size_t r = 0; r < rc.rows.size(); ++r) {
    for (std::size_t c = 0; c < rc.rows[r].size(); ++c) {
      if (rc.chosen[r][c]) rc.rows[r][c] = "*" + rc.rows[r][c] + "*";
    }
  }
  std::vector<std::size_t> width(rc.header.size());
  for (std::size_t c = 0; c < rc.header.size(); ++c) {
    width[c] = rc.header[c].size();
    for (const auto &row : rc.rows) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string> &cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
    }
    out << '\n';
  };
  line(rc.header);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto &row : rc.rows) line(row);
}

void emit_plot_data(std::ostream &out, const CandidateSet<double> &set, const Frontier &frontier,
                    const std::vector<Result> &results) {
  if (set.objectives() < 2 || set.objectives() > 3) {
    throw UnsupportedError("plot data supports 2 or 3 objectives, got " + std::to_string(set.objectives()));
  }
  auto header = with_prefix({"id"}, set.specs());
  header.push_back("on_frontier");
  header.push_back("selected_by");
  write_row(out, header);
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return set.ids()[a] < set.ids()[b]; });
  for (auto i : order) {
    const auto &id = set.ids()[i];
    std::vector<std::string> cells{id};
    const auto p = set.point(i);
    for (Eigen::Index c = 0; c < p.size(); ++c) cells.push_back(number(p(c)));
    cells.push_back(frontier.contains(id) ? "1" : "0");
    cells.push_back(selected_by(results, id));
    write_row(out, cells);
  }
}

}  // namespace frontsel::io
