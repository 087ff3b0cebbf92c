#ifndef FRONTSEL_IO_HPP
#define FRONTSEL_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "frontsel/calibration.hpp"
#include "frontsel/core.hpp"
#include "frontsel/dominance.hpp"
#include "frontsel/strategies.hpp"

namespace frontsel::io {

using Specs = std::vector<ObjectiveSpec<double>>;
using Result = SelectionResult<double>;

// Loaders. Every failure is an InputError whose message names the file and,
// where there is one, the line and column.

Specs load_schema(const std::filesystem::path &path);
CandidateSet<double> load_solutions(const std::filesystem::path &path, const Specs &specs);
PopulationSet<double> load_samples(const std::filesystem::path &path, const Specs &specs);
InteractionLog load_interactions(const std::filesystem::path &path);
UtopiaAssignment<double> load_utopia(const std::filesystem::path &path, const Specs &specs);

Specs read_schema(std::istream &in, const std::string &source = "<stream>");
CandidateSet<double> read_solutions(std::istream &in, const Specs &specs, const std::string &source = "<stream>");
PopulationSet<double> read_samples(std::istream &in, const Specs &specs, const std::string &source = "<stream>");
InteractionLog read_interactions(std::istream &in, const std::string &source = "<stream>");
UtopiaAssignment<double> read_utopia(std::istream &in, const Specs &specs, const std::string &source = "<stream>");

// Writers for the same formats, full precision, LF line endings.

void write_schema(std::ostream &out, const Specs &specs);
void write_solutions(std::ostream &out, const CandidateSet<double> &set);
void write_samples(std::ostream &out, const Specs &specs, const PopulationSet<double> &pops);
void write_interactions(std::ostream &out, const InteractionLog &log);
void write_utopia(std::ostream &out, const Specs &specs, const UtopiaAssignment<double> &utopia);

/// `id,<objs...>` rows for the frontier members.
void write_frontier(std::ostream &out, const CandidateSet<double> &set, const Frontier &frontier);

/// `id,score,chosen,tied` for one selection.
void write_selection(std::ostream &out, const Result &result);
/// `param,value` echo of the parameters behind a selection.
void write_params(std::ostream &out, const Result &result);

/// Side-by-side report, one row per frontier member: objectives, one score
/// column per strategy, then `selected_by`.
void write_report(std::ostream &out, const std::vector<Result> &results, const CandidateSet<double> &set,
                  const Frontier &frontier);
/// The same report as an aligned text table; the chosen cell of each
/// strategy column is wrapped in `*...*`.
void render_report(std::ostream &out, const std::vector<Result> &results, const CandidateSet<double> &set,
                   const Frontier &frontier);

/// `id,<objs...>,on_frontier,selected_by` over every candidate. Two or three
/// objectives only.
void emit_plot_data(std::ostream &out, const CandidateSet<double> &set, const Frontier &frontier,
                    const std::vector<Result> &results);

/// Six significant digits; integral strategy scores (U-KP wins) print as
/// integers.
std::string format_score(double v, bool integral = false);

/// Parses a comma-separated list of finite reals ("1,0", "0.5,2e-5").
Vector<double> parse_vector(const std::string &text, const std::string &what);

/// Writes `text` to `path`, reporting failure as an InputError.
void write_file(const std::filesystem::path &path, const std::string &text);

}  // namespace frontsel::io

#endif  // FRONTSEL_IO_HPP
