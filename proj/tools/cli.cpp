#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "format.hpp"
#include "pinball/catalog.hpp"
#include "pinball/error.hpp"

namespace pinball::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Inputs {
  std::string catalog;
  std::string polygon_file;
  std::string itinerary;
  std::string lambda;
  std::string out_path;
  std::uint64_t seed = 1;
  std::size_t max_period = 12;
  std::size_t samples = 1000;
  std::size_t transient = 10000;
  int max_sum = 50;
  double width = 0.0;
};

struct LoadedPolygon {
  std::string name;
  Polygon polygon;
};

LoadedPolygon load_polygon(const Inputs& in) {
  if (!in.catalog.empty() && !in.polygon_file.empty()) {
    throw UsageError("--catalog and --polygon are mutually exclusive");
  }
  if (!in.polygon_file.empty()) return {in.polygon_file, read_polygon_file(in.polygon_file)};
  if (in.catalog.empty()) throw UsageError("one of --catalog or --polygon is required");
  CatalogEntry entry = known_polygon(in.catalog);
  return {entry.name, std::move(entry.polygon)};
}

Itinerary load_itinerary(const Inputs& in) {
  if (in.itinerary.empty()) throw UsageError("--itinerary is required");
  return Itinerary::parse(in.itinerary);
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("bad number \"" + text + "\"");
  return v;
}

// "a:b:n" with inclusive endpoints, or a single value.
std::vector<double> parse_lambdas(const std::string& spec, const std::string& fallback) {
  const std::string text = spec.empty() ? fallback : spec;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  std::vector<double> grid;
  if (parts.size() == 1) {
    grid = {parse_double(parts[0])};
  } else if (parts.size() == 3) {
    const double n = parse_double(parts[2]);
    if (n < 1 || n != std::floor(n) || n > 1e6) throw UsageError("grid size must be a positive integer");
    grid = lambda_grid(parse_double(parts[0]), parse_double(parts[1]), static_cast<std::size_t>(n));
  } else {
    throw UsageError("lambda spec must be a:b:n or a single value");
  }
  for (double v : grid) {
    if (!(v > 0.0)) throw UsageError("lambda values must be positive");
  }
  return grid;
}

// Runs `body` against the --out file, or against `out` when no path is set.
template <class Body>
void with_output(const Inputs& in, std::ostream& out, Body&& body) {
  if (in.out_path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(in.out_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot write \"" + in.out_path + "\"");
  body(file);
  if (!file) throw Error(ErrorCode::IoError, "write to \"" + in.out_path + "\" failed");
}

int cmd_analyze(const Inputs& in, std::ostream& out) {
  const LoadedPolygon poly = load_polygon(in);
  const StabilityReport report = classify(poly.polygon, load_itinerary(in));
  with_output(in, out, [&](std::ostream& os) { write_report(os, poly.name, report); });
  return kExitOk;
}

int cmd_sweep(const Inputs& in, std::ostream& out) {
  const LoadedPolygon poly = load_polygon(in);
  const Itinerary word = load_itinerary(in);
  const auto rows = continue_orbit(poly.polygon, word, parse_lambdas(in.lambda, "0.9:1.1:41"));
  with_output(in, out, [&](std::ostream& os) { write_continuation_csv(os, rows); });
  return kExitOk;
}

int cmd_search(const Inputs& in, std::ostream& out) {
  const LoadedPolygon poly = load_polygon(in);
  SearchOptions options;
  options.seed = in.seed;
  options.max_period = in.max_period;
  options.n_samples = in.samples;
  options.transient = in.transient;
  const auto lambdas = parse_lambdas(in.lambda, "0.9");
  std::vector<std::vector<AttractingCycle>> results;
  for (double lambda : lambdas) results.push_back(find_attracting_cycles(poly.polygon, lambda, options));
  with_output(in, out, [&](std::ostream& os) {
    for (std::size_t k = 0; k < lambdas.size(); ++k) write_cycles_csv(os, lambdas[k], results[k], k == 0);
  });
  return kExitOk;
}

int cmd_plot(const Inputs& in, std::ostream& out) {
  const LoadedPolygon poly = load_polygon(in);
  const Itinerary word = load_itinerary(in);
  const auto lambdas = parse_lambdas(in.lambda, "0.9");
  if (lambdas.size() != 1) throw UsageError("plot takes a single lambda");
  const double lambda = lambdas.front();

  const StabilityReport report = classify(poly.polygon, word);
  const double theta = report.cylinder_angle.value_or(report.departure);
  double s = report.base_point;
  if (std::isnan(s)) s = 0.5 * (report.l + report.r);
  if (std::isnan(theta) || std::isnan(s)) {
    throw Error(ErrorCode::EmptyInterval, "\"" + word.to_string() + "\" has no billiard orbit to draw");
  }
  Realization billiard = realize_orbit(poly.polygon, word, {{word[0], s}, theta}, 1.0);

  Realization pinball;
  try {
    pinball = realize_orbit(poly.polygon, word, periodic_point(poly.polygon, word, lambda), lambda);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SlopeOne) throw;
    pinball = realize_orbit(poly.polygon, word, {{word[0], s}, theta}, lambda);
  }
  if (!pinball.legal) pinball.orbit.points.clear();
  if (!billiard.legal) billiard.orbit.points.clear();
  with_output(in, out, [&](std::ostream& os) { write_svg(os, poly.polygon, billiard.orbit, pinball.orbit); });
  return kExitOk;
}

int cmd_reproduce(const Inputs& in, std::ostream& out) {
  std::vector<ReproduceRow> rows;
  for (const std::string& name : catalog_names()) {
    const CatalogEntry entry = known_polygon(name);
    for (const KnownCase& known : entry.cases) {
      rows.push_back({entry.name, known, check_case(entry.polygon, known)});
    }
  }
  write_reproduce_table(out, rows);
  if (!in.out_path.empty()) with_output(in, out, [&](std::ostream& os) { write_cases_csv(os, rows); });
  const bool all = std::all_of(rows.begin(), rows.end(), [](const ReproduceRow& r) { return r.check.passed; });
  return all ? kExitOk : kExitReproduce;
}

int cmd_slopes(const Inputs& in, std::ostream& out) {
  if (!(in.width > 0.0)) throw UsageError("--width must be positive");
  if (in.max_sum < 2) throw UsageError("--max-sum must be at least 2");
  const auto slopes = rectangle_admissible_slopes(in.width, in.max_sum);
  with_output(in, out, [&](std::ostream& os) { write_slopes_csv(os, slopes); });
  return kExitOk;
}

void add_polygon_options(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--catalog", in.catalog, "Built-in polygon: square, rectangle:W, equilateral, hexagon, "
                                           "tri306090, tri454590, regular:D");
  cmd->add_option("--polygon", in.polygon_file, "Polygon file, one \"x y\" vertex per line, counterclockwise");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Inputs in;
  CLI::App app{"Lambda-stability of periodic orbits in polygonal pinball billiards", "pinball"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "Classify one itinerary and print the witnesses");
  add_polygon_options(analyze, in);
  analyze->add_option("--itinerary", in.itinerary, "Comma-separated 1-based side word, e.g. 1,2,1,3");
  analyze->add_option("--out", in.out_path, "Write the report here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "Continue the periodic point over a lambda grid (CSV)");
  add_polygon_options(sweep, in);
  sweep->add_option("--itinerary", in.itinerary, "Comma-separated 1-based side word");
  sweep->add_option("--lambda", in.lambda, "Grid a:b:n, inclusive (default 0.9:1.1:41)");
  sweep->add_option("--out", in.out_path, "CSV output path");

  auto* search = app.add_subcommand("search", "Look for periodic cycles of the pinball map");
  add_polygon_options(search, in);
  search->add_option("--lambda", in.lambda, "Lambda value or grid a:b:n (default 0.9)");
  search->add_option("--seed", in.seed, "Sampling seed");
  search->add_option("--max-period", in.max_period, "Longest period considered")->check(CLI::Range(1, 64));
  search->add_option("--samples", in.samples, "Number of random initial conditions");
  search->add_option("--transient", in.transient, "Steps discarded before detection");
  search->add_option("--out", in.out_path, "CSV output path");

  auto* plot = app.add_subcommand("plot", "Draw the billiard orbit and the pinball orbit as SVG");
  add_polygon_options(plot, in);
  plot->add_option("--itinerary", in.itinerary, "Comma-separated 1-based side word");
  plot->add_option("--lambda", in.lambda, "Lambda of the solid orbit (default 0.9)");
  plot->add_option("--out", in.out_path, "SVG output path");

  auto* reproduce = app.add_subcommand("reproduce", "Check every catalog case");
  reproduce->add_option("--out", in.out_path, "Also write the case list as CSV");

  auto* slopes = app.add_subcommand("slopes", "Admissible cylinder slopes in a w x 1 rectangle");
  slopes->add_option("--width", in.width, "Aspect ratio w")->required();
  slopes->add_option("--max-sum", in.max_sum, "Bound on p + q");
  slopes->add_option("--out", in.out_path, "CSV output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(in, out);
    if (sweep->parsed()) return cmd_sweep(in, out);
    if (search->parsed()) return cmd_search(in, out);
    if (plot->parsed()) return cmd_plot(in, out);
    if (reproduce->parsed()) return cmd_reproduce(in, out);
    if (slopes->parsed()) return cmd_slopes(in, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace pinball::cli
