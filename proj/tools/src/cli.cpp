#include <ostream>

#include <CLI11.hpp>

#include "conicsub/error.hpp"
#include "conicsub_cli/io.hpp"

namespace conicsub::cli {
namespace {

bool is_input_error(Errc code) {
  return code == Errc::ParseError || code == Errc::IoError || code == Errc::InvalidConfig;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convexity-preserving interpolatory subdivision with conic precision", "conicsub"};
  app.require_subcommand(1);
  JobSpec spec;
  RefinementConfig& cfg = spec.config;
  bool closed = false;
  bool open = false;
  bool adaptive = false;
  bool lenient = false;
  std::string points_csv, svg, comb_svg, report;

  CLI::App* refine = app.add_subcommand("refine", "Refine a polyline read from a CSV point file");
  refine->add_option("--input", spec.input, "Point file, one \"x,y\" pair per line")->required();
  auto* closed_flag = refine->add_flag("--closed", closed, "Treat the polyline as closed");
  refine->add_flag("--open", open, "Treat the polyline as open (default)")->excludes(closed_flag);
  refine->add_option("--levels", cfg.levels, "Number of refinement steps")->capture_default_str();
  refine->add_flag("--adaptive", adaptive, "Split only edges longer than the threshold");
  refine->add_option("--edge-threshold", cfg.edge_threshold, "Adaptive threshold, relative to the input diagonal")
      ->capture_default_str();
  refine->add_option("--lambda", cfg.lambda, "Junction tangent blending weight in (0, 1)")->capture_default_str();
  refine->add_option("--rho", cfg.rho, "Junction edge point weight in (0, 1)")->capture_default_str();
  refine->add_flag("--lenient", lenient, "Replace degenerate steps by midpoints instead of failing");
  refine->add_option("--out", points_csv, "Refined points CSV (default: standard output)");
  refine->add_option("--svg", svg, "SVG plot of the refined polyline");
  refine->add_option("--comb-svg", comb_svg, "SVG plot with a curvature comb");
  refine->add_option("--report", report, "JSON diagnostics report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  cfg.topology = closed ? Topology::Closed : Topology::Open;
  cfg.mode = adaptive ? Mode::Adaptive : Mode::Basic;
  cfg.strictness = lenient ? Strictness::Lenient : Strictness::Strict;
  if (!points_csv.empty()) spec.points_csv = points_csv;
  if (!svg.empty()) spec.svg = svg;
  if (!comb_svg.empty()) spec.comb_svg = comb_svg;
  if (!report.empty()) spec.report_json = report;

  std::string text;
  ParsedPoints parsed;
  try {
    spec.validate();
    text = read_file(spec.input);
    parsed = parse_points(text, cfg.topology);
  } catch (const ParseError& e) {
    err << "error: " << spec.input << ": " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  for (const std::string& w : parsed.warnings) err << "warning: " << w << "\n";

  try {
    auto [result, diagnostics] = subdivide(parsed.poly, cfg);
    for (const std::string& w : diagnostics.warnings) err << "warning: " << w << "\n";
    write_outputs(result, parsed.poly, diagnostics, spec, input_hash(text), out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? 1 : 2;
  }
  return 0;
}

}  // namespace conicsub::cli
