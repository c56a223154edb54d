#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "conicsub/config.hpp"
#include "conicsub/engine.hpp"
#include "conicsub/polyline.hpp"

namespace conicsub::cli {

struct ParsedPoints {
  Polyline poly;
  std::vector<std::string> warnings;
};

/// One "x,y" pair per line; '#' lines and blank lines are skipped.
/// Consecutive duplicates are collapsed, and for closed topology a final
/// vertex equal to the first is dropped. Throws ParseError and
/// Errc::TooFewPoints (fewer than two vertices).
ParsedPoints parse_points(std::string_view text, Topology topology);

/// Same format, 17 significant digits, so parsing it back is exact.
std::string format_points_csv(const Polyline& poly);

/// Refined polyline as one path, original vertices as circles, optional comb
/// segments. The view box fits `frame` with a 5% margin; y points up.
std::string format_svg(const Polyline& refined, const Polyline& original,
                       const std::vector<std::pair<Vec2, Vec2>>* comb = nullptr);

/// Hex SHA-256 of the raw input text.
std::string input_hash(std::string_view text);

nlohmann::json report_json(const DiagnosticsReport& report, const RefinementConfig& cfg, const std::string& hash);

struct JobSpec {
  std::string input;
  RefinementConfig config;
  std::optional<std::string> points_csv;
  std::optional<std::string> svg;
  std::optional<std::string> comb_svg;
  std::optional<std::string> report_json;

  /// Throws Errc::InvalidConfig when two outputs share a path or an output
  /// overwrites the input.
  void validate() const;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// Writes every selected output. Without any selection the points go to `out`.
void write_outputs(const Polyline& result, const Polyline& original, const DiagnosticsReport& report,
                   const JobSpec& spec, const std::string& hash, std::ostream& out);

/// Exit codes: 0 success, 1 input or validation error, 2 refinement failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conicsub::cli
