#include "conicsub_cli/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>

#include "conicsub/error.hpp"
#include "conicsub/metrics.hpp"

namespace conicsub::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& v) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(v);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Shorter form for SVG coordinates.
std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

ParsedPoints parse_points(std::string_view text, Topology topology) {
  ParsedPoints out;
  out.poly.topology = topology;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t comma = line.find(',');
    Vec2 p;
    if (comma == std::string_view::npos || !parse_double(line.substr(0, comma), p.x) ||
        !parse_double(line.substr(comma + 1), p.y))
      throw ParseError(line_no, "expected \"x,y\" with two finite numbers");
    if (!out.poly.points.empty() && out.poly.points.back() == p) {
      out.warnings.push_back("line " + std::to_string(line_no) + ": duplicate consecutive point dropped");
      continue;
    }
    out.poly.points.push_back(p);
  }
  if (topology == Topology::Closed && out.poly.size() > 1 && out.poly.points.front() == out.poly.points.back()) {
    out.poly.points.pop_back();
    out.warnings.push_back("closing vertex equal to the first vertex dropped");
  }
  if (out.poly.size() < 2) throw Error(Errc::TooFewPoints, "input needs at least two distinct points");
  return out;
}

std::string format_points_csv(const Polyline& poly) {
  std::string s;
  for (const Vec2& p : poly.points) s += num(p.x) + "," + num(p.y) + "\n";
  return s;
}

std::string format_svg(const Polyline& refined, const Polyline& original,
                       const std::vector<std::pair<Vec2, Vec2>>* comb) {
  const BoundingBox box = bounding_box(original.points);
  const double w = box.max.x - box.min.x;
  const double h = box.max.y - box.min.y;
  double margin = 0.05 * std::max(w, h);
  if (margin == 0.0) margin = 1.0;
  const double r = 0.005 * std::max(box.diagonal(), 1e-300);
  const auto px = [](Vec2 p) { return coord(p.x) + "," + coord(-p.y); };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << coord(box.min.x - margin) << " "
    << coord(-box.max.y - margin) << " " << coord(w + 2 * margin) << " " << coord(h + 2 * margin) << "\">\n";
  if (comb) {
    s << "<g stroke=\"#d08030\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\">\n";
    for (const auto& [a, b] : *comb)
      s << "<line x1=\"" << coord(a.x) << "\" y1=\"" << coord(-a.y) << "\" x2=\"" << coord(b.x) << "\" y2=\""
        << coord(-b.y) << "\" vector-effect=\"non-scaling-stroke\"/>\n";
    s << "</g>\n";
  }
  s << "<path fill=\"none\" stroke=\"#1f4e9a\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\" d=\"";
  for (std::size_t i = 0; i < refined.size(); ++i) s << (i == 0 ? "M" : " L") << px(refined[i]);
  if (refined.closed()) s << " Z";
  s << "\"/>\n<g fill=\"#c02020\">\n";
  for (const Vec2& p : original.points)
    s << "<circle cx=\"" << coord(p.x) << "\" cy=\"" << coord(-p.y) << "\" r=\"" << coord(r) << "\"/>\n";
  s << "</g>\n</svg>\n";
  return s.str();
}

std::string input_hash(std::string_view text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(Errc::IoError, "hashing the input failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[digest[i] >> 4];
    s += hex[digest[i] & 15];
  }
  return s;
}

nlohmann::json report_json(const DiagnosticsReport& report, const RefinementConfig& cfg, const std::string& hash) {
  nlohmann::json levels = nlohmann::json::array();
  for (const LevelDiagnostics& l : report.levels) {
    levels.push_back({{"k", l.k},
                      {"n_points", l.n_points},
                      {"d_k", l.d_k},
                      {"max_tangent_turn", l.max_tangent_turn},
                      {"min_edge", l.min_edge},
                      {"max_edge", l.max_edge},
                      {"inflection_count", l.inflection_count},
                      {"fallbacks", l.fallbacks}});
  }
  nlohmann::json config = {{"topology", cfg.topology == Topology::Closed ? "closed" : "open"},
                           {"levels", cfg.levels},
                           {"mode", cfg.mode == Mode::Adaptive ? "adaptive" : "basic"},
                           {"edge_threshold", cfg.edge_threshold},
                           {"lambda", cfg.lambda},
                           {"rho", cfg.rho},
                           {"collinearity_tol", cfg.collinearity_tol},
                           {"strictness", cfg.strict() ? "strict" : "lenient"}};
  return {{"levels", levels},
          {"config", config},
          {"input_hash", hash},
          {"initial_inflection_count", report.initial_inflections},
          {"warnings", report.warnings}};
}

void JobSpec::validate() const {
  std::set<std::string> seen{input};
  for (const auto* p : {&points_csv, &svg, &comb_svg, &report_json}) {
    if (!*p) continue;
    if (!seen.insert(**p).second) throw Error(Errc::InvalidConfig, "output path '" + **p + "' is used twice");
  }
  config.validate();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size())))
    throw Error(Errc::IoError, "cannot write '" + path + "'");
}

void write_outputs(const Polyline& result, const Polyline& original, const DiagnosticsReport& report,
                   const JobSpec& spec, const std::string& hash, std::ostream& out) {
  const bool any = spec.points_csv || spec.svg || spec.comb_svg || spec.report_json;
  if (!any) out << format_points_csv(result);
  if (spec.points_csv) write_file(*spec.points_csv, format_points_csv(result));
  if (spec.svg) write_file(*spec.svg, format_svg(result, original));
  if (spec.comb_svg) {
    const auto comb = curvature_comb(result);
    write_file(*spec.comb_svg, format_svg(result, original, &comb));
  }
  if (spec.report_json) write_file(*spec.report_json, report_json(report, spec.config, hash).dump(2) + "\n");
}

}  // namespace conicsub::cli
