#include "format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace pinball::cli {

namespace {

void field(std::ostream& out, const char* key, const std::string& value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%-18s", key);
  out << buf << value << '\n';
}

std::string optional_number(double value) { return std::isnan(value) ? "-" : number(value); }

std::string points_attribute(const Polygon& polygon, const OrbitSegment& orbit, double top) {
  std::string pts;
  for (const auto& p : orbit.points) {
    const Vec2 v = polygon.point(p.position);
    if (!pts.empty()) pts += ' ';
    pts += number(v.x) + ',' + number(top - v.y);
  }
  return pts;
}

}  // namespace

std::string number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_report(std::ostream& out, const std::string& polygon_name, const StabilityReport& r) {
  field(out, "polygon", polygon_name);
  field(out, "itinerary", r.itinerary.to_string());
  field(out, "period", std::to_string(r.itinerary.period()));
  field(out, "verdict", std::string(to_string(r.verdict)));
  field(out, "reason", r.reason);
  field(out, "alternating_sum", optional_number(r.alternating_sum));
  field(out, "departure", optional_number(r.departure));
  field(out, "cylinder_angle", r.cylinder_angle ? number(*r.cylinder_angle) : "-");
  field(out, "omega0", optional_number(r.omega0));
  field(out, "length", optional_number(r.total_length));
  field(out, "omega0_length", optional_number(r.omega0_length));
  field(out, "l", optional_number(r.l));
  field(out, "r", optional_number(r.r));
  field(out, "sum_l", optional_number(r.sum_l));
  field(out, "sum_r", optional_number(r.sum_r));
  field(out, "derivative_l", optional_number(r.derivative_l));
  field(out, "derivative_r", optional_number(r.derivative_r));
  field(out, "base_point", optional_number(r.base_point));
  field(out, "bracket",
        r.bracket ? "(" + number(r.bracket->first) + ", " + number(r.bracket->second) + ")" : "-");
}

void write_continuation_csv(std::ostream& out, const std::vector<ContinuationRow>& rows) {
  out << "lambda,s0,theta0,residual,legal\n";
  for (const auto& row : rows) {
    out << number(row.lambda) << ',' << number(row.s0) << ',' << number(row.theta0) << ','
        << number(row.residual) << ',' << (row.legal ? "true" : "false") << '\n';
  }
}

void write_cycles_csv(std::ostream& out, double lambda, const std::vector<AttractingCycle>& cycles,
                      bool header) {
  if (header) out << "lambda,itinerary,period,side,s,theta,residual\n";
  for (const auto& c : cycles) {
    const PhasePoint& p = c.orbit.points.front();
    out << number(lambda) << ",\"" << c.itinerary.to_string() << "\"," << c.itinerary.period() << ','
        << p.position.side + 1 << ',' << number(p.position.s) << ',' << number(p.theta) << ','
        << number(c.residual) << '\n';
  }
}

void write_slopes_csv(std::ostream& out, const std::vector<SlopeSolution>& slopes) {
  out << "p,q,slope\n";
  for (const auto& s : slopes) out << s.p << ',' << s.q << ',' << number(s.slope) << '\n';
}

void write_reproduce_table(std::ostream& out, const std::vector<ReproduceRow>& rows) {
  std::size_t name_w = 7;
  std::size_t word_w = 9;
  for (const auto& row : rows) {
    name_w = std::max(name_w, row.polygon.size());
    word_w = std::max(word_w, row.known.itinerary.to_string().size());
  }
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-6s %-*s %-*s %-16s %s\n", "status", static_cast<int>(name_w),
                "polygon", static_cast<int>(word_w), "itinerary", "expected", "verdict");
  out << buf;
  std::size_t passed = 0;
  for (const auto& row : rows) {
    passed += row.check.passed ? 1 : 0;
    std::snprintf(buf, sizeof buf, "%-6s %-*s %-*s %-16s %s\n", row.check.passed ? "PASS" : "FAIL",
                  static_cast<int>(name_w), row.polygon.c_str(), static_cast<int>(word_w),
                  row.known.itinerary.to_string().c_str(), std::string(to_string(row.known.expected)).c_str(),
                  std::string(to_string(row.check.report.verdict)).c_str());
    out << buf;
    for (const auto& m : row.check.mismatches) out << "       " << m << '\n';
  }
  out << passed << '/' << rows.size() << " cases passed\n";
}

void write_cases_csv(std::ostream& out, const std::vector<ReproduceRow>& rows) {
  out << "polygon,itinerary,expected,verdict,status,reconstructed,source\n";
  for (const auto& row : rows) {
    out << row.polygon << ",\"" << row.known.itinerary.to_string() << "\"," << to_string(row.known.expected)
        << ',' << to_string(row.check.report.verdict) << ',' << (row.check.passed ? "PASS" : "FAIL") << ','
        << (row.known.reconstructed ? "true" : "false") << ",\"" << row.known.source << "\"\n";
  }
}

void write_svg(std::ostream& out, const Polygon& polygon, const OrbitSegment& billiard,
               const OrbitSegment& pinball) {
  double min_x = polygon.vertex(0).x, max_x = min_x;
  double min_y = polygon.vertex(0).y, max_y = min_y;
  for (const Vec2& v : polygon.vertices()) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  const double margin = 0.05 * std::max(max_x - min_x, max_y - min_y);
  const double width = max_x - min_x + 2 * margin;
  const double height = max_y - min_y + 2 * margin;
  const double stroke = 0.004 * std::max(width, height);
  // SVG y grows downward; flip about the top of the bounding box.
  const double top = max_y;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << number(min_x - margin) << ' '
      << number(-margin) << ' ' << number(width) << ' ' << number(height) << "\" width=\"600\" height=\""
      << number(600.0 * height / width) << "\">\n";
  std::string outline;
  for (const Vec2& v : polygon.vertices()) {
    if (!outline.empty()) outline += ' ';
    outline += number(v.x) + ',' + number(top - v.y);
  }
  out << "  <polygon id=\"boundary\" points=\"" << outline << "\" fill=\"none\" stroke=\"black\" stroke-width=\""
      << number(stroke) << "\"/>\n";
  if (!billiard.points.empty()) {
    out << "  <polyline id=\"billiard\" points=\"" << points_attribute(polygon, billiard, top)
        << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"" << number(stroke)
        << "\" stroke-dasharray=\"" << number(4 * stroke) << ',' << number(3 * stroke) << "\"/>\n";
  }
  if (!pinball.points.empty()) {
    out << "  <polyline id=\"pinball\" points=\"" << points_attribute(polygon, pinball, top)
        << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"" << number(stroke) << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace pinball::cli
