#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pinball/catalog.hpp"
#include "pinball/dynamics.hpp"
#include "pinball/stability.hpp"

namespace pinball::cli {

/// 12 significant digits; "nan" and "inf" spelled out.
std::string number(double value);

void write_report(std::ostream& out, const std::string& polygon_name, const StabilityReport& report);
void write_continuation_csv(std::ostream& out, const std::vector<ContinuationRow>& rows);
void write_cycles_csv(std::ostream& out, double lambda, const std::vector<AttractingCycle>& cycles,
                      bool header);
void write_slopes_csv(std::ostream& out, const std::vector<SlopeSolution>& slopes);

struct ReproduceRow {
  std::string polygon;
  KnownCase known;
  CaseCheck check;
};
void write_reproduce_table(std::ostream& out, const std::vector<ReproduceRow>& rows);
void write_cases_csv(std::ostream& out, const std::vector<ReproduceRow>& rows);

/// Polygon outline, the billiard orbit dashed and the pinball orbit solid.
/// Either orbit may be empty.
void write_svg(std::ostream& out, const Polygon& polygon, const OrbitSegment& billiard,
               const OrbitSegment& pinball);

}  // namespace pinball::cli
