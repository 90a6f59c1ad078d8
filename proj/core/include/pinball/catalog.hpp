#pragma once
/**
 * @file catalog.hpp
 * @brief Built-in polygons and their known lambda-stable cylinders.
 *
 * Names: square, rectangle:W, equilateral, hexagon, tri306090, tri454590,
 * regular:D. "rectangle(W)" and "regular(D)" are accepted as well.
 * Triangles sit on a horizontal base of length 1 at the origin and all
 * sides are labeled counterclockwise starting from that base.
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pinball/geometry.hpp"
#include "pinball/itinerary.hpp"
#include "pinball/stability.hpp"

namespace pinball {

struct KnownCase {
  Itinerary itinerary;
  Verdict expected = Verdict::LambdaStable;
  std::string source;          ///< what the expectation rests on
  bool reconstructed = false;  ///< word obtained by unfolding rather than given explicitly

  std::optional<double> departure;
  std::optional<double> omega0;
  std::optional<double> total_length;
  std::vector<double> lengths_l;  ///< empty when not tabulated
  std::vector<double> lengths_r;
  std::optional<double> sum_l;
  std::optional<double> sum_r;
};

struct CatalogEntry {
  std::string name;
  Polygon polygon;
  std::vector<KnownCase> cases;
};

Polygon regular_polygon(int sides);
Polygon rectangle(double width);

CatalogEntry known_polygon(std::string_view name);

/// Names used by the reproduction suite.
std::vector<std::string> catalog_names();

struct CaseCheck {
  bool passed = false;
  StabilityReport report;
  std::vector<std::string> mismatches;  ///< one line per failed expectation
};

/// Classifies the case and compares verdict and every tabulated witness:
/// angles to 1e-12, lengths and length-weighted sums to 1e-9.
CaseCheck check_case(const Polygon& polygon, const KnownCase& known);

/// Word of the cylinder with slope p / (q w) in the w x 1 rectangle, starting on the bottom side.
Itinerary rectangle_slope_word(double width, int p, int q);

}  // namespace pinball
