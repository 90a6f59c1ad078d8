#include "pinball/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "pinball/dynamics.hpp"
#include "pinball/error.hpp"

namespace pinball {

namespace {

const double kSqrt3 = std::sqrt(3.0);

KnownCase make_case(std::vector<int> labels, Verdict expected, std::string source,
                    bool reconstructed = false) {
  KnownCase c;
  c.itinerary = Itinerary::from_labels(std::move(labels));
  c.expected = expected;
  c.source = std::move(source);
  c.reconstructed = reconstructed;
  return c;
}

KnownCase reversed_case(const KnownCase& forward) {
  KnownCase c;
  c.itinerary = forward.itinerary.reversed();
  c.expected = forward.expected;
  c.source = "time reversal of " + forward.itinerary.to_string();
  c.reconstructed = forward.reconstructed;
  return c;
}

void add_with_reverse(std::vector<KnownCase>& cases, KnownCase forward) {
  KnownCase back = reversed_case(forward);
  cases.push_back(std::move(forward));
  cases.push_back(std::move(back));
}

double parse_parameter(std::string_view name, std::string_view text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(std::string(text), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::BadParameter, "bad parameter in \"" + std::string(name) + "\"");
  }
  return value;
}

// Splits "family:value" or "family(value)".
std::pair<std::string_view, std::string_view> split_name(std::string_view name) {
  const auto colon = name.find(':');
  if (colon != std::string_view::npos) return {name.substr(0, colon), name.substr(colon + 1)};
  const auto open = name.find('(');
  if (open != std::string_view::npos && name.back() == ')') {
    return {name.substr(0, open), name.substr(open + 1, name.size() - open - 2)};
  }
  return {name, {}};
}

void add_regular_cases(std::vector<KnownCase>& cases, int d) {
  for (int m = 1; 2 * m < d; ++m) {
    const int g = std::gcd(d, m);
    const int period = d / g;
    const double factor = 1.0 - 2.0 * m / d;
    for (int start = 1; start <= g; ++start) {
      std::vector<int> word;
      for (int k = 0; k < period; ++k) word.push_back((start - 1 + k * m) % d + 1);
      const std::string label = "Fagnano step " + std::to_string(m);
      if (period % 2 == 1) {
        add_with_reverse(cases, make_case(word, Verdict::OddPeriod, label + ", odd period"));
        std::vector<int> twice(word);
        twice.insert(twice.end(), word.begin(), word.end());
        KnownCase doubled = make_case(twice, Verdict::LambdaStable, label + ", traversed twice");
        doubled.departure = kPi / 2 * factor;
        doubled.omega0 = kPi / 4 * factor;
        cases.push_back(std::move(doubled));
      } else {
        KnownCase forward = make_case(word, Verdict::LambdaStable, label);
        forward.departure = kPi / 2 * factor;
        forward.omega0 = kPi / 4 * factor;
        add_with_reverse(cases, std::move(forward));
      }
    }
  }
  if (d % 2 == 0) {
    for (int i = 1; i <= d / 2; ++i) {
      cases.push_back(make_case({i, i + d / 2}, Verdict::PingPong, "opposite sides"));
    }
  }
}

CatalogEntry square_entry() {
  CatalogEntry e{"square", rectangle(1.0), {}};
  e.cases.push_back(make_case({1, 3}, Verdict::PingPong, "ping-pong"));
  e.cases.push_back(make_case({2, 4}, Verdict::PingPong, "ping-pong"));
  for (auto word : {std::vector<int>{1, 2, 3, 4}, std::vector<int>{1, 4, 3, 2}}) {
    KnownCase c = make_case(word, Verdict::LambdaStable, "Fagnano step 1");
    c.departure = word[1] == 2 ? kPi / 4 : -kPi / 4;
    c.omega0 = word[1] == 2 ? kPi / 8 : -kPi / 8;
    e.cases.push_back(std::move(c));
  }
  KnownCase slope_half;
  slope_half.itinerary = rectangle_slope_word(1.0, 1, 2);
  slope_half.expected = Verdict::NotLambdaStable;
  slope_half.source = "slope 1/2 cylinder, departure angle condition fails";
  slope_half.reconstructed = true;
  e.cases.push_back(std::move(slope_half));
  return e;
}

CatalogEntry rectangle_entry(double w) {
  CatalogEntry e{"rectangle:" + std::to_string(w), rectangle(w), {}};
  e.cases.push_back(make_case({1, 3}, Verdict::PingPong, "ping-pong"));
  e.cases.push_back(make_case({2, 4}, Verdict::PingPong, "ping-pong"));
  for (const SlopeSolution& sol : rectangle_admissible_slopes(w, 50)) {
    if (sol.p == 0 || sol.q == 0) continue;
    KnownCase c;
    c.itinerary = rectangle_slope_word(w, sol.p, sol.q);
    c.expected = Verdict::LambdaStable;
    c.source = "admissible slope " + std::to_string(sol.p) + "/(" + std::to_string(sol.q) + " w)";
    c.reconstructed = true;
    add_with_reverse(e.cases, std::move(c));
  }
  return e;
}

CatalogEntry equilateral_entry() {
  CatalogEntry e{"equilateral", regular_polygon(3), {}};
  add_with_reverse(e.cases, make_case({1, 2, 3}, Verdict::OddPeriod, "Fagnano, odd period"));
  KnownCase c = make_case({1, 2, 1, 3}, Verdict::LambdaStable, "perpendicular period four cylinder");
  c.departure = kPi / 3;
  c.omega0 = kPi / 6;
  c.total_length = kSqrt3;
  c.lengths_l = {kSqrt3 / 2, kSqrt3, kSqrt3, kSqrt3};
  c.lengths_r = {0.0, 0.0, kSqrt3 / 2, kSqrt3};
  c.sum_l = 0.0;
  c.sum_r = kPi / kSqrt3;
  add_with_reverse(e.cases, std::move(c));
  return e;
}

CatalogEntry tri306090_entry() {
  CatalogEntry e{"tri306090", build_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, kSqrt3}}), {}};
  const double s3 = kSqrt3;

  KnownCase a = make_case({1, 3, 2, 3, 2, 3}, Verdict::LambdaStable,
                          "perpendicular to the short leg and the hypotenuse");
  a.departure = 0.0;
  a.omega0 = -5 * kPi / 18;
  a.total_length = 2 * s3;
  a.lengths_l = {0.0, 2 / s3, s3, 4 / s3, 2 * s3, 2 * s3};
  a.lengths_r = {s3, s3, s3, s3, s3, 2 * s3};
  a.sum_l = -7 * kPi / (3 * s3);
  a.sum_r = 0.0;
  add_with_reverse(e.cases, std::move(a));

  KnownCase b = make_case({1, 2, 3, 2, 3, 2, 1, 3, 2, 3}, Verdict::LambdaStable,
                          "perpendicular to the long leg");
  b.departure = kPi / 6;
  b.omega0 = kPi / 5;
  b.total_length = 6.0;
  b.lengths_l = {2, 2, 2, 2, 2, 4, 4, 5, 6, 6};
  b.lengths_r = {0, 1, 1.5, 2, 3, 3, 4, 4.5, 5, 6};
  b.sum_l = 0.0;
  b.sum_r = 3 * kPi / 2;
  add_with_reverse(e.cases, std::move(b));

  KnownCase c = make_case({1, 2, 3, 2, 1, 3}, Verdict::LambdaStable, "perpendicular to the hypotenuse");
  c.departure = kPi / 3;
  c.omega0 = kPi / 6;
  c.total_length = 2 * s3;
  c.lengths_l = {2 / s3, s3, 4 / s3, 2 * s3, 2 * s3, 2 * s3};
  c.lengths_r = {0.0, s3 / 2, s3, s3, 3 * s3 / 2, 2 * s3};
  c.sum_l = kPi / (3 * s3);
  c.sum_r = s3 * kPi / 2;
  add_with_reverse(e.cases, std::move(c));
  return e;
}

CatalogEntry tri454590_entry() {
  CatalogEntry e{"tri454590", build_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}}), {}};
  add_with_reverse(e.cases, make_case({1, 3, 2, 3}, Verdict::LambdaStable,
                                      "period four, perpendicular to the legs", true));
  add_with_reverse(e.cases, make_case({1, 2, 3, 2, 1, 3}, Verdict::LambdaStable,
                                      "period six, perpendicular to the hypotenuse", true));
  return e;
}

}  // namespace

Polygon regular_polygon(int sides) {
  if (sides < 3) throw Error(ErrorCode::BadParameter, "a polygon needs at least 3 sides");
  std::vector<Vec2> v;
  Vec2 at{0.0, 0.0};
  for (int k = 0; k < sides; ++k) {
    v.push_back(at);
    const double phi = 2.0 * kPi * k / sides;
    at = at + Vec2{std::cos(phi), std::sin(phi)};
  }
  return build_polygon(std::move(v));
}

Polygon rectangle(double width) {
  if (!(width > 0.0)) throw Error(ErrorCode::BadParameter, "rectangle width must be positive");
  return build_polygon({{0.0, 0.0}, {width, 0.0}, {width, 1.0}, {0.0, 1.0}});
}

CatalogEntry known_polygon(std::string_view name) {
  const auto [family, param] = split_name(name);
  if (param.empty()) {
    if (family == "square") return square_entry();
    if (family == "equilateral") return equilateral_entry();
    if (family == "hexagon") {
      CatalogEntry e{"hexagon", regular_polygon(6), {}};
      add_regular_cases(e.cases, 6);
      return e;
    }
    if (family == "tri306090") return tri306090_entry();
    if (family == "tri454590") return tri454590_entry();
  } else if (family == "rectangle") {
    const double w = parse_parameter(name, param);
    if (!(w > 0.0)) throw Error(ErrorCode::BadParameter, "rectangle width must be positive");
    CatalogEntry e = rectangle_entry(w);
    e.name = std::string(name);
    return e;
  } else if (family == "regular") {
    const double d = parse_parameter(name, param);
    if (d != std::floor(d) || d < 3 || d > 1000) {
      throw Error(ErrorCode::BadParameter, "regular polygon needs an integer side count >= 3");
    }
    const int sides = static_cast<int>(d);
    CatalogEntry e{"regular:" + std::to_string(sides), regular_polygon(sides), {}};
    add_regular_cases(e.cases, sides);
    return e;
  }
  if (family == "rectangle" || family == "regular") {
    throw Error(ErrorCode::BadParameter, "\"" + std::string(name) + "\" needs a parameter");
  }
  throw Error(ErrorCode::UnknownName, "unknown polygon \"" + std::string(name) + "\"");
}

std::vector<std::string> catalog_names() {
  return {"square",    "rectangle:0.866025403784439", "rectangle:2", "equilateral", "hexagon",
          "tri306090", "tri454590",                   "regular:5",   "regular:7",   "regular:8"};
}

Itinerary rectangle_slope_word(double width, int p, int q) {
  if (p < 1 || q < 1) throw Error(ErrorCode::BadParameter, "slope word needs p, q >= 1");
  const Polygon rect = rectangle(width);
  PhasePoint at{{0, width / (2.0 * p)}, std::atan2(q * width, static_cast<double>(p))};
  std::vector<int> word;
  const int period = 2 * (p + q);
  for (int k = 0; k < period; ++k) {
    word.push_back(at.position.side);
    if (k + 1 < period) at = billiard_step(rect, at);
  }
  return Itinerary(std::move(word));
}

namespace {

void compare(std::vector<std::string>& out, const char* what, std::optional<double> expected,
             double got, double tol) {
  if (!expected) return;
  if (!(std::abs(*expected - got) <= tol)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: expected %.12g, got %.12g", what, *expected, got);
    out.emplace_back(buf);
  }
}

}  // namespace

CaseCheck check_case(const Polygon& polygon, const KnownCase& known) {
  constexpr double kAngleTol = 1e-12;
  constexpr double kLengthTol = 1e-9;
  CaseCheck out;
  out.report = classify(polygon, known.itinerary);
  if (out.report.verdict != known.expected) {
    out.mismatches.push_back("verdict: expected " + std::string(to_string(known.expected)) + ", got " +
                             std::string(to_string(out.report.verdict)));
  }
  compare(out.mismatches, "departure", known.departure, out.report.departure, kAngleTol);
  compare(out.mismatches, "omega0", known.omega0, out.report.omega0, kAngleTol);
  compare(out.mismatches, "L", known.total_length, out.report.total_length, kLengthTol);
  compare(out.mismatches, "sum(l)", known.sum_l, out.report.sum_l, kLengthTol);
  compare(out.mismatches, "sum(r)", known.sum_r, out.report.sum_r, kLengthTol);
  if (!known.lengths_l.empty() || !known.lengths_r.empty()) {
    try {
      const Cylinder cyl = build_cylinder(polygon, known.itinerary);
      auto table = [&](const char* what, const std::vector<double>& expected,
                       const std::vector<double>& got) {
        if (expected.empty()) return;
        if (expected.size() != got.size()) {
          out.mismatches.push_back(std::string(what) + ": wrong length");
          return;
        }
        for (std::size_t k = 0; k < expected.size(); ++k) {
          const std::string label = std::string(what) + "[" + std::to_string(k + 1) + "]";
          compare(out.mismatches, label.c_str(), expected[k], got[k], kLengthTol);
        }
      };
      table("L_k(l)", known.lengths_l, cyl.lengths_l);
      table("L_k(r)", known.lengths_r, cyl.lengths_r);
    } catch (const Error& e) {
      out.mismatches.emplace_back(e.what());
    }
  }
  out.passed = out.mismatches.empty();
  return out;
}

}  // namespace pinball
