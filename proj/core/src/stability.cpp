#include "pinball/stability.hpp"

#include <cmath>
#include <numeric>

#include "pinball/error.hpp"

namespace pinball {

namespace {

constexpr double kAltSumTolerance = 1e-10;
constexpr double kOrbitTolerance = 1e-8;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

StabilityReport classify_ping_pong(const Polygon& polygon, const Itinerary& itinerary,
                                   StabilityReport report) {
  const Itinerary root = itinerary.primitive();
  const int i = root[0];
  const int j = root[1];
  report.alternating_sum = 2.0 * polygon.beta(i, j);
  if (std::abs(polygon.beta(i, j)) > 1e-12) {
    report.reason = "sides " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are not parallel";
    return report;
  }
  const Vec2 origin = polygon.side_start(i);
  const double a = dot(polygon.side_start(j) - origin, polygon.direction(i));
  const double b = dot(polygon.side_end(j) - origin, polygon.direction(i));
  const double lo = std::max(0.0, std::min(a, b));
  const double hi = std::min(polygon.side_length(i), std::max(a, b));
  if (!(hi - lo > polygon.vertex_tolerance())) {
    report.reason = "parallel sides do not face each other";
    return report;
  }
  const double mid = 0.5 * (lo + hi);
  if (!realize_orbit(polygon, root, {{i, mid}, 0.0}, 1.0).legal) {
    report.reason = "perpendicular segment is blocked";
    return report;
  }
  report.verdict = Verdict::PingPong;
  report.reason = "perpendicular bounce between parallel sides";
  report.departure = 0.0;
  report.l = lo;
  report.r = hi;
  report.base_point = mid;
  return report;
}

StabilityReport classify_odd(const Polygon& polygon, const Itinerary& itinerary, StabilityReport report) {
  PhasePoint p;
  try {
    p = periodic_point(polygon, itinerary, 1.0);
  } catch (const Error& e) {
    report.reason = e.what();
    return report;
  }
  const Realization r = realize_orbit(polygon, itinerary, p, 1.0);
  if (!r.legal || !(r.residual < kOrbitTolerance)) {
    report.reason = "odd word is not realized by a billiard orbit";
    return report;
  }
  report.verdict = Verdict::OddPeriod;
  report.reason = "odd period orbit";
  report.departure = p.theta;
  report.base_point = p.position.s;
  return report;
}

// Zero of the affine function D on [l, r].
double zero_between(double l, double r, double dl, double dr) {
  return l + (r - l) * dl / (dl - dr);
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::LambdaStable: return "LambdaStable";
    case Verdict::NotLambdaStable: return "NotLambdaStable";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::PingPong: return "PingPong";
    case Verdict::OddPeriod: return "OddPeriod";
    case Verdict::NoSuchOrbit: return "NoSuchOrbit";
  }
  return "Unknown";
}

bool is_lambda_stable(Verdict verdict) {
  return verdict == Verdict::LambdaStable || verdict == Verdict::PingPong ||
         verdict == Verdict::OddPeriod;
}

double endpoint_sum(const Polygon& polygon, const Cylinder& cylinder, double s) {
  const auto lengths = path_lengths(polygon, cylinder, s).cumulative;
  double sum = 0.0;
  for (std::size_t k = 1; k <= lengths.size(); ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * cylinder.theta(k) * lengths[k - 1];
  }
  return sum;
}

double slope_derivative(const Polygon& polygon, const Cylinder& cylinder, double s) {
  return (cylinder.total_length * cylinder.omega0 - endpoint_sum(polygon, cylinder, s)) /
         std::cos(cylinder.departure());
}

double slope_derivative(const Polygon& polygon, const Itinerary& itinerary, double s) {
  return slope_derivative(polygon, build_cylinder(polygon, itinerary), s);
}

SufficientCheck sufficient_check(const Polygon& polygon, const Cylinder& cylinder, double a, double b) {
  const double vtol = polygon.vertex_tolerance();
  if (!(a < b) || a < cylinder.base.l - vtol || b > cylinder.base.r + vtol) {
    throw Error(ErrorCode::InvalidBracket, "need l <= a < b <= r");
  }
  SufficientCheck out;
  out.sum_a = endpoint_sum(polygon, cylinder, a);
  out.sum_b = endpoint_sum(polygon, cylinder, b);
  out.omega0_length = cylinder.omega0 * cylinder.total_length;
  out.holds = out.sum_a + kStrictMargin < out.omega0_length &&
              out.omega0_length < out.sum_b - kStrictMargin;
  return out;
}

SufficientCheck sufficient_check(const Polygon& polygon, const Itinerary& itinerary, double a, double b) {
  return sufficient_check(polygon, build_cylinder(polygon, itinerary), a, b);
}

StabilityReport classify(const Polygon& polygon, const Itinerary& itinerary) {
  itinerary.validate(polygon.size());
  StabilityReport report;
  report.itinerary = itinerary;

  if (itinerary.primitive().period() == 2) return classify_ping_pong(polygon, itinerary, report);
  if (!itinerary.is_even()) return classify_odd(polygon, itinerary, report);

  report.alternating_sum = alternating_beta_sum(polygon, itinerary);
  if (std::abs(report.alternating_sum) > kAltSumTolerance) {
    report.reason = "alternating beta sum is non-zero";
    return report;
  }
  report.departure = departure_angle(polygon, itinerary);
  report.omega0 = omega0(polygon, itinerary);

  Cylinder cyl;
  try {
    cyl = build_cylinder(polygon, itinerary);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyInterval) throw;
    const auto angle = cylinder_angle(polygon, itinerary);
    if (angle) {
      try {
        const BaseInterval base = base_interval_at(polygon, itinerary, *angle);
        report.verdict = Verdict::NotLambdaStable;
        report.reason = "cylinder angle differs from the departure angle";
        report.cylinder_angle = *angle;
        report.l = base.l;
        report.r = base.r;
        return report;
      } catch (const Error& inner) {
        if (inner.code() != ErrorCode::EmptyInterval) throw;
      }
    }
    report.reason = "word is not realized by a billiard cylinder";
    return report;
  }

  report.l = cyl.base.l;
  report.r = cyl.base.r;
  report.total_length = cyl.total_length;
  report.omega0_length = cyl.omega0 * cyl.total_length;
  report.sum_l = endpoint_sum(polygon, cyl, cyl.base.l);
  report.sum_r = endpoint_sum(polygon, cyl, cyl.base.r);
  report.derivative_l = slope_derivative(polygon, cyl, cyl.base.l);
  report.derivative_r = slope_derivative(polygon, cyl, cyl.base.r);

  if (report.sum_l + kStrictMargin < report.omega0_length &&
      report.omega0_length < report.sum_r - kStrictMargin) {
    report.verdict = Verdict::LambdaStable;
    report.reason = "sufficient condition holds on (l, r)";
    report.bracket = std::make_pair(cyl.base.l, cyl.base.r);
    report.base_point = zero_between(cyl.base.l, cyl.base.r, report.derivative_l, report.derivative_r);
  } else if (report.derivative_l * report.derivative_r > 0.0 &&
             std::abs(report.derivative_l) > kStrictMargin &&
             std::abs(report.derivative_r) > kStrictMargin) {
    report.verdict = Verdict::NotLambdaStable;
    report.reason = "endpoint derivatives share a sign";
  } else {
    report.verdict = Verdict::Inconclusive;
    report.reason = "endpoint inequalities are not strict";
  }
  return report;
}

PhasePoint periodic_point(const Polygon& polygon, const Itinerary& itinerary, double lambda) {
  itinerary.validate(polygon.size());
  const double theta = periodic_departure_angle(polygon, itinerary, lambda);
  std::vector<double> angles(itinerary.period() + 1);
  angles[0] = theta;
  for (std::size_t k = 0; k < itinerary.period(); ++k) {
    angles[k + 1] = lambda * (polygon.beta(itinerary[k], itinerary[k + 1]) - angles[k]);
  }
  const AffineMap1D map = affine_return_map(polygon, itinerary, angles);
  if (std::abs(map.slope - 1.0) < 1e-14) {
    throw Error(ErrorCode::SlopeOne, "return map of \"" + itinerary.to_string() + "\" has slope one");
  }
  return {{itinerary[0], *map.fixed_point()}, theta};
}

std::vector<double> lambda_grid(double a, double b, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {a};
  std::vector<double> grid(n);
  for (std::size_t k = 0; k < n; ++k) {
    grid[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  grid.back() = b;
  return grid;
}

std::vector<ContinuationRow> continue_orbit(const Polygon& polygon, const Itinerary& itinerary,
                                            const std::vector<double>& lambdas) {
  itinerary.validate(polygon.size());
  if (itinerary.primitive().period() == 2) {
    throw Error(ErrorCode::SlopeOne, "ping-pong orbits come in a continuum");
  }
  const bool even = itinerary.is_even();
  if (even && std::abs(alternating_beta_sum(polygon, itinerary)) > kAltSumTolerance) {
    throw Error(ErrorCode::NecessaryConditionFailed,
                "alternating beta sum of \"" + itinerary.to_string() + "\" is non-zero");
  }

  // s0(1) is the zero of dF/dlambda(., 1), an affine function of s.
  auto limit_at_one = [&]() {
    try {
      const Cylinder cyl = build_cylinder(polygon, itinerary);
      const double dl = slope_derivative(polygon, cyl, cyl.base.l);
      const double dr = slope_derivative(polygon, cyl, cyl.base.r);
      if (dl != dr) return zero_between(cyl.base.l, cyl.base.r, dl, dr);
    } catch (const Error&) {
    }
    const double h = 1e-5;
    const AffineMap1D up = affine_return_map(polygon, itinerary, 1.0 + h);
    const AffineMap1D down = affine_return_map(polygon, itinerary, 1.0 - h);
    return -(up.intercept - down.intercept) / (up.slope - down.slope);
  };

  std::vector<ContinuationRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) {
    ContinuationRow row{lambda, kNan, kNan, kNan, false};
    try {
      if (!(lambda > 0.0)) throw Error(ErrorCode::BadParameter, "lambda must be positive");
      PhasePoint p;
      if (even && lambda == 1.0) {
        p = {{itinerary[0], limit_at_one()}, departure_angle(polygon, itinerary)};
      } else {
        p = periodic_point(polygon, itinerary, lambda);
      }
      const AffineMap1D map = affine_return_map(polygon, itinerary, lambda);
      row.s0 = p.position.s;
      row.theta0 = p.theta;
      row.residual = std::abs(map(row.s0) - row.s0);
      row.legal = realize_orbit(polygon, itinerary, p, lambda).legal;
    } catch (const Error&) {
      row.legal = false;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<SlopeSolution> rectangle_admissible_slopes(double w, int max_sum) {
  if (!(w > 0.0)) throw Error(ErrorCode::BadParameter, "aspect ratio must be positive");
  std::vector<SlopeSolution> out{{0, 1, 0.0}, {1, 0, std::numeric_limits<double>::infinity()}};
  for (int total = 2; total <= max_sum; ++total) {
    for (int p = 1; p < total; ++p) {
      const int q = total - p;
      if (std::gcd(p, q) != 1) continue;
      const double pd = p;
      const double qd = q;
      const double candidate = (pd / qd) / std::tan(kPi * pd / (2.0 * (pd + qd)));
      if (std::abs(w - candidate) < 1e-9) out.push_back({p, q, pd / (qd * w)});
    }
  }
  return out;
}

}  // namespace pinball
