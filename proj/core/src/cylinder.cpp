#include "pinball/cylinder.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pinball/error.hpp"

namespace pinball {

namespace {

constexpr double kClosureTolerance = 1e-9;
constexpr double kAltSumTolerance = 1e-10;

void require_even(const Itinerary& itinerary) {
  if (!itinerary.is_even()) {
    throw Error(ErrorCode::OddPeriod, "\"" + itinerary.to_string() + "\" has odd period");
  }
}

double sign_of_power(std::size_t k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// Angles theta_0 .. theta_p at lambda, any period.
std::vector<double> angle_cycle(const Polygon& polygon, const Itinerary& itinerary, double lambda) {
  const auto beta = beta_sequence(polygon, itinerary);
  std::vector<double> theta(beta.size() + 1);
  theta[0] = periodic_departure_angle(polygon, itinerary, lambda);
  for (std::size_t k = 0; k < beta.size(); ++k) theta[k + 1] = lambda * (beta[k] - theta[k]);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    if (!(std::abs(theta[k]) < kPi / 2)) {
      throw Error(ErrorCode::AngleOverflow, "theta_" + std::to_string(k) + "(" +
                                                std::to_string(lambda) +
                                                ") leaves (-pi/2, pi/2)");
    }
  }
  return theta;
}

struct Bound {
  double value;
  int link;
  int corner;
};

}  // namespace

std::optional<double> AffineMap1D::fixed_point() const {
  if (slope == 1.0) return std::nullopt;
  return intercept / (1.0 - slope);
}

std::vector<double> beta_sequence(const Polygon& polygon, const Itinerary& itinerary) {
  std::vector<double> beta(itinerary.period());
  for (std::size_t k = 0; k < beta.size(); ++k) beta[k] = polygon.beta(itinerary[k], itinerary[k + 1]);
  return beta;
}

double alternating_beta_sum(const Polygon& polygon, const Itinerary& itinerary) {
  require_even(itinerary);
  const auto beta = beta_sequence(polygon, itinerary);
  double sum = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) sum += sign_of_power(k) * beta[k];
  return sum;
}

double departure_angle(const Polygon& polygon, const Itinerary& itinerary) {
  require_even(itinerary);
  const auto beta = beta_sequence(polygon, itinerary);
  double sum = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    sum += sign_of_power(k + 1) * static_cast<double>(k) * beta[k];
  }
  return sum / static_cast<double>(beta.size());
}

double omega0(const Polygon& polygon, const Itinerary& itinerary) {
  require_even(itinerary);
  const auto beta = beta_sequence(polygon, itinerary);
  const double two_n = static_cast<double>(beta.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const double kk = static_cast<double>(k);
    sum += sign_of_power(k + 1) * kk * (two_n - kk) * beta[k];
  }
  return sum / (2.0 * two_n);
}

double periodic_departure_angle(const Polygon& polygon, const Itinerary& itinerary, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::BadParameter, "lambda must be positive");
  const auto beta = beta_sequence(polygon, itinerary);
  const std::size_t p = beta.size();

  if (p % 2 == 1) {
    // theta -> lambda (beta - theta) composed p times is theta -> -lambda^p theta + c.
    double c = 0.0;
    for (std::size_t k = 0; k < p; ++k) c = lambda * (beta[k] - c);
    return c / (1.0 + std::pow(lambda, static_cast<double>(p)));
  }

  // N(lambda) = sum_k (-lambda)^{p-k} beta_k has coefficient a_m = (-1)^m beta_{p-m}
  // on lambda^m. Divide by (lambda - 1); the remainder is N(1), the alternating sum.
  std::vector<double> a(p + 1, 0.0);
  for (std::size_t m = 1; m <= p; ++m) a[m] = sign_of_power(m) * beta[p - m];
  std::vector<double> q(p, 0.0);
  q[p - 1] = a[p];
  for (std::size_t m = p - 1; m >= 1; --m) q[m - 1] = a[m] + q[m];
  const double remainder = a[0] + q[0];

  double quotient = 0.0;
  double denom = 0.0;
  for (std::size_t m = p; m-- > 0;) {
    quotient = quotient * lambda + q[m];
    denom = denom * lambda + 1.0;
  }
  double theta0 = quotient / denom;
  if (std::abs(remainder) > kAltSumTolerance * 1e-2) {
    const double gap = std::pow(lambda, static_cast<double>(p)) - 1.0;
    if (gap == 0.0) {
      throw Error(ErrorCode::NecessaryConditionFailed,
                  "alternating beta sum of \"" + itinerary.to_string() + "\" is non-zero");
    }
    theta0 += remainder / gap;
  }
  return theta0;
}

std::vector<double> theta_sequence(const Polygon& polygon, const Itinerary& itinerary,
                                   double lambda) {
  require_even(itinerary);
  return angle_cycle(polygon, itinerary, lambda);
}

Chain follow_chain(const Polygon& polygon, const Itinerary& itinerary,
                   const std::vector<double>& angles, double s) {
  const std::size_t p = itinerary.period();
  Chain chain;
  chain.positions.reserve(p + 1);
  chain.lengths.reserve(p);
  chain.positions.push_back(s);
  for (std::size_t k = 0; k < p; ++k) {
    const Projection pr = project(polygon, itinerary[k], chain.positions.back(), angles[k], itinerary[k + 1]);
    chain.positions.push_back(pr.s);
    chain.lengths.push_back(pr.length);
  }
  return chain;
}

AffineMap1D affine_return_map(const Polygon& polygon, const Itinerary& itinerary,
                              const std::vector<double>& angles) {
  const auto beta = beta_sequence(polygon, itinerary);
  double slope = 1.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    slope *= -std::cos(angles[k]) / std::cos(beta[k] - angles[k]);
  }
  const Chain chain = follow_chain(polygon, itinerary, angles, 0.0);
  return {slope, chain.positions.back()};
}

AffineMap1D affine_return_map(const Polygon& polygon, const Itinerary& itinerary, double lambda) {
  return affine_return_map(polygon, itinerary, angle_cycle(polygon, itinerary, lambda));
}

BaseInterval base_interval_at(const Polygon& polygon, const Itinerary& itinerary, double theta0) {
  require_even(itinerary);
  itinerary.validate(polygon.size());
  const auto beta = beta_sequence(polygon, itinerary);
  const std::size_t p = beta.size();
  const double vtol = polygon.vertex_tolerance();

  std::vector<double> theta(p + 1);
  theta[0] = theta0;
  for (std::size_t k = 0; k < p; ++k) theta[k + 1] = beta[k] - theta[k];
  for (std::size_t k = 0; k < p; ++k) {
    if (!(std::abs(theta[k]) < kPi / 2 - kGrazingTolerance) ||
        !(std::abs(beta[k] - theta[k]) < kPi / 2 - kGrazingTolerance)) {
      throw Error(ErrorCode::EmptyInterval,
                  "\"" + itinerary.to_string() + "\" has no valid reflection angles at this departure");
    }
  }

  Bound lower{-std::numeric_limits<double>::infinity(), -1, -1};
  Bound upper{std::numeric_limits<double>::infinity(), -1, -1};
  auto tighten = [&](double coef, double offset, double hi_offset, int link, int corner_lo,
                     int corner_hi) {
    // offset < coef s + B < hi_offset, coef != 0
    double lo = (offset) / coef;
    double hi = (hi_offset) / coef;
    int clo = corner_lo, chi = corner_hi;
    if (coef < 0.0) {
      std::swap(lo, hi);
      std::swap(clo, chi);
    }
    if (lo > lower.value) lower = {lo, link, clo};
    if (hi < upper.value) upper = {hi, link, chi};
  };

  double A = 1.0;
  double B = 0.0;
  struct LengthConstraint {
    double coef, offset;
    int link;
  };
  std::vector<LengthConstraint> length_constraints;
  for (std::size_t k = 0; k < p; ++k) {
    const int side = itinerary[k];
    const int next = itinerary[k + 1];
    const double len = polygon.side_length(side);
    // 0 < A s + B < len
    tighten(A, -B, len - B, static_cast<int>(k), static_cast<int>(polygon.wrap(side)),
            static_cast<int>(polygon.wrap(side + 1)));

    const Projection at0 = project(polygon, side, 0.0, theta[k], next);
    const Projection at1 = project(polygon, side, 1.0, theta[k], next);
    const double a = -std::cos(theta[k]) / std::cos(beta[k] - theta[k]);
    const double dlen = at1.length - at0.length;
    length_constraints.push_back({dlen * A, dlen * B + at0.length, static_cast<int>(k)});
    B = a * B + at0.s;
    A = a * A;
  }

  if (std::abs(A - 1.0) > kClosureTolerance ||
      std::abs(B) > kClosureTolerance * polygon.perimeter()) {
    throw Error(ErrorCode::EmptyInterval,
                "\"" + itinerary.to_string() + "\" does not close up at this departure angle");
  }

  for (const auto& c : length_constraints) {
    if (std::abs(c.coef) < 1e-14) {
      if (c.offset <= 0.0) throw Error(ErrorCode::EmptyInterval, "link runs backwards");
      continue;
    }
    const double root = -c.offset / c.coef;
    if (c.coef > 0.0 && root > lower.value + vtol) lower = {root, c.link, -1};
    if (c.coef < 0.0 && root < upper.value - vtol) upper = {root, c.link, -1};
  }

  if (!(lower.value < upper.value - vtol)) {
    throw Error(ErrorCode::EmptyInterval,
                "\"" + itinerary.to_string() + "\" is not realized at this departure angle");
  }

  BaseInterval out;
  out.l = lower.value;
  out.r = upper.value;
  out.left = {{itinerary[0], out.l}, theta0, lower.link, lower.corner};
  out.right = {{itinerary[0], out.r}, theta0, upper.link, upper.corner};

  if (!polygon.is_convex()) {
    // Sides may shadow each other; check the central orbit against the real boundary.
    BoundaryPoint at{itinerary[0], out.midpoint()};
    double th = theta0;
    for (std::size_t k = 0; k < p; ++k) {
      RayHit hit;
      try {
        hit = cast_ray(polygon, at, th);
      } catch (const Error&) {
        throw Error(ErrorCode::EmptyInterval, "central orbit is blocked");
      }
      if (hit.classification != HitKind::Interior ||
          static_cast<int>(polygon.wrap(hit.target.side)) != itinerary[k + 1]) {
        throw Error(ErrorCode::EmptyInterval, "central orbit is blocked by a reflex corner");
      }
      th = polygon.beta(at.side, hit.target.side) - th;
      at = hit.target;
    }
  }
  return out;
}

BaseInterval base_interval(const Polygon& polygon, const Itinerary& itinerary) {
  require_even(itinerary);
  const double alt = alternating_beta_sum(polygon, itinerary);
  if (std::abs(alt) > kAltSumTolerance) {
    throw Error(ErrorCode::NecessaryConditionFailed,
                "alternating beta sum of \"" + itinerary.to_string() + "\" is " + std::to_string(alt));
  }
  const double theta0 = departure_angle(polygon, itinerary);
  if (!(std::abs(theta0) < kPi / 2)) {
    throw Error(ErrorCode::EmptyInterval, "departure angle outside (-pi/2, pi/2)");
  }
  return base_interval_at(polygon, itinerary, theta0);
}

std::optional<double> cylinder_angle(const Polygon& polygon, const Itinerary& itinerary) {
  require_even(itinerary);
  Isometry g = Isometry::identity();
  for (std::size_t k = 1; k <= itinerary.period(); ++k) {
    const int side = itinerary[k];
    g = g.compose(Isometry::reflection(polygon.side_start(side), polygon.direction(side)));
  }
  const bool pure_translation = std::abs(g.m00 - 1.0) < kClosureTolerance &&
                                std::abs(g.m11 - 1.0) < kClosureTolerance &&
                                std::abs(g.m01) < kClosureTolerance &&
                                std::abs(g.m10) < kClosureTolerance;
  if (!pure_translation || norm(g.t) < kClosureTolerance * polygon.perimeter()) return std::nullopt;
  const int base = itinerary[0];
  const double along_normal = dot(g.t, polygon.normal(base));
  if (!(along_normal > 0.0)) return std::nullopt;
  return std::atan2(dot(g.t, polygon.direction(base)), along_normal);
}

PathLengths path_lengths(const Polygon& polygon, const Cylinder& cylinder, double s) {
  const double vtol = polygon.vertex_tolerance();
  if (s < cylinder.base.l - vtol || s > cylinder.base.r + vtol) {
    throw Error(ErrorCode::OutsideBase, "s = " + std::to_string(s) + " is outside the base interval");
  }
  const Chain chain = follow_chain(polygon, cylinder.itinerary, cylinder.theta_hat, s);
  PathLengths out;
  out.cumulative.reserve(chain.lengths.size());
  double acc = 0.0;
  for (double t : chain.lengths) {
    acc += t;
    out.cumulative.push_back(acc);
  }
  out.total = acc;
  return out;
}

PathLengths path_lengths(const Polygon& polygon, const Itinerary& itinerary, double s) {
  return path_lengths(polygon, build_cylinder(polygon, itinerary), s);
}

Cylinder build_cylinder(const Polygon& polygon, const Itinerary& itinerary) {
  Cylinder c;
  c.itinerary = itinerary;
  c.base = base_interval(polygon, itinerary);
  const auto beta = beta_sequence(polygon, itinerary);
  c.theta_hat.resize(beta.size());
  c.theta_hat[0] = c.base.left.theta;
  for (std::size_t k = 0; k + 1 < beta.size(); ++k) c.theta_hat[k + 1] = beta[k] - c.theta_hat[k];
  c.omega0 = omega0(polygon, itinerary);
  c.lengths_l = path_lengths(polygon, c, c.base.l).cumulative;
  c.lengths_r = path_lengths(polygon, c, c.base.r).cumulative;
  c.total_length = 0.5 * (c.lengths_l.back() + c.lengths_r.back());
  return c;
}

}  // namespace pinball
