#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numeric>

#include "oracle.hpp"
#include "pinball/catalog.hpp"
#include "pinball/cylinder.hpp"
#include "pinball/dynamics.hpp"
#include "pinball/error.hpp"
#include "pinball/stability.hpp"

using namespace pinball;

namespace {

const double kSqrt3 = std::sqrt(3.0);

struct StableCase {
  std::string polygon_name;
  Polygon polygon;
  Itinerary itinerary;
};

std::vector<StableCase> stable_even_cases() {
  std::vector<StableCase> out;
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = known_polygon(name);
    for (const auto& c : e.cases) {
      if (c.expected == Verdict::LambdaStable && c.itinerary.is_even()) {
        out.push_back({e.name, e.polygon, c.itinerary});
      }
    }
  }
  return out;
}

std::vector<Vec2> vertices_of(const Polygon& p) { return {p.vertices().begin(), p.vertices().end()}; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

const Polygon& equilateral() {
  static const Polygon p = regular_polygon(3);
  return p;
}

const Polygon& tri306090() {
  static const Polygon p = known_polygon("tri306090").polygon;
  return p;
}

const Itinerary kEq = Itinerary::parse("1,2,1,3");

}  // namespace

TEST(AlternatingSum, Examples) {
  EXPECT_NEAR(alternating_beta_sum(equilateral(), kEq), 0.0, 1e-12);
  EXPECT_NEAR(alternating_beta_sum(rectangle(1.0), Itinerary::parse("1,3")), 0.0, 1e-12);
  EXPECT_NEAR(alternating_beta_sum(equilateral(), Itinerary::parse("1,3,1,3")), -4 * kPi / 3, 1e-12);
  EXPECT_EQ(code_of([] { alternating_beta_sum(equilateral(), Itinerary::parse("1,2,3")); }), ErrorCode::OddPeriod);
}

TEST(DepartureAngle, Examples) {
  EXPECT_NEAR(departure_angle(equilateral(), kEq), kPi / 3, 1e-12);
  EXPECT_NEAR(departure_angle(tri306090(), Itinerary::parse("1,3,2,3,2,3")), 0.0, 1e-12);
  EXPECT_NEAR(departure_angle(tri306090(), Itinerary::parse("1,2,3,2,3,2,1,3,2,3")), kPi / 6, 1e-12);
  EXPECT_NEAR(departure_angle(tri306090(), Itinerary::parse("1,2,3,2,1,3")), kPi / 3, 1e-12);
  EXPECT_EQ(code_of([] { departure_angle(equilateral(), Itinerary::parse("1,2,3")); }), ErrorCode::OddPeriod);
}

TEST(Omega0, Examples) {
  EXPECT_NEAR(omega0(equilateral(), kEq), kPi / 6, 1e-12);
  EXPECT_NEAR(omega0(tri306090(), Itinerary::parse("1,3,2,3,2,3")), -5 * kPi / 18, 1e-12);
  EXPECT_NEAR(omega0(tri306090(), Itinerary::parse("1,2,3,2,3,2,1,3,2,3")), kPi / 5, 1e-12);
  EXPECT_NEAR(omega0(tri306090(), Itinerary::parse("1,2,3,2,1,3")), kPi / 6, 1e-12);
  EXPECT_EQ(code_of([] { omega0(equilateral(), Itinerary::parse("1,2,3")); }), ErrorCode::OddPeriod);
}

TEST(ThetaSequence, EquilateralAtUnitLambda) {
  const auto theta = theta_sequence(equilateral(), kEq, 1.0);
  const std::vector<double> expected{kPi / 3, 0.0, -kPi / 3, 0.0, kPi / 3};
  ASSERT_EQ(theta.size(), expected.size());
  for (std::size_t k = 0; k < theta.size(); ++k) EXPECT_NEAR(theta[k], expected[k], 1e-12) << k;
}

TEST(ThetaSequence, ClosedFormAwayFromUnitLambda) {
  const auto beta = beta_sequence(equilateral(), kEq);
  std::vector<long double> beta_l(beta.begin(), beta.end());
  for (double lambda : {0.8, 0.9, 0.95, 1.05, 1.1}) {
    const double expected = static_cast<double>(oracle::theta0_quotient(beta_l, lambda));
    EXPECT_NEAR(periodic_departure_angle(equilateral(), kEq, lambda), expected, 1e-13) << lambda;
    EXPECT_NEAR(theta_sequence(equilateral(), kEq, lambda).front(), expected, 1e-13) << lambda;
  }
}

TEST(ThetaSequence, RemovableSingularityLimit) {
  for (double lambda : {1 - 1e-6, 1 + 1e-6}) {
    EXPECT_NEAR(periodic_departure_angle(equilateral(), kEq, lambda), kPi / 3, 1e-6);
  }
  // The deflated form is continuous across 1 far below the step size.
  const double below = periodic_departure_angle(equilateral(), kEq, 1 - 1e-6);
  const double above = periodic_departure_angle(equilateral(), kEq, 1 + 1e-6);
  EXPECT_NEAR(0.5 * (below + above), kPi / 3, 1e-10);
  EXPECT_NEAR(periodic_departure_angle(equilateral(), kEq, 1.0), kPi / 3, 1e-15);
}

TEST(ThetaSequence, ClosesAndFollowsScaledReflectionLaw) {
  for (const auto& c : stable_even_cases()) {
    const auto beta = beta_sequence(c.polygon, c.itinerary);
    for (double lambda : {0.9, 0.97, 1.0, 1.03, 1.1}) {
      std::vector<double> theta;
      try {
        theta = theta_sequence(c.polygon, c.itinerary, lambda);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AngleOverflow);
        continue;
      }
      ASSERT_EQ(theta.size(), c.itinerary.period() + 1);
      EXPECT_NEAR(theta.back(), theta.front(), 1e-12) << c.polygon_name << " " << c.itinerary.to_string();
      for (std::size_t k = 0; k + 1 < theta.size(); ++k) {
        EXPECT_NEAR(theta[k + 1], lambda * (beta[k] - theta[k]), 1e-12);
        EXPECT_LT(std::abs(theta[k]), kPi / 2);
      }
    }
  }
}

TEST(ThetaSequence, Errors) {
  EXPECT_EQ(code_of([] { theta_sequence(equilateral(), Itinerary::parse("1,2,3"), 0.9); }), ErrorCode::OddPeriod);
  EXPECT_EQ(code_of([] { theta_sequence(equilateral(), Itinerary::parse("1,3,1,3"), 1.01); }), ErrorCode::AngleOverflow);
}

TEST(Omega0, MatchesFiniteDifferenceOfDepartureAngle) {
  const double h = 1e-5;
  for (const auto& c : stable_even_cases()) {
    const double fd = (periodic_departure_angle(c.polygon, c.itinerary, 1 + h) -
                       periodic_departure_angle(c.polygon, c.itinerary, 1 - h)) /
                      (2 * h);
    EXPECT_NEAR(fd, omega0(c.polygon, c.itinerary), 1e-6) << c.polygon_name << " " << c.itinerary.to_string();
  }
}

TEST(ReturnMap, IdentityAtUnitLambda) {
  for (const auto& c : stable_even_cases()) {
    const AffineMap1D f = affine_return_map(c.polygon, c.itinerary, 1.0);
    EXPECT_NEAR(f.slope, 1.0, 1e-12) << c.polygon_name << " " << c.itinerary.to_string();
    EXPECT_NEAR(f.intercept, 0.0, 1e-9);
  }
}

TEST(ReturnMap, ExpandsBelowAndContractsAboveUnitLambda) {
  EXPECT_GT(affine_return_map(equilateral(), kEq, 0.9).slope, 1.0);
  EXPECT_LT(affine_return_map(equilateral(), kEq, 1.1).slope, 1.0);
  for (const auto& c : stable_even_cases()) {
    for (double lambda : {0.95, 1.05}) {
      try {
        const double slope = affine_return_map(c.polygon, c.itinerary, lambda).slope;
        EXPECT_GT(slope, 0.0);
        EXPECT_EQ(slope > 1.0, lambda < 1.0) << c.polygon_name << " " << c.itinerary.to_string();
      } catch (const Error&) {
      }
    }
  }
}

TEST(ReturnMap, SlopeIsProductOfExpansionFactors) {
  for (const auto& c : stable_even_cases()) {
    const auto beta = beta_sequence(c.polygon, c.itinerary);
    for (double lambda : {0.9, 1.1}) {
      std::vector<double> theta;
      try {
        theta = theta_sequence(c.polygon, c.itinerary, lambda);
      } catch (const Error&) {
        continue;
      }
      double product = 1.0;
      for (std::size_t k = 0; k < beta.size(); ++k) product *= rho(beta[k] - theta[k], lambda);
      const double slope = affine_return_map(c.polygon, c.itinerary, lambda).slope;
      EXPECT_NEAR(slope / product, 1.0, 1e-10) << c.polygon_name << " " << c.itinerary.to_string();
    }
  }
}

TEST(ReturnMap, ReversedWordAtInverseLambdaInvertsSlope) {
  for (const auto& c : stable_even_cases()) {
    for (double lambda : {0.9, 0.95, 1.05}) {
      try {
        const double forward = affine_return_map(c.polygon, c.itinerary, lambda).slope;
        const double backward = affine_return_map(c.polygon, c.itinerary.reversed(), 1.0 / lambda).slope;
        EXPECT_NEAR(forward * backward, 1.0, 1e-10) << c.polygon_name << " " << c.itinerary.to_string();
      } catch (const Error&) {
      }
    }
  }
}

TEST(BaseInterval, SquarePingPongIsWholeSide) {
  const BaseInterval base = base_interval(rectangle(1.0), Itinerary::parse("1,3"));
  EXPECT_NEAR(base.l, 0.0, 1e-12);
  EXPECT_NEAR(base.r, 1.0, 1e-12);
}

TEST(BaseInterval, EquilateralPeriodFour) {
  const BaseInterval base = base_interval(equilateral(), kEq);
  EXPECT_NEAR(base.l, 0.0, 1e-12);
  EXPECT_NEAR(base.r, 1.0, 1e-12);
  EXPECT_NEAR(base.width(), 1.0, 1e-12);
  EXPECT_NEAR(base.midpoint(), 0.5, 1e-12);
  // Independent check: the first-leg lengths pinned by the tables.
  const auto v = vertices_of(equilateral());
  const Vec2 dir = equilateral().velocity(0, kPi / 3);
  EXPECT_NEAR(oracle::unfolded_lengths(v, kEq.word(), equilateral().point(0, base.l), dir)[0], kSqrt3 / 2, 1e-12);
  EXPECT_NEAR(oracle::unfolded_lengths(v, kEq.word(), equilateral().point(0, base.r), dir)[0], 0.0, 1e-12);
}

TEST(BaseInterval, Errors) {
  EXPECT_EQ(code_of([] { base_interval(equilateral(), Itinerary::parse("1,3,1,3")); }),
            ErrorCode::NecessaryConditionFailed);
  EXPECT_EQ(code_of([] { base_interval(rectangle(1.0), Itinerary::parse("1,2,4,3,2,4")); }),
            ErrorCode::EmptyInterval);
}

TEST(BaseInterval, EndpointsAreGeneralizedDiagonals) {
  for (const auto& c : stable_even_cases()) {
    const Cylinder cyl = build_cylinder(c.polygon, c.itinerary);
    for (double s : {cyl.base.l, cyl.base.r}) {
      PhasePoint p{{c.itinerary[0], s}, cyl.departure()};
      bool corner = false;
      try {
        for (std::size_t k = 0; k < c.itinerary.period(); ++k) p = billiard_step(c.polygon, p);
      } catch (const Error& e) {
        corner = e.code() == ErrorCode::VertexHit || e.code() == ErrorCode::VertexStart;
      }
      EXPECT_TRUE(corner) << c.polygon_name << " " << c.itinerary.to_string() << " s=" << s;
    }
  }
}

TEST(BaseInterval, InteriorPointsRealizeTheWord) {
  for (const auto& c : stable_even_cases()) {
    const Cylinder cyl = build_cylinder(c.polygon, c.itinerary);
    for (double t : {0.1, 0.5, 0.9}) {
      const double s = cyl.base.l + t * cyl.base.width();
      const Realization r = realize_orbit(c.polygon, c.itinerary, {{c.itinerary[0], s}, cyl.departure()}, 1.0);
      EXPECT_TRUE(r.legal) << c.polygon_name << " " << c.itinerary.to_string();
      EXPECT_LT(r.residual, 1e-9);
    }
  }
}

TEST(PathLengths, EquilateralEndpoints) {
  const PathLengths at_l = path_lengths(equilateral(), kEq, 0.0);
  const PathLengths at_r = path_lengths(equilateral(), kEq, 1.0);
  const std::vector<double> l{kSqrt3 / 2, kSqrt3, kSqrt3, kSqrt3};
  const std::vector<double> r{0.0, 0.0, kSqrt3 / 2, kSqrt3};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(at_l.cumulative[k], l[k], 1e-9);
    EXPECT_NEAR(at_r.cumulative[k], r[k], 1e-9);
  }
  EXPECT_NEAR(at_l.total, kSqrt3, 1e-9);
}

TEST(PathLengths, ThirtySixtyNinetyPeriodTenAtRightEndpoint) {
  const Itinerary word = Itinerary::parse("1,2,3,2,3,2,1,3,2,3");
  const Cylinder cyl = build_cylinder(tri306090(), word);
  const std::vector<double> expected{0, 1, 1.5, 2, 3, 3, 4, 4.5, 5, 6};
  const PathLengths at_r = path_lengths(tri306090(), word, cyl.base.r);
  ASSERT_EQ(at_r.cumulative.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_NEAR(at_r.cumulative[k], expected[k], 1e-9) << k;
  EXPECT_NEAR(at_r.total, 6.0, 1e-9);
}

TEST(PathLengths, OutsideBaseThrows) {
  EXPECT_EQ(code_of([] { path_lengths(equilateral(), kEq, 1.2); }), ErrorCode::OutsideBase);
  EXPECT_EQ(code_of([] { path_lengths(equilateral(), kEq, -0.2); }), ErrorCode::OutsideBase);
}

TEST(Cylinder, Invariants) {
  for (const auto& c : stable_even_cases()) {
    SCOPED_TRACE(c.polygon_name + " " + c.itinerary.to_string());
    const Cylinder cyl = build_cylinder(c.polygon, c.itinerary);
    const std::size_t p = c.itinerary.period();
    const auto beta = beta_sequence(c.polygon, c.itinerary);
    ASSERT_EQ(cyl.theta_hat.size(), p);
    EXPECT_NEAR(cyl.departure(), departure_angle(c.polygon, c.itinerary), 1e-12);
    double alternating = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
      EXPECT_NEAR(cyl.theta(k + 1), beta[k] - cyl.theta(k), 1e-12);
      alternating += (k % 2 == 0 ? 1 : -1) * cyl.theta(k);
    }
    EXPECT_NEAR(alternating, 0.0, 1e-12);
    EXPECT_LT(cyl.base.l, cyl.base.r);
    EXPECT_NEAR(cyl.lengths_l.back(), cyl.total_length, 1e-9);
    EXPECT_NEAR(cyl.lengths_r.back(), cyl.total_length, 1e-9);
    for (std::size_t k = 1; k < p; ++k) {
      EXPECT_GE(cyl.lengths_l[k], cyl.lengths_l[k - 1] - 1e-9);
      EXPECT_GE(cyl.lengths_r[k], cyl.lengths_r[k - 1] - 1e-9);
    }
    EXPECT_GE(cyl.lengths_l.front(), -1e-9);
    EXPECT_GE(cyl.lengths_r.front(), -1e-9);
  }
}

TEST(Cylinder, EndpointLengthsMatchUnfoldingOracle) {
  for (const auto& c : stable_even_cases()) {
    SCOPED_TRACE(c.polygon_name + " " + c.itinerary.to_string());
    const Cylinder cyl = build_cylinder(c.polygon, c.itinerary);
    const auto v = vertices_of(c.polygon);
    const Vec2 dir = c.polygon.velocity(c.itinerary[0], cyl.departure());
    const auto at_l = oracle::unfolded_lengths(v, c.itinerary.word(), c.polygon.point(c.itinerary[0], cyl.base.l), dir);
    const auto at_r = oracle::unfolded_lengths(v, c.itinerary.word(), c.polygon.point(c.itinerary[0], cyl.base.r), dir);
    for (std::size_t k = 0; k < at_l.size(); ++k) {
      EXPECT_NEAR(cyl.lengths_l[k], at_l[k], 1e-9) << k;
      EXPECT_NEAR(cyl.lengths_r[k], at_r[k], 1e-9) << k;
    }
  }
}

TEST(Cylinder, LengthsAreAffineInBasePoint) {
  for (const auto& c : stable_even_cases()) {
    const Cylinder cyl = build_cylinder(c.polygon, c.itinerary);
    const double m = cyl.base.midpoint();
    const PathLengths mid = path_lengths(c.polygon, cyl, m);
    for (std::size_t k = 0; k < mid.cumulative.size(); ++k) {
      EXPECT_NEAR(mid.cumulative[k], 0.5 * (cyl.lengths_l[k] + cyl.lengths_r[k]), 1e-9);
    }
    EXPECT_NEAR(mid.total, cyl.total_length, 1e-9);
  }
}

TEST(RegularPolygons, FagnanoLadderAndMidpointIdentities) {
  for (int d = 3; d <= 8; ++d) {
    const Polygon poly = regular_polygon(d);
    for (int m = 1; 2 * m < d; ++m) {
      const int period = d / std::gcd(d, m);
      std::vector<int> labels;
      for (int k = 0; k < (period % 2 == 0 ? period : 2 * period); ++k) labels.push_back(k * m % d + 1);
      const Itinerary word = Itinerary::from_labels(labels);
      SCOPED_TRACE("d=" + std::to_string(d) + " m=" + std::to_string(m));
      const Cylinder cyl = build_cylinder(poly, word);
      EXPECT_NEAR(cyl.departure(), kPi / 2 * (1 - 2.0 * m / d), 1e-12);
      EXPECT_NEAR(cyl.omega0, kPi / 4 * (1 - 2.0 * m / d), 1e-12);
      const auto& ll = cyl.lengths_l;
      const auto& lr = cyl.lengths_r;
      for (std::size_t k = 1; k < ll.size(); k += 2) {
        EXPECT_NEAR(ll[k] - ll[k - 1], lr[0], 1e-9) << "k=" << k;
        EXPECT_NEAR(lr[k] - lr[k - 1], ll[0], 1e-9) << "k=" << k;
      }
      EXPECT_NEAR(endpoint_sum(poly, cyl, cyl.base.midpoint()), cyl.omega0 * cyl.total_length, 1e-9);
    }
  }
}
