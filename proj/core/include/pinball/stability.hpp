#pragma once
/**
 * @file stability.hpp
 * @brief The lambda-stability decision, its witnesses and continuation in lambda.
 */

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pinball/cylinder.hpp"
#include "pinball/dynamics.hpp"

namespace pinball {

enum class Verdict { LambdaStable, NotLambdaStable, Inconclusive, PingPong, OddPeriod, NoSuchOrbit };

std::string_view to_string(Verdict verdict);
/// PingPong, OddPeriod and LambdaStable orbits are all lambda-stable.
bool is_lambda_stable(Verdict verdict);

/// Margin for the strict inequalities of the sufficient condition.
inline constexpr double kStrictMargin = 1e-10;

struct StabilityReport {
  static constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  Itinerary itinerary;
  Verdict verdict = Verdict::NoSuchOrbit;
  std::string reason;

  double alternating_sum = nan;
  double departure = nan;       ///< theta_hat_0, or the orbit angle for odd and ping-pong words
  double omega0 = nan;
  double total_length = nan;
  double omega0_length = nan;   ///< Omega_0 L
  double l = nan;
  double r = nan;
  double sum_l = nan;           ///< sum_k (-1)^k theta_k L_k(l)
  double sum_r = nan;
  double derivative_l = nan;    ///< dF/dlambda(l, 1)
  double derivative_r = nan;
  double base_point = nan;      ///< s_0(1) for stable orbits
  std::optional<std::pair<double, double>> bracket;
  std::optional<double> cylinder_angle;  ///< actual angle when it differs from theta_hat_0
};

/// sum_{k=1}^{2n} (-1)^k theta_hat_k L_k(s).
double endpoint_sum(const Polygon& polygon, const Cylinder& cylinder, double s);

/// dF_{2n}/dlambda (s, 1) = (L Omega_0 - endpoint_sum(s)) / cos(theta_hat_0).
double slope_derivative(const Polygon& polygon, const Cylinder& cylinder, double s);
double slope_derivative(const Polygon& polygon, const Itinerary& itinerary, double s);

struct SufficientCheck {
  bool holds = false;
  double sum_a = 0.0;
  double sum_b = 0.0;
  double omega0_length = 0.0;
};

/// sum(a) < Omega_0 L < sum(b) with margin kStrictMargin; a < b in the closure of I_C.
SufficientCheck sufficient_check(const Polygon& polygon, const Cylinder& cylinder, double a, double b);
SufficientCheck sufficient_check(const Polygon& polygon, const Itinerary& itinerary, double a, double b);

StabilityReport classify(const Polygon& polygon, const Itinerary& itinerary);

/// Closed-form periodic point of Phi_lambda with this word, any period.
/// Throws SlopeOne when the return map has no unique fixed point.
PhasePoint periodic_point(const Polygon& polygon, const Itinerary& itinerary, double lambda);

struct ContinuationRow {
  double lambda = 0.0;
  double s0 = 0.0;
  double theta0 = 0.0;
  double residual = 0.0;  ///< |F(s0, lambda) - s0|
  bool legal = false;     ///< (s0, theta0) realizes the word as a Phi_lambda orbit
};

/// n evenly spaced values from a to b inclusive.
std::vector<double> lambda_grid(double a, double b, std::size_t n);

/// Fixed point of the affine return map along the grid. Rows where the
/// angles overflow or the map has no fixed point come back illegal with NaN.
std::vector<ContinuationRow> continue_orbit(const Polygon& polygon, const Itinerary& itinerary,
                                            const std::vector<double>& lambdas);

struct SlopeSolution {
  int p = 0;
  int q = 0;
  double slope = 0.0;  ///< p / (q w); infinite for the horizontal ping-pong
};

/// Coprime (p, q) with p + q <= max_sum whose cylinders can be lambda-stable
/// in the w x 1 rectangle: w = (p/q) cot(pi p / (2(p+q))). The two
/// ping-pong directions (0, 1) and (1, 0) are always listed first.
std::vector<SlopeSolution> rectangle_admissible_slopes(double w, int max_sum);

}  // namespace pinball
