#pragma once
/**
 * @file cylinder.hpp
 * @brief Periodic cylinders of even period and their return maps.
 *
 * For an even itinerary i_0 ... i_{2n-1} the angle along the word is forced
 * by the reflection law: theta_{k+1} = lambda (beta_k - theta_k) with
 * beta_k = beta(i_k, i_{k+1}). Following the supporting lines instead of
 * the sides turns the position part into a composition of affine maps, so
 * the first-return position map F(., lambda) on side i_0 is affine.
 *
 * Everything here is exact up to rounding: the return map is composed
 * link by link, the base interval is an intersection of affine
 * constraints, and theta_0(lambda) is evaluated in deflated form so the
 * removable singularity at lambda = 1 costs no precision.
 */

#include <optional>
#include <vector>

#include "pinball/geometry.hpp"
#include "pinball/itinerary.hpp"

namespace pinball {

struct AffineMap1D {
  double slope = 1.0;
  double intercept = 0.0;

  double operator()(double s) const { return slope * s + intercept; }
  /// Unique fixed point, empty when slope == 1.
  std::optional<double> fixed_point() const;
  /// this ∘ other
  AffineMap1D compose(const AffineMap1D& other) const {
    return {slope * other.slope, slope * other.intercept + intercept};
  }
};

/// beta(i_k, i_{k+1}) for k = 0 .. p-1, indices cyclic.
std::vector<double> beta_sequence(const Polygon& polygon, const Itinerary& itinerary);

/// sum_k (-1)^k beta_k; must vanish for an even periodic billiard orbit.
double alternating_beta_sum(const Polygon& polygon, const Itinerary& itinerary);

/// The only departure angle an even cylinder can have if it is lambda-stable:
/// (1/2n) sum_k (-1)^{k+1} k beta_k.
double departure_angle(const Polygon& polygon, const Itinerary& itinerary);

/// d theta_0 / d lambda at lambda = 1:
/// (1/4n) sum_k (-1)^{k+1} k (2n - k) beta_k.
double omega0(const Polygon& polygon, const Itinerary& itinerary);

/// Angle at i_0 of the unique lambda-periodic angle sequence. Works for any
/// period; for even words lambda = 1 gives the removable-singularity limit
/// and requires the alternating sum to vanish.
double periodic_departure_angle(const Polygon& polygon, const Itinerary& itinerary, double lambda);

/// theta_0(lambda) ... theta_p(lambda), p + 1 values, theta_p == theta_0.
std::vector<double> theta_sequence(const Polygon& polygon, const Itinerary& itinerary,
                                   double lambda);

/// Positions and oriented link lengths obtained by following the supporting
/// lines of the word from coordinate s, with angle theta_k on side i_k.
struct Chain {
  std::vector<double> positions;  ///< F_0 = s, F_1, ..., F_p
  std::vector<double> lengths;    ///< t_0, ..., t_{p-1}
};
Chain follow_chain(const Polygon& polygon, const Itinerary& itinerary,
                   const std::vector<double>& angles, double s);

/// s -> F_p(s, lambda), composed from the link derivatives -cos(theta)/cos(theta').
AffineMap1D affine_return_map(const Polygon& polygon, const Itinerary& itinerary, double lambda);
/// Same map for an explicit angle sequence (length >= period).
AffineMap1D affine_return_map(const Polygon& polygon, const Itinerary& itinerary,
                              const std::vector<double>& angles);

/// A billiard segment ending in a corner; the boundary of a cylinder.
struct GeneralizedDiagonal {
  BoundaryPoint base;  ///< base foot point on side i_0
  double theta = 0.0;
  int link = 0;        ///< index k of the boundary point F_k that sits on a corner
  int corner = 0;      ///< vertex index of that corner
};

struct BaseInterval {
  double l = 0.0;
  double r = 0.0;
  GeneralizedDiagonal left;
  GeneralizedDiagonal right;

  double width() const { return r - l; }
  double midpoint() const { return 0.5 * (l + r); }
};

/// Base of the cylinder that leaves side i_0 at the departure angle.
/// Throws NecessaryConditionFailed when the alternating sum is non-zero and
/// EmptyInterval when the word is not realized at that angle.
BaseInterval base_interval(const Polygon& polygon, const Itinerary& itinerary);
/// Base of the billiard cylinder with the given departure angle.
BaseInterval base_interval_at(const Polygon& polygon, const Itinerary& itinerary, double theta0);

/// Departure angle of the billiard cylinder with this even word, whatever it
/// is: the direction of the translation obtained by unfolding one period.
/// Empty when the unfolded isometry is not a forward translation.
std::optional<double> cylinder_angle(const Polygon& polygon, const Itinerary& itinerary);

struct PathLengths {
  std::vector<double> cumulative;  ///< L_1 ... L_{2n}
  double total = 0.0;              ///< L = L_{2n}
};

/// Cumulative link lengths of the lambda = 1 orbit from base coordinate s.
PathLengths path_lengths(const Polygon& polygon, const Itinerary& itinerary, double s);

struct Cylinder {
  Itinerary itinerary;
  std::vector<double> theta_hat;  ///< theta_0 ... theta_{2n-1}
  BaseInterval base;
  std::vector<double> lengths_l;  ///< L_1(l) ... L_{2n}(l)
  std::vector<double> lengths_r;
  double total_length = 0.0;
  double omega0 = 0.0;

  double departure() const { return theta_hat.front(); }
  /// theta_hat_k with k taken mod 2n.
  double theta(std::size_t k) const { return theta_hat[k % theta_hat.size()]; }
};

Cylinder build_cylinder(const Polygon& polygon, const Itinerary& itinerary);

/// Lengths at an arbitrary s in the closure of the base.
PathLengths path_lengths(const Polygon& polygon, const Cylinder& cylinder, double s);

}  // namespace pinball
