#pragma once
/**
 * @file dynamics.hpp
 * @brief Billiard map, pinball map, the involution S and orbit search.
 *
 * The pinball map is Phi_lambda = R_lambda o Phi where R_lambda scales the
 * outgoing angle: (s, theta) -> (s, lambda theta).
 */

#include <cstdint>
#include <vector>

#include "pinball/geometry.hpp"
#include "pinball/itinerary.hpp"

namespace pinball {

struct PhasePoint {
  BoundaryPoint position;
  double theta = 0.0;
};

struct OrbitSegment {
  std::vector<PhasePoint> points;
  std::vector<int> itinerary;  ///< points[k].position.side
  double lambda = 1.0;
};

PhasePoint billiard_step(const Polygon& polygon, PhasePoint p);
PhasePoint pinball_step(const Polygon& polygon, PhasePoint p, double lambda);

/// S(s, theta) = (s, -theta).
PhasePoint involution(PhasePoint p);

/// cos(lambda theta) / cos(theta).
double rho(double theta, double lambda);

/// `steps` pinball steps from p; the segment holds p and the steps.size() points after it.
OrbitSegment iterate(const Polygon& polygon, PhasePoint p, double lambda, std::size_t steps);

struct Realization {
  bool legal = false;     ///< every leg hits the next side of the word away from corners
  double residual = 0.0;  ///< max(|ds| / side length, |dtheta|) after one period
  OrbitSegment orbit;     ///< period + 1 points when legal
};

/// Follows Phi_lambda for one period from `start` and compares with the word.
Realization realize_orbit(const Polygon& polygon, const Itinerary& itinerary, PhasePoint start,
                          double lambda);

struct SearchOptions {
  std::size_t n_samples = 1000;
  std::size_t transient = 10000;
  std::size_t max_period = 12;
  std::uint64_t seed = 1;
};

struct AttractingCycle {
  Itinerary itinerary;  ///< canonical rotation
  OrbitSegment orbit;   ///< one period, starting where the canonical word starts
  double residual = 0.0;
};

/// Samples phase space, runs the transient and reports the periodic cycles
/// the orbits settle on or shadow. Output is sorted by word, then by s.
std::vector<AttractingCycle> find_attracting_cycles(const Polygon& polygon, double lambda,
                                                    const SearchOptions& options = {});

}  // namespace pinball
