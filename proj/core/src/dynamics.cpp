#include "pinball/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>

#include "pinball/cylinder.hpp"
#include "pinball/error.hpp"

namespace pinball {

namespace {

constexpr double kCycleTolerance = 1e-8;

double state_distance(const Polygon& polygon, const PhasePoint& a, const PhasePoint& b) {
  if (a.position.side != b.position.side) return std::numeric_limits<double>::infinity();
  return std::max(std::abs(a.position.s - b.position.s) / polygon.side_length(a.position.side),
                  std::abs(a.theta - b.theta));
}

PhasePoint reflect(const Polygon& polygon, PhasePoint p, double lambda) {
  const RayHit hit = cast_ray(polygon, p.position, p.theta);
  if (hit.classification == HitKind::Vertex) {
    throw Error(ErrorCode::VertexHit, "orbit hits a corner");
  }
  const double reflected = polygon.beta(p.position.side, hit.target.side) - p.theta;
  if (!(std::abs(reflected) < kPi / 2 - kGrazingTolerance)) {
    throw Error(ErrorCode::GrazingRay, "reflected angle is grazing");
  }
  const double out = lambda * reflected;
  if (!(std::abs(out) < kPi / 2 - kGrazingTolerance)) {
    throw Error(ErrorCode::AngleOverflow, "lambda (beta - theta) leaves (-pi/2, pi/2)");
  }
  return {hit.target, out};
}

// Rotates a cycle so that its word reads canonically; ties broken by s.
AttractingCycle normalized_cycle(std::vector<PhasePoint> points, double lambda, double residual) {
  std::vector<int> word;
  for (const auto& p : points) word.push_back(p.position.side);
  const Itinerary it(word);
  const Itinerary canon = it.canonical();
  std::size_t best = 0;
  bool found = false;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (it.rotated(k) != canon) continue;
    if (!found || points[k].position.s < points[best].position.s) best = k;
    found = true;
  }
  std::rotate(points.begin(), points.begin() + static_cast<long>(best), points.end());
  AttractingCycle cycle;
  cycle.itinerary = canon;
  cycle.orbit.lambda = lambda;
  cycle.orbit.points = std::move(points);
  for (const auto& p : cycle.orbit.points) cycle.orbit.itinerary.push_back(p.position.side);
  cycle.residual = residual;
  return cycle;
}

std::optional<AttractingCycle> solve_candidate(const Polygon& polygon, const Itinerary& word,
                                               double lambda) {
  try {
    const double theta = periodic_departure_angle(polygon, word, lambda);
    const auto fixed = affine_return_map(polygon, word, lambda).fixed_point();
    if (!fixed) return std::nullopt;
    const Realization r = realize_orbit(polygon, word, {{word[0], *fixed}, theta}, lambda);
    if (!r.legal || !(r.residual < kCycleTolerance)) return std::nullopt;
    std::vector<PhasePoint> points(r.orbit.points.begin(), r.orbit.points.end() - 1);
    return normalized_cycle(std::move(points), lambda, r.residual);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

PhasePoint billiard_step(const Polygon& polygon, PhasePoint p) { return reflect(polygon, p, 1.0); }

PhasePoint pinball_step(const Polygon& polygon, PhasePoint p, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::BadParameter, "lambda must be positive");
  return reflect(polygon, p, lambda);
}

PhasePoint involution(PhasePoint p) { return {p.position, -p.theta}; }

double rho(double theta, double lambda) {
  if (!(std::abs(theta) < kPi / 2) || !(std::abs(lambda * theta) < kPi / 2)) {
    throw Error(ErrorCode::GrazingRay, "rho needs |theta| and |lambda theta| below pi/2");
  }
  return std::cos(lambda * theta) / std::cos(theta);
}

OrbitSegment iterate(const Polygon& polygon, PhasePoint p, double lambda, std::size_t steps) {
  OrbitSegment seg;
  seg.lambda = lambda;
  seg.points.reserve(steps + 1);
  seg.points.push_back(p);
  seg.itinerary.push_back(p.position.side);
  for (std::size_t k = 0; k < steps; ++k) {
    p = pinball_step(polygon, p, lambda);
    seg.points.push_back(p);
    seg.itinerary.push_back(p.position.side);
  }
  return seg;
}

Realization realize_orbit(const Polygon& polygon, const Itinerary& itinerary, PhasePoint start,
                          double lambda) {
  Realization out;
  out.orbit.lambda = lambda;
  out.residual = std::numeric_limits<double>::infinity();
  if (!itinerary.is_legal_for(polygon.size()) || start.position.side != itinerary[0]) return out;
  PhasePoint p = start;
  out.orbit.points.push_back(p);
  out.orbit.itinerary.push_back(p.position.side);
  try {
    for (std::size_t k = 0; k < itinerary.period(); ++k) {
      p = pinball_step(polygon, p, lambda);
      out.orbit.points.push_back(p);
      out.orbit.itinerary.push_back(p.position.side);
      if (p.position.side != itinerary[k + 1]) return out;
    }
  } catch (const Error&) {
    return out;
  }
  out.legal = true;
  out.residual = state_distance(polygon, start, p);
  return out;
}

std::vector<AttractingCycle> find_attracting_cycles(const Polygon& polygon, double lambda,
                                                    const SearchOptions& options) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::BadParameter, "lambda must be positive");
  const std::size_t max_period = std::max<std::size_t>(options.max_period, 2);
  const std::size_t window = 16 * max_period + 64;

  std::mt19937_64 rng(options.seed);
  std::vector<double> weights;
  for (std::size_t i = 0; i < polygon.size(); ++i) weights.push_back(polygon.side_length(static_cast<int>(i)));
  std::discrete_distribution<int> pick_side(weights.begin(), weights.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double theta_span = kPi / 2 - 1e-3;

  std::map<Itinerary, AttractingCycle> found;
  std::map<Itinerary, bool> tried;

  auto consider = [&](const Itinerary& word) {
    const Itinerary canon = word.canonical();
    if (found.count(canon) || tried.count(canon)) return;
    tried[canon] = true;
    if (auto cycle = solve_candidate(polygon, canon, lambda)) found.emplace(canon, std::move(*cycle));
  };

  for (std::size_t sample = 0; sample < options.n_samples; ++sample) {
    const int side = pick_side(rng);
    const double s = (0.001 + 0.998 * unit(rng)) * polygon.side_length(side);
    const double theta = theta_span * (2.0 * unit(rng) - 1.0);

    OrbitSegment history;
    try {
      PhasePoint p{{side, s}, theta};
      for (std::size_t k = 0; k < options.transient; ++k) p = pinball_step(polygon, p, lambda);
      history = iterate(polygon, p, lambda, window);
    } catch (const Error&) {
      continue;
    }
    const auto& pts = history.points;
    const auto& sides = history.itinerary;

    const PhasePoint& last = pts.back();
    bool recurred = false;
    for (std::size_t period = 1; period <= max_period && !recurred; ++period) {
      const double dist = state_distance(polygon, last, pts[pts.size() - 1 - period]);
      if (!(dist < kCycleTolerance)) continue;
      recurred = true;
      std::vector<PhasePoint> cycle(pts.end() - static_cast<long>(period), pts.end());
      std::vector<int> word;
      for (const auto& q : cycle) word.push_back(q.position.side);
      const Itinerary canon = Itinerary(word).canonical();
      if (!found.count(canon) && Itinerary(word).is_legal_for(polygon.size())) {
        found.emplace(canon, normalized_cycle(std::move(cycle), lambda, dist));
      }
    }
    if (recurred) continue;

    // Blocks repeated back to back: solve in closed form, confirm by iteration.
    for (std::size_t period = 2; period <= max_period; ++period) {
      for (std::size_t j = 0; j + 2 * period <= sides.size(); ++j) {
        if (!std::equal(sides.begin() + static_cast<long>(j), sides.begin() + static_cast<long>(j + period),
                        sides.begin() + static_cast<long>(j + period))) {
          continue;
        }
        const Itinerary word(std::vector<int>(sides.begin() + static_cast<long>(j),
                                              sides.begin() + static_cast<long>(j + period)));
        if (word.primitive().period() != period) continue;
        consider(word);
      }
    }
  }

  std::vector<AttractingCycle> out;
  for (auto& [word, cycle] : found) out.push_back(std::move(cycle));
  std::sort(out.begin(), out.end(), [](const AttractingCycle& a, const AttractingCycle& b) {
    if (a.itinerary != b.itinerary) return a.itinerary < b.itinerary;
    return a.orbit.points.front().position.s < b.orbit.points.front().position.s;
  });
  return out;
}

}  // namespace pinball
