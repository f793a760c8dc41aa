#pragma once

#include <random>

#include "hypcyc/chain.hpp"
#include "hypcyc/group.hpp"

namespace hypcyc {

// Metric computations on Cayley balls. Distances are evaluated through
// normal forms (the global word metric), so geodesics are genuine geodesics
// of the Cayley graph; results carry a truncation flag whenever they touch
// elements on or outside the ball's boundary sphere.

struct GeodesicSet {
  std::vector<std::vector<GroupElement>> paths;  // each isometric to an interval
  bool truncated = false;                        // some vertex left the ball
};

// All geodesic vertex paths from x to y, enumerated deterministically in
// letter order.
inline GeodesicSet geodesics(const CayleyBall& B, const GroupElement& x,
                             const GroupElement& y) {
  const GroupModel& m = B.model();
  GeodesicSet out;
  std::vector<GroupElement> cur{x};
  std::function<void()> rec = [&]() {
    const GroupElement& last = cur.back();
    int remaining = dist(last, y);
    if (remaining == 0) {
      for (const auto& g : cur)
        if (!B.contains(g) || B.on_boundary(g)) out.truncated = true;
      out.paths.push_back(cur);
      return;
    }
    for (Letter l = 0; l < m.num_letters(); ++l) {
      GroupElement next = last * GroupElement::from_letters(m, {l});
      if (dist(next, y) == remaining - 1) {
        cur.push_back(next);
        rec();
        cur.pop_back();
      }
    }
  };
  rec();
  return out;
}

struct HullResult {
  std::vector<GroupElement> elements;  // sorted in ball index order
  bool truncated = false;
};

// geod_lambda(Y) = { x : exists y, y' in Y with d(y,x) + d(x,y') <= d(y,y') + lambda },
// membership tested against witnesses inside Y, scan over the ball.
inline HullResult geodesic_hull(const CayleyBall& B,
                                const std::vector<GroupElement>& Y, int lambda) {
  HullResult out;
  for (const auto& x : B.elements()) {
    bool in = false;
    for (size_t i = 0; i < Y.size() && !in; ++i)
      for (size_t j = 0; j < Y.size() && !in; ++j)
        if (dist(Y[i], x) + dist(x, Y[j]) <= dist(Y[i], Y[j]) + lambda) in = true;
    if (in) {
      out.elements.push_back(x);
      if (B.on_boundary(x)) out.truncated = true;
    }
  }
  return out;
}

inline std::vector<GroupElement> geod(const CayleyBall& B,
                                      const std::vector<GroupElement>& Y) {
  return geodesic_hull(B, Y, 0).elements;
}

// Least lambda that puts x into geod_lambda(Y), for support audits.
inline int hull_slack(const std::vector<GroupElement>& Y, const GroupElement& x) {
  int best = -1;
  for (size_t i = 0; i < Y.size(); ++i)
    for (size_t j = 0; j < Y.size(); ++j) {
      int s = dist(Y[i], x) + dist(x, Y[j]) - dist(Y[i], Y[j]);
      if (best < 0 || s < best) best = s;
    }
  return best;
}

struct DeltaEstimate {
  Rat delta;
  long triangles_scanned = 0;
  bool exhaustive = false;
};

namespace detail {

// least r with every vertex of `edge` within r of `other`
inline int side_thinness(const std::vector<GroupElement>& edge,
                         const std::vector<GroupElement>& other1,
                         const std::vector<GroupElement>& other2) {
  int worst = 0;
  for (const auto& p : edge) {
    int best = -1;
    for (const auto& q : other1) {
      int d = dist(p, q);
      if (best < 0 || d < best) best = d;
    }
    for (const auto& q : other2) {
      int d = dist(p, q);
      if (best < 0 || d < best) best = d;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace detail

// Thin-triangle constant over sampled geodesic triangles: for each sampled
// triple and each choice of one geodesic per side, the least delta with
// every side inside the delta-neighbourhood of the other two; the estimate
// is the max over the sample. Exhaustive when the triple count fits the
// budget, else a seeded sample.
inline DeltaEstimate delta_estimate(const CayleyBall& B, long budget = 200000,
                                    unsigned seed = 1) {
  if (B.radius() < 2) throw invalid_input_error("delta_estimate: radius >= 2");
  size_t n = B.size();
  long triples = long(n) * long(n - 1) * long(n - 2) / 6;
  DeltaEstimate out;
  out.delta = 0;
  auto scan_triple = [&](int i, int j, int k) {
    GeodesicSet gij = geodesics(B, B.element(i), B.element(j));
    GeodesicSet gjk = geodesics(B, B.element(j), B.element(k));
    GeodesicSet gki = geodesics(B, B.element(k), B.element(i));
    for (const auto& e1 : gij.paths)
      for (const auto& e2 : gjk.paths)
        for (const auto& e3 : gki.paths) {
          int d = std::max({detail::side_thinness(e1, e2, e3),
                            detail::side_thinness(e2, e3, e1),
                            detail::side_thinness(e3, e1, e2)});
          if (Rat(d) > out.delta) out.delta = d;
        }
    ++out.triangles_scanned;
  };
  if (triples <= budget) {
    out.exhaustive = true;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k) scan_triple(int(i), int(j), int(k));
  } else {
    std::mt19937 rng(seed);
    for (long s = 0; s < budget; ++s) {
      int i = int(rng() % n), j = int(rng() % n), k = int(rng() % n);
      if (i == j || j == k || i == k) continue;
      scan_triple(i, j, k);
    }
  }
  return out;
}

}  // namespace hypcyc
