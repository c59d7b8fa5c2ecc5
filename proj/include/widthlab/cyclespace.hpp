#pragma once

#include <random>

#include "widthlab/plmaps.hpp"

namespace widthlab {

// Mod-2 zero cycle, stored as its odd-coefficient support.
struct ZeroCycle {
  std::vector<Vec> support;
  int cardinality() const { return static_cast<int>(support.size()); }
};

// Fiber of an even-degree map as a zero cycle (odd-multiplicity points).
ZeroCycle cycle_map(const PLMap& f, const Vec& y);

// Parity with which a generic source point participates in the family of
// fiber cycles {f^c(y)}. Every probe must agree; the common parity is
// returned (and is 1 for even-degree maps between closed manifolds).
int canonical_class_eval(const PLMap& f, int probes, std::uint64_t seed = 1,
                         int* resampled = nullptr);

// h_t(y): the mod-2 sum of geodesic waypoints s(x1,x2)(t/2) over ordered
// pairs of distinct fiber points. h_0 = f^c, h_1 = 0. A fiber pair at
// distance >= rho(source) makes the waypoint undefined and is precisely a
// coincidence certificate; OutsideShortPathDomain propagates.
ZeroCycle contraction_homotopy(const PLMap& f, const Vec& y, double t);

struct FiberGraph {
  Vec y;
  double delta = 0;
  std::vector<Vec> vertices;
  std::vector<std::pair<int, int>> edges;  // i < j, source distance < delta
  int degree(int v) const {
    int d = 0;
    for (auto [a, b] : edges)
      if (a == v || b == v) ++d;
    return d;
  }
};

// Graph on the fiber points with edges below distance delta. A pair within
// 1e-9 of distance exactly delta raises DeltaPairFound (the Hopf pair).
FiberGraph fiber_graph(const PLMap& f, const Vec& y, double delta);

enum class EventKind { PairCreated, PairAnnihilated, VertexExchange };

struct EventRecord {
  EventKind kind;
  double param = 0;            // path parameter, bisected to 1e-10
  std::vector<int> vertices;   // persistent ids of the vertices involved
  std::map<int, int> parities; // degree parity per live vertex after the event
};

struct TrackResult {
  std::vector<EventRecord> events;
  std::map<int, int> final_parities;
  std::map<int, Vec> final_points;
};

// Walks a target polyline, locating every critical-image crossing of the
// fiber by bisection and classifying it. Codim 0, Euclidean target.
TrackResult track_events(const PLMap& f, const std::vector<Vec>& path,
                         double delta);

struct ParityCertificate {
  enum Kind { ConstantOddParity, ConstantEvenParity, DeltaPair } kind;
  int parity = -1;   // for the constant outcomes
  Vec x1, x2;        // for DeltaPair
  double distance = 0;
  int samples_used = 0;
};

// Samples source points and checks the degree parity of each in the fiber
// graph of its own image; either the parity is constant or a pair at
// distance exactly delta surfaces.
ParityCertificate parity_certificate(const PLMap& f, double delta, int samples,
                                     std::uint64_t seed = 1);

}  // namespace widthlab
