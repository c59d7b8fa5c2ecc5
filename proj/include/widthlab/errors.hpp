#pragma once

#include <stdexcept>
#include <string>

#include "widthlab/geom.hpp"

namespace widthlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedDimension : Error {
  using Error::Error;
};
struct InvalidPoint : Error {
  using Error::Error;
};
struct InvalidTangent : Error {
  using Error::Error;
};
struct EmptySet : Error {
  using Error::Error;
};
struct OutsideShortPathDomain : Error {
  using Error::Error;
};
struct NotClosedManifold : Error {
  using Error::Error;
};
struct InvalidImage : Error {
  using Error::Error;
};
struct NonGenericTarget : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct OddDegree : Error {
  using Error::Error;
};
struct WrongCodimension : Error {
  using Error::Error;
};
struct DeltaOutOfRange : Error {
  using Error::Error;
};
struct NonSimpleEvent : Error {
  using Error::Error;
};
struct NotClosed : Error {
  using Error::Error;
};
struct PreconditionViolated : Error {
  using Error::Error;
};
struct MalformedInput : Error {
  using Error::Error;
};

// Raised by the fiber-graph machinery when a pair of fiber points sits at
// distance delta. This is a success certificate, not a failure: it carries
// the pair that the Hopf argument promises.
struct DeltaPairFound : Error {
  Vec x1, x2;
  double distance;
  DeltaPairFound(const Vec& a, const Vec& b, double d)
      : Error("pair of fiber points at distance delta"), x1(a), x2(b), distance(d) {}
};

// Soft failure of a coincidence search: the theorems guarantee existence, so
// running out of budget is a search artifact. Carries the best residual seen.
struct BudgetExhausted : Error {
  double best_residual;
  explicit BudgetExhausted(double r)
      : Error("search budget exhausted (best residual " + std::to_string(r) + ")"),
        best_residual(r) {}
};

}  // namespace widthlab
