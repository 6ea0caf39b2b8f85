#pragma once

#include <optional>
#include <vector>

#include "csup/rational.hpp"

namespace csup {

/// One affine piece: value(x) = slope*x + intercept for x in [start, next start).
struct AffinePiece {
  Rat start;
  Rat slope;
  Rat intercept;
  Rat at(const Rat& x) const { return slope * x + intercept; }
};

/// Continuous piecewise-linear function on [1, oo): finitely many pieces,
/// first piece starts at 1, starts strictly increasing, last piece unbounded.
/// Exact rational arithmetic throughout.
class PLFunction1 {
public:
  static PLFunction1 constant(Rat c);
  /// slope*x + intercept on all of [1, oo).
  static PLFunction1 affine(Rat slope, Rat intercept);

  Rat at(const Rat& x) const;
  const std::vector<AffinePiece>& pieces() const { return pieces_; }

  PLFunction1 negate() const;
  PLFunction1 scale(const Rat& q) const;

  /// Adjacent pieces on the same line are merged; invariant check for tests.
  bool is_continuous() const;

  /// Supremum over integers n >= 1. When bounded, also the smallest integer
  /// attaining it.
  struct IntSup {
    bool bounded;
    Rat value;          // meaningful when bounded
    long long witness;  // meaningful when bounded
  };
  IntSup sup_integers() const;

  /// Smallest integer n >= 1 with value(n) > c (strict) or >= c.
  std::optional<long long> first_integer_above(const Rat& c, bool strict) const;

  friend PLFunction1 pl_add(const PLFunction1& f, const PLFunction1& g);
  friend PLFunction1 pl_min(const PLFunction1& f, const PLFunction1& g);
  friend PLFunction1 pl_max(const PLFunction1& f, const PLFunction1& g);

private:
  explicit PLFunction1(std::vector<AffinePiece> pieces);
  std::vector<AffinePiece> pieces_;
};

PLFunction1 pl_add(const PLFunction1& f, const PLFunction1& g);
PLFunction1 pl_min(const PLFunction1& f, const PLFunction1& g);
PLFunction1 pl_max(const PLFunction1& f, const PLFunction1& g);

}  // namespace csup
