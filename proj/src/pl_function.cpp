#include "csup/pl_function.hpp"

#include <stdexcept>

namespace csup {

namespace {
// Remove zero-length pieces and merge adjacent pieces lying on the same line.
std::vector<AffinePiece> canonicalize(std::vector<AffinePiece> pieces) {
  std::vector<AffinePiece> out;
  for (auto& p : pieces) {
    if (!out.empty() && out.back().start == p.start) out.pop_back();
    if (!out.empty() && out.back().slope == p.slope && out.back().intercept == p.intercept)
      continue;
    out.push_back(p);
  }
  return out;
}
}  // namespace

PLFunction1::PLFunction1(std::vector<AffinePiece> pieces)
    : pieces_(canonicalize(std::move(pieces))) {
  if (pieces_.empty() || !(pieces_.front().start == Rat(1)))
    throw std::logic_error("piecewise function must start at 1");
}

PLFunction1 PLFunction1::constant(Rat c) {
  return PLFunction1({AffinePiece{Rat(1), Rat(0), c}});
}

PLFunction1 PLFunction1::affine(Rat slope, Rat intercept) {
  return PLFunction1({AffinePiece{Rat(1), slope, intercept}});
}

Rat PLFunction1::at(const Rat& x) const {
  if (x < Rat(1)) throw std::domain_error("argument below 1");
  size_t i = pieces_.size() - 1;
  while (i > 0 && x < pieces_[i].start) --i;
  return pieces_[i].at(x);
}

PLFunction1 PLFunction1::negate() const { return scale(Rat(-1)); }

PLFunction1 PLFunction1::scale(const Rat& q) const {
  std::vector<AffinePiece> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back({p.start, q * p.slope, q * p.intercept});
  return PLFunction1(std::move(out));
}

bool PLFunction1::is_continuous() const {
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const Rat& b = pieces_[i + 1].start;
    if (!(pieces_[i].at(b) == pieces_[i + 1].at(b))) return false;
  }
  return true;
}

namespace {
// Walk two piece lists over the common refinement of their breakpoints and
// hand each segment (both functions affine there) to emit.
template <typename Emit>
void zip_pieces(const std::vector<AffinePiece>& f, const std::vector<AffinePiece>& g,
                Emit emit) {
  size_t i = 0, j = 0;
  Rat start(1);
  while (true) {
    const AffinePiece& pf = f[i];
    const AffinePiece& pg = g[j];
    // End of the current segment: the nearer next breakpoint, if any.
    bool f_more = i + 1 < f.size();
    bool g_more = j + 1 < g.size();
    std::optional<Rat> end;
    if (f_more && g_more)
      end = min(f[i + 1].start, g[j + 1].start);
    else if (f_more)
      end = f[i + 1].start;
    else if (g_more)
      end = g[j + 1].start;
    emit(start, end, pf, pg);
    if (!end) return;
    if (f_more && f[i + 1].start == *end) ++i;
    if (g_more && g[j + 1].start == *end) ++j;
    start = *end;
  }
}
}  // namespace

PLFunction1 pl_add(const PLFunction1& f, const PLFunction1& g) {
  std::vector<AffinePiece> out;
  zip_pieces(f.pieces_, g.pieces_,
             [&](const Rat& start, const std::optional<Rat>&, const AffinePiece& pf,
                 const AffinePiece& pg) {
               out.push_back({start, pf.slope + pg.slope, pf.intercept + pg.intercept});
             });
  return PLFunction1(std::move(out));
}

namespace {
std::vector<AffinePiece> extreme_pieces(const PLFunction1& f, const PLFunction1& g,
                                        bool want_min) {
  std::vector<AffinePiece> out;
  auto pick = [&](const AffinePiece& a, const AffinePiece& b, const Rat& probe,
                  const Rat& start) {
    Rat va = a.at(probe), vb = b.at(probe);
    const AffinePiece& chosen =
        (va == vb) ? ((a.slope < b.slope) == want_min ? a : b) : ((va < vb) == want_min ? a : b);
    out.push_back({start, chosen.slope, chosen.intercept});
  };
  zip_pieces(
      // friend access
      f.pieces(), g.pieces(),
      [&](const Rat& start, const std::optional<Rat>& end, const AffinePiece& pf,
          const AffinePiece& pg) {
        if (pf.slope == pg.slope) {
          pick(pf, pg, start, start);
          return;
        }
        // Unique crossing of the two lines.
        Rat x = (pg.intercept - pf.intercept) / (pf.slope - pg.slope);
        bool inside = x > start && (!end || x < *end);
        if (!inside) {
          // Probe strictly inside the segment so ties at the boundary do not
          // mislead: boundary ties are exactly the crossing itself.
          Rat probe = end ? (start + *end) / Rat(2) : start + Rat(1);
          pick(pf, pg, probe, start);
          return;
        }
        Rat left_probe = (start + x) / Rat(2);
        pick(pf, pg, left_probe, start);
        Rat right_probe = end ? (x + *end) / Rat(2) : x + Rat(1);
        pick(pf, pg, right_probe, x);
      });
  return out;
}
}  // namespace

PLFunction1 pl_min(const PLFunction1& f, const PLFunction1& g) {
  return PLFunction1(extreme_pieces(f, g, true));
}

PLFunction1 pl_max(const PLFunction1& f, const PLFunction1& g) {
  return PLFunction1(extreme_pieces(f, g, false));
}

// Integers contained in [start, end): smallest and largest, if any.
namespace {
struct IntRange {
  long long lo, hi;
  bool empty;
};

IntRange integers_in(const Rat& start, const std::optional<Rat>& end) {
  IntRange r{start.ceil_ll(), 0, false};
  if (!end) {
    r.hi = -1;  // unbounded above; callers treat separately
    return r;
  }
  // end is exclusive.
  r.hi = end->is_integer() ? end->floor_ll() - 1 : end->floor_ll();
  r.empty = r.hi < r.lo;
  return r;
}
}  // namespace

PLFunction1::IntSup PLFunction1::sup_integers() const {
  const AffinePiece& last = pieces_.back();
  if (last.slope.is_positive()) return {false, Rat(0), 0};
  bool have = false;
  Rat best(0);
  long long witness = 0;
  auto consider = [&](long long n) {
    Rat v = at(Rat(n));
    if (!have || v > best) {
      have = true;
      best = v;
      witness = n;
    }
  };
  for (size_t i = 0; i < pieces_.size(); ++i) {
    std::optional<Rat> end;
    if (i + 1 < pieces_.size()) end = pieces_[i + 1].start;
    IntRange r = integers_in(pieces_[i].start, end);
    if (end) {
      if (r.empty) continue;
      // Affine on the range: extremes at the endpoints.
      consider(r.lo);
      if (r.hi != r.lo) consider(r.hi);
    } else {
      // Nonpositive slope on the tail: the first integer dominates the rest.
      consider(r.lo);
    }
  }
  return {true, best, witness};
}

std::optional<long long> PLFunction1::first_integer_above(const Rat& c, bool strict) const {
  auto ok = [&](const Rat& v) { return strict ? v > c : v >= c; };
  for (size_t i = 0; i < pieces_.size(); ++i) {
    const AffinePiece& p = pieces_[i];
    std::optional<Rat> end;
    if (i + 1 < pieces_.size()) end = pieces_[i + 1].start;
    IntRange r = integers_in(p.start, end);
    if (end && r.empty) continue;
    if (p.slope.is_zero() || p.slope.is_negative()) {
      // Nonincreasing on the piece: only the first integer can qualify.
      if (ok(p.at(Rat(r.lo)))) return r.lo;
      continue;
    }
    // Increasing: solve slope*x + intercept (>|>=) c exactly.
    Rat x0 = (c - p.intercept) / p.slope;
    long long n = strict ? (x0.is_integer() ? x0.floor_ll() + 1 : x0.ceil_ll())
                         : x0.ceil_ll();
    if (n < r.lo) n = r.lo;
    if (!end) return n;  // unbounded increasing tail always reaches c
    if (n <= r.hi && ok(p.at(Rat(n)))) return n;
  }
  return std::nullopt;
}

}  // namespace csup
