#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "csup/term.hpp"

namespace csup {

/// Seeded source of randomness. All derived draws go through below()/coin()
/// so results depend only on the seed and the call sequence.
class Rng {
public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t raw() { return eng_(); }

  /// Uniform in [0, n).
  long long below(long long n) {
    if (n <= 0) return 0;
    uint64_t un = static_cast<uint64_t>(n);
    uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return static_cast<long long>(x % un);
  }

  /// Uniform in [lo, hi] inclusive.
  long long range(long long lo, long long hi) { return lo + below(hi - lo + 1); }

  bool coin() { return below(2) == 1; }

private:
  std::mt19937_64 eng_;
};

/// Small exact rational: numerator in [-12, 12], denominator in {1,2,3,4}.
Rat random_small_rat(Rng& rng);

/// Random signature-valid term over the given variables. depth bounds the
/// tree height; csup subterms appear only when allow_csup.
TermPtr random_term(Rng& rng, Signature sig, const std::vector<std::string>& vars, int depth,
                    bool allow_csup);

/// Random family body over the index (may contain NatScale, never csup).
TermPtr random_pl_body(Rng& rng, Signature sig, const std::vector<std::string>& vars,
                       int depth);

/// Random EventuallyConstant or IndexedPL family.
FamilyPtr random_family(Rng& rng, Signature sig, const std::vector<std::string>& vars);

/// Random quasi-equation: up to max_finite finite premises, optionally one
/// indexed premise family, and a conclusion; all over the given variables.
QuasiEquation random_quasi(Rng& rng, Signature sig, const std::vector<std::string>& vars,
                           int max_finite, bool with_indexed);

}  // namespace csup
