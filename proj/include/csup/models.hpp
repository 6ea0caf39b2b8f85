#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "csup/eval.hpp"
#include "csup/gen.hpp"
#include "csup/term.hpp"

namespace csup {

class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The finite ground set X: an ordered list of distinct labels. Subsets are
/// bitmasks over positions (so |X| <= 31).
struct FiniteIndexSet {
  std::vector<std::string> labels;

  size_t size() const { return labels.size(); }
  long long index_of(const std::string& label) const;
  std::string mask_to_string(uint32_t mask) const;
};

FiniteIndexSet make_index_set(std::vector<std::string> labels);

/// An ideal of subsets of a finite ground set: contains the empty set, is
/// downward closed and closed under binary unions. On a finite ground set
/// that forces it to be the full powerset of M = union of its members, so M
/// determines the ideal.
class IdealOfSubsets {
public:
  IdealOfSubsets() : union_mask_(0) {}  // trivial ideal on the empty set
  static IdealOfSubsets closure(const FiniteIndexSet& ground,
                                const std::vector<std::vector<std::string>>& generators);
  static IdealOfSubsets closure_masks(const FiniteIndexSet& ground,
                                      const std::vector<uint32_t>& generators);

  bool contains(uint32_t mask) const { return (mask & ~union_mask_) == 0; }
  uint32_t union_mask() const { return union_mask_; }
  const FiniteIndexSet& ground() const { return ground_; }
  /// All members, smallest first; 2^popcount(M) subsets.
  std::vector<uint32_t> members() const;

private:
  IdealOfSubsets(FiniteIndexSet ground, uint32_t union_mask)
      : ground_(std::move(ground)), union_mask_(union_mask) {}
  FiniteIndexSet ground_;
  uint32_t union_mask_;
};

/// Every ideal on the ground set, one per subset M, in mask order.
std::vector<IdealOfSubsets> all_ideals(const FiniteIndexSet& ground);

/// A tuple over the full ground set (a representative of a class).
using Tuple = std::vector<Rat>;

/// A canonical element of the quotient: values on the support coordinates.
struct ModelElement {
  std::vector<Rat> values;
  bool operator==(const ModelElement& o) const { return values == o.values; }
};

/// The quotient of the power of the reals by an ideal of subsets. Two tuples
/// are identified iff they agree outside the ideal's union; the canonical
/// element is the restriction to the support. The enriched flag says whether
/// countable sups are interpreted.
struct QuotientModel {
  FiniteIndexSet ground;
  IdealOfSubsets ideal;
  std::vector<std::string> support;        // ground order
  std::vector<size_t> support_positions;   // positions within ground
  bool enriched;
};

struct ModelMorphism;

QuotientModel make_quotient_model(const FiniteIndexSet& ground, const IdealOfSubsets& ideal,
                                  bool enriched);
/// The model plus the quotient map from the power (trivial-ideal) model.
std::pair<QuotientModel, ModelMorphism> quotient_model(const FiniteIndexSet& ground,
                                                       const IdealOfSubsets& ideal,
                                                       bool enriched);

QuotientModel enrich(QuotientModel m);
QuotientModel forget(QuotientModel m);

ModelElement restrict_to_support(const QuotientModel& m, const Tuple& t);
/// Canonical representative: support values, zero on ideal coordinates.
Tuple extend_by_zero(const QuotientModel& m, const ModelElement& e);
bool tuples_equivalent(const QuotientModel& m, const Tuple& f, const Tuple& g);

ModelElement zero_element(const QuotientModel& m);
ModelElement const_element(const QuotientModel& m, const Rat& c);
ModelElement random_element(Rng& rng, const QuotientModel& m);
Tuple random_tuple(Rng& rng, const FiniteIndexSet& ground);

/// Coordinatewise evaluation on the support. Terms with countable sups
/// require an enriched model.
using ModelValuation = std::map<std::string, ModelElement>;
ModelElement eval_in_model(const TermPtr& t, const ModelValuation& v, const QuotientModel& m);

/// A morphism given per-target-support-coordinate as "select a source support
/// coordinate, multiply by a positive rational". This shape automatically
/// preserves 0, +, -, meets, joins and countable sups.
struct ModelMorphism {
  QuotientModel source;
  QuotientModel target;
  std::vector<size_t> select;  // size = target support size; indexes source support
  std::vector<Rat> factor;     // same size; all > 0

  ModelElement apply(const ModelElement& e) const;
};

ModelMorphism identity_morphism(const QuotientModel& m);
/// second after first.
ModelMorphism compose(const ModelMorphism& second, const ModelMorphism& first);
bool same_recipe(const ModelMorphism& a, const ModelMorphism& b);

/// Checks the two routes to an enriched quotient: interpreting sups in the
/// quotient versus computing them in the power and then quotienting.
struct EnrichmentReport {
  long long trials = 0;
  long long discrepancies = 0;
  std::string first_discrepancy;
};
EnrichmentReport compare_enrichments(const FiniteIndexSet& ground, const IdealOfSubsets& ideal,
                                     long long trials, uint64_t seed);

/// Exact criterion: e is a weak unit iff e >= 0 and e is strictly positive on
/// every support coordinate. Randomized f /\ e = 0 => f = 0 corroboration.
struct WeakUnitVerdict {
  bool is_weak_unit = false;
  std::string explanation;
  std::string witness_label;        // failing coordinate when not a weak unit
  std::optional<ModelElement> witness_f;  // nonzero f with f /\ e = 0
  long long trials_run = 0;
};
WeakUnitVerdict check_weak_unit(const QuotientModel& m, const ModelElement& e, long long trials,
                                uint64_t seed);

/// phi(sup S) = sup(phi S) for random finite bounded families; on finite
/// supports every countable bounded sup is a finite max, so the check is
/// exact. The callable form admits adversarial fixtures.
struct SigmaVerdict {
  bool passed = true;
  long long samples_run = 0;
  std::string witness;
};
SigmaVerdict check_sigma_continuity(const QuotientModel& source, const QuotientModel& target,
                                    const std::function<ModelElement(const ModelElement&)>& map,
                                    long long samples, uint64_t seed);
SigmaVerdict check_sigma_continuity(const ModelMorphism& phi, long long samples, uint64_t seed);

/// Coordinatewise positive part of a representative whose class is >= 0:
/// a nonnegative tuple in the same class. Errors when the class is not >= 0.
Tuple positive_representative(const QuotientModel& m, const Tuple& e);

/// The constructive normalization of a weak-unit candidate u over (Y, J):
/// X = {y : u(y) > 0}, I = {J /\ X : J in the ideal}, rho the restriction,
/// m the division by u on the power over X, eta the induced quotient iso,
/// phi = eta after rho. The injectivity of phi is decided by the exact kernel
/// criterion {y : u(y) = 0} in the ideal.
struct PipelineResult {
  QuotientModel source;  // over Y, enriched
  FiniteIndexSet X;
  IdealOfSubsets I;
  QuotientModel target;  // over X, enriched
  ModelMorphism rho;
  ModelMorphism m_iso;  // on the power over X (trivial ideal)
  ModelMorphism eta;
  ModelMorphism phi;
  ModelElement unit_image;
  bool injective = false;
  std::string explanation;
  std::optional<Tuple> kernel_witness;  // over Y, nonzero class with phi = 0
};
PipelineResult normalize_unit(const FiniteIndexSet& Y, const IdealOfSubsets& J, const Tuple& u);

}  // namespace csup
