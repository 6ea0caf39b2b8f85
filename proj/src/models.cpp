#include "csup/models.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace csup {

long long FiniteIndexSet::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<long long>(i);
  return -1;
}

std::string FiniteIndexSet::mask_to_string(uint32_t mask) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (size_t i = 0; i < labels.size(); ++i)
    if (mask & (1u << i)) {
      if (!first) os << ',';
      os << labels[i];
      first = false;
    }
  os << '}';
  return os.str();
}

FiniteIndexSet make_index_set(std::vector<std::string> labels) {
  if (labels.size() > 31) throw ModelError("ground set too large");
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw ModelError("duplicate ground label '" + l + "'");
  return FiniteIndexSet{std::move(labels)};
}

IdealOfSubsets IdealOfSubsets::closure(const FiniteIndexSet& ground,
                                       const std::vector<std::vector<std::string>>& generators) {
  std::vector<uint32_t> masks;
  for (const auto& gen : generators) {
    uint32_t m = 0;
    for (const auto& label : gen) {
      long long i = ground.index_of(label);
      if (i < 0) throw ModelError("generator label '" + label + "' not in the ground set");
      m |= 1u << i;
    }
    masks.push_back(m);
  }
  return closure_masks(ground, masks);
}

IdealOfSubsets IdealOfSubsets::closure_masks(const FiniteIndexSet& ground,
                                             const std::vector<uint32_t>& generators) {
  uint32_t full = ground.size() == 31 ? 0x7fffffffu : (1u << ground.size()) - 1;
  uint32_t m = 0;
  for (uint32_t g : generators) {
    if ((g & ~full) != 0) throw ModelError("generator not a subset of the ground set");
    m |= g;
  }
  return IdealOfSubsets(ground, m);
}

std::vector<uint32_t> IdealOfSubsets::members() const {
  // All subsets of the union mask, enumerated by the standard subset walk.
  std::vector<uint32_t> out;
  uint32_t m = union_mask_;
  uint32_t s = 0;
  while (true) {
    out.push_back(s);
    if (s == m) break;
    s = (s - m) & m;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IdealOfSubsets> all_ideals(const FiniteIndexSet& ground) {
  std::vector<IdealOfSubsets> out;
  uint32_t full = (1u << ground.size()) - 1;
  for (uint32_t m = 0; m <= full; ++m)
    out.push_back(IdealOfSubsets::closure_masks(ground, {m}));
  return out;
}

QuotientModel make_quotient_model(const FiniteIndexSet& ground, const IdealOfSubsets& ideal,
                                  bool enriched) {
  QuotientModel m;
  m.ground = ground;
  m.ideal = ideal;
  for (size_t i = 0; i < ground.size(); ++i)
    if (!(ideal.union_mask() & (1u << i))) {
      m.support.push_back(ground.labels[i]);
      m.support_positions.push_back(i);
    }
  m.enriched = enriched;
  return m;
}

std::pair<QuotientModel, ModelMorphism> quotient_model(const FiniteIndexSet& ground,
                                                       const IdealOfSubsets& ideal,
                                                       bool enriched) {
  QuotientModel target = make_quotient_model(ground, ideal, enriched);
  QuotientModel power =
      make_quotient_model(ground, IdealOfSubsets::closure_masks(ground, {}), enriched);
  ModelMorphism q;
  q.source = power;
  q.target = target;
  for (size_t pos : target.support_positions) {
    q.select.push_back(pos);  // power support is the whole ground, same order
    q.factor.push_back(Rat(1));
  }
  return {std::move(target), std::move(q)};
}

QuotientModel enrich(QuotientModel m) {
  m.enriched = true;
  return m;
}

QuotientModel forget(QuotientModel m) {
  m.enriched = false;
  return m;
}

ModelElement restrict_to_support(const QuotientModel& m, const Tuple& t) {
  if (t.size() != m.ground.size()) throw ModelError("tuple size does not match the ground set");
  ModelElement e;
  e.values.reserve(m.support_positions.size());
  for (size_t pos : m.support_positions) e.values.push_back(t[pos]);
  return e;
}

Tuple extend_by_zero(const QuotientModel& m, const ModelElement& e) {
  if (e.values.size() != m.support.size()) throw ModelError("element size mismatch");
  Tuple t(m.ground.size(), Rat(0));
  for (size_t i = 0; i < m.support_positions.size(); ++i)
    t[m.support_positions[i]] = e.values[i];
  return t;
}

bool tuples_equivalent(const QuotientModel& m, const Tuple& f, const Tuple& g) {
  if (f.size() != m.ground.size() || g.size() != m.ground.size())
    throw ModelError("tuple size does not match the ground set");
  uint32_t diff = 0;
  for (size_t i = 0; i < f.size(); ++i)
    if (!(f[i] == g[i])) diff |= 1u << i;
  return m.ideal.contains(diff);
}

ModelElement zero_element(const QuotientModel& m) {
  return ModelElement{std::vector<Rat>(m.support.size(), Rat(0))};
}

ModelElement const_element(const QuotientModel& m, const Rat& c) {
  return ModelElement{std::vector<Rat>(m.support.size(), c)};
}

ModelElement random_element(Rng& rng, const QuotientModel& m) {
  ModelElement e;
  e.values.reserve(m.support.size());
  for (size_t i = 0; i < m.support.size(); ++i) e.values.push_back(random_small_rat(rng));
  return e;
}

Tuple random_tuple(Rng& rng, const FiniteIndexSet& ground) {
  Tuple t;
  t.reserve(ground.size());
  for (size_t i = 0; i < ground.size(); ++i) t.push_back(random_small_rat(rng));
  return t;
}

ModelElement eval_in_model(const TermPtr& t, const ModelValuation& v, const QuotientModel& m) {
  if (!m.enriched && contains_csup(t))
    throw ModelError("countable sup in an unenriched model");
  ModelElement out;
  out.values.reserve(m.support.size());
  for (size_t i = 0; i < m.support.size(); ++i) {
    Valuation pointwise;
    for (const auto& [name, elem] : v) {
      if (elem.values.size() != m.support.size())
        throw ModelError("element size mismatch for variable '" + name + "'");
      pointwise[name] = elem.values[i];
    }
    out.values.push_back(eval(t, pointwise));
  }
  return out;
}

ModelElement ModelMorphism::apply(const ModelElement& e) const {
  if (e.values.size() != source.support.size())
    throw ModelError("element does not belong to the morphism source");
  ModelElement out;
  out.values.reserve(select.size());
  for (size_t i = 0; i < select.size(); ++i)
    out.values.push_back(factor[i] * e.values[select[i]]);
  return out;
}

ModelMorphism identity_morphism(const QuotientModel& m) {
  ModelMorphism id;
  id.source = m;
  id.target = m;
  for (size_t i = 0; i < m.support.size(); ++i) {
    id.select.push_back(i);
    id.factor.push_back(Rat(1));
  }
  return id;
}

ModelMorphism compose(const ModelMorphism& second, const ModelMorphism& first) {
  if (first.target.support.size() != second.source.support.size())
    throw ModelError("morphism composition mismatch");
  ModelMorphism out;
  out.source = first.source;
  out.target = second.target;
  for (size_t i = 0; i < second.select.size(); ++i) {
    size_t mid = second.select[i];
    out.select.push_back(first.select[mid]);
    out.factor.push_back(second.factor[i] * first.factor[mid]);
  }
  return out;
}

bool same_recipe(const ModelMorphism& a, const ModelMorphism& b) {
  return a.select == b.select && a.factor == b.factor;
}

EnrichmentReport compare_enrichments(const FiniteIndexSet& ground, const IdealOfSubsets& ideal,
                                     long long trials, uint64_t seed) {
  EnrichmentReport report;
  Rng rng(seed);
  QuotientModel enriched_quotient = make_quotient_model(ground, ideal, true);
  QuotientModel enriched_power =
      make_quotient_model(ground, IdealOfSubsets::closure_masks(ground, {}), true);
  std::vector<std::string> vars{"x", "y", "z"};
  for (long long trial = 0; trial < trials; ++trial) {
    ++report.trials;
    // A term that actually exercises the sup operation.
    TermPtr bound = random_term(rng, Signature::LG, vars, 2, false);
    TermPtr t = csup_of(bound, random_family(rng, Signature::LG, vars));
    std::map<std::string, Tuple> tuples;
    for (const auto& name : vars) tuples[name] = random_tuple(rng, ground);

    // Route (a): evaluate inside the enriched quotient.
    ModelValuation quotient_val;
    for (const auto& [name, tup] : tuples)
      quotient_val[name] = restrict_to_support(enriched_quotient, tup);
    ModelElement via_quotient = eval_in_model(t, quotient_val, enriched_quotient);

    // Route (b): evaluate in the enriched power, then apply the quotient map.
    ModelValuation power_val;
    for (const auto& [name, tup] : tuples)
      power_val[name] = ModelElement{tup};
    ModelElement in_power = eval_in_model(t, power_val, enriched_power);
    ModelElement via_power = restrict_to_support(enriched_quotient, in_power.values);

    if (!(via_quotient == via_power)) {
      ++report.discrepancies;
      if (report.first_discrepancy.empty()) {
        std::ostringstream os;
        os << "term " << print(t) << " trial " << trial;
        report.first_discrepancy = os.str();
      }
    }
  }
  return report;
}

WeakUnitVerdict check_weak_unit(const QuotientModel& m, const ModelElement& e, long long trials,
                                uint64_t seed) {
  WeakUnitVerdict v;
  if (e.values.size() != m.support.size()) throw ModelError("element size mismatch");
  // Exact criterion on the finite support.
  for (size_t i = 0; i < e.values.size(); ++i) {
    if (e.values[i].is_negative()) {
      v.is_weak_unit = false;
      v.witness_label = m.support[i];
      v.explanation = "not nonnegative at " + m.support[i];
      return v;
    }
  }
  for (size_t i = 0; i < e.values.size(); ++i) {
    if (e.values[i].is_zero()) {
      v.is_weak_unit = false;
      v.witness_label = m.support[i];
      v.explanation = "vanishes at " + m.support[i];
      ModelElement f = zero_element(m);
      f.values[i] = Rat(1);
      v.witness_f = f;  // f /\ e = 0 though f != 0
      return v;
    }
  }
  v.is_weak_unit = true;
  v.explanation = "strictly positive on the support";
  // Randomized corroboration of f /\ e = 0 => f = 0 over nonnegative f.
  Rng rng(seed);
  for (long long trial = 0; trial < trials; ++trial) {
    ++v.trials_run;
    ModelElement f = random_element(rng, m);
    for (auto& x : f.values) x = x.abs();
    bool meets_zero = true;
    for (size_t i = 0; i < f.values.size(); ++i)
      if (!min(f.values[i], e.values[i]).is_zero()) {
        meets_zero = false;
        break;
      }
    if (meets_zero) {
      bool is_zero = f == zero_element(m);
      if (!is_zero) {
        v.is_weak_unit = false;
        v.explanation = "randomized trial found nonzero f with f /\\ e = 0";
        v.witness_f = f;
        return v;
      }
    }
  }
  return v;
}

SigmaVerdict check_sigma_continuity(const QuotientModel& source, const QuotientModel& target,
                                    const std::function<ModelElement(const ModelElement&)>& map,
                                    long long samples, uint64_t seed) {
  SigmaVerdict verdict;
  Rng rng(seed);
  (void)target;
  for (long long trial = 0; trial < samples; ++trial) {
    ++verdict.samples_run;
    long long k = rng.range(1, 4);
    std::vector<ModelElement> family;
    for (long long i = 0; i < k; ++i) family.push_back(random_element(rng, source));
    // Finite support: the countable bounded sup is the coordinatewise max.
    ModelElement sup = family[0];
    for (long long i = 1; i < k; ++i)
      for (size_t c = 0; c < sup.values.size(); ++c)
        sup.values[c] = max(sup.values[c], family[i].values[c]);
    ModelElement lhs = map(sup);
    ModelElement rhs = map(family[0]);
    for (long long i = 1; i < k; ++i) {
      ModelElement fi = map(family[i]);
      for (size_t c = 0; c < rhs.values.size(); ++c)
        rhs.values[c] = max(rhs.values[c], fi.values[c]);
    }
    if (!(lhs == rhs)) {
      verdict.passed = false;
      std::ostringstream os;
      os << "family of " << k << " elements at trial " << trial;
      verdict.witness = os.str();
      return verdict;
    }
  }
  return verdict;
}

SigmaVerdict check_sigma_continuity(const ModelMorphism& phi, long long samples, uint64_t seed) {
  return check_sigma_continuity(phi.source, phi.target,
                                [&phi](const ModelElement& e) { return phi.apply(e); }, samples,
                                seed);
}

Tuple positive_representative(const QuotientModel& m, const Tuple& e) {
  if (e.size() != m.ground.size()) throw ModelError("tuple size does not match the ground set");
  // The class is >= 0 iff the representative is >= 0 on the support.
  for (size_t pos : m.support_positions)
    if (e[pos].is_negative())
      throw ModelError("class is not nonnegative: negative at " + m.ground.labels[pos]);
  Tuple out;
  out.reserve(e.size());
  for (const auto& x : e) out.push_back(max(x, Rat(0)));
  return out;
}

PipelineResult normalize_unit(const FiniteIndexSet& Y, const IdealOfSubsets& J, const Tuple& u) {
  if (u.size() != Y.size()) throw ModelError("unit tuple size does not match the ground set");
  QuotientModel source = make_quotient_model(Y, J, true);
  for (size_t pos : source.support_positions)
    if (u[pos].is_negative())
      throw ModelError("unit class is not nonnegative: negative at " + Y.labels[pos]);

  PipelineResult r;
  r.source = source;

  // X = the coordinates where the unit is strictly positive.
  std::vector<std::string> x_labels;
  std::vector<size_t> x_positions;  // positions within Y
  for (size_t i = 0; i < Y.size(); ++i)
    if (u[i].is_positive()) {
      x_labels.push_back(Y.labels[i]);
      x_positions.push_back(i);
    }
  r.X = make_index_set(x_labels);

  // I = restriction of the ideal to X.
  uint32_t i_mask = 0;
  for (size_t xi = 0; xi < x_positions.size(); ++xi)
    if (J.union_mask() & (1u << x_positions[xi])) i_mask |= 1u << xi;
  r.I = IdealOfSubsets::closure_masks(r.X, {i_mask});
  r.target = make_quotient_model(r.X, r.I, true);

  // rho: restriction of classes over Y to classes over X. Target support
  // coordinates correspond to source support coordinates with the same label.
  r.rho.source = source;
  r.rho.target = r.target;
  for (const auto& label : r.target.support) {
    long long src = -1;
    for (size_t s = 0; s < source.support.size(); ++s)
      if (source.support[s] == label) src = static_cast<long long>(s);
    if (src < 0) throw ModelError("internal: support of X not inside support of Y");
    r.rho.select.push_back(static_cast<size_t>(src));
    r.rho.factor.push_back(Rat(1));
  }

  // m: division by u on the power over X (all coordinates are support there).
  QuotientModel power_x =
      make_quotient_model(r.X, IdealOfSubsets::closure_masks(r.X, {}), true);
  r.m_iso.source = power_x;
  r.m_iso.target = power_x;
  for (size_t xi = 0; xi < x_positions.size(); ++xi) {
    r.m_iso.select.push_back(xi);
    r.m_iso.factor.push_back(Rat(1) / u[x_positions[xi]]);
  }

  // eta: the same division on the quotient over X.
  r.eta.source = r.target;
  r.eta.target = r.target;
  for (size_t ti = 0; ti < r.target.support_positions.size(); ++ti) {
    size_t xi = r.target.support_positions[ti];
    r.eta.select.push_back(ti);
    r.eta.factor.push_back(Rat(1) / u[x_positions[xi]]);
  }

  r.phi = compose(r.eta, r.rho);

  // The image of the unit class.
  ModelElement u_class = restrict_to_support(source, u);
  r.unit_image = r.phi.apply(u_class);

  // Exact kernel criterion: the zero set of u lies in the ideal.
  uint32_t zero_mask = 0;
  for (size_t i = 0; i < Y.size(); ++i)
    if (u[i].is_zero()) zero_mask |= 1u << i;
  r.injective = J.contains(zero_mask);
  if (r.injective) {
    r.explanation = "zero set " + Y.mask_to_string(zero_mask) + " lies in the ideal";
  } else {
    uint32_t outside = zero_mask & ~J.union_mask();
    r.explanation = "zero set " + Y.mask_to_string(zero_mask) +
                    " is not in the ideal; classes supported on " +
                    Y.mask_to_string(outside) + " map to zero";
    Tuple witness(Y.size(), Rat(0));
    for (size_t i = 0; i < Y.size(); ++i)
      if (outside & (1u << i)) witness[i] = Rat(1);
    r.kernel_witness = witness;
  }
  return r;
}

}  // namespace csup
