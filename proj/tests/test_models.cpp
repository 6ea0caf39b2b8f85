#include <doctest.h>

#include <set>

#include "csup/models.hpp"
#include "csup/parser.hpp"

using namespace csup;

namespace {

// Independent oracle: least family containing the generators and the empty
// set that is downward closed and closed under binary unions, computed by
// fixpoint iteration over the powerset.
std::vector<uint32_t> brute_closure(const std::vector<uint32_t>& gens) {
  std::set<uint32_t> fam(gens.begin(), gens.end());
  fam.insert(0);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<uint32_t> cur(fam.begin(), fam.end());
    for (uint32_t a : cur)
      for (uint32_t b : cur)
        if (fam.insert(a | b).second) changed = true;
    for (uint32_t a : cur) {
      uint32_t s = a;
      while (true) {
        if (fam.insert(s).second) changed = true;
        if (s == 0) break;
        s = (s - 1) & a;
      }
    }
  }
  return std::vector<uint32_t>(fam.begin(), fam.end());
}

Tuple tup(std::vector<long long> xs) {
  Tuple t;
  for (long long x : xs) t.push_back(Rat(x));
  return t;
}

ModelElement elem(std::vector<Rat> xs) { return ModelElement{std::move(xs)}; }

ModelElement pointwise_max(const ModelElement& a, const ModelElement& b) {
  ModelElement out = a;
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = max(out.values[i], b.values[i]);
  return out;
}

std::vector<FiniteIndexSet> small_grounds(size_t max_size) {
  std::vector<std::string> pool{"a", "b", "c", "d", "e"};
  std::vector<FiniteIndexSet> out;
  for (size_t n = 1; n <= max_size; ++n)
    out.push_back(make_index_set({pool.begin(), pool.begin() + n}));
  return out;
}

}  // namespace

TEST_CASE("ideal closure matches the brute-force fixpoint") {
  FiniteIndexSet X = make_index_set({"a", "b", "c"});

  SUBCASE("single generator {c}") {
    auto I = IdealOfSubsets::closure(X, {{"c"}});
    CHECK(I.members() == std::vector<uint32_t>{0u, 4u});  // {} and {c}
    CHECK(I.contains(0u));
    CHECK(I.contains(4u));
    CHECK(!I.contains(1u));
    CHECK(!I.contains(5u));
  }

  SUBCASE("no generators give the minimal ideal") {
    auto I = IdealOfSubsets::closure(X, {});
    CHECK(I.members() == std::vector<uint32_t>{0u});
    CHECK(I.union_mask() == 0u);
  }

  SUBCASE("generators {a} and {b}") {
    auto I = IdealOfSubsets::closure(X, {{"a"}, {"b"}});
    CHECK(I.members() == std::vector<uint32_t>{0u, 1u, 2u, 3u});  // {},{a},{b},{a,b}
  }

  SUBCASE("closure equals the fixpoint for every generator set") {
    // All 2^8 generator families over the 8 subsets of a 3-element ground.
    for (uint32_t gset = 0; gset < 256; ++gset) {
      std::vector<uint32_t> gens;
      for (uint32_t s = 0; s < 8; ++s)
        if (gset & (1u << s)) gens.push_back(s);
      auto I = IdealOfSubsets::closure_masks(X, gens);
      CHECK(I.members() == brute_closure(gens));
    }
  }

  SUBCASE("closure conditions hold on the computed members") {
    auto I = IdealOfSubsets::closure(X, {{"a", "c"}});
    auto ms = I.members();
    std::set<uint32_t> fam(ms.begin(), ms.end());
    CHECK(fam.count(0u) == 1);
    for (uint32_t m : ms) {
      uint32_t s = m;
      while (true) {
        CHECK(fam.count(s) == 1);  // downward closed
        if (s == 0) break;
        s = (s - 1) & m;
      }
      for (uint32_t n : ms) CHECK(fam.count(m | n) == 1);  // union closed
    }
  }

  SUBCASE("bad inputs are rejected") {
    CHECK_THROWS_AS(IdealOfSubsets::closure(X, {{"z"}}), ModelError);
    CHECK_THROWS_AS(IdealOfSubsets::closure_masks(X, {8u}), ModelError);
    CHECK_THROWS_AS(make_index_set({"a", "a"}), ModelError);
  }
}

TEST_CASE("all ideals on a finite ground set, one per union mask") {
  FiniteIndexSet X = make_index_set({"a", "b", "c"});
  auto ideals = all_ideals(X);
  REQUIRE(ideals.size() == 8);
  std::set<uint32_t> masks;
  for (const auto& I : ideals) {
    masks.insert(I.union_mask());
    CHECK(I.members() == brute_closure({I.union_mask()}));
  }
  CHECK(masks.size() == 8);
}

TEST_CASE("quotient supports and tuple equivalence") {
  FiniteIndexSet X = make_index_set({"a", "b", "c"});

  SUBCASE("trivial ideal keeps everything and quotients by nothing") {
    auto [m, q] = quotient_model(X, IdealOfSubsets::closure(X, {}), false);
    CHECK(m.support == std::vector<std::string>{"a", "b", "c"});
    CHECK(same_recipe(q, identity_morphism(m)));
    CHECK(q.apply(elem({Rat(1), Rat(2), Rat(3)})).values == std::vector<Rat>{Rat(1), Rat(2), Rat(3)});
  }

  SUBCASE("ideal generated by {c} identifies tuples that agree on {a,b}") {
    auto [m, q] = quotient_model(X, IdealOfSubsets::closure(X, {{"c"}}), false);
    CHECK(m.support == std::vector<std::string>{"a", "b"});
    CHECK(tuples_equivalent(m, tup({1, 2, 3}), tup({1, 2, -9})));
    CHECK(!tuples_equivalent(m, tup({1, 2, 3}), tup({1, 0, 3})));
    CHECK(restrict_to_support(m, tup({1, 2, 3})) == elem({Rat(1), Rat(2)}));
    CHECK(extend_by_zero(m, elem({Rat(1), Rat(2)})) == tup({1, 2, 0}));
    CHECK(q.apply(elem({Rat(1), Rat(2), Rat(3)})) == elem({Rat(1), Rat(2)}));
  }

  SUBCASE("full powerset collapses to the one-element model") {
    auto m = make_quotient_model(X, IdealOfSubsets::closure(X, {{"a", "b", "c"}}), false);
    CHECK(m.support.empty());
    CHECK(tuples_equivalent(m, tup({1, 2, 3}), tup({4, 5, 6})));
    CHECK(restrict_to_support(m, tup({7, 8, 9})) == zero_element(m));
  }

  SUBCASE("soundness: identified exactly when the difference set is a member") {
    // Exhaustive over grounds of size <= 4, all ideals, all 0/1 tuples.
    for (const auto& ground : small_grounds(4)) {
      size_t n = ground.size();
      for (const auto& I : all_ideals(ground)) {
        auto m = make_quotient_model(ground, I, false);
        auto ms = I.members();
        std::set<uint32_t> fam(ms.begin(), ms.end());
        for (uint32_t f = 0; f < (1u << n); ++f)
          for (uint32_t g = 0; g < (1u << n); ++g) {
            Tuple tf, tg;
            for (size_t i = 0; i < n; ++i) {
              tf.push_back(Rat((f >> i) & 1));
              tg.push_back(Rat((g >> i) & 1));
            }
            bool same_class = restrict_to_support(m, tf) == restrict_to_support(m, tg);
            CHECK(same_class == (fam.count(f ^ g) == 1));
            CHECK(tuples_equivalent(m, tf, tg) == same_class);
          }
      }
    }
  }
}

TEST_CASE("evaluation in a quotient model") {
  FiniteIndexSet X = make_index_set({"a", "b"});
  auto triv = IdealOfSubsets::closure(X, {});

  SUBCASE("pointwise absolute value") {
    auto m = make_quotient_model(X, triv, false);
    TermPtr t = parse_term("x \\/ -x", Signature::LG);
    ModelValuation v{{"x", elem({Rat(3), Rat(-2)})}};
    CHECK(eval_in_model(t, v, m) == elem({Rat(3), Rat(2)}));
  }

  SUBCASE("the weak-unit equation holds at a concrete element") {
    auto m = make_quotient_model(X, triv, true);
    TermPtr t = parse_term("csup[abs(f)](n : abs(f) /\\ n*one)", Signature::LGu);
    ModelValuation v{{"f", elem({Rat(-7, 2), Rat(4)})}};
    CHECK(eval_in_model(t, v, m) == elem({Rat(7, 2), Rat(4)}));
  }

  SUBCASE("countable sups require an enriched model") {
    auto m = make_quotient_model(X, triv, false);
    TermPtr t = parse_term("csup[x](n : x /\\ n*one)", Signature::LGu);
    ModelValuation v{{"x", elem({Rat(1), Rat(1)})}};
    CHECK_THROWS_AS(eval_in_model(t, v, m), ModelError);
    CHECK_NOTHROW(eval_in_model(t, v, enrich(m)));
  }

  SUBCASE("elements must match the support size") {
    auto m = make_quotient_model(X, triv, false);
    ModelValuation v{{"x", elem({Rat(1)})}};
    CHECK_THROWS_AS(eval_in_model(var("x"), v, m), ModelError);
  }

  SUBCASE("single-point model agrees with plain evaluation") {
    FiniteIndexSet P = make_index_set({"p"});
    auto m = make_quotient_model(P, IdealOfSubsets::closure(P, {}), true);
    std::vector<std::string> vars{"x", "y", "z"};
    Rng rng(0x51u);
    for (int trial = 0; trial < 300; ++trial) {
      TermPtr t = random_term(rng, Signature::RSu, vars, 3, true);
      Valuation scalar;
      ModelValuation modelv;
      for (const auto& name : vars) {
        Rat r = random_small_rat(rng);
        scalar[name] = r;
        modelv[name] = elem({r});
      }
      CHECK(eval_in_model(t, modelv, m) == elem({eval(t, scalar)}));
    }
  }
}

TEST_CASE("enriching the quotient agrees with quotienting the enriched power") {
  FiniteIndexSet X = make_index_set({"a", "b", "c"});

  SUBCASE("explicit family differing only on the collapsed coordinate") {
    auto I = IdealOfSubsets::closure(X, {{"c"}});
    auto quotient = make_quotient_model(X, I, true);
    auto power = make_quotient_model(X, IdealOfSubsets::closure(X, {}), true);
    TermPtr t = parse_term("csup[g]([x] ~ y)", Signature::LG);
    Tuple xs = tup({1, 1, 100}), ys = tup({1, 1, -50}), gs = tup({2, 3, 9});

    ModelValuation qv{{"x", restrict_to_support(quotient, xs)},
                      {"y", restrict_to_support(quotient, ys)},
                      {"g", restrict_to_support(quotient, gs)}};
    ModelElement via_quotient = eval_in_model(t, qv, quotient);

    ModelValuation pv{{"x", ModelElement{xs}}, {"y", ModelElement{ys}}, {"g", ModelElement{gs}}};
    ModelElement in_power = eval_in_model(t, pv, power);
    CHECK(in_power == elem({Rat(1), Rat(1), Rat(9)}));
    CHECK(via_quotient == restrict_to_support(quotient, in_power.values));
    CHECK(via_quotient == elem({Rat(1), Rat(1)}));
  }

  SUBCASE("randomized comparison over every ideal on up to three points") {
    for (const auto& ground : small_grounds(3))
      for (const auto& I : all_ideals(ground)) {
        auto report = compare_enrichments(ground, I, 40, 0xabcdu ^ I.union_mask());
        CHECK(report.trials == 40);
        CHECK(report.discrepancies == 0);
        CHECK(report.first_discrepancy.empty());
      }
  }
}

TEST_CASE("countable sups over finite supports are finite maxima") {
  // For an eventually constant family the sup is the max of prefix and tail
  // members, each met with the bound.
  FiniteIndexSet X = make_index_set({"a", "b", "c"});
  std::vector<std::string> vars{"x", "y", "z"};
  Rng rng(0x600dull);
  for (const auto& I : all_ideals(X)) {
    auto m = make_quotient_model(X, I, true);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<TermPtr> prefix;
      long long plen = rng.range(0, 3);
      for (long long i = 0; i < plen; ++i)
        prefix.push_back(random_term(rng, Signature::LG, vars, 2, false));
      TermPtr tail = random_term(rng, Signature::LG, vars, 2, false);
      FamilyPtr fam = family_ec(prefix, tail);
      TermPtr bound = random_term(rng, Signature::LG, vars, 2, false);

      ModelValuation v;
      for (const auto& name : vars) v[name] = random_element(rng, m);

      ModelElement via_eval = eval_in_model(csup_of(bound, fam), v, m);
      ModelElement expected = eval_in_model(meet(family_member(fam, 1), bound), v, m);
      for (long long j = 2; j <= plen + 1; ++j)
        expected = pointwise_max(expected, eval_in_model(meet(family_member(fam, j), bound), v, m));
      CHECK(via_eval == expected);
    }
  }
}

TEST_CASE("weak unit checks on finite supports") {
  FiniteIndexSet X = make_index_set({"a", "b"});
  auto m = make_quotient_model(X, IdealOfSubsets::closure(X, {}), false);

  SUBCASE("the all-ones element is a weak unit") {
    auto v = check_weak_unit(m, const_element(m, Rat(1)), 50, 1);
    CHECK(v.is_weak_unit);
    CHECK(v.trials_run == 50);
  }

  SUBCASE("an element vanishing at b is not, with the expected witness") {
    auto v = check_weak_unit(m, elem({Rat(2), Rat(0)}), 50, 1);
    CHECK(!v.is_weak_unit);
    CHECK(v.witness_label == "b");
    REQUIRE(v.witness_f.has_value());
    CHECK(*v.witness_f == elem({Rat(0), Rat(1)}));
    // The witness meets e in zero but is itself nonzero.
    CHECK(min(v.witness_f->values[1], Rat(0)) == Rat(0));
  }

  SUBCASE("zero is not a weak unit on a nonempty support") {
    auto v = check_weak_unit(m, zero_element(m), 50, 1);
    CHECK(!v.is_weak_unit);
  }

  SUBCASE("negative elements are rejected outright") {
    auto v = check_weak_unit(m, elem({Rat(1), Rat(-1, 2)}), 50, 1);
    CHECK(!v.is_weak_unit);
    CHECK(v.witness_label == "b");
  }

  SUBCASE("every weak unit recovers nonnegative elements by saturation") {
    // sup_n (x /\ n*y) = x for x >= 0 and y a weak unit, exact on the support.
    TermPtr t = parse_term("csup[x](n : x /\\ n*y)", Signature::LG);
    for (const auto& ground : small_grounds(3))
      for (const auto& I : all_ideals(ground)) {
        auto q = make_quotient_model(ground, I, true);
        Rng rng(0x11u ^ (I.union_mask() << 3) ^ ground.size());
        for (int trial = 0; trial < 20; ++trial) {
          ModelElement x = random_element(rng, q);
          for (auto& c : x.values) c = c.abs();
          ModelElement y = random_element(rng, q);
          for (auto& c : y.values) c = c.abs() + Rat(1, 4);
          CHECK(check_weak_unit(q, y, 5, trial).is_weak_unit);
          ModelValuation v{{"x", x}, {"y", y}};
          CHECK(eval_in_model(t, v, q) == x);
        }
      }
  }
}

TEST_CASE("sigma continuity of morphisms") {
  FiniteIndexSet X = make_index_set({"a", "b", "c"});

  SUBCASE("quotient maps preserve countable sups") {
    for (const auto& I : all_ideals(X)) {
      auto [m, q] = quotient_model(X, I, true);
      auto verdict = check_sigma_continuity(q, 200, 0xfeedu);
      CHECK(verdict.passed);
      CHECK(verdict.samples_run == 200);
    }
  }

  SUBCASE("coordinate permutations preserve countable sups") {
    auto m = make_quotient_model(X, IdealOfSubsets::closure(X, {}), true);
    ModelMorphism rot;
    rot.source = m;
    rot.target = m;
    rot.select = {1, 2, 0};
    rot.factor = {Rat(1), Rat(1), Rat(1)};
    CHECK(check_sigma_continuity(rot, 200, 0xfeedu).passed);
  }

  SUBCASE("an order-reversing map fails with a witness") {
    auto m = make_quotient_model(X, IdealOfSubsets::closure(X, {}), true);
    auto verdict = check_sigma_continuity(
        m, m,
        [](const ModelElement& e) {
          ModelElement out = e;
          for (auto& c : out.values) c = -c;
          return out;
        },
        200, 0xfeedu);
    CHECK(!verdict.passed);
    CHECK(!verdict.witness.empty());
  }

  SUBCASE("a map crushing nonnegative elements to zero fails") {
    auto m = make_quotient_model(X, IdealOfSubsets::closure(X, {}), true);
    auto verdict = check_sigma_continuity(
        m, m,
        [&m](const ModelElement& e) {
          for (const auto& c : e.values)
            if (c.is_negative()) return e;
          return zero_element(m);
        },
        400, 0xfeedu);
    CHECK(!verdict.passed);
  }
}

TEST_CASE("morphism recipes preserve the finitary operations") {
  FiniteIndexSet X = make_index_set({"a", "b", "c", "d"});
  auto m = make_quotient_model(X, IdealOfSubsets::closure(X, {{"d"}}), true);
  Rng rng(0x0f0fu);
  for (int trial = 0; trial < 100; ++trial) {
    ModelMorphism phi;
    phi.source = m;
    phi.target = m;
    for (size_t i = 0; i < m.support.size(); ++i) {
      phi.select.push_back(static_cast<size_t>(rng.below(static_cast<long long>(m.support.size()))));
      phi.factor.push_back(random_small_rat(rng).abs() + Rat(1, 3));
    }
    ModelElement e = random_element(rng, m), f = random_element(rng, m);

    ModelElement sum = e, mt = e, jn = e;
    for (size_t i = 0; i < e.values.size(); ++i) {
      sum.values[i] = e.values[i] + f.values[i];
      mt.values[i] = min(e.values[i], f.values[i]);
      jn.values[i] = max(e.values[i], f.values[i]);
    }
    ModelElement pe = phi.apply(e), pf = phi.apply(f);
    ModelElement psum = pe, pmt = pe, pjn = pe;
    for (size_t i = 0; i < pe.values.size(); ++i) {
      psum.values[i] = pe.values[i] + pf.values[i];
      pmt.values[i] = min(pe.values[i], pf.values[i]);
      pjn.values[i] = max(pe.values[i], pf.values[i]);
    }
    CHECK(phi.apply(sum) == psum);
    CHECK(phi.apply(mt) == pmt);
    CHECK(phi.apply(jn) == pjn);
    CHECK(phi.apply(zero_element(m)) == zero_element(m));

    // Composition with the identity leaves the recipe untouched and
    // composition agrees with applying the maps in sequence.
    CHECK(same_recipe(compose(identity_morphism(m), phi), phi));
    CHECK(same_recipe(compose(phi, identity_morphism(m)), phi));
    ModelMorphism psi;
    psi.source = m;
    psi.target = m;
    for (size_t i = 0; i < m.support.size(); ++i) {
      psi.select.push_back(static_cast<size_t>(rng.below(static_cast<long long>(m.support.size()))));
      psi.factor.push_back(random_small_rat(rng).abs() + Rat(1, 2));
    }
    CHECK(compose(psi, phi).apply(e) == psi.apply(phi.apply(e)));
  }
}

TEST_CASE("positive representatives of nonnegative classes") {
  FiniteIndexSet X = make_index_set({"a", "b"});

  SUBCASE("negative junk on ideal coordinates is clipped") {
    auto m = make_quotient_model(X, IdealOfSubsets::closure(X, {{"b"}}), false);
    Tuple out = positive_representative(m, {Rat(2), Rat(-3)});
    CHECK(out == tup({2, 0}));
    CHECK(tuples_equivalent(m, out, {Rat(2), Rat(-3)}));
  }

  SUBCASE("already nonnegative tuples are unchanged") {
    auto m = make_quotient_model(X, IdealOfSubsets::closure(X, {}), false);
    CHECK(positive_representative(m, tup({1, 0})) == tup({1, 0}));
    CHECK(positive_representative(m, tup({0, 0})) == tup({0, 0}));
  }

  SUBCASE("classes that are not nonnegative are rejected") {
    auto m = make_quotient_model(X, IdealOfSubsets::closure(X, {}), false);
    CHECK_THROWS_AS(positive_representative(m, tup({2, -3})), ModelError);
  }
}

TEST_CASE("weak-unit normalization pipeline") {
  FiniteIndexSet Y = make_index_set({"1", "2", "3"});
  Tuple u{Rat(2), Rat(0), Rat(5)};

  SUBCASE("collapsing ideal: the map is injective and sends the unit to ones") {
    auto J = IdealOfSubsets::closure(Y, {{"2"}});
    auto r = normalize_unit(Y, J, u);
    CHECK(r.X.labels == std::vector<std::string>{"1", "3"});
    CHECK(r.I.members() == std::vector<uint32_t>{0u});
    CHECK(r.injective);
    CHECK(!r.kernel_witness.has_value());
    CHECK(r.unit_image == const_element(r.target, Rat(1)));

    // phi is eta after rho, as a recipe and pointwise.
    CHECK(same_recipe(r.phi, compose(r.eta, r.rho)));
    Rng rng(0x77u);
    for (int trial = 0; trial < 50; ++trial) {
      ModelElement e = random_element(rng, r.source);
      CHECK(r.phi.apply(e) == r.eta.apply(r.rho.apply(e)));
    }
    CHECK(check_sigma_continuity(r.phi, 200, 0xbeefu).passed);

    // The normalized unit really is a weak unit of the target.
    CHECK(check_weak_unit(r.target, r.unit_image, 20, 5).is_weak_unit);
  }

  SUBCASE("trivial ideal: the same unit has a kernel") {
    auto J = IdealOfSubsets::closure(Y, {});
    auto r = normalize_unit(Y, J, u);
    CHECK(r.X.labels == std::vector<std::string>{"1", "3"});
    CHECK(!r.injective);
    REQUIRE(r.kernel_witness.has_value());
    // The witness is a nonzero class over Y that phi sends to zero.
    CHECK(*r.kernel_witness == tup({0, 1, 0}));
    CHECK(!(restrict_to_support(r.source, *r.kernel_witness) == zero_element(r.source)));
    CHECK(r.phi.apply(restrict_to_support(r.source, *r.kernel_witness)) ==
          zero_element(r.target));
    CHECK(r.unit_image == const_element(r.target, Rat(1)));
  }

  SUBCASE("strictly positive unit: a pure rescaling of the whole model") {
    auto J = IdealOfSubsets::closure(Y, {});
    Tuple w{Rat(2), Rat(1, 2), Rat(5)};
    auto r = normalize_unit(Y, J, w);
    CHECK(r.X.labels == Y.labels);
    CHECK(r.I.members() == std::vector<uint32_t>{0u});
    CHECK(r.injective);
    CHECK(r.phi.select == std::vector<size_t>{0, 1, 2});
    CHECK(r.phi.factor == std::vector<Rat>{Rat(1, 2), Rat(2), Rat(1, 5)});
    CHECK(r.unit_image == const_element(r.target, Rat(1)));
  }

  SUBCASE("negative representative on the support is rejected") {
    auto J = IdealOfSubsets::closure(Y, {});
    CHECK_THROWS_AS(normalize_unit(Y, J, {Rat(2), Rat(-1), Rat(5)}), ModelError);
    // After clipping through positive_representative the pipeline runs.
    auto Jc = IdealOfSubsets::closure(Y, {{"2"}});
    auto src = make_quotient_model(Y, Jc, true);
    Tuple fixed = positive_representative(src, {Rat(2), Rat(-1), Rat(5)});
    CHECK_NOTHROW(normalize_unit(Y, Jc, fixed));
  }

  SUBCASE("phi preserves operations on random pairs") {
    auto J = IdealOfSubsets::closure(Y, {{"2"}});
    auto r = normalize_unit(Y, J, u);
    Rng rng(0x1234u);
    for (int trial = 0; trial < 200; ++trial) {
      ModelElement e = random_element(rng, r.source), f = random_element(rng, r.source);
      ModelElement sum = e, mt = e, jn = e;
      for (size_t i = 0; i < e.values.size(); ++i) {
        sum.values[i] = e.values[i] + f.values[i];
        mt.values[i] = min(e.values[i], f.values[i]);
        jn.values[i] = max(e.values[i], f.values[i]);
      }
      ModelElement pe = r.phi.apply(e), pf = r.phi.apply(f);
      ModelElement want_sum = pe, want_mt = pe, want_jn = pe;
      for (size_t i = 0; i < pe.values.size(); ++i) {
        want_sum.values[i] = pe.values[i] + pf.values[i];
        want_mt.values[i] = min(pe.values[i], pf.values[i]);
        want_jn.values[i] = max(pe.values[i], pf.values[i]);
      }
      CHECK(r.phi.apply(sum) == want_sum);
      CHECK(r.phi.apply(mt) == want_mt);
      CHECK(r.phi.apply(jn) == want_jn);
    }
  }
}

TEST_CASE("enriching and forgetting round-trip") {
  FiniteIndexSet X = make_index_set({"a", "b", "c"});
  std::vector<std::string> vars{"x", "y"};
  Rng rng(0xabcu);
  for (const auto& I : all_ideals(X)) {
    auto plain = make_quotient_model(X, I, false);
    auto enriched = make_quotient_model(X, I, true);

    auto back = forget(enrich(plain));
    CHECK(back.support == plain.support);
    CHECK(!back.enriched);
    auto there = enrich(forget(enriched));
    CHECK(there.enriched);

    for (int trial = 0; trial < 20; ++trial) {
      ModelValuation v;
      for (const auto& name : vars) v[name] = random_element(rng, plain);
      TermPtr finitary = random_term(rng, Signature::LG, vars, 3, false);
      CHECK(eval_in_model(finitary, v, back) == eval_in_model(finitary, v, plain));
      TermPtr with_sup = csup_of(random_term(rng, Signature::LG, vars, 2, false),
                                 random_family(rng, Signature::LG, vars));
      CHECK(eval_in_model(with_sup, v, there) == eval_in_model(with_sup, v, enriched));
    }
  }
}

TEST_CASE("meets distribute over finite suprema of elements") {
  FiniteIndexSet X = make_index_set({"a", "b", "c"});
  auto m = make_quotient_model(X, IdealOfSubsets::closure(X, {{"b"}}), false);
  Rng rng(0xd157u);
  for (int trial = 0; trial < 200; ++trial) {
    ModelElement a = random_element(rng, m);
    long long k = rng.range(1, 4);
    std::vector<ModelElement> fam;
    for (long long i = 0; i < k; ++i) fam.push_back(random_element(rng, m));
    ModelElement sup = fam[0];
    for (long long i = 1; i < k; ++i) sup = pointwise_max(sup, fam[i]);
    ModelElement lhs = a;
    for (size_t c = 0; c < lhs.values.size(); ++c) lhs.values[c] = min(a.values[c], sup.values[c]);
    ModelElement rhs = a;
    for (size_t c = 0; c < rhs.values.size(); ++c) rhs.values[c] = min(a.values[c], fam[0].values[c]);
    for (long long i = 1; i < k; ++i) {
      ModelElement ai = a;
      for (size_t c = 0; c < ai.values.size(); ++c) ai.values[c] = min(a.values[c], fam[i].values[c]);
      rhs = pointwise_max(rhs, ai);
    }
    CHECK(lhs == rhs);
  }
}
