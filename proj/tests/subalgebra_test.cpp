#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rootcone/subalgebra.hpp"

using namespace rootcone;

namespace {

RootSystem sys(const std::string& t) { return RootSystem::build(DynkinType::parse(t)); }

int idx(const RootSystem& s, const std::string& name) {
  std::string err;
  auto i = s.parse_root(name, &err);
  REQUIRE_MESSAGE(i.has_value(), name, ": ", err);
  return *i;
}

RootSet mkset(const RootSystem& s, const std::vector<std::string>& names) {
  RootSet out;
  for (const auto& n : names) out.set(idx(s, n));
  return out;
}

RootSet symmetrize(const RootSystem& s, const RootSet& a) {
  RootSet out = a;
  for (int i = 0; i < s.size(); ++i)
    if (a[i]) out.set(s.neg(i));
  return out;
}

RootSet close_add(const RootSystem& s, RootSet x) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i = 0; i < s.size(); ++i)
      for (int j = i; x[i] && j < s.size(); ++j)
        if (x[j]) {
          int t = s.sum(i, j);
          if (t >= 0 && !x[t]) {
            x.set(t);
            grew = true;
          }
        }
  }
  return x;
}

RootSet full_set(const RootSystem& s) {
  RootSet x;
  for (int i = 0; i < s.size(); ++i) x.set(i);
  return x;
}

// reference implementation of the parabolic-nilradical criterion: the set
// of subsystem members whose negative is missing from n_part must be closed
bool q_side_closed(const RootSystem& s, const RootSet& subset, const RootSet& n_part) {
  RootSet q;
  for (int i = 0; i < s.size(); ++i)
    if (subset[i] && !n_part[s.neg(i)]) q.set(i);
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < s.size(); ++j)
      if (q[i] && q[j]) {
        int t = s.sum(i, j);
        if (t >= 0 && subset[t] && !q[t]) return false;
      }
  return true;
}

const std::vector<std::string> kSp6K = {"2e2", "2e3"};
const std::vector<std::string> kSp6N = {"2e1", "e1+e2", "e1-e2"};

}  // namespace

TEST_CASE("construction closes seeds and validates") {
  RootSystem c3 = sys("C3");
  RootSubalgebra l = make_subalgebra(c3, mkset(c3, kSp6K), mkset(c3, kSp6N));
  CHECK(l.k.count() == 4);
  CHECK(l.n.count() == 3);
  CHECK(l.all == (l.k | l.n));
  CHECK(l.k_pos == mkset(c3, {"2e2", "2e3"}));
  CHECK(l.n == mkset(c3, kSp6N));

  // n picks up both pair sums and k-translates
  RootSystem b3 = sys("B3");
  RootSubalgebra t = make_subalgebra(b3, mkset(b3, {"e1-e2"}), mkset(b3, {"e1+e3"}));
  CHECK(t.k.count() == 2);
  CHECK(t.n == mkset(b3, {"e1+e3", "e2+e3"}));

  RootSubalgebra h = make_subalgebra(b3, RootSet{}, RootSet{});
  CHECK(h.k.none());
  CHECK(h.n.none());

  CHECK_THROWS_WITH_AS(make_subalgebra(b3, RootSet{}, mkset(b3, {"e1-e2", "e2-e1"})),
                       "not a nilradical-type set", std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_subalgebra(b3, mkset(b3, {"e1-e2"}), mkset(b3, {"e2-e1"})),
                       "seeds overlap", std::invalid_argument);
  // closure can create the opposite pair even when the seeds have none
  CHECK_THROWS_WITH_AS(make_subalgebra(b3, RootSet{}, mkset(b3, {"e1-e2", "e2-e3", "e3-e1"})),
                       "not a nilradical-type set", std::invalid_argument);
}

TEST_CASE("ideal property of the constructed pair") {
  RootSystem b3 = sys("B3");
  RootSubalgebra l =
      make_subalgebra(b3, mkset(b3, {"e1-e2", "e1+e2"}),
                      mkset(b3, {"e1+e3", "e2+e3", "-e2+e3", "-e1+e3"}));
  CHECK(l.k.count() == 4);
  CHECK(l.n.count() == 4);
  const RootSystem& s = b3;
  for (int b = 0; b < s.size(); ++b)
    for (int d = 0; d < s.size(); ++d) {
      if (l.n[b] && l.k[d]) {
        int t = s.sum(b, d);
        if (t >= 0) CHECK(l.n[t]);
      }
      if (l.n[b] && l.n[d]) {
        int t = s.sum(b, d);
        if (t >= 0) CHECK(l.n[t]);
      }
    }
}

TEST_CASE("centralizer roots") {
  RootSystem c3 = sys("C3");
  RootSubalgebra l = make_subalgebra(c3, mkset(c3, kSp6K), mkset(c3, kSp6N));
  CHECK(centralizer_roots(l) == mkset(c3, {"2e1", "-2e1"}));

  RootSubalgebra h = make_subalgebra(c3, RootSet{}, RootSet{});
  CHECK(centralizer_roots(h) == full_set(c3));

  RootSystem f4 = sys("F4");
  RootSet k = symmetrize(f4, mkset(f4, {"e1-e2", "e1+e2"}));
  RootSet c = centralizer_roots(f4, k);
  CHECK(dynkin_type(f4, c).str() == "B2");
  CHECK(c.count() == 8);
}

TEST_CASE("module decomposition of sp(6)") {
  RootSystem c3 = sys("C3");
  RootSubalgebra l = make_subalgebra(c3, mkset(c3, kSp6K), mkset(c3, kSp6N));
  auto mods = k_module_decomposition(l);
  REQUIRE(mods.size() == 7);

  std::multiset<size_t> sizes;
  RootSet seen;
  for (const auto& m : mods) {
    sizes.insert(m.weights.count());
    CHECK((m.weights & seen).none());  // partition: blocks are disjoint
    seen |= m.weights;
  }
  CHECK(seen == (full_set(c3) & ~l.k));
  CHECK(sizes == std::multiset<size_t>{1, 1, 2, 2, 2, 2, 4});

  std::set<std::string> blocks;
  for (const auto& m : mods) blocks.insert(c3.set_name(m.weights));
  std::set<std::string> expect = {
      c3.set_name(mkset(c3, {"2e1"})),
      c3.set_name(mkset(c3, {"-2e1"})),
      c3.set_name(mkset(c3, {"e1+e2", "e1-e2"})),
      c3.set_name(mkset(c3, {"-e1-e2", "-e1+e2"})),
      c3.set_name(mkset(c3, {"e1+e3", "e1-e3"})),
      c3.set_name(mkset(c3, {"-e1-e3", "-e1+e3"})),
      c3.set_name(mkset(c3, {"e2+e3", "e2-e3", "-e2+e3", "-e2-e3"})),
  };
  CHECK(blocks == expect);

  // extreme weights of the big block
  for (const auto& m : mods)
    if (m.weights.count() == 4) {
      CHECK(m.highest == idx(c3, "e2+e3"));
      CHECK(m.lowest == idx(c3, "-e2-e3"));
    }

  // deterministic order: sorted by the position of the lowest weight
  for (size_t i = 0; i + 1 < mods.size(); ++i)
    CHECK(c3.rank_of(mods[i].lowest) < c3.rank_of(mods[i + 1].lowest));
}

TEST_CASE("module decomposition edge cases") {
  RootSystem c3 = sys("C3");
  auto solo = k_module_decomposition(c3, RootSet{});
  CHECK(solo.size() == 18);
  for (const auto& m : solo) {
    CHECK(m.weights.count() == 1);
    CHECK(m.lowest == m.highest);
  }

  // nilpotent parts are unions of whole blocks
  RootSystem b3 = sys("B3");
  RootSubalgebra l =
      make_subalgebra(b3, mkset(b3, {"e1-e2", "e1+e2"}),
                      mkset(b3, {"e1+e3", "e2+e3", "-e2+e3", "-e1+e3"}));
  auto mods = k_module_decomposition(l);
  bool found = false;
  for (const auto& m : mods) {
    RootSet overlap = m.weights & l.n;
    CHECK((overlap.none() || overlap == m.weights));
    found = found || overlap == m.weights;
  }
  CHECK(found);
  CHECK(l.n.count() == 4);  // ... and here n is a single whole block
}

TEST_CASE("singular weights") {
  RootSystem c3 = sys("C3");
  RootSubalgebra l = make_subalgebra(c3, mkset(c3, kSp6K), mkset(c3, kSp6N));
  CHECK(singular_weights(l) ==
        mkset(c3, {"e1+e3", "e2+e3", "-e1+e3", "-e1+e2", "-2e1"}));

  // with an empty reductive part every root outside n is singular
  RootSubalgebra h = make_subalgebra(c3, RootSet{}, mkset(c3, kSp6N));
  CHECK(singular_weights(h) == (full_set(c3) & ~h.n));

  // one singular weight per block outside the subalgebra
  for (const char* t : {"B3", "C3"}) {
    CAPTURE(t);
    RootSystem s = sys(t);
    std::vector<RootSubalgebra> cases = {
        make_subalgebra(s, mkset(s, {"e1-e2"}), mkset(s, {"e2+e3"})),
        make_subalgebra(s, mkset(s, {"e2-e3"}), RootSet{}),
        make_subalgebra(s, RootSet{}, RootSet{}),
    };
    for (const auto& sub : cases) {
      RootSet sing = singular_weights(sub);
      RootSet tops;
      for (const auto& m : k_module_decomposition(sub))
        if ((m.weights & sub.all).none()) {
          CHECK(sing[m.highest]);
          tops.set(m.highest);
          CHECK((m.weights & sing).count() == 1);
        }
      CHECK(tops == sing);
    }
  }
}

TEST_CASE("parabolic nilradical detection") {
  RootSystem c3 = sys("C3");
  RootSet all = full_set(c3);

  RootSet borel;
  for (int i = 0; i < c3.positive_count(); ++i) borel.set(i);
  auto h = parabolic_nilradical_test(c3, all, borel);
  REQUIRE(h.has_value());
  for (int i = 0; i < c3.size(); ++i) {
    if (borel[i]) CHECK(c3.eval_covector(*h, i) >= Rat(1));
    else CHECK(c3.eval_covector(*h, i) <= Rat(0));
  }

  RootSet c = mkset(c3, {"2e1", "-2e1"});
  CHECK(parabolic_nilradical_test(c3, c, mkset(c3, {"2e1"})).has_value());

  CHECK(!parabolic_nilradical_test(c3, all, mkset(c3, kSp6N)).has_value());

  RootSystem b3 = sys("B3");
  CHECK(!parabolic_nilradical_test(b3, full_set(b3),
                                   mkset(b3, {"e3", "-e2+e3", "-e1+e3"}))
             .has_value());

  CHECK(parabolic_nilradical_test(c3, all, RootSet{}).has_value());

  CHECK_THROWS_AS(parabolic_nilradical_test(c3, c, mkset(c3, {"e1+e2"})),
                  std::invalid_argument);  // not contained
  CHECK_THROWS_AS(parabolic_nilradical_test(c3, all, mkset(c3, {"2e1", "-2e1"})),
                  std::invalid_argument);  // opposite pair
  CHECK_THROWS_AS(parabolic_nilradical_test(c3, all, mkset(c3, {"e1-e2", "e2-e3"})),
                  std::invalid_argument);  // not closed
}

TEST_CASE("parabolic detection agrees with one-sided closure") {
  std::mt19937 rng(20260819);
  for (const char* t : {"B2", "A3", "B3", "C3"}) {
    CAPTURE(t);
    RootSystem s = sys(t);
    RootSet all = full_set(s);
    int done = 0;
    while (done < 60) {
      // half the trials draw the positive side of a random covector (always
      // a parabolic nilradical); half close random seeds
      RootSet n;
      if (done % 2 == 0) {
        std::vector<int> h(s.rank());
        for (int& v : h) v = static_cast<int>(rng() % 7) - 3;
        for (int i = 0; i < s.size(); ++i) {
          long long val = 0;
          for (int d = 0; d < s.rank(); ++d) val += h[d] * s.root(i)[d];
          if (val > 0) n.set(i);
        }
      } else {
        RootSet seed;
        for (int tries = 0; tries < 3; ++tries) seed.set(rng() % s.size());
        n = close_add(s, seed);
        bool bad = false;
        for (int i = 0; i < s.size(); ++i) bad = bad || (n[i] && n[s.neg(i)]);
        if (bad) continue;
      }
      ++done;
      auto res = parabolic_nilradical_test(s, all, n);
      bool combinatorial = q_side_closed(s, all, n);
      CAPTURE(s.set_name(n));
      CHECK(res.has_value() == combinatorial);
      if (res.has_value()) {
        for (int i = 0; i < s.size(); ++i) {
          if (n[i]) CHECK(s.eval_covector(*res, i) >= Rat(1));
          else CHECK(s.eval_covector(*res, i) <= Rat(0));
        }
      }
    }
  }
}

TEST_CASE("normalizer levi data") {
  RootSystem c3 = sys("C3");
  RootSubalgebra l = make_subalgebra(c3, mkset(c3, kSp6K), mkset(c3, kSp6N));
  CentralizerDatum d = centralizer_normalizer_levi(l);
  CHECK(d.c_roots == mkset(c3, {"2e1", "-2e1"}));
  CHECK(d.q_roots == mkset(c3, {"2e1"}));
  CHECK(d.levi_type.str() == "-");

  RootSubalgebra h = make_subalgebra(c3, RootSet{}, RootSet{});
  CentralizerDatum hd = centralizer_normalizer_levi(h);
  CHECK(hd.c_roots == full_set(c3));
  CHECK(hd.q_roots == full_set(c3));
  CHECK(hd.levi_type.str() == "C3");

  RootSystem b3 = sys("B3");
  RootSubalgebra hb = make_subalgebra(b3, RootSet{}, RootSet{});
  CHECK(centralizer_normalizer_levi(hb).levi_type.str() == "B3");

  // q_roots always sit inside c_roots
  RootSubalgebra m = make_subalgebra(b3, mkset(b3, {"e1-e2"}), mkset(b3, {"e2+e3"}));
  CentralizerDatum md = centralizer_normalizer_levi(m);
  CHECK((md.q_roots & ~md.c_roots).none());
}

TEST_CASE("construction commutes with ambient symmetries") {
  RootSystem b3 = sys("B3");
  const auto& w = b3.weyl_group();
  REQUIRE(w.materialized());
  std::mt19937 rng(7);

  std::vector<std::pair<RootSet, RootSet>> seeds = {
      {mkset(b3, {"e1-e2", "e1+e2"}), mkset(b3, {"e1+e3", "e2+e3", "-e2+e3", "-e1+e3"})},
      {mkset(b3, {"e3"}), mkset(b3, {"e1-e2", "e1+e3", "e1-e3", "e1"})},
      {RootSet{}, mkset(b3, {"e1+e2"})},
  };
  for (const auto& [ks, ns] : seeds) {
    RootSubalgebra base = make_subalgebra(b3, ks, ns);
    for (int trial = 0; trial < 12; ++trial) {
      const Perm& p = w.elements[rng() % w.elements.size()];
      RootSubalgebra moved = make_subalgebra(b3, apply_perm(p, ks), apply_perm(p, ns));
      CHECK(moved.k == apply_perm(p, base.k));
      CHECK(moved.n == apply_perm(p, base.n));
      CHECK(dynkin_type(b3, moved.k) == dynkin_type(b3, base.k));
    }
  }
}

TEST_CASE("subset type is orbit-invariant") {
  std::mt19937 rng(11);
  for (const char* t : {"B3", "C3", "F4"}) {
    CAPTURE(t);
    RootSystem s = sys(t);
    const auto& w = s.weyl_group();
    REQUIRE(w.materialized());
    for (int trial = 0; trial < 25; ++trial) {
      RootSet seed;
      for (int k = 0; k < 2; ++k) seed.set(rng() % s.size());
      RootSet x = close_add(s, symmetrize(s, seed));
      DynkinType base = dynkin_type(s, x);
      const Perm& p = w.elements[rng() % w.elements.size()];
      CHECK(dynkin_type(s, apply_perm(p, x)) == base);
    }
  }
}
