#include "rootcone/census.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <fstream>
#include <functional>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

namespace rootcone {

namespace {

using nlohmann::json;

std::array<uint64_t, 4> set_key(const RootSet& x) {
  std::array<uint64_t, 4> w{};
  for (size_t i = 0; i < kMaxRoots; ++i)
    if (x[i]) w[i >> 6] |= uint64_t(1) << (i & 63);
  return w;
}

// Connected components of a simple basis (indices into `basis`): two basis
// roots are joined when they are not orthogonal.
std::vector<std::vector<int>> basis_components(const RootSystem& s,
                                               const std::vector<int>& basis) {
  std::vector<std::vector<int>> comps;
  std::vector<char> used(basis.size(), 0);
  for (size_t i = 0; i < basis.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    std::vector<size_t> stack{i};
    std::vector<int> comp;
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      comp.push_back(basis[cur]);
      for (size_t j = 0; j < basis.size(); ++j)
        if (!used[j] && s.inner(basis[cur], basis[j]) != 0) {
          used[j] = 1;
          stack.push_back(j);
        }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Highest root of one component of a subsystem: climb by adding basis roots
// while the sum stays inside the subsystem.
int highest_of_component(const RootSystem& s, const RootSet& sub,
                         const std::vector<int>& comp) {
  int h = comp[0];
  bool moved = true;
  while (moved) {
    moved = false;
    for (int b : comp) {
      int t = s.sum(h, b);
      if (t >= 0 && sub[t]) {
        h = t;
        moved = true;
        break;
      }
    }
  }
  return h;
}

}  // namespace

std::vector<ReductiveClass> enumerate_reductive_subalgebras(const RootSystem& s) {
  RootSet full;
  for (int i = 0; i < s.size(); ++i) full.set(i);

  std::vector<ReductiveClass> classes;
  std::vector<size_t> queue;  // indices into classes, pending expansion
  auto try_add = [&](const RootSet& cand) {
    DynkinType t = dynkin_type(s, cand);
    for (const ReductiveClass& cls : classes)
      if (cls.type == t && conjugate_subsystems(s, cand, cls.roots)) return;
    classes.push_back({cand, std::move(t)});
    queue.push_back(classes.size() - 1);
  };

  try_add(full);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const RootSet x = classes[queue[qi]].roots;  // copy: classes can grow
    if (x.none()) continue;
    const std::vector<int> basis = simple_basis(s, x);
    // Delete one basis node.
    for (size_t d = 0; d < basis.size(); ++d) {
      RootSet gens;
      for (size_t j = 0; j < basis.size(); ++j)
        if (j != d) gens.set(basis[j]);
      try_add(make_subalgebra(s, gens, RootSet{}).k);
    }
    // Extend one component by its lowest root, then delete one node of it.
    for (const std::vector<int>& comp : basis_components(s, basis)) {
      const int low = s.neg(highest_of_component(s, x, comp));
      for (int d : comp) {
        RootSet gens;
        gens.set(low);
        for (int b : basis)
          if (b != d) gens.set(b);
        try_add(make_subalgebra(s, gens, RootSet{}).k);
      }
    }
  }

  std::sort(classes.begin(), classes.end(),
            [&](const ReductiveClass& a, const ReductiveClass& b) {
              if (a.roots.count() != b.roots.count())
                return a.roots.count() > b.roots.count();
              if (a.type != b.type) return a.type < b.type;
              return s.set_less(a.roots, b.roots);
            });
  return classes;
}

namespace {

// Interaction data of the k-module partition: for every unordered module
// pair, whether some weight sum lands back in k (the pair can never share a
// nilpotent part) and which other modules the sums land in (the pair drags
// them in).
struct ModuleGraph {
  std::vector<KModule> mods;
  std::vector<int> neg_of;     // index of the opposite module
  std::vector<char> banned;    // module containing an opposite pair
  std::vector<char> conflict;  // flattened i*m+j, i <= j
  std::vector<std::vector<int>> force;
};

ModuleGraph build_module_graph(const RootSystem& s, const RootSet& k) {
  ModuleGraph g;
  g.mods = k_module_decomposition(s, k);
  const int m = static_cast<int>(g.mods.size());

  std::vector<int> owner(s.size(), -1);
  for (int i = 0; i < m; ++i)
    for (int r = 0; r < s.size(); ++r)
      if (g.mods[i].weights[r]) owner[r] = i;

  g.neg_of.assign(m, -1);
  g.banned.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    g.neg_of[i] = owner[s.neg(g.mods[i].lowest)];
    g.banned[i] = (g.neg_of[i] == i);
  }

  g.conflict.assign(static_cast<size_t>(m) * m, 0);
  g.force.assign(static_cast<size_t>(m) * m, {});
  for (int i = 0; i < m; ++i) {
    if (g.banned[i]) continue;
    for (int j = i; j < m; ++j) {
      if (g.banned[j]) continue;
      std::set<int> forced;
      bool bad = false;
      for (int a = 0; a < s.size() && !bad; ++a) {
        if (!g.mods[i].weights[a]) continue;
        for (int b = 0; b < s.size(); ++b) {
          if (!g.mods[j].weights[b]) continue;
          const int t = s.sum(a, b);
          if (t == kNotRoot || t == kZero) continue;
          if (k[t]) {
            bad = true;  // the union could not be closed away from k
            break;
          }
          if (owner[t] != i && owner[t] != j) forced.insert(owner[t]);
        }
      }
      g.conflict[i * m + j] = bad;
      if (!bad) g.force[i * m + j].assign(forced.begin(), forced.end());
    }
  }
  return g;
}

// Depth-first enumeration of all module unions that stay closed and free of
// opposite pairs: per undecided module branch exclude-then-include, and on
// include propagate the forced modules and ban the opposite ones.
void enumerate_unions(const ModuleGraph& g,
                      const std::function<void(const std::vector<int>&)>& emit) {
  const int m = static_cast<int>(g.mods.size());
  std::vector<int8_t> st(m, 0);  // 0 undecided, 1 in, -1 out
  for (int i = 0; i < m; ++i)
    if (g.banned[i]) st[i] = -1;
  std::vector<int> included;

  // Include x and everything that follows; record touched modules for undo.
  auto apply = [&](int x, std::vector<std::pair<int, int8_t>>& undo) -> bool {
    std::vector<int> work{x};
    while (!work.empty()) {
      const int c = work.back();
      work.pop_back();
      if (st[c] == 1) continue;
      if (st[c] == -1) return false;
      undo.emplace_back(c, st[c]);
      st[c] = 1;
      included.push_back(c);
      const int nc = g.neg_of[c];
      if (st[nc] == 1) return false;
      if (st[nc] == 0) {
        undo.emplace_back(nc, st[nc]);
        st[nc] = -1;
      }
      for (int other : included) {
        const int lo = std::min(other, c), hi = std::max(other, c);
        if (g.conflict[lo * m + hi]) return false;
        for (int f : g.force[lo * m + hi])
          if (st[f] != 1) work.push_back(f);
      }
    }
    return true;
  };

  std::function<void(int)> rec = [&](int pos) {
    while (pos < m && st[pos] != 0) ++pos;
    if (pos == m) {
      emit(included);
      return;
    }
    st[pos] = -1;
    rec(pos + 1);
    st[pos] = 0;

    std::vector<std::pair<int, int8_t>> undo;
    const size_t isz = included.size();
    if (apply(pos, undo)) rec(pos + 1);
    for (auto it = undo.rbegin(); it != undo.rend(); ++it)
      st[it->first] = it->second;
    included.resize(isz);
  };
  rec(0);
}

// n ∩ C is a parabolic nilradical of the centralizer subsystem C iff the
// complement-of-negatives q = {a in C : -a not in n} is closed in C. (q is
// then a parabolic subset with nilradical exactly n ∩ C.) Purely
// combinatorial; agrees with the LP witness test.
bool parabolic_in_centralizer(const RootSystem& s, const RootSet& c,
                              const RootSet& n) {
  RootSet q;
  for (int i = 0; i < s.size(); ++i)
    if (c[i] && !(n[s.neg(i)] && c[s.neg(i)])) q.set(i);
  for (int i = 0; i < s.size(); ++i) {
    if (!q[i]) continue;
    for (int j = i; j < s.size(); ++j) {
      if (!q[j]) continue;
      const int t = s.sum(i, j);
      if (t >= 0 && c[t] && !q[t]) return false;
    }
  }
  return true;
}

// x is the least member of its image family {w(u(x))} with w from the inner
// part and u a basis-symmetry representative. Stops at the first smaller
// image, so non-canonical candidates exit early. When the product list is not
// materialized, each representative's image of x is walked through its
// inner-part orbit (the inner part is a genuine group, so the walk visits
// exactly the sets w(u(x))).
bool orbit_min(const RootSystem& s, const RestrictedSymmetry& sym,
               const RootSet& x) {
  if (sym.full.materialized()) {
    for (const Perm& p : sym.full.elements)
      if (s.set_less(apply_perm(p, x), x)) return false;
    return true;
  }
  for (const Perm& u : sym.graph_part.elements) {
    const RootSet seed = apply_perm(u, x);
    if (s.set_less(seed, x)) return false;
    if (sym.inner_part.materialized()) {
      for (const Perm& w : sym.inner_part.elements)
        if (s.set_less(apply_perm(w, seed), x)) return false;
      continue;
    }
    std::set<std::array<uint64_t, 4>> seen{set_key(seed)};
    std::vector<RootSet> stack{seed};
    while (!stack.empty()) {
      const RootSet cur = stack.back();
      stack.pop_back();
      for (const Perm& p : sym.inner_part.gens) {
        RootSet y = apply_perm(p, cur);
        if (s.set_less(y, x)) return false;
        if (seen.insert(set_key(y)).second) stack.push_back(y);
      }
    }
  }
  return true;
}

std::vector<RootSet> nilradicals_impl(const RootSystem& s, const RootSet& k_roots,
                                      const RootSet& c_roots,
                                      const RestrictedSymmetry& sym,
                                      bool parabolic_filter) {
  const ModuleGraph g = build_module_graph(s, k_roots);
  std::vector<RootSet> out;
  enumerate_unions(g, [&](const std::vector<int>& inc) {
    RootSet n;
    for (int i : inc) n |= g.mods[i].weights;
    if (parabolic_filter && !parabolic_in_centralizer(s, c_roots, n)) return;
    if (n.any() && !orbit_min(s, sym, n)) return;
    out.push_back(n);
  });
  std::sort(out.begin(), out.end(),
            [&](const RootSet& a, const RootSet& b) { return s.set_less(a, b); });
  return out;
}

}  // namespace

std::vector<RootSet> enumerate_nilradicals(const RootSystem& s,
                                           const RootSet& k_roots,
                                           bool parabolic_filter) {
  const RootSet c = centralizer_roots(s, k_roots);
  const RestrictedSymmetry sym = restricted_symmetry_group(s, k_roots, c);
  return nilradicals_impl(s, k_roots, c, sym, parabolic_filter);
}

namespace {

ClassificationRecord classify_one(const RootSystem& s, const ReductiveClass& kc,
                                  const std::vector<KModule>& mods,
                                  const RestrictedSymmetry& sym, const RootSet& n,
                                  const CensusOptions& opt) {
  ClassificationRecord rec;
  rec.ambient = s.type();
  rec.k_type = kc.type;
  rec.k_roots = kc.roots;
  rec.n_roots = n;
  for (const KModule& m : mods)
    if (n[m.lowest]) rec.n_modules.push_back(m.lowest);

  const RootSubalgebra l = make_subalgebra(s, kc.roots, n);
  ConeOutcome cone = cone_condition(l);
  rec.cone_holds = std::holds_alternative<ConeHolds>(cone);
  const auto cent = centralizer_condition(l);
  rec.centralizer_holds = cent.first;
  rec.levi_type = cent.second;
  rec.verdict = (rec.cone_holds && rec.centralizer_holds)
                    ? Verdict::FiniteType
                    : Verdict::InfiniteType;
  if (rec.cone_holds)
    rec.certificate = std::get<ConeHolds>(std::move(cone));
  else if (opt.certificates)
    rec.certificate = find_certificate(l);

  rec.w_inner = sym.inner_part.order;
  rec.w_graph = sym.graph_part.order;
  rec.w_full = sym.full.order;
  return rec;
}

}  // namespace

std::pair<std::vector<ClassificationRecord>, CensusSummary> run_census(
    const DynkinType& type, const CensusOptions& opt) {
  if (!type.simple())
    throw std::invalid_argument("census requires a simple ambient type, got " +
                                type.str());
  const char series = type.components[0].series;
  const int rk = type.components[0].rank;
  if (series == 'E' && rk >= 7 && !opt.large)
    throw std::domain_error(type.str() +
                            " census is a long computation; set the large option");
  if (series == 'E' && rk == 8 && !opt.assume_conjecture)
    throw std::domain_error(
        "E8 verdicts rest on an unproven criterion; set assume_conjecture");

  const RootSystem s = RootSystem::build(type);
  const std::vector<ReductiveClass> classes = enumerate_reductive_subalgebras(s);

  std::vector<const ReductiveClass*> work;
  for (const ReductiveClass& kc : classes) {
    if (kc.roots.count() == static_cast<size_t>(s.size())) continue;  // l = g
    if (!opt.include_solvable && kc.roots.none()) continue;
    work.push_back(&kc);
  }

  // The summary phase touches the lazily built symmetry caches; warm them
  // on this thread so the workers only read.
  if (diagram_automorphism_count(s.type()) > 1) {
    s.weyl_group();
    s.automorphism_group();
  }

  std::vector<std::vector<ClassificationRecord>> buckets(work.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= work.size()) break;
      const ReductiveClass& kc = *work[i];
      const RootSet c = centralizer_roots(s, kc.roots);
      const RestrictedSymmetry sym = restricted_symmetry_group(s, kc.roots, c);
      const std::vector<KModule> mods = k_module_decomposition(s, kc.roots);
      for (const RootSet& n :
           nilradicals_impl(s, kc.roots, c, sym, opt.parabolic_filter))
        buckets[i].push_back(classify_one(s, kc, mods, sym, n, opt));
    }
  };

  const int extra = std::max(0, std::min<int>(opt.threads - 1,
                                              static_cast<int>(work.size())));
  std::vector<std::thread> pool;
  pool.reserve(extra);
  for (int t = 0; t < extra; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::vector<ClassificationRecord> records;
  for (std::vector<ClassificationRecord>& b : buckets)
    for (ClassificationRecord& r : b) records.push_back(std::move(r));

  CensusSummary summary = summarize(s, records, opt);
  return {std::move(records), std::move(summary)};
}

CensusSummary summarize(const RootSystem& s,
                        const std::vector<ClassificationRecord>& records,
                        const CensusOptions& opt) {
  CensusSummary sum;
  sum.ambient = s.type();
  sum.parabolic_filter = opt.parabolic_filter;
  sum.include_solvable = opt.include_solvable;
  sum.certificates = opt.certificates;
  sum.total = records.size();

  // Count g itself (k = Delta(g), n = {}) as one extra cone-holding class;
  // see the field comment on includes_full_algebra.
  sum.includes_full_algebra = true;
  sum.total++;
  sum.cone_holds++;
  {
    RootSet all;
    for (int r = 0; r < s.size(); ++r) all.set(r);
    const RestrictedSymmetry gsym =
        restricted_symmetry_group(s, all, RootSet{});
    KClassSummary row;
    row.k_type = s.type();
    row.c_type = DynkinType{};
    row.w_inner = gsym.inner_part.order;
    row.w_graph = gsym.graph_part.order;
    row.w_full = gsym.full.order;
    row.total = 1;
    row.cone_holds = 1;
    sum.per_k.push_back(std::move(row));
  }

  // Class counts against inner symmetries only: a record standing for the
  // orbit O of (k, n) under all automorphisms covers
  // |O| * |Stab_W(k,n)| / |Stab_Aut(k,n)| inner-only classes, where
  // |O| = |Aut| / |W| whenever some outer automorphism exists. Computable
  // once the automorphism elements fit in memory.
  const bool dual = diagram_automorphism_count(s.type()) > 1 &&
                    s.automorphism_group().materialized();
  const SymmetryGroup& aut = s.automorphism_group();
  const unsigned long long outer =
      dual ? aut.order / s.weyl_group().order : 1;

  std::vector<const Perm*> k_stab;  // Aut-stabilizer of the current k
  std::vector<char> k_stab_inner;
  const RootSet* cur_k = nullptr;
  KClassSummary* row = nullptr;
  for (const ClassificationRecord& rec : records) {
    if (row == nullptr || !(rec.k_roots == *cur_k)) {
      cur_k = &rec.k_roots;
      sum.per_k.emplace_back();
      row = &sum.per_k.back();
      row->k_type = rec.k_type;
      row->c_type = dynkin_type(s, centralizer_roots(s, rec.k_roots));
      row->w_inner = rec.w_inner;
      row->w_graph = rec.w_graph;
      row->w_full = rec.w_full;
      if (dual) {
        k_stab.clear();
        k_stab_inner.clear();
        for (const Perm& p : aut.elements)
          if (apply_perm(p, rec.k_roots) == rec.k_roots) {
            k_stab.push_back(&p);
            k_stab_inner.push_back(s.is_inner(p));
          }
      }
    }
    row->total++;
    if (rec.cone_holds) {
      sum.cone_holds++;
      row->cone_holds++;
    } else {
      sum.cone_fails++;
      row->cone_fails++;
    }
    if (rec.certificate &&
        std::holds_alternative<ExtensionNeeded>(*rec.certificate)) {
      sum.extension_needed++;
      row->extension_needed++;
    }
    if (dual) {
      unsigned long long stab_all = 0, stab_w = 0;
      for (size_t pi = 0; pi < k_stab.size(); ++pi)
        if (apply_perm(*k_stab[pi], rec.n_roots) == rec.n_roots) {
          ++stab_all;
          if (k_stab_inner[pi]) ++stab_w;
        }
      sum.weyl_classes +=
          static_cast<size_t>(outer * stab_w / stab_all);
    }
  }
  if (!dual)
    sum.weyl_classes = sum.total;
  else
    sum.weyl_classes += 1;  // the full-algebra class, fixed by everything
  return sum;
}

std::vector<SymmetryRow> symmetry_table(const RootSystem& s) {
  std::vector<SymmetryRow> rows;
  for (const ReductiveClass& kc : enumerate_reductive_subalgebras(s)) {
    const RootSet c = centralizer_roots(s, kc.roots);
    const RestrictedSymmetry sym = restricted_symmetry_group(s, kc.roots, c);
    SymmetryRow row;
    row.k_type = kc.type;
    row.c_type = dynkin_type(s, c);
    row.w_graph = sym.graph_part.order;
    row.w_inner = sym.inner_part.order;
    row.w_full = sym.full.order;
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- JSON persistence -------------------------------------------------

namespace {

constexpr const char* kSchema = "rootcone-census-1";

json ratvec_json(const RatVec& v) {
  json arr = json::array();
  for (const Rat& r : v) arr.push_back(rat_str(r));
  return arr;
}

RatVec ratvec_from_json(const json& j) {
  RatVec v;
  for (const json& e : j) v.push_back(rat_parse(e.get<std::string>()));
  return v;
}

json side_json(const RootSystem& s,
               const std::vector<std::pair<int, long long>>& side) {
  json arr = json::array();
  for (const auto& [root, mult] : side)
    arr.push_back(json::array({s.root_name(root), mult}));
  return arr;
}

int parse_root_checked(const RootSystem& s, const std::string& name) {
  std::string err;
  const std::optional<int> idx = s.parse_root(name, &err);
  if (!idx) throw std::runtime_error("bad root name in census data: " + err);
  return *idx;
}

std::vector<std::pair<int, long long>> side_from_json(const RootSystem& s,
                                                      const json& j) {
  std::vector<std::pair<int, long long>> side;
  for (const json& e : j) {
    const int root = parse_root_checked(s, e.at(0).get<std::string>());
    const long long mult = e.at(1).get<long long>();
    if (mult <= 0)
      throw std::runtime_error("nonpositive multiplicity in census data");
    side.emplace_back(root, mult);
  }
  std::sort(side.begin(), side.end());
  return side;
}

RatVec side_sum(const RootSystem& s,
                const std::vector<std::pair<int, long long>>& side) {
  RatVec omega(s.rank(), Rat(0));
  for (const auto& [root, mult] : side)
    for (int c = 0; c < s.rank(); ++c)
      omega[c] = omega[c] + Rat(mult * s.root(root)[c]);
  return omega;
}

json set_json(const RootSystem& s, const RootSet& set) {
  json arr = json::array();
  for (int r = 0; r < s.size(); ++r)
    if (set[r]) arr.push_back(s.root_name(r));
  return arr;
}

RootSet set_from_json(const RootSystem& s, const json& j) {
  RootSet set;
  for (const json& e : j) set.set(parse_root_checked(s, e.get<std::string>()));
  return set;
}

}  // namespace

json certificate_json(const RootSystem& s, const Certificate& c) {
  json j;
  if (const ConeHolds* h = std::get_if<ConeHolds>(&c)) {
    j["kind"] = "separator";
    j["covector"] = ratvec_json(h->separator);
  } else if (const StrictlyInfinite* w = std::get_if<StrictlyInfinite>(&c)) {
    j["kind"] = "strictly_infinite";
    json rel;
    rel["alphas"] = side_json(s, w->relation.alphas);
    rel["betas"] = side_json(s, w->relation.betas);
    rel["two_sided"] = w->relation.two_sided;
    rel["minimal"] = w->relation.minimal;
    j["relation"] = std::move(rel);
    json dec = json::array();
    for (size_t t = 0; t < w->orth_basis.size(); ++t)
      dec.push_back(json::array({s.root_name(w->orth_basis[t]), w->coeffs[t]}));
    j["orth_decomposition"] = std::move(dec);
  } else {
    j["kind"] = "extension_needed";
    j["max_tuple_size"] = std::get<ExtensionNeeded>(c).max_tuple_size;
  }
  return j;
}

Certificate certificate_from_json(const RootSystem& s, const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "separator") {
      ConeHolds h;
      h.separator = ratvec_from_json(j.at("covector"));
      if (h.separator.size() != static_cast<size_t>(s.rank()) &&
          !h.separator.empty())
        throw std::runtime_error("separator dimension mismatch");
      return h;
    }
    if (kind == "strictly_infinite") {
      StrictlyInfinite w;
      const json& rel = j.at("relation");
      w.relation.alphas = side_from_json(s, rel.at("alphas"));
      w.relation.betas = side_from_json(s, rel.at("betas"));
      w.relation.omega = side_sum(s, w.relation.alphas);
      w.relation.two_sided = rel.at("two_sided").get<bool>();
      w.relation.minimal = rel.at("minimal").get<bool>();
      for (const json& e : j.at("orth_decomposition")) {
        w.orth_basis.push_back(parse_root_checked(s, e.at(0).get<std::string>()));
        w.coeffs.push_back(e.at(1).get<long long>());
      }
      return w;
    }
    if (kind == "extension_needed") {
      ExtensionNeeded e;
      e.max_tuple_size = j.at("max_tuple_size").get<int>();
      return e;
    }
    throw std::runtime_error("unknown certificate kind: " + kind);
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("malformed certificate: ") + ex.what());
  }
}

namespace {

const char* verdict_str(Verdict v) {
  return v == Verdict::FiniteType ? "finite" : "infinite";
}

json record_json(const RootSystem& s, const ClassificationRecord& rec) {
  json j;
  json kpos = json::array();
  for (int r = 0; r < s.size(); ++r)
    if (rec.k_roots[r] && s.is_positive(r)) kpos.push_back(s.root_name(r));
  j["k_type"] = rec.k_type.str();
  j["k_pos"] = std::move(kpos);
  json nmods = json::array();
  for (int low : rec.n_modules) nmods.push_back(s.root_name(low));
  j["n_modules"] = std::move(nmods);
  j["n_roots"] = set_json(s, rec.n_roots);
  j["cone_holds"] = rec.cone_holds;
  j["centralizer_holds"] = rec.centralizer_holds;
  j["levi_type"] = rec.levi_type.str();
  j["verdict"] = verdict_str(rec.verdict);
  if (rec.certificate)
    j["certificate"] = certificate_json(s, *rec.certificate);
  else
    j["certificate"] = nullptr;
  j["symmetry"] = {{"w_inner", rec.w_inner},
                   {"w_graph", rec.w_graph},
                   {"w_full", rec.w_full}};
  return j;
}

ClassificationRecord record_from_json(const RootSystem& s, const json& j) {
  ClassificationRecord rec;
  rec.ambient = s.type();
  rec.k_type = DynkinType::parse(j.at("k_type").get<std::string>());
  RootSet k_seed;
  for (const json& e : j.at("k_pos"))
    k_seed.set(parse_root_checked(s, e.get<std::string>()));
  for (int r = 0; r < s.size(); ++r)
    if (k_seed[r]) k_seed.set(s.neg(r));
  rec.k_roots = k_seed;
  for (const json& e : j.at("n_modules"))
    rec.n_modules.push_back(parse_root_checked(s, e.get<std::string>()));
  rec.n_roots = set_from_json(s, j.at("n_roots"));
  rec.cone_holds = j.at("cone_holds").get<bool>();
  rec.centralizer_holds = j.at("centralizer_holds").get<bool>();
  rec.levi_type = DynkinType::parse(j.at("levi_type").get<std::string>());
  const std::string v = j.at("verdict").get<std::string>();
  if (v != "finite" && v != "infinite")
    throw std::runtime_error("unknown verdict: " + v);
  rec.verdict = (v == "finite") ? Verdict::FiniteType : Verdict::InfiniteType;
  if (!j.at("certificate").is_null())
    rec.certificate = certificate_from_json(s, j.at("certificate"));
  const json& sym = j.at("symmetry");
  rec.w_inner = sym.at("w_inner").get<unsigned long long>();
  rec.w_graph = sym.at("w_graph").get<unsigned long long>();
  rec.w_full = sym.at("w_full").get<unsigned long long>();
  return rec;
}

json summary_json(const CensusSummary& sum) {
  json j;
  j["total"] = sum.total;
  j["cone_holds"] = sum.cone_holds;
  j["cone_fails"] = sum.cone_fails;
  j["extension_needed"] = sum.extension_needed;
  j["weyl_classes"] = sum.weyl_classes;
  j["flags"] = {{"parabolic_filter", sum.parabolic_filter},
                {"include_solvable", sum.include_solvable},
                {"certificates", sum.certificates}};
  j["includes_full_algebra"] = sum.includes_full_algebra;
  json per_k = json::array();
  for (const KClassSummary& row : sum.per_k)
    per_k.push_back({{"k_type", row.k_type.str()},
                     {"c_type", row.c_type.str()},
                     {"w_inner", row.w_inner},
                     {"w_graph", row.w_graph},
                     {"w_full", row.w_full},
                     {"total", row.total},
                     {"cone_holds", row.cone_holds},
                     {"cone_fails", row.cone_fails},
                     {"extension_needed", row.extension_needed}});
  j["per_k"] = std::move(per_k);
  return j;
}

// Re-verify a stored certificate against the subalgebra it claims to
// describe. Throws std::runtime_error on any discrepancy.
void verify_certificate(const RootSubalgebra& l, const ClassificationRecord& rec) {
  const RootSystem& s = l.sys();
  const Certificate& c = *rec.certificate;
  if (const ConeHolds* h = std::get_if<ConeHolds>(&c)) {
    if (!rec.cone_holds)
      throw std::runtime_error("separator stored with a failing cone flag");
    if (l.n.none()) return;  // zero covector separates nothing from nothing
    const RootSet sing = singular_weights(l);
    for (int r = 0; r < s.size(); ++r) {
      if (l.n[r] && s.eval_covector(h->separator, r) < Rat(1))
        throw std::runtime_error("separator fails on a nilpotent-part root");
      if (sing[r] && s.eval_covector(h->separator, r) > Rat(0))
        throw std::runtime_error("separator fails on a singular weight");
    }
    return;
  }
  if (rec.cone_holds)
    throw std::runtime_error("infinite-type certificate stored with a holding cone");
  if (const StrictlyInfinite* w = std::get_if<StrictlyInfinite>(&c)) {
    const Relation& rel = w->relation;
    if (rel.alphas.empty() || rel.betas.empty())
      throw std::runtime_error("stored relation has an empty side");
    const RootSet sing = singular_weights(l);
    for (const auto& [root, mult] : rel.alphas)
      if (!sing[root] || mult <= 0)
        throw std::runtime_error("stored relation alpha is not a singular weight");
    for (const auto& [root, mult] : rel.betas)
      if (!l.n[root] || mult <= 0)
        throw std::runtime_error("stored relation beta is outside the nilpotent part");
    const RatVec alpha_sum = side_sum(s, rel.alphas);
    const RatVec beta_sum = side_sum(s, rel.betas);
    bool zero = true;
    for (int c2 = 0; c2 < s.rank(); ++c2) {
      if (!(alpha_sum[c2] == beta_sum[c2]))
        throw std::runtime_error("stored relation sides disagree");
      if (!(alpha_sum[c2] == Rat(0))) zero = false;
    }
    if (zero) throw std::runtime_error("stored relation has zero weight");
    if (rel.two_sided != is_two_sided(l, rel))
      throw std::runtime_error("stored two-sided flag is wrong");
    if (!rel.two_sided)
      throw std::runtime_error("stored certificate relation must be two-sided");
    if (w->orth_basis.size() != w->coeffs.size() || w->orth_basis.empty())
      throw std::runtime_error("stored decomposition is malformed");
    RatVec dec_sum(s.rank(), Rat(0));
    for (size_t t = 0; t < w->orth_basis.size(); ++t) {
      const int b = w->orth_basis[t];
      if (!l.n[b] || w->coeffs[t] <= 0)
        throw std::runtime_error("stored decomposition uses an invalid root");
      for (size_t u = t + 1; u < w->orth_basis.size(); ++u)
        if (!s.strongly_orthogonal(b, w->orth_basis[u]))
          throw std::runtime_error("stored decomposition is not strongly orthogonal");
      for (int c2 = 0; c2 < s.rank(); ++c2)
        dec_sum[c2] = dec_sum[c2] + Rat(w->coeffs[t] * s.root(b)[c2]);
    }
    for (int c2 = 0; c2 < s.rank(); ++c2)
      if (!(dec_sum[c2] == alpha_sum[c2]))
        throw std::runtime_error("stored decomposition has the wrong sum");
    return;
  }
  const ExtensionNeeded& e = std::get<ExtensionNeeded>(c);
  const int expect =
      std::max<int>(static_cast<int>(compute_S(l).count()), s.rank());
  if (e.max_tuple_size != expect)
    throw std::runtime_error("stored search bound disagrees with the S-set");
}

}  // namespace

void save_records(const std::string& path, const RootSystem& s,
                  const std::vector<ClassificationRecord>& records,
                  const CensusSummary& summary) {
  json j;
  j["schema"] = kSchema;
  j["ambient"] = s.type().str();
  j["summary"] = summary_json(summary);
  json recs = json::array();
  for (const ClassificationRecord& rec : records)
    recs.push_back(record_json(s, rec));
  j["records"] = std::move(recs);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write census file: " + path);
  out << j.dump(1) << '\n';
  if (!out) throw std::runtime_error("failed writing census file: " + path);
}

CensusFile load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open census file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("census file is not valid JSON: ") +
                             ex.what());
  }
  try {
    if (j.at("schema").get<std::string>() != kSchema)
      throw std::runtime_error("census schema mismatch");

    CensusFile file;
    file.ambient = DynkinType::parse(j.at("ambient").get<std::string>());
    const RootSystem s = RootSystem::build(file.ambient);

    const json& sj = j.at("summary");
    CensusOptions flags;
    flags.parabolic_filter = sj.at("flags").at("parabolic_filter").get<bool>();
    flags.include_solvable = sj.at("flags").at("include_solvable").get<bool>();
    flags.certificates = sj.at("flags").at("certificates").get<bool>();

    for (const json& rj : j.at("records"))
      file.records.push_back(record_from_json(s, rj));

    // Revalidate every record.
    const RootSet* cur_k = nullptr;
    std::vector<KModule> mods;
    RestrictedSymmetry sym;
    for (const ClassificationRecord& rec : file.records) {
      RootSubalgebra l;
      try {
        l = make_subalgebra(s, rec.k_roots, rec.n_roots);
      } catch (const std::invalid_argument& ex) {
        throw std::runtime_error(std::string("stored class is not a valid subalgebra: ") +
                                 ex.what());
      }
      if (l.k != rec.k_roots || l.n != rec.n_roots)
        throw std::runtime_error("stored root sets are not closed");
      if (!(dynkin_type(s, rec.k_roots) == rec.k_type))
        throw std::runtime_error("stored reductive type is wrong");
      if (cur_k == nullptr || !(*cur_k == rec.k_roots)) {
        cur_k = &rec.k_roots;
        mods = k_module_decomposition(s, rec.k_roots);
        sym = restricted_symmetry_group(s, rec.k_roots,
                                        centralizer_roots(s, rec.k_roots));
      }
      RootSet from_modules;
      for (int low : rec.n_modules) {
        bool found = false;
        for (const KModule& m : mods)
          if (m.lowest == low) {
            from_modules |= m.weights;
            found = true;
            break;
          }
        if (!found)
          throw std::runtime_error("stored module list names no module");
      }
      if (from_modules != rec.n_roots)
        throw std::runtime_error("stored module list disagrees with the root set");
      if (rec.n_roots.any() && !orbit_min(s, sym, rec.n_roots))
        throw std::runtime_error("stored class is not in canonical form");
      if (rec.w_inner != sym.inner_part.order ||
          rec.w_graph != sym.graph_part.order || rec.w_full != sym.full.order)
        throw std::runtime_error("stored symmetry orders are wrong");
      const auto cent = centralizer_condition(l);
      if (cent.first != rec.centralizer_holds || !(cent.second == rec.levi_type))
        throw std::runtime_error("stored centralizer data is wrong");
      const bool finite = rec.cone_holds && rec.centralizer_holds;
      if ((rec.verdict == Verdict::FiniteType) != finite)
        throw std::runtime_error("stored verdict disagrees with the stored conditions");
      if (rec.certificate) verify_certificate(l, rec);
    }

    // No two records may describe the same class.
    for (size_t a = 0; a < file.records.size(); ++a)
      for (size_t b = a + 1; b < file.records.size(); ++b)
        if (file.records[a].k_roots == file.records[b].k_roots &&
            file.records[a].n_roots == file.records[b].n_roots)
          throw std::runtime_error("duplicate class in census file");

    // The stored summary must match a recomputation from the records.
    CensusSummary re = summarize(s, file.records, flags);
    if (!sj.at("includes_full_algebra").get<bool>())
      throw std::runtime_error(
          "stored summary does not count the full algebra; totals would not "
          "match a recomputation");
    if (re.total != sj.at("total").get<size_t>() ||
        re.cone_holds != sj.at("cone_holds").get<size_t>() ||
        re.cone_fails != sj.at("cone_fails").get<size_t>() ||
        re.extension_needed != sj.at("extension_needed").get<size_t>() ||
        re.weyl_classes != sj.at("weyl_classes").get<size_t>())
      throw std::runtime_error("stored summary disagrees with the records");
    file.summary = std::move(re);
    return file;
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("malformed census file: ") + ex.what());
  }
}

}  // namespace rootcone
