#include "rootcone/conditions.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>

#include "rootcone/lp.hpp"

namespace rootcone {

namespace {

std::vector<int> set_to_vec(const RootSet& s, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (s[i]) out.push_back(i);
  return out;
}

RatVec coords_of(const RootSystem& s, int i) {
  RatVec v(s.rank());
  for (int d = 0; d < s.rank(); ++d) v[d] = Rat(s.root(i)[d]);
  return v;
}

long long to_ll(const Int& v) {
  static const Int lo(std::numeric_limits<long long>::min());
  static const Int hi(std::numeric_limits<long long>::max());
  if (v < lo || v > hi) throw internal_error("coefficient exceeds machine range");
  return v.convert_to<long long>();
}

bool is_zero(const RatVec& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

// Plain dot product of a covector with a weight in simple coordinates.
Rat dot(const RatVec& h, const RatVec& w) {
  Rat acc(0);
  for (size_t d = 0; d < h.size() && d < w.size(); ++d) acc += h[d] * w[d];
  return acc;
}

void add_root(const RootSystem& s, RatVec& acc, int root, long long mult = 1) {
  for (int d = 0; d < s.rank(); ++d) acc[d] += Rat(mult) * Rat(s.root(root)[d]);
}

std::vector<long long> int_coords(const RatVec& v) {
  std::vector<long long> out(v.size());
  for (size_t d = 0; d < v.size(); ++d) {
    if (rat_den(v[d]) != 1) throw internal_error("weight is not integral");
    out[d] = to_ll(rat_num(v[d]));
  }
  return out;
}

// Nondecreasing index tuples of a fixed size over 0..m-1, in lexicographic
// order. visit returns false to stop early; the function reports whether
// the enumeration was stopped.
bool each_multiset(int m, int size,
                   const std::function<bool(const std::vector<int>&)>& visit) {
  if (m <= 0 || size <= 0) return false;
  std::vector<int> pick(static_cast<size_t>(size), 0);
  for (;;) {
    if (!visit(pick)) return true;
    int p = size - 1;
    while (p >= 0 && pick[p] == m - 1) --p;
    if (p < 0) return false;
    const int v = pick[p] + 1;
    for (int q = p; q < size; ++q) pick[q] = v;
  }
}

using Side = std::vector<std::pair<int, long long>>;

// Groups a nondecreasing tuple of positions in `roots` into
// (root, multiplicity) pairs.
Side group_counts(const std::vector<int>& roots, const std::vector<int>& pick) {
  Side out;
  for (size_t t = 0; t < pick.size();) {
    size_t u = t;
    while (u < pick.size() && pick[u] == pick[t]) ++u;
    out.emplace_back(roots[pick[t]], static_cast<long long>(u - t));
    t = u;
  }
  return out;
}

RatVec side_sum(const RootSystem& s, const Side& side) {
  RatVec acc(s.rank(), Rat(0));
  for (const auto& [root, mult] : side) add_root(s, acc, root, mult);
  return acc;
}

// Covector with value >= 1 on every listed root, scaled so the minimum is
// exactly 1. Exists for every closed set free of opposite pairs.
RatVec positive_covector(const RootSystem& s, const std::vector<int>& roots) {
  LpProblem lp;
  lp.num_vars = 2 * s.rank();  // free covector split into u - v
  for (int i : roots) {
    RatVec row(lp.num_vars, Rat(0));
    for (int d = 0; d < s.rank(); ++d) {
      row[d] = Rat(s.root(i)[d]);
      row[s.rank() + d] = -row[d];
    }
    lp.ge.push_back(std::move(row));
    lp.ge_rhs.push_back(Rat(1));
  }
  LpOutcome out = lp_feasible(lp);
  auto* f = std::get_if<LpFeasible>(&out);
  if (!f) throw internal_error("no positive covector on a closed asymmetric set");
  RatVec h(s.rank());
  for (int d = 0; d < s.rank(); ++d) h[d] = f->x[d] - f->x[s.rank() + d];
  Rat lo(0);
  for (int i : roots) {
    Rat v = s.eval_covector(h, i);
    if (lo == 0 || v < lo) lo = v;
  }
  for (Rat& v : h) v /= lo;
  return h;
}

// All ways to write `residual` as a nonnegative integer combination of the
// listed roots. `rem` carries the value of the positive covector h on the
// residual, which caps every further coefficient.
void partitions_rec(const RootSystem& s, const std::vector<int>& roots,
                    const RatVec& h, size_t i, RatVec& residual, const Rat& rem,
                    Side& acc, std::vector<Side>& out) {
  if (is_zero(residual)) {
    out.push_back(acc);
    return;
  }
  if (i == roots.size() || rem <= 0) return;
  partitions_rec(s, roots, h, i + 1, residual, rem, acc, out);

  const int root = roots[i];
  const Rat hv = s.eval_covector(h, root);
  const Rat q = rem / hv;
  const Int bmax = rat_num(q) / rat_den(q);
  const RatVec saved = residual;
  acc.emplace_back(root, 0);
  for (Int b = 1; b <= bmax; ++b) {
    add_root(s, residual, s.neg(root));
    acc.back().second = to_ll(b);
    partitions_rec(s, roots, h, i + 1, residual, rem - Rat(b) * hv, acc, out);
  }
  acc.pop_back();
  residual = saved;
}

// Collects multiplicities and merges any two betas whose sum is again a
// root (the merged root stays in n because n is closed), repeating until
// no such pair remains.
Side reduce_betas(const RootSystem& s, const RootSet& n, const Side& betas) {
  std::vector<int> list;
  for (const auto& [root, mult] : betas)
    list.insert(list.end(), static_cast<size_t>(mult), root);
  for (;;) {
    std::sort(list.begin(), list.end());
    bool merged = false;
    for (size_t i = 0; i < list.size() && !merged; ++i)
      for (size_t j = i + 1; j < list.size() && !merged; ++j) {
        const int t = s.sum(list[i], list[j]);
        if (t == kNotRoot) continue;
        if (t == kZero || !n[t])
          throw internal_error("beta reduction left the nilradical");
        list.erase(list.begin() + static_cast<long>(j));
        list.erase(list.begin() + static_cast<long>(i));
        list.push_back(t);
        merged = true;
      }
    if (!merged) break;
  }
  std::sort(list.begin(), list.end());
  Side out;
  for (int r : list) {
    if (!out.empty() && out.back().first == r)
      ++out.back().second;
    else
      out.emplace_back(r, 1);
  }
  return out;
}

}  // namespace

long long Relation::length() const {
  long long total = 0;
  for (const auto& [root, mult] : alphas) total += mult;
  return total;
}

ConeOutcome cone_condition(const RootSubalgebra& l) {
  const RootSystem& s = l.sys();
  const std::vector<int> sing = set_to_vec(singular_weights(l), s.size());
  const std::vector<int> nil = set_to_vec(l.n, s.size());
  if (nil.empty()) return ConeHolds{RatVec(s.rank(), Rat(0))};

  // Variables: one weight per singular root (alpha side), then one per
  // nilradical root (beta side). The beta side is normalized to total
  // weight 1, so a feasible point pins a nonzero common cone vector.
  const size_t na = sing.size(), nb = nil.size();
  LpProblem lp;
  lp.num_vars = static_cast<int>(na + nb);
  for (int d = 0; d < s.rank(); ++d) {
    RatVec row(na + nb, Rat(0));
    for (size_t i = 0; i < na; ++i) row[i] = Rat(s.root(sing[i])[d]);
    for (size_t j = 0; j < nb; ++j) row[na + j] = Rat(-s.root(nil[j])[d]);
    lp.eq.push_back(std::move(row));
    lp.eq_rhs.push_back(Rat(0));
  }
  RatVec norm_row(na + nb, Rat(0));
  for (size_t j = 0; j < nb; ++j) norm_row[na + j] = Rat(1);
  lp.eq.push_back(std::move(norm_row));
  lp.eq_rhs.push_back(Rat(1));

  LpOutcome out = lp_feasible(lp);
  if (auto* inf = std::get_if<LpInfeasible>(&out)) {
    RatMat strict, nonstrict;
    for (int j : nil) strict.push_back(coords_of(s, j));
    for (int i : sing) nonstrict.push_back(coords_of(s, i));
    return ConeHolds{farkas_to_separator(inf->farkas, strict, nonstrict)};
  }

  // Clear denominators and divide out the common factor to get the
  // smallest integer relation along the witness ray.
  const RatVec& x = std::get<LpFeasible>(out).x;
  Int scale = 1;
  for (const Rat& v : x) scale = lcm(scale, rat_den(v));
  std::vector<Int> xi(x.size());
  Int g = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    xi[i] = rat_num(x[i]) * (scale / rat_den(x[i]));
    g = gcd(g, xi[i]);
  }
  if (g == 0) throw internal_error("cone witness is identically zero");

  Relation rel;
  rel.omega.assign(s.rank(), Rat(0));
  for (size_t i = 0; i < na; ++i)
    if (xi[i] != 0) rel.alphas.emplace_back(sing[i], to_ll(xi[i] / g));
  for (size_t j = 0; j < nb; ++j)
    if (xi[na + j] != 0) {
      const long long b = to_ll(xi[na + j] / g);
      rel.betas.emplace_back(nil[j], b);
      add_root(s, rel.omega, nil[j], b);
    }
  if (side_sum(s, rel.alphas) != rel.omega || is_zero(rel.omega))
    throw internal_error("cone witness does not balance");
  rel.two_sided = is_two_sided(l, rel);
  rel.minimal = false;
  return ConeFails{std::move(rel)};
}

std::pair<bool, DynkinType> centralizer_condition(const RootSubalgebra& l) {
  DynkinType t = centralizer_normalizer_levi(l).levi_type;
  bool ok = true;
  for (const auto& c : t.components) {
    if (c.series == 'A' || c.series == 'C') continue;
    if (c.series == 'B' && c.rank == 2) continue;  // coincides with C2
    ok = false;
  }
  return {ok, std::move(t)};
}

Verdict classify(const RootSubalgebra& l, bool assume_conjecture) {
  for (const auto& c : l.sys().type().components)
    if (c.series == 'E' && c.rank == 8 && !assume_conjecture)
      throw std::domain_error(
          "the finite-type criterion over E8 is conjectural; "
          "set assume_conjecture to classify anyway");
  if (!centralizer_condition(l).first) return Verdict::InfiniteType;
  return std::holds_alternative<ConeHolds>(cone_condition(l))
             ? Verdict::FiniteType
             : Verdict::InfiniteType;
}

RootSet compute_S(const RootSubalgebra& l) {
  const RootSystem& s = l.sys();
  const RootSet sing = singular_weights(l);
  RootSet out;
  for (int a = 0; a < s.size(); ++a) {
    if (!sing[a]) continue;
    bool keeps = true;
    for (int b = 0; b < s.size() && keeps; ++b) {
      if (!l.n[b]) continue;
      const int t = s.sum(a, b);
      // t == kZero would bracket into the Cartan subalgebra, outside n.
      keeps = t != kZero && (t == kNotRoot || l.n[t]);
    }
    if (keeps) out.set(a);
  }
  return out;
}

std::optional<std::pair<std::vector<int>, std::vector<long long>>>
strongly_orthogonal_decomposition(const RootSystem& s, const RatVec& omega,
                                  const RootSet& n_roots) {
  if (static_cast<int>(omega.size()) != s.rank())
    throw std::invalid_argument("weight has the wrong dimension");
  if (is_zero(omega)) return std::nullopt;

  // In a pairwise orthogonal decomposition each coefficient is pinned to
  // <omega, beta>/|beta|^2, so only candidates where that value is a
  // positive integer can occur.
  struct Cand {
    int root;
    long long coeff;
    Rat gain;  // coeff^2 * |root|^2, the norm the candidate accounts for
  };
  std::vector<Cand> cands;
  for (int i = 0; i < s.size(); ++i) {
    if (!n_roots[i]) continue;
    const Rat ip = s.inner(omega, i);
    if (ip <= 0) continue;
    const Rat c = ip / Rat(s.norm2(i));
    if (rat_den(c) != 1) continue;
    const long long cv = to_ll(rat_num(c));
    cands.push_back({i, cv, Rat(cv) * Rat(cv) * Rat(s.norm2(i))});
  }
  std::vector<Rat> cap(cands.size() + 1, Rat(0));
  for (size_t i = cands.size(); i-- > 0;) cap[i] = cap[i + 1] + cands[i].gain;

  std::vector<int> simple_at(static_cast<size_t>(s.rank()));
  for (int d = 0; d < s.rank(); ++d) {
    Coords unit{};
    unit[d] = 1;
    simple_at[d] = s.index_of(unit);
  }
  RatVec residual = omega;
  Rat res_norm(0);
  for (int d = 0; d < s.rank(); ++d)
    if (omega[d] != 0) res_norm += omega[d] * s.inner(omega, simple_at[d]);

  std::vector<int> basis;
  std::vector<long long> coeffs;
  const std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (res_norm == 0) {
      if (!is_zero(residual)) throw internal_error("norm form is degenerate");
      return true;
    }
    if (i == cands.size() || res_norm > cap[i]) return false;
    if (static_cast<int>(basis.size()) < s.rank()) {
      const Cand& c = cands[i];
      bool ortho = true;
      for (int b : basis)
        if (!s.strongly_orthogonal(b, c.root)) {
          ortho = false;
          break;
        }
      if (ortho) {
        // Orthogonality to everything chosen keeps the norm bookkeeping
        // exact: the residual loses precisely the candidate's gain.
        add_root(s, residual, s.neg(c.root), c.coeff);
        res_norm -= c.gain;
        basis.push_back(c.root);
        coeffs.push_back(c.coeff);
        if (rec(i + 1)) return true;
        basis.pop_back();
        coeffs.pop_back();
        res_norm += c.gain;
        add_root(s, residual, c.root, c.coeff);
      }
    }
    return rec(i + 1);
  };
  if (!rec(0)) return std::nullopt;
  return std::make_pair(std::move(basis), std::move(coeffs));
}

bool is_two_sided(const RootSubalgebra& l, const Relation& rel) {
  const RootSet S = compute_S(l);
  for (const auto& [root, mult] : rel.alphas)
    if (!S[root]) return false;
  return true;
}

std::vector<Relation> minimal_relations(const RootSubalgebra& l) {
  ConeOutcome cone = cone_condition(l);
  if (std::holds_alternative<ConeHolds>(cone))
    throw std::invalid_argument(
        "minimal_relations: the cone condition holds, no relation exists");
  const RootSystem& s = l.sys();
  const long long len_cap = std::get<ConeFails>(cone).relation.length();
  const std::vector<int> sing = set_to_vec(singular_weights(l), s.size());
  const std::vector<int> nil = set_to_vec(l.n, s.size());
  const RatVec h = positive_covector(s, nil);
  const RootSet S = compute_S(l);

  std::vector<Relation> out;
  std::map<std::vector<long long>, std::vector<Side>> memo;
  for (long long len = 1; len <= len_cap && out.empty(); ++len) {
    each_multiset(
        static_cast<int>(sing.size()), static_cast<int>(len),
        [&](const std::vector<int>& pick) {
          RatVec omega(s.rank(), Rat(0));
          for (int p : pick) add_root(s, omega, sing[p]);
          if (is_zero(omega)) return true;

          auto [it, fresh] = memo.try_emplace(int_coords(omega));
          if (fresh) {
            const Rat rem = dot(h, omega);
            if (rem >= 1) {
              RatVec residual = omega;
              Side acc;
              partitions_rec(s, nil, h, 0, residual, rem, acc, it->second);
            }
          }
          for (const Side& side : it->second) {
            Relation rel;
            rel.omega = omega;
            rel.alphas = group_counts(sing, pick);
            rel.betas = reduce_betas(s, l.n, side);
            rel.minimal = true;
            rel.two_sided = true;
            for (const auto& [root, mult] : rel.alphas)
              if (!S[root]) rel.two_sided = false;
            out.push_back(std::move(rel));
          }
          return true;
        });
  }
  if (out.empty())
    throw internal_error("no relation found within the witness length bound");

  std::sort(out.begin(), out.end(), [](const Relation& a, const Relation& b) {
    return std::tie(a.alphas, a.betas) < std::tie(b.alphas, b.betas);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Certificate find_certificate(const RootSubalgebra& l) {
  ConeOutcome cone = cone_condition(l);
  if (auto* ok = std::get_if<ConeHolds>(&cone)) return std::move(*ok);
  const RootSystem& s = l.sys();
  const std::vector<int> svec = set_to_vec(compute_S(l), s.size());
  const int cutoff = std::max(static_cast<int>(svec.size()), s.rank());

  std::optional<StrictlyInfinite> hit;
  std::map<std::vector<long long>, bool> rejected;
  for (int size = 2; size <= cutoff && !hit; ++size) {
    each_multiset(
        static_cast<int>(svec.size()), size,
        [&](const std::vector<int>& pick) {
          RatVec omega(s.rank(), Rat(0));
          for (int p : pick) add_root(s, omega, svec[p]);
          if (is_zero(omega)) return true;
          auto [it, fresh] = rejected.try_emplace(int_coords(omega), true);
          if (!fresh) return true;
          auto dec = strongly_orthogonal_decomposition(s, omega, l.n);
          if (!dec) return true;

          Relation rel;
          rel.omega = std::move(omega);
          rel.alphas = group_counts(svec, pick);
          for (size_t t = 0; t < dec->first.size(); ++t)
            rel.betas.emplace_back(dec->first[t], dec->second[t]);
          rel.two_sided = true;
          rel.minimal = false;
          if (side_sum(s, rel.alphas) != rel.omega ||
              side_sum(s, rel.betas) != rel.omega)
            throw internal_error("certificate sides do not balance");
          for (size_t a = 0; a < dec->first.size(); ++a) {
            if (dec->second[a] <= 0 || !l.n[dec->first[a]])
              throw internal_error("certificate basis leaves the nilradical");
            for (size_t b = a + 1; b < dec->first.size(); ++b)
              if (!s.strongly_orthogonal(dec->first[a], dec->first[b]))
                throw internal_error("certificate basis is not orthogonal");
          }
          hit = StrictlyInfinite{std::move(rel), std::move(dec->first),
                                 std::move(dec->second)};
          return false;
        });
  }
  if (hit) return std::move(*hit);
  return ExtensionNeeded{cutoff};
}

}  // namespace rootcone
