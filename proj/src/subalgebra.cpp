#include "rootcone/subalgebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "rootcone/lp.hpp"

namespace rootcone {

namespace {

// Add all sums of pairs until nothing new appears.
void close_under_addition(const RootSystem& s, RootSet& x) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i = 0; i < s.size(); ++i) {
      if (!x[i]) continue;
      for (int j = i; j < s.size(); ++j) {
        if (!x[j]) continue;
        int t = s.sum(i, j);
        if (t >= 0 && !x[t]) {
          x.set(t);
          grew = true;
        }
      }
    }
  }
}

}  // namespace

RootSubalgebra make_subalgebra(const RootSystem& s, const RootSet& k_seed,
                               const RootSet& n_seed) {
  RootSubalgebra out;
  out.ambient = &s;

  RootSet k = k_seed;
  for (int i = 0; i < s.size(); ++i)
    if (k_seed[i]) k.set(s.neg(i));
  close_under_addition(s, k);

  RootSet n = n_seed;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i = 0; i < s.size(); ++i) {
      if (!n[i]) continue;
      for (int j = 0; j < s.size(); ++j) {
        if (!(n[j] || k[j])) continue;
        int t = s.sum(i, j);
        if (t >= 0 && !n[t]) {
          n.set(t);
          grew = true;
        }
      }
    }
  }

  for (int i = 0; i < s.size(); ++i)
    if (n[i] && n[s.neg(i)]) throw std::invalid_argument("not a nilradical-type set");
  if ((k & n).any()) throw std::invalid_argument("seeds overlap");

  out.k = k;
  out.n = n;
  out.all = k | n;
  for (int i = 0; i < s.positive_count(); ++i)
    if (k[i]) out.k_pos.set(i);
  return out;
}

RootSet centralizer_roots(const RootSystem& s, const RootSet& k) {
  RootSet out;
  for (int b = 0; b < s.size(); ++b) {
    bool ok = true;
    for (int a = 0; a < s.size() && ok; ++a)
      if (k[a]) ok = s.strongly_orthogonal(b, a);
    if (ok) out.set(b);
  }
  return out;
}

RootSet centralizer_roots(const RootSubalgebra& l) {
  return centralizer_roots(l.sys(), l.k);
}

std::vector<KModule> k_module_decomposition(const RootSystem& s, const RootSet& k) {
  std::vector<int> kroots;
  for (int i = 0; i < s.size(); ++i)
    if (k[i]) kroots.push_back(i);

  std::vector<KModule> out;
  RootSet seen = k;
  for (int start = 0; start < s.size(); ++start) {
    if (seen[start]) continue;
    KModule m;
    std::vector<int> queue = {start};
    m.weights.set(start);
    seen.set(start);
    while (!queue.empty()) {
      int g = queue.back();
      queue.pop_back();
      for (int d : kroots) {
        int t = s.sum(g, d);
        if (t >= 0 && !seen[t]) {
          m.weights.set(t);
          seen.set(t);
          queue.push_back(t);
        }
      }
    }
    for (int g = 0; g < s.size(); ++g) {
      if (!m.weights[g]) continue;
      bool top = true, bottom = true;
      for (int d : kroots) {
        if (!s.is_positive(d)) continue;
        if (s.sum(g, d) >= 0) top = false;
        if (s.sum(g, s.neg(d)) >= 0) bottom = false;
      }
      if (top) {
        if (m.highest >= 0) throw internal_error("block with two unraisable weights");
        m.highest = g;
      }
      if (bottom) {
        if (m.lowest >= 0) throw internal_error("block with two unlowerable weights");
        m.lowest = g;
      }
    }
    if (m.highest < 0 || m.lowest < 0)
      throw internal_error("block without extreme weights");
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [&](const KModule& a, const KModule& b) {
    return s.rank_of(a.lowest) < s.rank_of(b.lowest);
  });
  return out;
}

std::vector<KModule> k_module_decomposition(const RootSubalgebra& l) {
  return k_module_decomposition(l.sys(), l.k);
}

RootSet singular_weights(const RootSubalgebra& l) {
  const RootSystem& s = l.sys();
  RootSet out;
  for (int a = 0; a < s.size(); ++a) {
    if (l.all[a]) continue;
    bool top = true;
    for (int d = 0; d < s.positive_count() && top; ++d)
      if (l.k[d]) top = s.sum(a, d) < 0;
    if (top) out.set(a);
  }
  return out;
}

std::optional<RatVec> parabolic_nilradical_test(const RootSystem& s,
                                                const RootSet& subset,
                                                const RootSet& n_part) {
  if ((n_part & ~subset).any())
    throw std::invalid_argument("n_part is not contained in the subsystem");
  for (int i = 0; i < s.size(); ++i) {
    if (subset[i] && !subset[s.neg(i)])
      throw std::invalid_argument("subsystem is not symmetric");
    if (n_part[i] && n_part[s.neg(i)])
      throw std::invalid_argument("n_part contains an opposite pair");
    if (!subset[i]) continue;
    for (int j = 0; j < s.size(); ++j) {
      if (!subset[j]) continue;
      int t = s.sum(i, j);
      if (t >= 0 && !subset[t])
        throw std::invalid_argument("subsystem is not closed");
      if (t >= 0 && n_part[i] && n_part[j] && !n_part[t])
        throw std::invalid_argument("n_part is not closed");
    }
  }

  // the covector is free-signed; the solver works over nonnegative
  // variables, so split h = u - v
  LpProblem lp;
  lp.num_vars = 2 * s.rank();
  for (int i = 0; i < s.size(); ++i) {
    if (!subset[i]) continue;
    RatVec row(2 * s.rank());
    int sign = n_part[i] ? 1 : -1;
    for (int d = 0; d < s.rank(); ++d) {
      row[d] = Rat(sign * s.root(i)[d]);
      row[s.rank() + d] = -row[d];
    }
    lp.ge.push_back(std::move(row));
    lp.ge_rhs.push_back(n_part[i] ? Rat(1) : Rat(0));
  }
  auto res = lp_feasible(lp);
  if (auto* f = std::get_if<LpFeasible>(&res)) {
    RatVec h(s.rank());
    for (int d = 0; d < s.rank(); ++d) h[d] = f->x[d] - f->x[s.rank() + d];
    return h;
  }
  return std::nullopt;
}

CentralizerDatum centralizer_normalizer_levi(const RootSubalgebra& l) {
  const RootSystem& s = l.sys();
  CentralizerDatum out;
  out.c_roots = centralizer_roots(l);
  RootSet nc = l.n & out.c_roots;
  for (int a = 0; a < s.size(); ++a) {
    if (!out.c_roots[a]) continue;
    bool ok = true;
    for (int b = 0; b < s.size() && ok; ++b) {
      if (!nc[b]) continue;
      int t = s.sum(a, b);
      // adding a to any centralizer root of n must stay inside n or leave
      // the root system entirely; hitting zero drops into the Cartan part,
      // which also breaks stability of n
      ok = t != kZero && (t == kNotRoot || l.n[t]);
    }
    if (ok) out.q_roots.set(a);
  }
  RootSet two_sided;
  for (int a = 0; a < s.size(); ++a)
    if (out.q_roots[a] && out.q_roots[s.neg(a)]) two_sided.set(a);
  out.levi_type = dynkin_type(s, two_sided);
  return out;
}

}  // namespace rootcone
