#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rootcone/rootsystem.hpp"

namespace rootcone {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Classify one connected simple basis by its Cartan integers.
TypeComponent classify_component(const RootSystem& s, const std::vector<int>& basis) {
  int m = static_cast<int>(basis.size());
  TypeComponent out;
  out.rank = m;
  if (m == 1) {
    out.series = 'A';
    return out;
  }
  // bond strength c_ij * c_ji in {0,1,2,3}
  std::vector<std::vector<int>> bond(m, std::vector<int>(m, 0));
  std::vector<int> deg(m, 0);
  int max_bond = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      long long cij = 2 * s.inner(basis[i], basis[j]) / s.norm2(basis[j]);
      long long cji = 2 * s.inner(basis[j], basis[i]) / s.norm2(basis[i]);
      bond[i][j] = static_cast<int>(cij * cji);
      if (bond[i][j]) ++deg[i];
      max_bond = std::max(max_bond, bond[i][j]);
    }
  if (max_bond == 3) {
    require(m == 2, "triple bond in a basis of rank != 2");
    out.series = 'G';
    return out;
  }
  if (max_bond == 2) {
    if (m == 2) {
      out.series = 'B';  // B2 and C2 coincide; the B spelling is canonical here
      return out;
    }
    // Locate the double bond; the shape must be a path.
    int u = -1, v = -1;
    int doubles = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (bond[i][j] == 2) {
          u = i;
          v = j;
          ++doubles;
        }
    require(doubles == 1, "not a root system basis (several double bonds)");
    for (int i = 0; i < m; ++i) require(deg[i] <= 2, "double bond with branching");
    if (deg[u] == 2 && deg[v] == 2) {
      require(m == 4, "interior double bond outside F4");
      out.series = 'F';
      return out;
    }
    int end = deg[u] == 1 ? u : v;
    int other = end == u ? v : u;
    require(deg[other] == 2 || m == 2, "disconnected double bond");
    out.series = s.norm2(basis[end]) < s.norm2(basis[other]) ? 'B' : 'C';
    return out;
  }
  // Simply laced: a tree with at most one branch node.
  int branch = -1;
  for (int i = 0; i < m; ++i) {
    require(deg[i] <= 3, "vertex of degree > 3");
    if (deg[i] == 3) {
      require(branch < 0, "two branch vertices");
      branch = i;
    }
  }
  if (branch < 0) {
    out.series = 'A';
    return out;
  }
  // Arm lengths from the branch node.
  std::vector<int> arms;
  std::vector<char> used(m, 0);
  used[branch] = 1;
  for (int j = 0; j < m; ++j) {
    if (!bond[branch][j] || used[j]) continue;
    int len = 0, cur = j;
    while (true) {
      used[cur] = 1;
      ++len;
      int next = -1;
      for (int k = 0; k < m; ++k)
        if (!used[k] && bond[cur][k]) next = k;
      if (next < 0) break;
      cur = next;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  require(arms.size() == 3, "branch vertex without three arms");
  require(std::accumulate(arms.begin(), arms.end(), 1) == m, "basis is not a tree");
  if (arms[0] == 1 && arms[1] == 1) {
    out.series = 'D';
    return out;
  }
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
    out.series = 'E';
    return out;
  }
  throw std::invalid_argument("basis does not match any finite type");
}

}  // namespace

std::vector<int> simple_basis(const RootSystem& s, const RootSet& sub) {
  std::vector<int> pos;
  for (int i = 0; i < s.positive_count(); ++i)
    if (sub[i]) pos.push_back(i);
  std::vector<int> basis;
  for (int p : pos) {
    bool decomposable = false;
    for (int a : pos) {
      if (a == p) continue;
      int d = s.sum(p, s.neg(a));  // p - a
      if (d >= 0 && d < s.positive_count() && sub[d]) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) basis.push_back(p);
  }
  return basis;
}

DynkinType dynkin_type(const RootSystem& s, const RootSet& sub) {
  for (int i = 0; i < s.size(); ++i) {
    if (!sub[i]) continue;
    require(sub[s.neg(i)], "subset is not symmetric");
    for (int j = 0; j < s.size(); ++j) {
      if (!sub[j]) continue;
      int k = s.sum(i, j);
      if (k >= 0) require(sub[k], "subset is not closed under addition");
    }
  }
  auto basis = simple_basis(s, sub);
  if (basis.empty()) return DynkinType{};

  // Connected components of the basis under the Gram pairing.
  int m = static_cast<int>(basis.size());
  std::vector<int> comp(m, -1);
  int ncomp = 0;
  for (int i = 0; i < m; ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = ncomp;
    std::vector<int> stack{i};
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < m; ++b)
        if (comp[b] < 0 && s.inner(basis[a], basis[b]) != 0) {
          comp[b] = ncomp;
          stack.push_back(b);
        }
    }
    ++ncomp;
  }

  bool ambient_mixed = false;
  {
    int64_t mx = 0, mn = 0;
    for (int i = 0; i < s.size(); ++i) {
      mx = std::max(mx, s.norm2(i));
      mn = mn == 0 ? s.norm2(i) : std::min(mn, s.norm2(i));
    }
    ambient_mixed = mx != mn;
  }
  char ambient_series = s.type().simple() ? s.type().components[0].series : 0;

  std::vector<TypeComponent> cs;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> b;
    for (int i = 0; i < m; ++i)
      if (comp[i] == c) b.push_back(basis[i]);
    TypeComponent tc = classify_component(s, b);
    bool simply_laced = tc.series == 'A' || tc.series == 'D' || tc.series == 'E';
    if (ambient_mixed && simply_laced && s.type().simple()) {
      // All roots of the component share one length; mark the short case.
      if (!s.long_root(b[0])) tc.short_class = true;
    }
    if ((ambient_series == 'B' || ambient_series == 'D') && tc.series == 'A' && tc.rank == 3) {
      // A3 spanning only three coordinate lines embeds the D3 way.
      std::vector<char> support(s.eps(0).size(), 0);
      for (int i : b)
        for (size_t d = 0; d < s.eps(i).size(); ++d)
          if (s.eps(i)[d] != 0) support[d] = 1;
      int width = 0;
      for (char u : support) width += u;
      if (width == 3) tc.d_style = true;
    }
    cs.push_back(tc);
  }
  return DynkinType(std::move(cs));
}

unsigned long long weyl_order(const DynkinType& t) {
  unsigned long long o = 1;
  auto fact = [](int n) {
    unsigned long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  for (const auto& c : t.components) {
    switch (c.series) {
      case 'A':
        o *= fact(c.rank + 1);
        break;
      case 'B':
      case 'C':
        o *= (1ull << c.rank) * fact(c.rank);
        break;
      case 'D':
        o *= (1ull << (c.rank - 1)) * fact(c.rank);
        break;
      case 'E':
        o *= c.rank == 6 ? 51840ull : c.rank == 7 ? 2903040ull : 696729600ull;
        break;
      case 'F':
        o *= 1152;
        break;
      case 'G':
        o *= 12;
        break;
    }
  }
  return o;
}

unsigned long long diagram_automorphism_count(const DynkinType& t) {
  // Per-factor diagram symmetries times permutations of equal factors.
  unsigned long long o = 1;
  for (const auto& c : t.components) {
    if (c.series == 'A' && c.rank >= 2)
      o *= 2;
    else if (c.series == 'D' && c.rank == 4)
      o *= 6;
    else if (c.series == 'D' && c.rank > 4)
      o *= 2;
    else if (c.series == 'E' && c.rank == 6)
      o *= 2;
  }
  std::vector<TypeComponent> cs = t.components;
  size_t i = 0;
  while (i < cs.size()) {
    size_t j = i;
    while (j < cs.size() && cs[j] == cs[i]) ++j;
    unsigned long long f = 1;
    for (size_t k = 2; k <= j - i; ++k) f *= k;
    o *= f;
    i = j;
  }
  return o;
}

}  // namespace rootcone
