#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "rootcone/lp.hpp"
#include "rootcone/rootsystem.hpp"

namespace rootcone {

namespace {

std::array<uint64_t, 4> set_words(const RootSet& s) {
  static const RootSet mask(~0ull);
  std::array<uint64_t, 4> w{};
  for (int i = 0; i < 4; ++i) w[i] = ((s >> (i * 64)) & mask).to_ullong();
  return w;
}

// Sign of the determinant of the linear map a root permutation induces on
// the span of the roots (+1 or -1; automorphisms are isometries, so it is
// never 0). Computed by rational Gaussian elimination on the matrix taking
// the simple basis to its images.
int det_sign(const RootSystem& s, const Perm& p) {
  const int n = s.rank();
  Rat m[kMaxRank][kMaxRank];
  for (int i = 0; i < n; ++i) {
    Coords unit{};
    unit[i] = 1;
    const int si = s.index_of(unit);
    if (si < 0) throw internal_error("simple root missing from the system");
    const Coords& img = s.root(p[si]);
    for (int r = 0; r < n; ++r) m[r][i] = Rat(img[r]);
  }
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!(m[r][col] == Rat(0))) {
        piv = r;
        break;
      }
    if (piv < 0) throw internal_error("graph symmetry is singular");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(m[piv][c], m[col][c]);
      sign = -sign;
    }
    if (m[col][col] < Rat(0)) sign = -sign;
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == Rat(0)) continue;
      const Rat f = m[r][col] / m[col][col];
      for (int c = col; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
    }
  }
  return sign;
}

int find_root(const RootSystem& s, const Coords& c) {
  // by_rank is sorted by coordinate lex order; binary search over it.
  int lo = 0, hi = s.size();
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (s.root(s.root_at_rank(mid)) < c)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < s.size() && s.root(s.root_at_rank(lo)) == c) return s.root_at_rank(lo);
  return -1;
}

struct PermHash {
  size_t operator()(const Perm& p) const {
    size_t h = 1469598103934665603ull;
    for (uint16_t v : p) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

RootSet apply_perm(const Perm& p, const RootSet& s) {
  RootSet out;
  for (size_t i = 0; i < p.size(); ++i)
    if (s[i]) out.set(p[i]);
  return out;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm RootSystem::reflection(int i) const {
  Perm p(size());
  long long nn = norm2(i);
  for (int j = 0; j < size(); ++j) {
    long long k = 2 * inner(j, i) / nn;
    Coords c = roots_[j];
    for (int d = 0; d < rank_; ++d)
      c[d] = static_cast<int16_t>(c[d] - k * roots_[i][d]);
    int idx = find_root(*this, c);
    if (idx < 0) throw internal_error("reflection left the root system");
    p[j] = static_cast<uint16_t>(idx);
  }
  return p;
}

std::optional<std::vector<Perm>> close_generators(const std::vector<Perm>& gens,
                                                  size_t limit) {
  size_t n = gens.empty() ? 0 : gens[0].size();
  Perm id(n);
  for (size_t i = 0; i < n; ++i) id[i] = static_cast<uint16_t>(i);
  std::unordered_set<Perm, PermHash> seen{id};
  std::vector<Perm> out{id};
  for (size_t head = 0; head < out.size(); ++head) {
    Perm cur = out[head];  // copy: out may reallocate below
    for (const Perm& g : gens) {
      Perm next = compose(g, cur);
      if (seen.insert(next).second) {
        if (out.size() + 1 > limit) return std::nullopt;
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

namespace {

// Root index of the d-th simple root (the d-th coordinate unit vector).
std::vector<int> simple_indices(const RootSystem& s) {
  std::vector<int> out(s.rank());
  for (int d = 0; d < s.rank(); ++d) {
    Coords c{};
    c[d] = 1;
    out[d] = find_root(s, c);
  }
  return out;
}

// Enumerate gram-preserving permutations of the simple-root coordinate
// positions (diagram automorphisms of the ambient system).
void diagram_autos_rec(const RootSystem& s, const std::vector<int>& sidx,
                       std::vector<int>& img, std::vector<char>& used,
                       std::vector<std::vector<int>>& out) {
  size_t k = img.size();
  if (k == static_cast<size_t>(s.rank())) {
    out.push_back(img);
    return;
  }
  for (int cand = 0; cand < s.rank(); ++cand) {
    if (used[cand]) continue;
    bool ok = s.norm2(sidx[k]) == s.norm2(sidx[cand]);
    for (size_t j = 0; j < k && ok; ++j)
      ok = s.inner(sidx[k], sidx[j]) == s.inner(sidx[cand], sidx[img[j]]);
    if (ok) {
      img.push_back(cand);
      used[cand] = 1;
      diagram_autos_rec(s, sidx, img, used, out);
      used[cand] = 0;
      img.pop_back();
    }
  }
}

// Root permutation of the linear map sending the d-th simple root to the
// img[d]-th one; nullopt when some root leaves the system.
std::optional<Perm> perm_from_simple_images(const RootSystem& s, const std::vector<int>& img) {
  Perm p(s.size());
  for (int j = 0; j < s.size(); ++j) {
    Coords c{};
    for (int d = 0; d < s.rank(); ++d) {
      int16_t v = s.root(j)[d];
      if (!v) continue;
      c[img[d]] = static_cast<int16_t>(c[img[d]] + v);
    }
    int idx = find_root(s, c);
    if (idx < 0) return std::nullopt;
    p[j] = static_cast<uint16_t>(idx);
  }
  return p;
}

}  // namespace

const SymmetryGroup& RootSystem::weyl_group() const {
  if (weyl_done_) return weyl_;
  for (int i = 0; i < rank_; ++i) weyl_.gens.push_back(reflection(i));
  weyl_.order = weyl_order(type_);
  if (weyl_.order <= materialize_limit) {
    auto el = close_generators(weyl_.gens, materialize_limit);
    if (!el || el->size() != weyl_.order)
      throw internal_error("Weyl group closure does not match its order");
    weyl_.elements = std::move(*el);
  }
  weyl_done_ = true;
  return weyl_;
}

const SymmetryGroup& RootSystem::automorphism_group() const {
  if (aut_done_) return aut_;
  const SymmetryGroup& w = weyl_group();
  aut_.gens = w.gens;
  std::vector<std::vector<int>> imgs;
  std::vector<int> img;
  std::vector<char> used(rank_, 0);
  auto sidx = simple_indices(*this);
  diagram_autos_rec(*this, sidx, img, used, imgs);
  size_t diag = 0;
  for (const auto& m : imgs) {
    auto p = perm_from_simple_images(*this, m);
    if (!p) continue;  // a gram-preserving basis bijection of a reducible
                       // system can fail to extend only if blocks mismatch
    ++diag;
    bool trivial = true;
    for (size_t i = 0; i < p->size(); ++i)
      if ((*p)[i] != i) trivial = false;
    if (!trivial) aut_.gens.push_back(std::move(*p));
  }
  aut_.order = w.order * diag;
  if (aut_.order <= materialize_limit) {
    auto el = close_generators(aut_.gens, materialize_limit);
    if (!el || el->size() != aut_.order)
      throw internal_error("automorphism group closure does not match its order");
    aut_.elements = std::move(*el);
  }
  aut_done_ = true;
  return aut_;
}

bool RootSystem::is_inner(const Perm& p) const {
  // Precompose with simple reflections until every simple root maps to a
  // positive root; what remains is a diagram automorphism, and p lies in
  // the Weyl group exactly when that residue is the identity.
  Perm cur = p;
  while (true) {
    int bad = -1;
    for (int i = 0; i < rank_ && bad < 0; ++i)
      if (!is_positive(cur[i])) bad = i;
    if (bad < 0) break;
    cur = compose(cur, reflection(bad));
  }
  for (size_t i = 0; i < cur.size(); ++i)
    if (cur[i] != i) return false;
  return true;
}

// --- isometry extension ---

namespace {

// Exact rank computation / extension over Q on simple-root coordinates.
struct SpanTracker {
  std::vector<RatVec> rows;  // row-reduced spanning set
  int dim;

  explicit SpanTracker(int d) : dim(d) {}

  static RatVec to_vec(const Coords& c, int d) {
    RatVec v(d);
    for (int i = 0; i < d; ++i) v[i] = c[i];
    return v;
  }

  bool contains(const RatVec& v0) const {
    RatVec v = v0;
    for (const auto& r : rows) {
      int piv = pivot(r);
      if (v[piv] != 0) {
        Rat f = v[piv] / r[piv];
        for (int i = 0; i < dim; ++i) v[i] -= f * r[i];
      }
    }
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }

  void add(const RatVec& v0) {
    RatVec v = v0;
    for (const auto& r : rows) {
      int piv = pivot(r);
      if (v[piv] != 0) {
        Rat f = v[piv] / r[piv];
        for (int i = 0; i < dim; ++i) v[i] -= f * r[i];
      }
    }
    rows.push_back(std::move(v));
  }

  static int pivot(const RatVec& r) {
    for (size_t i = 0; i < r.size(); ++i)
      if (r[i] != 0) return static_cast<int>(i);
    return -1;
  }
};

struct ExtendCtx {
  const RootSystem& s;
  std::vector<int> pins, imgs;  // linearly independent pinned roots and images
  std::vector<Perm> found;
  size_t limit;
  const std::vector<int>* from;
  const std::vector<int>* to;
};

void extend_rec(ExtendCtx& ctx, SpanTracker span) {
  const RootSystem& s = ctx.s;
  if (ctx.limit && ctx.found.size() >= ctx.limit) return;
  if (static_cast<int>(ctx.pins.size()) == s.rank()) {
    // The images of a spanning set determine the map; read the matrix off
    // by solving P^T M^T = Q^T column by column, then check it permutes
    // the root list.
    int r = s.rank();
    RatMat a(r, RatVec(r));
    for (int row = 0; row < r; ++row)
      for (int col = 0; col < r; ++col) a[row][col] = s.root(ctx.pins[row])[col];
    // m_cols[d] = coefficients of the image of basis vector e_d
    RatMat m(r, RatVec(r));
    for (int d = 0; d < r; ++d) {
      RatVec rhs(r);
      for (int row = 0; row < r; ++row) rhs[row] = s.root(ctx.imgs[row])[d];
      auto col = solve_linear(a, rhs);
      if (!col) return;  // pins were independent, so this cannot happen
      for (int e = 0; e < r; ++e) m[d][e] = (*col)[e];
    }
    Perm p(s.size());
    for (int j = 0; j < s.size(); ++j) {
      RatVec v(r, Rat(0));
      for (int e = 0; e < r; ++e) {
        if (!s.root(j)[e]) continue;
        for (int d = 0; d < r; ++d) v[d] += Rat(s.root(j)[e]) * m[d][e];
      }
      Coords c{};
      for (int d = 0; d < r; ++d) {
        if (rat_den(v[d]) != 1) return;
        Int num = rat_num(v[d]);
        c[d] = static_cast<int16_t>(num.convert_to<long long>());
      }
      int idx = find_root(s, c);
      if (idx < 0) return;
      p[j] = static_cast<uint16_t>(idx);
    }
    for (size_t i = 0; i < ctx.from->size(); ++i)
      if (p[(*ctx.from)[i]] != (*ctx.to)[i]) return;
    ctx.found.push_back(std::move(p));
    return;
  }
  // Pick the first root outside the current span and try all images with
  // matching products against the pinned configuration.
  int u = -1;
  for (int j = 0; j < s.size() && u < 0; ++j)
    if (!span.contains(SpanTracker::to_vec(s.root(j), s.rank()))) u = j;
  if (u < 0) throw internal_error("span rank below system rank");
  for (int x = 0; x < s.size(); ++x) {
    if (s.norm2(x) != s.norm2(u)) continue;
    bool ok = true;
    for (size_t i = 0; i < ctx.pins.size() && ok; ++i)
      ok = s.inner(u, ctx.pins[i]) == s.inner(x, ctx.imgs[i]);
    if (!ok) continue;
    ctx.pins.push_back(u);
    ctx.imgs.push_back(x);
    SpanTracker next = span;
    next.add(SpanTracker::to_vec(s.root(u), s.rank()));
    extend_rec(ctx, std::move(next));
    ctx.pins.pop_back();
    ctx.imgs.pop_back();
    if (ctx.limit && ctx.found.size() >= ctx.limit) return;
  }
}

}  // namespace

std::vector<Perm> extend_isometry(const RootSystem& s, const std::vector<int>& from,
                                  const std::vector<int>& to, size_t limit) {
  if (from.size() != to.size()) throw std::invalid_argument("from/to size mismatch");
  for (size_t i = 0; i < from.size(); ++i)
    for (size_t j = 0; j < from.size(); ++j)
      if (s.inner(from[i], from[j]) != s.inner(to[i], to[j])) return {};

  ExtendCtx ctx{s, {}, {}, {}, limit, &from, &to};
  SpanTracker span(s.rank());
  for (size_t i = 0; i < from.size(); ++i) {
    RatVec v = SpanTracker::to_vec(s.root(from[i]), s.rank());
    if (span.contains(v)) continue;  // dependent pin: checked after solving
    span.add(v);
    ctx.pins.push_back(from[i]);
    ctx.imgs.push_back(to[i]);
  }
  extend_rec(ctx, std::move(span));
  return std::move(ctx.found);
}

namespace {

// All gram-preserving bijections basis -> basis (as index lists).
void basis_autos_rec(const RootSystem& s, const std::vector<int>& basis,
                     std::vector<int>& img, std::vector<char>& used,
                     std::vector<std::vector<int>>& out) {
  size_t k = img.size();
  if (k == basis.size()) {
    out.push_back(img);
    return;
  }
  for (size_t c = 0; c < basis.size(); ++c) {
    if (used[c]) continue;
    if (s.norm2(basis[k]) != s.norm2(basis[c])) continue;
    bool ok = true;
    for (size_t j = 0; j < k && ok; ++j)
      ok = s.inner(basis[k], basis[j]) == s.inner(basis[c], img[j]);
    if (!ok) continue;
    img.push_back(basis[c]);
    used[c] = 1;
    basis_autos_rec(s, basis, img, used, out);
    used[c] = 0;
    img.pop_back();
  }
}

}  // namespace

RestrictedSymmetry restricted_symmetry_group(const RootSystem& s, const RootSet& k_roots,
                                             const RootSet& c_roots) {
  RestrictedSymmetry out;
  auto kb = simple_basis(s, k_roots);
  auto cb = simple_basis(s, c_roots);

  out.inner_part.order = weyl_order(dynkin_type(s, c_roots));
  for (int i : cb) out.inner_part.gens.push_back(s.reflection(i));
  if (cb.empty()) {
    Perm id(s.size());
    for (int i = 0; i < s.size(); ++i) id[i] = static_cast<uint16_t>(i);
    out.inner_part.elements = {id};
  } else if (out.inner_part.order <= RootSystem::materialize_limit) {
    auto el = close_generators(out.inner_part.gens, RootSystem::materialize_limit);
    if (!el || el->size() != out.inner_part.order)
      throw internal_error("centralizer Weyl closure does not match its order");
    out.inner_part.elements = std::move(*el);
  }

  // Admissible graph symmetries: bijections of the two simple bases,
  // preserving each part and all products, that extend to automorphisms of
  // the ambient system. A bijection can be realized in the Weyl group, in
  // the non-Weyl coset, or in both; each realized (bijection, coset) pair
  // contributes exactly one representative. Extensions beyond that — maps
  // fixing both bases pointwise while moving other roots — are dropped, as
  // they merge candidates that are counted separately.
  std::vector<int> fb = kb;
  fb.insert(fb.end(), cb.begin(), cb.end());
  std::vector<std::vector<int>> kimgs, cimgs;
  {
    std::vector<int> img;
    std::vector<char> used(kb.size(), 0);
    basis_autos_rec(s, kb, img, used, kimgs);
  }
  {
    std::vector<int> img;
    std::vector<char> used(cb.size(), 0);
    basis_autos_rec(s, cb, img, used, cimgs);
  }
  for (const auto& ki : kimgs)
    for (const auto& ci : cimgs) {
      std::vector<int> target = ki;
      target.insert(target.end(), ci.begin(), ci.end());
      // Best realization per ambient coset: determinant one preferred, then
      // fewest positive roots sent to negative ones, ties by least
      // permutation array. The identity bijection is thus always represented
      // by the identity map. Realizations in one coset differ by maps fixing
      // both simple bases pointwise, which exist only when the bases do not
      // span; the determinant preference pins down which of two sign-related
      // nilpotent parts survives deduplication in those rank-deficient cases.
      std::optional<Perm> best[2];
      int best_flips[2] = {0, 0};
      bool best_detneg[2] = {false, false};
      for (auto& p : extend_isometry(s, fb, target)) {
        int cls = s.is_inner(p) ? 0 : 1;
        const bool detneg = det_sign(s, p) < 0;
        int flips = 0;
        for (int j = 0; j < s.size(); ++j)
          if (s.is_positive(j) && !s.is_positive(p[j])) ++flips;
        const bool better =
            !best[cls] ||
            (detneg != best_detneg[cls]
                 ? !detneg
                 : (flips != best_flips[cls] ? flips < best_flips[cls]
                                             : p < *best[cls]));
        if (better) {
          best[cls] = std::move(p);
          best_flips[cls] = flips;
          best_detneg[cls] = detneg;
        }
      }
      for (auto& b : best)
        if (b) out.graph_part.elements.push_back(std::move(*b));
    }
  std::sort(out.graph_part.elements.begin(), out.graph_part.elements.end());
  out.graph_part.order = out.graph_part.elements.size();
  out.graph_part.gens = out.graph_part.elements;

  // The product family W''' * graph, materialized as explicit products when
  // small enough. Distinct graph representatives lie in distinct cosets of
  // the pointwise-fixing subgroup, so the products are pairwise distinct.
  out.full.order = out.inner_part.order * out.graph_part.order;
  out.full.gens = out.inner_part.gens;
  for (const auto& p : out.graph_part.elements) out.full.gens.push_back(p);
  if (out.full.order <= RootSystem::materialize_limit) {
    if (!out.inner_part.materialized())
      throw internal_error("inner part larger than the product family");
    out.full.elements.reserve(out.full.order);
    for (const auto& w : out.inner_part.elements)
      for (const auto& u : out.graph_part.elements)
        out.full.elements.push_back(compose(w, u));
  }
  return out;
}

bool conjugate_subsystems(const RootSystem& s, const RootSet& a, const RootSet& b) {
  if (a.count() != b.count()) return false;
  if (a == b) return true;
  auto ba = simple_basis(s, a);
  auto bb = simple_basis(s, b);
  if (ba.size() != bb.size()) return false;
  // Try every product-preserving assignment of a's basis onto b's.
  std::vector<std::vector<int>> cands;
  {
    // reuse the basis automorphism enumerator on the union trick: enumerate
    // assignments ba[i] -> bb[sigma(i)] directly
    std::vector<int> img;
    std::vector<char> used(bb.size(), 0);
    struct Rec {
      const RootSystem& s;
      const std::vector<int>&ba, &bb;
      std::vector<std::vector<int>>& out;
      void go(std::vector<int>& img, std::vector<char>& used) {
        size_t k = img.size();
        if (k == ba.size()) {
          out.push_back(img);
          return;
        }
        for (size_t c = 0; c < bb.size(); ++c) {
          if (used[c] || s.norm2(ba[k]) != s.norm2(bb[c])) continue;
          bool ok = true;
          for (size_t j = 0; j < k && ok; ++j)
            ok = s.inner(ba[k], ba[j]) == s.inner(bb[c], img[j]);
          if (!ok) continue;
          img.push_back(bb[c]);
          used[c] = 1;
          go(img, used);
          used[c] = 0;
          img.pop_back();
        }
      }
    } rec{s, ba, bb, cands};
    rec.go(img, used);
  }
  for (const auto& target : cands) {
    auto perms = extend_isometry(s, ba, target, 1);
    if (!perms.empty()) {
      if (apply_perm(perms[0], a) != b)
        throw internal_error("basis map did not carry the subsystem");
      return true;
    }
  }
  return false;
}

RootSet canonical_min(const RootSystem& s, const SymmetryGroup& g, const RootSet& x) {
  if (g.materialized()) {
    RootSet best = x;
    for (const auto& p : g.elements) {
      RootSet y = apply_perm(p, x);
      if (s.set_less(y, best)) best = y;
    }
    return best;
  }
  // Orbit walk from the generators.
  std::set<std::array<uint64_t, 4>> seen{set_words(x)};
  std::vector<RootSet> queue{x};
  RootSet best = x;
  while (!queue.empty()) {
    RootSet cur = queue.back();
    queue.pop_back();
    if (s.set_less(cur, best)) best = cur;
    for (const auto& p : g.gens) {
      RootSet y = apply_perm(p, cur);
      if (seen.insert(set_words(y)).second) queue.push_back(y);
    }
  }
  return best;
}

}  // namespace rootcone
