#include "rootcone/rootsystem.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rootcone {

namespace {

int series_index(char s) {
  switch (s) {
    case 'A': return 0;
    case 'B': return 1;
    case 'C': return 2;
    case 'D': return 3;
    case 'E': return 4;
    case 'F': return 5;
    case 'G': return 6;
    default: return -1;
  }
}

void check_component(const TypeComponent& c) {
  const int lo[] = {1, 2, 2, 3, 6, 4, 2};  // D3 admitted only via the d_style spelling
  const int hi[] = {kMaxRank, kMaxRank, kMaxRank, kMaxRank, 8, 4, 2};
  int si = series_index(c.series);
  if (si < 0) throw std::invalid_argument("unknown series");
  int lo_rank = lo[si];
  if (c.series == 'D' && !c.d_style) lo_rank = 4;
  if (c.rank < lo_rank || c.rank > hi[si])
    throw std::invalid_argument(std::string("rank out of range for series ") + c.series);
  if (c.d_style && !(c.series == 'A' && c.rank == 3))
    throw std::invalid_argument("d_style only applies to A3");
}

}  // namespace

namespace {

// Display order: big factors first, primed (short-class) before unprimed at
// equal rank, series later in the alphabet first on a full tie.
bool display_before(const TypeComponent& a, const TypeComponent& b) {
  if (a.rank != b.rank) return a.rank > b.rank;
  if (a.short_class != b.short_class) return a.short_class;
  if (a.series != b.series) return a.series > b.series;
  return a.d_style && !b.d_style;
}

}  // namespace

DynkinType::DynkinType(std::vector<TypeComponent> cs) : components(std::move(cs)) {
  validate();
  std::sort(components.begin(), components.end(), display_before);
}

void DynkinType::validate() const {
  for (const auto& c : components) check_component(c);
}

int DynkinType::rank() const {
  int r = 0;
  for (const auto& c : components) r += c.rank;
  return r;
}

std::string DynkinType::str() const {
  if (components.empty()) return "-";
  std::string out;
  for (size_t i = 0; i < components.size();) {
    size_t j = i;
    while (j < components.size() && components[j] == components[i]) ++j;
    const auto& c = components[i];
    if (i) out += '+';
    if (j - i > 1) out += std::to_string(j - i);
    if (c.d_style) {
      out += "D3";
    } else {
      out += c.series;
      out += std::to_string(c.rank);
    }
    if (c.short_class) out += '\'';
    i = j;
  }
  return out;
}

DynkinType DynkinType::parse(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty() || t == "-" || t == "0") return DynkinType{};
  std::vector<TypeComponent> cs;
  size_t pos = 0;
  while (pos < t.size()) {
    size_t end = t.find('+', pos);
    if (end == std::string::npos) end = t.size();
    std::string part = t.substr(pos, end - pos);
    pos = end + 1;
    if (part.empty()) throw std::invalid_argument("empty type component");
    TypeComponent c;
    size_t i = 0;
    // optional multiplicity prefix: "3A1" = A1+A1+A1
    int mult = 1;
    if (std::isdigit(static_cast<unsigned char>(part[0]))) {
      size_t j = 0;
      while (j < part.size() && std::isdigit(static_cast<unsigned char>(part[j]))) ++j;
      if (j == part.size()) throw std::invalid_argument("type component without series");
      mult = std::stoi(part.substr(0, j));
      if (mult <= 0) throw std::invalid_argument("bad multiplicity");
      i = j;
    }
    c.series = static_cast<char>(std::toupper(static_cast<unsigned char>(part[i])));
    ++i;
    size_t j = i;
    while (j < part.size() && std::isdigit(static_cast<unsigned char>(part[j]))) ++j;
    if (j == i) throw std::invalid_argument("type component without rank");
    c.rank = std::stoi(part.substr(i, j - i));
    i = j;
    if (i < part.size() && part[i] == '\'') {
      c.short_class = true;
      ++i;
    }
    if (i != part.size()) throw std::invalid_argument("trailing characters in type: " + part);
    if (c.series == 'D' && c.rank == 3) {
      c.series = 'A';
      c.d_style = true;
    }
    for (int m = 0; m < mult; ++m) cs.push_back(c);
  }
  return DynkinType(std::move(cs));
}

// --- construction ---

namespace {

// Epsilon realization of the simple roots of one factor, plus the diagonal
// of the bilinear form on those epsilon coordinates (delta_ij for the
// classical series, 2*delta_ij for F4).
struct EpsBasis {
  std::vector<RatVec> simples;
  Rat diag = 1;
};

std::optional<EpsBasis> eps_basis(const TypeComponent& c) {
  EpsBasis b;
  int n = c.rank;
  auto unit = [&](int dim, int i, const Rat& v) {
    RatVec e(dim, Rat(0));
    e[i] = v;
    return e;
  };
  switch (c.series) {
    case 'A': {
      for (int i = 0; i < n; ++i) {
        RatVec e(n + 1, Rat(0));
        e[i] = 1;
        e[i + 1] = -1;
        b.simples.push_back(e);
      }
      return b;
    }
    case 'B':
    case 'C':
    case 'D': {
      for (int i = 0; i + 1 < n; ++i) {
        RatVec e(n, Rat(0));
        e[i] = 1;
        e[i + 1] = -1;
        b.simples.push_back(e);
      }
      if (c.series == 'B') b.simples.push_back(unit(n, n - 1, 1));
      if (c.series == 'C') b.simples.push_back(unit(n, n - 1, 2));
      if (c.series == 'D') {
        RatVec e(n, Rat(0));
        e[n - 2] = 1;
        e[n - 1] = 1;
        b.simples.push_back(e);
      }
      return b;
    }
    case 'F': {
      b.diag = 2;
      b.simples = {
          {0, 1, -1, 0},
          {0, 0, 1, -1},
          {0, 0, 0, 1},
          {Rat(1, 2), Rat(-1, 2), Rat(-1, 2), Rat(-1, 2)},
      };
      return b;
    }
    default:
      return std::nullopt;  // E series and G2 have no epsilon display
  }
}

// Integer Gram matrix of the simple roots of one factor under the fixed
// normalization (long roots: A/D/E 2, B 2, C 4, F4 4, G2 6).
std::vector<std::vector<long long>> simple_gram_block(const TypeComponent& c) {
  int n = c.rank;
  std::vector<std::vector<long long>> g(n, std::vector<long long>(n, 0));
  auto chain = [&](long long norm) {
    for (int i = 0; i < n; ++i) g[i][i] = norm;
    for (int i = 0; i + 1 < n; ++i) g[i][i + 1] = g[i + 1][i] = -norm / 2;
  };
  switch (c.series) {
    case 'A':
      chain(2);
      break;
    case 'B':
      chain(2);
      g[n - 1][n - 1] = 1;
      break;
    case 'C':
      chain(2);
      g[n - 1][n - 1] = 4;
      g[n - 2][n - 1] = g[n - 1][n - 2] = -2;
      break;
    case 'D':
      chain(2);
      g[n - 2][n - 1] = g[n - 1][n - 2] = 0;
      if (n >= 3) g[n - 3][n - 1] = g[n - 1][n - 3] = -1;
      break;
    case 'E': {
      // Bourbaki numbering: node 2 hangs off node 4 of the chain 1-3-4-5-6(-7-8).
      chain(2);
      for (int i = 0; i + 1 < n; ++i) g[i][i + 1] = g[i + 1][i] = 0;
      auto link = [&](int a, int bb) { g[a - 1][bb - 1] = g[bb - 1][a - 1] = -1; };
      link(1, 3);
      link(3, 4);
      link(2, 4);
      link(4, 5);
      link(5, 6);
      if (n >= 7) link(6, 7);
      if (n >= 8) link(7, 8);
      break;
    }
    case 'F':
      g = {{4, -2, 0, 0}, {-2, 4, -2, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
      break;
    case 'G':
      g = {{6, -3}, {-3, 2}};
      break;
    default:
      throw std::invalid_argument("unknown series");
  }
  return g;
}

struct CoordsLess {
  bool operator()(const Coords& a, const Coords& b) const { return a < b; }
};

}  // namespace

RootSystem RootSystem::build(const DynkinType& t) {
  if (t.empty()) throw std::invalid_argument("cannot build the zero root system");
  RootSystem s;
  s.type_ = t;
  s.rank_ = t.rank();
  if (s.rank_ > kMaxRank) throw std::invalid_argument("rank exceeds kMaxRank");

  // Block-diagonal Gram matrix of the simple roots.
  s.simple_gram_.assign(s.rank_ * s.rank_, 0);
  int off = 0;
  for (const auto& c : t.components) {
    auto block = simple_gram_block(c);
    for (int i = 0; i < c.rank; ++i)
      for (int j = 0; j < c.rank; ++j)
        s.simple_gram_[(off + i) * s.rank_ + (off + j)] = block[i][j];
    off += c.rank;
  }
  auto sg = [&](int i, int j) { return s.simple_gram_[i * s.rank_ + j]; };

  auto pair_form = [&](const Coords& a, const Coords& b) {
    long long v = 0;
    for (int i = 0; i < s.rank_; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < s.rank_; ++j)
        if (b[j]) v += static_cast<long long>(a[i]) * b[j] * sg(i, j);
    }
    return v;
  };

  // Close the simple roots under simple reflections.
  std::set<Coords, CoordsLess> seen;
  std::vector<Coords> queue;
  for (int i = 0; i < s.rank_; ++i) {
    Coords c{};
    c[i] = 1;
    seen.insert(c);
    queue.push_back(c);
  }
  while (!queue.empty()) {
    Coords v = queue.back();
    queue.pop_back();
    for (int i = 0; i < s.rank_; ++i) {
      Coords si{};
      si[i] = 1;
      long long num = 2 * pair_form(v, si);
      long long den = sg(i, i);
      Coords w = v;
      w[i] = static_cast<int16_t>(w[i] - num / den);
      if (seen.insert(w).second) queue.push_back(w);
    }
  }

  std::vector<Coords> pos;
  for (const auto& v : seen) {
    bool nonneg = true;
    for (int i = 0; i < s.rank_; ++i)
      if (v[i] < 0) nonneg = false;
    if (nonneg) pos.push_back(v);
  }
  auto height = [&](const Coords& v) {
    int h = 0;
    for (int i = 0; i < s.rank_; ++i) h += v[i];
    return h;
  };
  std::sort(pos.begin(), pos.end(), [&](const Coords& a, const Coords& b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  s.npos_ = static_cast<int>(pos.size());
  s.roots_ = pos;
  for (const auto& v : pos) {
    Coords m{};
    for (int i = 0; i < s.rank_; ++i) m[i] = static_cast<int16_t>(-v[i]);
    s.roots_.push_back(m);
  }
  int n = s.size();

  std::map<Coords, int> index;
  for (int i = 0; i < n; ++i) index[s.roots_[i]] = i;

  s.gram_.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.gram_[i * n + j] = pair_form(s.roots_[i], s.roots_[j]);
  s.max_norm2_ = 0;
  for (int i = 0; i < n; ++i) s.max_norm2_ = std::max(s.max_norm2_, s.gram_[i * n + i]);

  s.sum_.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Coords w{};
      bool zero = true;
      for (int k = 0; k < s.rank_; ++k) {
        w[k] = static_cast<int16_t>(s.roots_[i][k] + s.roots_[j][k]);
        if (w[k]) zero = false;
      }
      if (zero) {
        s.sum_[i * n + j] = kZero;
      } else {
        auto it = index.find(w);
        s.sum_[i * n + j] = static_cast<int16_t>(it == index.end() ? kNotRoot : it->second);
      }
    }

  // Fixed total order on roots: coordinate lex.
  s.by_rank_.resize(n);
  for (int i = 0; i < n; ++i) s.by_rank_[i] = i;
  std::sort(s.by_rank_.begin(), s.by_rank_.end(),
            [&](int a, int b) { return s.roots_[a] < s.roots_[b]; });
  s.rank_of_.resize(n);
  for (int r = 0; r < n; ++r) s.rank_of_[s.by_rank_[r]] = r;

  // Epsilon view for a single classical/F4 factor.
  if (t.simple()) {
    if (auto basis = eps_basis(t.components[0])) {
      s.eps_dim_ = static_cast<int>(basis->simples[0].size());
      s.eps_.resize(n, RatVec(s.eps_dim_, Rat(0)));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < s.rank_; ++k) {
          if (!s.roots_[i][k]) continue;
          for (int d = 0; d < s.eps_dim_; ++d)
            s.eps_[i][d] += Rat(s.roots_[i][k]) * basis->simples[k][d];
        }
    }
  }
  return s;
}

int RootSystem::index_of(const Coords& c) const {
  // The root list is small; a linear scan keeps the class free of an extra
  // index structure. Callers on hot paths use the sum table instead.
  for (int i = 0; i < size(); ++i)
    if (roots_[i] == c) return i;
  return -1;
}

Rat RootSystem::inner(const RatVec& omega, int j) const {
  Rat v = 0;
  for (int i = 0; i < rank_; ++i) {
    if (omega[i] == 0) continue;
    long long row = 0;
    for (int k = 0; k < rank_; ++k)
      if (roots_[j][k]) row += simple_gram_[i * rank_ + k] * roots_[j][k];
    v += omega[i] * row;
  }
  return v;
}

Rat RootSystem::eval_covector(const RatVec& h, int j) const {
  Rat v = 0;
  for (int i = 0; i < rank_; ++i)
    if (roots_[j][i]) v += h[i] * roots_[j][i];
  return v;
}

bool RootSystem::strongly_orthogonal(int i, int j) const {
  int n = size();
  return sum_[i * n + j] == kNotRoot && sum_[i * n + neg(j)] == kNotRoot;
}

bool RootSystem::set_less(const RootSet& a, const RootSet& b) const {
  size_t ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  for (int r = 0; r < size(); ++r) {
    int i = by_rank_[r];
    if (a[i] != b[i]) return a[i];  // the set holding the earlier root is smaller
  }
  return false;
}

// --- display and parsing ---

std::string RootSystem::root_name(int i) const {
  if (!has_eps()) {
    std::string out = "[";
    for (int k = 0; k < rank_; ++k) {
      if (k) out += ',';
      out += std::to_string(roots_[i][k]);
    }
    return out + "]";
  }
  const RatVec& e = eps_[i];
  bool halves = false;
  for (const auto& v : e)
    if (rat_den(v) != 1) halves = true;
  auto term = [](const Rat& coeff, int idx1, bool first) {
    std::string t;
    Int c = rat_num(coeff);
    if (c < 0)
      t += '-';
    else if (!first)
      t += '+';
    Int a = abs(c);
    if (a != 1) t += a.str();
    t += 'e';
    t += std::to_string(idx1);
    return t;
  };
  std::string body;
  bool first = true;
  for (size_t d = 0; d < e.size(); ++d) {
    Rat c = halves ? Rat(e[d] * 2) : e[d];
    if (c == 0) continue;
    body += term(c, static_cast<int>(d) + 1, first);
    first = false;
  }
  return halves ? "(" + body + ")/2" : body;
}

std::string RootSystem::set_name(const RootSet& s) const {
  std::string out = "{";
  bool first = true;
  for (int r = 0; r < size(); ++r) {
    int i = by_rank_[r];
    if (!s[i]) continue;
    if (!first) out += ", ";
    out += root_name(i);
    first = false;
  }
  return out + "}";
}

std::optional<int> RootSystem::parse_root(const std::string& text, std::string* err) const {
  auto fail = [&](const std::string& m) -> std::optional<int> {
    if (err) *err = m;
    return std::nullopt;
  };
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      t += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (t.empty()) return fail("empty root");

  if (t[0] == '[') {
    if (t.back() != ']') return fail("unterminated '['");
    Coords c{};
    int k = 0;
    size_t pos = 1;
    while (pos < t.size() - 1) {
      size_t end = t.find(',', pos);
      if (end == std::string::npos || end > t.size() - 1) end = t.size() - 1;
      if (k >= rank_) return fail("too many coordinates");
      try {
        c[k++] = static_cast<int16_t>(std::stoi(t.substr(pos, end - pos)));
      } catch (const std::exception&) {
        return fail("bad integer at position " + std::to_string(pos));
      }
      pos = end + 1;
    }
    if (k != rank_) return fail("expected " + std::to_string(rank_) + " coordinates");
    int idx = index_of(c);
    if (idx < 0) return fail(text + " is not a root of " + type_.str());
    return idx;
  }

  if (!has_eps()) return fail("epsilon syntax unavailable for " + type_.str() + "; use [..]");
  Rat scale = 1;
  std::string body = t;
  if (t.size() > 3 && t[0] == '(' && t.substr(t.size() - 3) == ")/2") {
    body = t.substr(1, t.size() - 4);
    scale = Rat(1, 2);
  }
  RatVec v(eps_dim_, Rat(0));
  size_t pos = 0;
  while (pos < body.size()) {
    int sign = 1;
    if (body[pos] == '+' || body[pos] == '-') {
      if (body[pos] == '-') sign = -1;
      ++pos;
    } else if (pos != 0) {
      return fail("expected '+' or '-' at position " + std::to_string(pos));
    }
    long long coeff = 1;
    size_t d0 = pos;
    while (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) ++pos;
    if (pos > d0) coeff = std::stoll(body.substr(d0, pos - d0));
    if (pos >= body.size() || body[pos] != 'e')
      return fail("expected 'e<index>' at position " + std::to_string(pos));
    ++pos;
    size_t i0 = pos;
    while (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) ++pos;
    if (pos == i0) return fail("missing epsilon index at position " + std::to_string(pos));
    int idx = std::stoi(body.substr(i0, pos - i0));
    if (idx < 1 || idx > eps_dim_)
      return fail("e" + std::to_string(idx) + " out of range for " + type_.str());
    v[idx - 1] += Rat(sign) * Rat(coeff) * scale;
  }
  for (int i = 0; i < size(); ++i)
    if (eps_[i] == v) return i;
  return fail(text + " is not a root of " + type_.str());
}

}  // namespace rootcone
