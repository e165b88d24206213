#include "rootcone/lp.hpp"

#include <algorithm>
#include <cassert>

namespace rootcone {

std::string rat_str(const Rat& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) s += "/" + rat_den(r).str();
  return s;
}

Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rat(num) / Rat(den);
}

std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b) {
  const size_t m = a.size();
  if (b.size() != m) throw std::invalid_argument("solve_linear: row/rhs mismatch");
  const size_t n = m == 0 ? 0 : a[0].size();

  // Clear denominators row by row, then run fraction-free elimination over Int.
  std::vector<std::vector<Int>> w(m, std::vector<Int>(n + 1));
  for (size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("solve_linear: ragged matrix");
    Int l = 1;
    for (size_t j = 0; j < n; ++j) l = lcm(l, rat_den(a[i][j]));
    l = lcm(l, rat_den(b[i]));
    for (size_t j = 0; j < n; ++j) w[i][j] = rat_num(a[i][j]) * (l / rat_den(a[i][j]));
    w[i][n] = rat_num(b[i]) * (l / rat_den(b[i]));
  }

  std::vector<std::pair<size_t, size_t>> pivots;  // (row, col)
  Int prev = 1;
  size_t r = 0;
  for (size_t col = 0; col < n && r < m; ++col) {
    size_t p = r;
    while (p < m && w[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(w[p], w[r]);
    const Int piv = w[r][col];
    for (size_t i = r + 1; i < m; ++i) {
      const Int f = w[i][col];
      w[i][col] = 0;
      for (size_t j = col + 1; j <= n; ++j)
        w[i][j] = (piv * w[i][j] - f * w[r][j]) / prev;  // exact (Sylvester identity)
    }
    prev = piv;
    pivots.emplace_back(r, col);
    ++r;
  }
  for (size_t i = r; i < m; ++i)
    if (w[i][n] != 0) return std::nullopt;

  RatVec x(n, Rat(0));  // free variables stay zero
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    auto [row, col] = *it;
    Rat acc(w[row][n]);
    for (size_t j = col + 1; j < n; ++j)
      if (x[j] != 0) acc -= Rat(w[row][j]) * x[j];
    x[col] = acc / Rat(w[row][col]);
  }
  return x;
}

namespace {

// Verifies an LP witness / certificate by exact substitution.
void verify_feasible(const LpProblem& p, const RatVec& x) {
  for (const Rat& v : x)
    if (v < 0) throw internal_error("lp witness has a negative coordinate");
  for (size_t i = 0; i < p.eq.size(); ++i) {
    Rat acc(0);
    for (int j = 0; j < p.num_vars; ++j) acc += p.eq[i][j] * x[j];
    if (acc != p.eq_rhs[i]) throw internal_error("lp witness violates an equality row");
  }
  for (size_t i = 0; i < p.ge.size(); ++i) {
    Rat acc(0);
    for (int j = 0; j < p.num_vars; ++j) acc += p.ge[i][j] * x[j];
    if (acc < p.ge_rhs[i]) throw internal_error("lp witness violates a >= row");
  }
}

void verify_infeasible(const LpProblem& p, const RatVec& y) {
  const size_t me = p.eq.size(), mg = p.ge.size();
  if (y.size() != me + mg) throw internal_error("farkas vector has wrong length");
  for (size_t i = 0; i < mg; ++i)
    if (y[me + i] < 0) throw internal_error("farkas multiplier of a >= row is negative");
  for (int j = 0; j < p.num_vars; ++j) {
    Rat acc(0);
    for (size_t i = 0; i < me; ++i) acc += y[i] * p.eq[i][j];
    for (size_t i = 0; i < mg; ++i) acc += y[me + i] * p.ge[i][j];
    if (acc > 0) throw internal_error("farkas combination is positive on a variable column");
  }
  Rat rhs(0);
  for (size_t i = 0; i < me; ++i) rhs += y[i] * p.eq_rhs[i];
  for (size_t i = 0; i < mg; ++i) rhs += y[me + i] * p.ge_rhs[i];
  if (rhs <= 0) throw internal_error("farkas combination has nonpositive rhs");
}

}  // namespace

LpOutcome lp_feasible(const LpProblem& p) {
  const int n = p.num_vars;
  const size_t me = p.eq.size(), mg = p.ge.size(), m = me + mg;

  // Columns: structural x (n), slacks (mg), artificials (m), rhs last.
  const int n_slack = static_cast<int>(mg);
  const int n_cols = n + n_slack + static_cast<int>(m);

  RatMat t(m, RatVec(n_cols + 1, Rat(0)));
  std::vector<int> sign(m, 1);
  for (size_t i = 0; i < m; ++i) {
    const RatVec& row = i < me ? p.eq[i] : p.ge[i - me];
    const Rat& rhs = i < me ? p.eq_rhs[i] : p.ge_rhs[i - me];
    if ((int)row.size() != n) throw std::invalid_argument("lp_feasible: ragged row");
    const bool flip = rhs < 0;
    sign[i] = flip ? -1 : 1;
    for (int j = 0; j < n; ++j) t[i][j] = flip ? -row[j] : row[j];
    if (i >= me) t[i][n + (i - me)] = Rat(flip ? 1 : -1);  // surplus
    t[i][n + n_slack + i] = 1;                             // artificial
    t[i][n_cols] = flip ? -rhs : rhs;
  }

  // Objective: minimize the sum of artificials. Reduced-cost row `obj`
  // carries -z in its last cell (textbook bottom-row convention).
  const int kEnterable = n + n_slack;  // artificials never re-enter
  RatVec obj(n_cols + 1, Rat(0));
  for (size_t i = 0; i < m; ++i) {
    for (int j = 0; j < kEnterable; ++j) obj[j] -= t[i][j];
    obj[n_cols] -= t[i][n_cols];
  }
  std::vector<int> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + n_slack + static_cast<int>(i);

  for (;;) {
    int q = -1;  // Bland: lowest-index improving column
    for (int j = 0; j < kEnterable; ++j)
      if (obj[j] < 0) { q = j; break; }
    if (q < 0) break;

    int pr = -1;
    Rat best;
    for (size_t i = 0; i < m; ++i) {
      if (t[i][q] <= 0) continue;
      Rat ratio = t[i][n_cols] / t[i][q];
      if (pr < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[pr]))  // Bland tie-break
        { pr = static_cast<int>(i); best = ratio; }
    }
    if (pr < 0) throw internal_error("phase-1 objective unbounded below");  // cannot happen

    const Rat piv = t[pr][q];
    for (int j = 0; j <= n_cols; ++j) t[pr][j] /= piv;
    for (size_t i = 0; i < m; ++i) {
      if ((int)i == pr || t[i][q] == 0) continue;
      const Rat f = t[i][q];
      for (int j = 0; j <= n_cols; ++j) t[i][j] -= f * t[pr][j];
    }
    if (obj[q] != 0) {
      const Rat f = obj[q];
      for (int j = 0; j <= n_cols; ++j) obj[j] -= f * t[pr][j];
    }
    basis[pr] = q;
  }

  const Rat z = -obj[n_cols];
  if (z == 0) {
    RatVec x(n, Rat(0));
    for (size_t i = 0; i < m; ++i)
      if (basis[i] < n) x[basis[i]] = t[i][n_cols];
    verify_feasible(p, x);
    return LpFeasible{std::move(x)};
  }

  // y_i = 1 - reduced_cost(artificial_i), then undo row sign flips.
  RatVec y(m);
  for (size_t i = 0; i < m; ++i)
    y[i] = (Rat(1) - obj[n + n_slack + i]) * sign[i];
  verify_infeasible(p, y);
  return LpInfeasible{std::move(y)};
}

RatVec farkas_to_separator(const RatVec& farkas,
                           const RatMat& strict_gens,
                           const RatMat& nonstrict_gens) {
  if (farkas.empty()) throw internal_error("empty farkas vector");
  const size_t d = farkas.size() - 1;
  const Rat scale = farkas[d];
  if (scale <= 0) throw internal_error("farkas normalization multiplier not positive");
  RatVec h(d);
  for (size_t c = 0; c < d; ++c) h[c] = farkas[c] / scale;

  auto eval = [&](const RatVec& v) {
    Rat acc(0);
    for (size_t c = 0; c < d && c < v.size(); ++c) acc += h[c] * v[c];
    return acc;
  };
  for (const auto& beta : strict_gens)
    if (eval(beta) < 1) throw internal_error("separator not >= 1 on a strict generator");
  for (const auto& alpha : nonstrict_gens)
    if (eval(alpha) > 0) throw internal_error("separator positive on a nonstrict generator");
  return h;
}

}  // namespace rootcone
