#pragma once

#include <optional>
#include <variant>

#include "rootcone/rational.hpp"

namespace rootcone {

// Feasibility problem over nonnegative variables:
//   eq  * x  =  eq_rhs
//   ge  * x  >= ge_rhs
//   x >= 0 componentwise.
// No objective: every caller only needs a feasible point or an
// infeasibility certificate. Strict inequalities are expressed by the
// callers as ">= 1" rows (the systems solved here are conic, so positive
// scaling is free and ">= 1" captures "> 0" exactly).
struct LpProblem {
  int num_vars = 0;
  RatMat eq;
  RatVec eq_rhs;
  RatMat ge;
  RatVec ge_rhs;
};

struct LpFeasible {
  RatVec x;  // witness, one value per variable, all >= 0
};

// Farkas certificate: one multiplier per row, eq rows first, then ge rows.
// Satisfies  y_ge >= 0,  sum_i y_i * row_i <= 0 componentwise,  and
// y . rhs > 0,  which makes the system above unsolvable.
struct LpInfeasible {
  RatVec farkas;
};

using LpOutcome = std::variant<LpFeasible, LpInfeasible>;

// Exact phase-1 simplex with Bland's rule; deterministic, always
// terminates. The returned witness/certificate is re-verified by exact
// substitution before being returned (internal_error on mismatch).
LpOutcome lp_feasible(const LpProblem& p);

// Exact solve of A x = b (A: m x n). Fraction-free elimination with row
// pivoting on the first nonzero entry of each column; when the solution
// space has positive dimension the free variables are set to zero.
// Returns nothing when the system is inconsistent.
std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b);

// Turns a Farkas certificate of the cone-intersection LP
//    sum_i a_i alpha_i - sum_j b_j beta_j = 0   (one row per coordinate)
//    sum_j b_j = 1
// into a separating functional h (coordinates in the dual basis of the
// coordinates used by the generators): h(beta) >= 1 on every strict
// generator, h(alpha) <= 0 on every nonstrict one. The certificate is the
// multiplier vector over the coordinate rows followed by the
// normalization row. Verified exactly; throws internal_error on failure.
RatVec farkas_to_separator(const RatVec& farkas,
                           const RatMat& strict_gens,
                           const RatMat& nonstrict_gens);

}  // namespace rootcone
