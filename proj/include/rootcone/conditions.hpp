#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "rootcone/rational.hpp"
#include "rootcone/rootsystem.hpp"
#include "rootcone/subalgebra.hpp"

namespace rootcone {

// A nonzero weight written simultaneously as a positive integer combination
// of singular weights (the alpha side) and of nilradical roots (the beta
// side): omega = sum a_i alpha_i = sum b_j beta_j. Such an equality is what
// drives every infinite-multiplicity construction in this library.
struct Relation {
  // (root index, multiplicity > 0), one entry per distinct root, ascending.
  std::vector<std::pair<int, long long>> alphas;
  std::vector<std::pair<int, long long>> betas;
  RatVec omega;  // common value, simple-root coordinates

  // Every alpha keeps n stable under bracketing (lies in the S-set below).
  bool two_sided = false;
  // Reduced form: multiplicities collected and no two betas sum to a root.
  bool minimal = false;

  long long length() const;  // sum of the alpha multiplicities

  friend bool operator==(const Relation&, const Relation&) = default;
};

// Proof that Cone(n) meets Cone(Sing) only at zero: a covector valued
// >= 1 on every root of n and <= 0 on every singular weight
// (evaluate with RootSystem::eval_covector).
struct ConeHolds {
  RatVec separator;
};

// Witness that the two cones share a nonzero vector.
struct ConeFails {
  Relation relation;
};

using ConeOutcome = std::variant<ConeHolds, ConeFails>;

// Decides whether the rational cones spanned by Delta(n) and by the
// singular weights of g/l intersect trivially. Exact: the returned
// separator or relation re-verifies by direct evaluation. Empty n gives
// ConeHolds with the zero covector.
ConeOutcome cone_condition(const RootSubalgebra& l);

// Levi factor of the normalizer-of-n inside the centralizer of k_ss,
// accepted when every simple constituent is of series A or C. Rank-two
// series B counts as C and "D3" constituents are already series A, so the
// relabelled small-rank coincidences are accepted.
std::pair<bool, DynkinType> centralizer_condition(const RootSubalgebra& l);

enum class Verdict { FiniteType, InfiniteType };

// Finite type iff both the cone and centralizer conditions hold. Over an
// ambient E8 the criterion is conjectural, so the call is refused with
// std::domain_error unless assume_conjecture is set.
Verdict classify(const RootSubalgebra& l, bool assume_conjecture = false);

// Singular weights alpha whose root space brackets n into itself:
// for every beta in n, alpha + beta is nonzero and either lies in n or is
// not a root. (alpha = -beta is excluded because that bracket lands in the
// Cartan subalgebra, never in n.) Relations built from these weights are
// two-sided.
RootSet compute_S(const RootSubalgebra& l);

// Writes omega as sum coeff_i * basis_i with pairwise strongly orthogonal
// basis roots drawn from n_roots and positive integer coefficients, if
// possible. Orthogonality forces coeff_i = <omega, basis_i>/|basis_i|^2,
// so the search only branches on the support. Deterministic: candidates
// are scanned in root-index order and the first complete decomposition
// wins. Returns nothing for omega = 0.
std::optional<std::pair<std::vector<int>, std::vector<long long>>>
strongly_orthogonal_decomposition(const RootSystem& s, const RatVec& omega,
                                  const RootSet& n_roots);

// True iff every alpha of the relation lies in compute_S(l).
bool is_two_sided(const RootSubalgebra& l, const Relation& rel);

// All relations of minimal length, in reduced form, deduplicated and
// sorted. Searches lengths in increasing order; for each candidate alpha
// multiset the beta side is found by bounded vector-partition enumeration
// (a covector positive on n caps every coefficient). Throws
// std::invalid_argument when the cone condition holds.
std::vector<Relation> minimal_relations(const RootSubalgebra& l);

// Certificate of infinite type stronger than a bare relation: the beta
// side is a strongly orthogonal decomposition and the relation is
// two-sided.
struct StrictlyInfinite {
  Relation relation;
  std::vector<int> orth_basis;
  std::vector<long long> coeffs;
};

// The bounded certificate search was exhausted without a hit; the verdict
// of classify() is unaffected, but exhibiting an explicit certificate
// needs arguments beyond this search. max_tuple_size records the cutoff
// that was reached.
struct ExtensionNeeded {
  int max_tuple_size = 0;
};

using Certificate = std::variant<ConeHolds, StrictlyInfinite, ExtensionNeeded>;

// Full certificate search: the separator when the cone condition holds,
// otherwise the first multiset of S-weights (graded lexicographic order,
// sizes 2 .. max(#S, rank)) whose sum admits a strongly orthogonal
// decomposition with respect to Delta(n).
Certificate find_certificate(const RootSubalgebra& l);

}  // namespace rootcone
