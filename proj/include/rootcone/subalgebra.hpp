#pragma once

#include <optional>
#include <vector>

#include "rootcone/rootsystem.hpp"

namespace rootcone {

// A root subalgebra described by its root content: a reductive part k
// (symmetric, closed) and a nilpotent part n (closed, free of opposite
// pairs, stable under adding k-roots), disjoint from each other.
struct RootSubalgebra {
  const RootSystem* ambient = nullptr;
  RootSet k;      // symmetric and closed
  RootSet n;      // closed, n ∩ -n empty, k+n lands in n
  RootSet all;    // k | n
  RootSet k_pos;  // positive members of k

  const RootSystem& sys() const { return *ambient; }
};

// Closes the seeds (k under negation and addition, n under addition and
// under adding k-roots) and validates. Throws std::invalid_argument with
// "not a nilradical-type set" when the closed n meets -n, and with
// "seeds overlap" when the closed parts intersect.
RootSubalgebra make_subalgebra(const RootSystem& s, const RootSet& k_seed,
                               const RootSet& n_seed);

// Roots strongly orthogonal to every root of k: the root content of the
// centralizer of the reductive part.
RootSet centralizer_roots(const RootSystem& s, const RootSet& k);
RootSet centralizer_roots(const RootSubalgebra& l);

// A minimal nonempty block of roots outside k stable under adding k-roots:
// the weight support of one simple k-constituent of the ambient algebra.
// `highest` is the unique weight that no positive k-root raises to another
// root; `lowest` is the mirror under negative k-roots.
struct KModule {
  RootSet weights;
  int lowest = -1;
  int highest = -1;
};

// Partition of the roots outside k into KModules, ordered by the position
// of their lowest weights in the fixed root order.
std::vector<KModule> k_module_decomposition(const RootSystem& s, const RootSet& k);
std::vector<KModule> k_module_decomposition(const RootSubalgebra& l);

// Weights of the ambient-mod-l constituents that no positive k-root raises:
// {a outside k|n : a + d is not a root for every positive k-root d}. One
// per KModule lying outside l.
RootSet singular_weights(const RootSubalgebra& l);

// Decides whether n_part is the nilradical of a parabolic subalgebra of the
// subsystem `subset`: returns a rational covector h (in coordinates dual to
// the simple roots) with <b,h> >= 1 for all b in n_part and <a,h> <= 0 for
// every other member of subset, when one exists.
// Requires subset symmetric and closed, n_part a closed subset of it with
// no opposite pairs; throws std::invalid_argument otherwise.
std::optional<RatVec> parabolic_nilradical_test(const RootSystem& s,
                                                const RootSet& subset,
                                                const RootSet& n_part);

// Root data of the normalizer-of-n part of the centralizer of k.
// q_roots: centralizer roots whose raising action keeps the centralizer
// part of n inside n; levi_type: the type of q ∩ -q.
struct CentralizerDatum {
  RootSet c_roots;
  RootSet q_roots;
  DynkinType levi_type;
};

CentralizerDatum centralizer_normalizer_levi(const RootSubalgebra& l);

}  // namespace rootcone
