#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rootcone/rational.hpp"

namespace rootcone {

// Hard caps sized for E8 (rank 8, 240 roots). Everything indexes into a
// fixed root list, so sets of roots are plain bitsets and maps over root
// pairs are flat arrays.
constexpr int kMaxRank = 8;
constexpr int kMaxRoots = 240;

using Coords = std::array<int16_t, kMaxRank>;  // simple-root coordinates, zero-padded
using RootSet = std::bitset<kMaxRoots>;
using Perm = std::vector<uint16_t>;  // permutation of the root list

// One simple factor of a (possibly reducible) root system type.
// short_class marks factors all of whose roots are short relative to a
// non-simply-laced ambient system (rendered with a prime: "A2'").
// d_style marks A3 factors of a B/D ambient that span only three
// coordinate lines (rendered "D3"); they are series A for every test that
// cares about the series.
struct TypeComponent {
  char series = 'A';  // 'A'..'G'
  int rank = 0;
  bool short_class = false;
  bool d_style = false;

  friend bool operator==(const TypeComponent&, const TypeComponent&) = default;
  friend auto operator<=>(const TypeComponent&, const TypeComponent&) = default;
};

// Multiset of simple factors, kept sorted so equality is structural.
// The empty list denotes the type of the zero subsystem.
struct DynkinType {
  std::vector<TypeComponent> components;

  DynkinType() = default;
  DynkinType(char series, int rank) : components{{series, rank}} { validate(); }
  explicit DynkinType(std::vector<TypeComponent> cs);

  // Accepts "F4", "A1+A1'", "D3+A1", "-" / "" (zero type). Rank bounds are
  // enforced (A>=1, B,C>=2, D>=4 unless written "D3", E in {6,7,8}, F=4, G=2).
  static DynkinType parse(const std::string& text);

  int rank() const;
  bool empty() const { return components.empty(); }
  bool simple() const { return components.size() == 1; }
  std::string str() const;  // "A2'+A1", "-" when empty

  friend bool operator==(const DynkinType&, const DynkinType&) = default;
  friend auto operator<=>(const DynkinType&, const DynkinType&) = default;

 private:
  void validate() const;
};

// A group of root-list permutations induced by linear isometries.
// `elements` is filled only when the order is small enough to store; the
// generators are always authoritative and `order` is exact either way.
struct SymmetryGroup {
  std::vector<Perm> gens;
  std::vector<Perm> elements;  // empty when not materialized
  unsigned long long order = 1;

  bool materialized() const { return !elements.empty(); }
};

// Return values of RootSystem::sum for pairs whose sum leaves the system.
constexpr int kNotRoot = -1;
constexpr int kZero = -2;

// Immutable combinatorial model of a finite crystallographic root system.
// Roots live in the simple-root basis with integer coordinates; the bilinear
// form is fixed per series so that every pairwise product is an integer:
// classical series use the standard Euclidean coordinates (so B has long
// roots of square 2 and short of square 1, C has short 2 and long 4), E
// series have all squares 2, F4 has 4/2 and G2 has 6/2.
//
// The root list is ordered: positive roots first (by increasing height,
// ties by coordinate lex order), then the negatives in the same order, so
// root(i + positive_count()) == -root(i).
class RootSystem {
 public:
  // `t` may be reducible; factors are placed in orthogonal blocks in the
  // order given. Epsilon-coordinate display is available when `t` is a
  // single classical or F4 factor.
  static RootSystem build(const DynkinType& t);

  const DynkinType& type() const { return type_; }
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(roots_.size()); }
  int positive_count() const { return npos_; }

  const Coords& root(int i) const { return roots_[i]; }
  bool is_positive(int i) const { return i < npos_; }
  int neg(int i) const { return i < npos_ ? i + npos_ : i - npos_; }

  // Index of a coordinate vector in the root list, -1 when not a root.
  int index_of(const Coords& c) const;

  // Index of root(i)+root(j), kNotRoot, or kZero.
  int sum(int i, int j) const { return sum_[i * size() + j]; }

  int64_t inner(int i, int j) const { return gram_[i * size() + j]; }
  int64_t norm2(int i) const { return inner(i, i); }
  bool long_root(int i) const { return norm2(i) == max_norm2_; }

  // <omega, root(j)> for a rational vector in simple-root coordinates.
  Rat inner(const RatVec& omega, int j) const;

  // Value of a covector on root(j): the plain dot product of the dual
  // coordinates with the root's simple-root coordinates. This is how LP
  // witnesses and separating functionals are evaluated.
  Rat eval_covector(const RatVec& h, int j) const;

  // Neither root(i)+root(j) nor root(i)-root(j) is a root or zero.
  bool strongly_orthogonal(int i, int j) const;

  // Position of root i in the fixed total order on roots (coordinate lex).
  // Induces the total order on equal-sized root sets used for canonical
  // forms: compare the sorted position sequences lexicographically.
  int rank_of(int i) const { return rank_of_[i]; }
  int root_at_rank(int r) const { return by_rank_[r]; }

  // a precedes b in the induced set order (sizes compared first).
  bool set_less(const RootSet& a, const RootSet& b) const;

  // --- display and parsing ---

  bool has_eps() const { return !eps_.empty(); }
  // Epsilon coordinates of root i (classical/F4 ambients only).
  const RatVec& eps(int i) const { return eps_[i]; }

  // "e1+e2", "2e1", "(e1-e2-e3-e4)/2", or "[1,0,1]" without an eps view.
  std::string root_name(int i) const;

  // Accepts both syntaxes above; case-insensitive, whitespace-tolerant.
  // On failure returns nullopt and, when err != nullptr, a message.
  std::optional<int> parse_root(const std::string& text, std::string* err = nullptr) const;

  std::string set_name(const RootSet& s) const;  // "{e1+e2, 2e1}"

  // --- symmetry ---

  // Weyl group (generated by simple reflections) and the full automorphism
  // group (Weyl extended by diagram automorphisms). Element lists are
  // materialized up to `materialize_limit` elements.
  const SymmetryGroup& weyl_group() const;
  const SymmetryGroup& automorphism_group() const;

  // Permutation of the root list induced by the reflection in root i.
  Perm reflection(int i) const;

  // True when the automorphism `p` lies in the Weyl group (decided by
  // walking p(positive system) back to the standard one).
  bool is_inner(const Perm& p) const;

  static constexpr unsigned long long materialize_limit = 200000;

 private:
  RootSystem() = default;

  DynkinType type_;
  int rank_ = 0;
  int npos_ = 0;
  int64_t max_norm2_ = 0;
  std::vector<Coords> roots_;
  std::vector<int16_t> sum_;       // size() * size()
  std::vector<int64_t> gram_;      // size() * size()
  std::vector<int64_t> simple_gram_;  // rank * rank
  std::vector<int> rank_of_, by_rank_;
  std::vector<RatVec> eps_;        // empty when no eps view
  int eps_dim_ = 0;
  mutable SymmetryGroup weyl_, aut_;
  mutable bool weyl_done_ = false, aut_done_ = false;

  friend struct RootSystemTestAccess;
};

// --- subsystem classification and restricted symmetry ---

// Dynkin type of a symmetric closed subset of s (closed: the sum of two
// members that is a root of s is again a member). Components are tagged
// short/d_style relative to the ambient as described on TypeComponent.
// Throws std::invalid_argument when the subset is not symmetric or closed.
DynkinType dynkin_type(const RootSystem& s, const RootSet& symmetric_closed);

// Simple basis of a symmetric closed subset: its positive members that are
// not sums of two positive members. Sorted by root index.
std::vector<int> simple_basis(const RootSystem& s, const RootSet& symmetric_closed);

// Orders of the standard Weyl / automorphism groups of a type.
unsigned long long weyl_order(const DynkinType& t);
unsigned long long diagram_automorphism_count(const DynkinType& t);

// The symmetry data used to deduplicate nilradical candidates for a fixed
// reductive part. Given Delta(k) and its centralizer subsystem Delta(C),
// * inner_part: the Weyl group of C acting on all of Delta(g);
// * graph_part: one representative automorphism of Delta(g) per admissible
//   basis symmetry: a part-preserving, product-preserving bijection of the
//   two simple bases paired with an ambient coset (Weyl or non-Weyl) that
//   realizes it. Among the realizations in a coset (they differ by maps
//   fixing both simple bases pointwise, possible only when the bases do not
//   span), determinant-one maps are preferred, then the one flipping the
//   fewest positive roots of Delta(g), ties by least permutation array; the
//   identity symmetry is thus represented by the identity map, and in the
//   rank-deficient cases the preference pins down which of two sign-related
//   nilpotent parts survives deduplication.
// * full: the product family {w ∘ u : w in inner_part, u in graph_part} of
//   order inner.order * graph.order. Deduplication compares a candidate
//   with its images under this family. It is a plain product of the two
//   parts, NOT a generated closure: closing it can re-introduce maps that
//   fix both simple bases pointwise yet move other roots, and such maps
//   merge candidates that are counted separately.
// full.elements is materialized when full.order <= materialize_limit.
struct RestrictedSymmetry {
  SymmetryGroup inner_part;  // W of the centralizer subsystem
  SymmetryGroup graph_part;  // admissible graph automorphisms
  SymmetryGroup full;
};

RestrictedSymmetry restricted_symmetry_group(const RootSystem& s,
                                             const RootSet& k_roots,
                                             const RootSet& c_roots);

// All isometric embeddings of the configuration `from` onto `to` that
// extend to automorphisms of Delta(g): the returned permutations p satisfy
// p(from[i]) = to[i]. Used for conjugacy tests and graph-automorphism
// extension. `limit` caps the number of returned extensions (0 = all).
std::vector<Perm> extend_isometry(const RootSystem& s,
                                  const std::vector<int>& from,
                                  const std::vector<int>& to,
                                  size_t limit = 0);

// Convenience: some automorphism of Delta(g) maps subsystem a onto
// subsystem b (as sets).
bool conjugate_subsystems(const RootSystem& s, const RootSet& a, const RootSet& b);

// Apply a root-list permutation to a set / compose permutations.
RootSet apply_perm(const Perm& p, const RootSet& s);
Perm compose(const Perm& a, const Perm& b);  // (a*b)(x) = a[b[x]]

// Least element of the orbit of x under g in the set order of s. Uses the
// materialized element list when present, otherwise walks the orbit from
// the generators (exact but potentially large).
RootSet canonical_min(const RootSystem& s, const SymmetryGroup& g, const RootSet& x);

// BFS closure of a generator list; materializes all elements while the
// count stays within `limit`, otherwise returns nullopt.
std::optional<std::vector<Perm>> close_generators(const std::vector<Perm>& gens,
                                                  size_t limit);

}  // namespace rootcone
