#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rootcone/conditions.hpp"

namespace rootcone {

// One representative of a class of symmetric closed subsystems under the
// full automorphism group of the ambient system.
struct ReductiveClass {
  RootSet roots;
  DynkinType type;
};

// All classes of symmetric closed subsystems, from the empty set up to the
// full system, produced by iterating extended-diagram substitutions and
// node deletions component by component and deduplicating up to ambient
// automorphism. Sorted by descending size, then type, then set order.
std::vector<ReductiveClass> enumerate_reductive_subalgebras(const RootSystem& s);

// All unions of k-modules that are valid nilpotent parts over the fixed
// reductive part k: free of opposite pairs, closed under root addition,
// and least in their orbit under the automorphisms preserving the positive
// part of k. With parabolic_filter set, keeps only unions whose
// intersection with the centralizer subsystem of k is the nilradical of a
// parabolic of that subsystem. The empty union is included. Sorted in the
// ambient set order.
std::vector<RootSet> enumerate_nilradicals(const RootSystem& s,
                                           const RootSet& k_roots,
                                           bool parabolic_filter = true);

// Outcome of classifying one (k, n) class.
struct ClassificationRecord {
  DynkinType ambient;
  DynkinType k_type;
  RootSet k_roots;
  std::vector<int> n_modules;  // lowest weights of the constituent modules
  RootSet n_roots;
  bool cone_holds = false;
  bool centralizer_holds = false;
  DynkinType levi_type;
  Verdict verdict = Verdict::InfiniteType;
  // Separator when the cone condition holds; search outcome when it fails
  // and the certificate search ran; absent otherwise.
  std::optional<Certificate> certificate;
  // Orders of the Weyl group of the centralizer subsystem, of the admissible
  // graph symmetries, and of the product group preserving the positive part
  // of k.
  unsigned long long w_inner = 1, w_graph = 1, w_full = 1;
};

struct KClassSummary {
  DynkinType k_type;
  DynkinType c_type;  // type of the centralizer subsystem of k
  unsigned long long w_inner = 1, w_graph = 1, w_full = 1;
  std::size_t total = 0, cone_holds = 0, cone_fails = 0, extension_needed = 0;
};

struct CensusSummary {
  DynkinType ambient;
  bool parabolic_filter = true;
  bool include_solvable = false;
  bool certificates = true;
  // The whole algebra g sits inside itself as the root subalgebra with
  // k = Delta(g) and empty nilpotent part; it is of finite type and whole-
  // algebra tallies normally count it, but run_census never emits it as a
  // record. summarize() therefore always adds it as one extra cone-holding
  // class (first per_k row), and this flag says so: when comparing against
  // an external count that is off by one, this convention is the first
  // thing to check.
  bool includes_full_algebra = true;
  std::size_t total = 0, cone_holds = 0, cone_fails = 0, extension_needed = 0;
  // Classes counted against inner symmetries only; differs from `total`
  // just when the ambient system has outer automorphisms (and they are
  // small enough to enumerate).
  std::size_t weyl_classes = 0;
  std::vector<KClassSummary> per_k;
};

struct CensusOptions {
  bool parabolic_filter = true;
  bool include_solvable = false;   // keep classes whose reductive part is h
  bool certificates = true;        // run the bounded certificate search
  bool large = false;              // required for E7 and E8
  bool assume_conjecture = false;  // required for E8 verdicts
  int threads = 1;
};

// Classify every (k, n) class of the given simple type. Classes with
// k = Delta(g) are excluded (the subalgebra would be g itself). Records are
// sorted by reductive class, then by nilpotent part in the ambient set
// order, independent of the thread count. Throws std::domain_error when
// type is E7/E8 without the large option or E8 without assume_conjecture,
// and std::invalid_argument when type is not simple.
std::pair<std::vector<ClassificationRecord>, CensusSummary> run_census(
    const DynkinType& type, const CensusOptions& opt = {});

// Recompute a summary from records (counts, per-k breakdown, inner-only
// class count). The option flags are echoed into the result.
CensusSummary summarize(const RootSystem& s,
                        const std::vector<ClassificationRecord>& records,
                        const CensusOptions& opt = {});

// The symmetry data of every reductive class: centralizer type and the
// orders of the graph part, the inner part, and their product.
struct SymmetryRow {
  DynkinType k_type;
  DynkinType c_type;
  unsigned long long w_graph = 1, w_inner = 1, w_full = 1;
};
std::vector<SymmetryRow> symmetry_table(const RootSystem& s);

// JSON form of one certificate with roots spelled by name; inverse of
// certificate_from_json. The inverse throws std::runtime_error on malformed
// input.
nlohmann::json certificate_json(const RootSystem& s, const Certificate& c);
Certificate certificate_from_json(const RootSystem& s, const nlohmann::json& j);

// Lossless, versioned JSON persistence. Loading rebuilds the ambient
// system, revalidates every record (subalgebra validity, canonicality,
// verdict consistency, certificate re-verification, summary counts) and
// throws std::runtime_error on schema mismatch or invariant violation.
void save_records(const std::string& path, const RootSystem& s,
                  const std::vector<ClassificationRecord>& records,
                  const CensusSummary& summary);

struct CensusFile {
  DynkinType ambient;
  CensusSummary summary;
  std::vector<ClassificationRecord> records;
};
CensusFile load_records(const std::string& path);

}  // namespace rootcone
