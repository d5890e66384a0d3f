#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ucslab/enumerate.hpp"
#include "ucslab/separation.hpp"
#include "ucslab/types.hpp"

namespace ucslab {

enum class FamilyClass { all, separated, weakly_separated };

FamilyClass family_class_from_name(const std::string& name);
std::string family_class_name(FamilyClass c);

struct FamilyClassSelector {
  FamilyClass kind;
  SeparationParams params;
};

/// Raised when a constant is requested over a class containing no family.
struct EmptyClassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstantReport {
  int n, k, l;
  FamilyClass kind;
  ExactFraction value;
  std::string witness;       // family text format
  Mask witness_s;
  std::uint64_t witness_cover;
  std::uint64_t witness_members;
  std::uint64_t families_scanned;  // families in the class
  ExactFraction conjectured;
  std::string verdict;  // "meets_bound" | "below_bound"
};

enum class Variant { standard, strong };

Variant variant_from_name(const std::string& name);
std::string variant_name(Variant v);

struct VerifyReport {
  int n, k, l;
  Variant variant;
  bool pass;
  bool vacuous;  // class empty: pass holds vacuously
  std::uint64_t families_scanned;
  ExactFraction bound;
  ExactFraction min_value;  // minimum attained best-cover fraction
  std::string min_witness;
  Mask min_witness_s;
  std::optional<std::string> counterexample;
  /// All k-set cover counts of the counterexample, ascending by mask.
  std::vector<std::pair<Mask, std::uint64_t>> counterexample_counts;
};

struct AuditFailure {
  std::string inequality;  // "superadditivity" | "product"
  int k, k2, l;
};

struct AuditReport {
  int max_k;
  std::vector<AuditFailure> failures;
  bool passed() const { return failures.empty(); }
};

struct DisjointSubfamilyResult {
  /// False when the disjoint members do not form a union-closed family on
  /// the remainder ground set (e.g. the full remainder set is missing).
  bool valid;
  std::optional<Family> family;  // re-grounded, elements compacted
  int remainder_n;
  /// Partition sizes at threshold l for the cover set s:
  /// |B| = members meeting s in >= l elements, |B'| = in 1..l-1 (empty
  /// when l = 1), |A'| = members disjoint from s.
  std::uint64_t size_b, size_b_prime, size_a_prime;
};

/// Members disjoint from s, re-grounded on the remainder.
DisjointSubfamilyResult derive_disjoint_subfamily(const Family& f, Mask s, int l = 1);

/// Members containing s with s removed, plus the empty set, re-grounded.
Family derive_quotient_subfamily(const Family& f, Mask s);

struct ClassifyRow {
  int k, l;
  std::uint64_t separated, weakly_separated, total;
};

/// Per (k, l) labeled class counts over all families on n elements.
std::vector<ClassifyRow> classify_all(int n);

/// Partial aggregate of a class scan, mergeable across partitions.
struct ScanPartial {
  std::uint64_t in_class = 0;  // words scanned and found in the class
  std::uint64_t labeled = 0;   // labeled families covered (orbit-weighted)
  bool has_min = false;
  std::uint64_t min_cover = 0, min_members = 1;
  FamilyWord min_witness = 0;
  Mask min_witness_s = 0;
  bool has_counterexample = false;
  FamilyWord counterexample = 0;
};

/// Scans a slice of the enumeration stream.  Words must be families on n
/// elements; class membership, best cover, and the conjectured-bound test
/// are evaluated with exact integer arithmetic.  `weights`, when non-empty,
/// must align with `words` and gives the number of labeled families each
/// word stands for (orbit sizes under canonical-representative scanning);
/// all scanned quantities are permutation-equivariant, so the extremal
/// value and the pass verdict are unchanged by the reduction.
ScanPartial scan_class(std::span<const FamilyWord> words, int n, FamilyClassSelector sel,
                       std::span<const std::uint64_t> weights = {});

/// Associative, commutative merge; witnesses resolve to the stream-order
/// least candidate so the result is independent of partition arrival order.
void merge_scan(ScanPartial& into, const ScanPartial& part);

/// Builds the report from a (fully merged) scan aggregate.
ConstantReport build_constant_report(int n, FamilyClassSelector sel, const ScanPartial& scan);
VerifyReport build_verify_report(int n, SeparationParams p, Variant variant,
                                 const ScanPartial& scan);

ConstantReport empirical_constant(int n, FamilyClassSelector sel);
VerifyReport verify_conjecture(int n, SeparationParams p, Variant variant);
AuditReport audit_binomial(int max_k);

struct ProofStepFinding {
  std::string which;  // "disjoint" | "quotient"
  int n, k, k2, l;
  std::string family;  // text format
  Mask s;
  std::string detail;
};

/// Theorem-style disjoint-subfamily check: for every family on n elements
/// in the (k + k_prime)|l separated class, removing the best-cover k-set S
/// must leave a union-closed family on the remainder that is k_prime|l
/// separated.  With sweep_all_s, every k-set is tried and any failing S is
/// reported as a finding.
std::vector<ProofStepFinding> check_disjoint_proof_step(int n, int k, int k_prime, int l,
                                                        bool sweep_all_s = false);

/// Quotient-subfamily check: for every family on n elements in the
/// (k + k_dprime)|(l + k_dprime) separated class and every k_dprime-set S
/// contained in at least |members| / 2^k_dprime members, the quotient must
/// be k|l separated.
std::vector<ProofStepFinding> check_quotient_proof_step(int n, int k, int k_dprime, int l);

}  // namespace ucslab
