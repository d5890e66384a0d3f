#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucslab/types.hpp"

namespace ucslab {

inline constexpr int kMaxExhaustiveN = 5;
inline constexpr int kMaxCanonicalN = 8;

/// A family on n <= 6 elements packed as a bitset over the subset lattice:
/// bit j is set iff the subset with mask j is a member.
using FamilyWord = std::uint64_t;

enum class Strategy { recursive, filter };

Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

FamilyWord family_to_word(const Family& f);
Family word_to_family(FamilyWord w, GroundSet ground);

/// True iff the packed family contains 0 and the full mask and is closed
/// under pairwise union.
bool word_is_union_closed(FamilyWord w, int n);

/// Stream order: ascending member count, then lexicographic on the sorted
/// member sequence.
bool stream_order_less(FamilyWord a, FamilyWord b);

/// All union-closed families on n labeled elements in stream order.
/// The filter strategy tests every subset of the proper nonempty subsets;
/// the recursive strategy extends partial families in decreasing mask
/// order with union-forcing pruning.  Both yield identical streams.
std::vector<FamilyWord> enumerate_family_words(int n, Strategy strategy);
std::vector<Family> enumerate_families(int n, Strategy strategy);

struct CanonicalFamily {
  Family representative;
  std::uint64_t orbit_size;
};

/// Lexicographically minimal relabeling under all n! permutations, with
/// the orbit size n!/|stabilizer|.  Factorial scan, so n <= 8.
CanonicalFamily canonical_form(const Family& f);

/// One representative per isomorphism class, in stream order.
std::vector<CanonicalFamily> enumerate_canonical(int n);

/// Tables mapping each subset index to its image under every permutation
/// of the n ground elements, for word-level canonicalization.
class PermutationTables {
 public:
  explicit PermutationTables(int n);
  std::size_t count() const { return tables_.size(); }
  FamilyWord apply(std::size_t perm, FamilyWord w) const;
  /// Minimal permuted word (the canonical representative).
  FamilyWord canonicalize(FamilyWord w) const;
  /// n! / number of permutations fixing w.
  std::uint64_t orbit_size(FamilyWord w) const;

 private:
  int n_;
  std::vector<std::vector<std::uint8_t>> tables_;
};

/// A resumable position in the enumeration stream: a set of recursion-tree
/// branch prefixes plus the number of families already consumed.  Decision
/// index i covers the proper nonempty mask (2^n - 2 - i); a prefix bit 1
/// means "include".
struct EnumerationCursor {
  int n = 1;
  Strategy strategy = Strategy::recursive;
  std::vector<std::string> prefixes;  // "01"-style branch strings; "" = whole tree
  std::uint64_t consumed = 0;

  /// Families of this cursor's subtrees in stream order, minus `consumed`.
  std::vector<FamilyWord> remaining() const;

  std::string serialize() const;
  static EnumerationCursor deserialize(const std::string& token);
};

/// Splits the search tree into `parts` disjoint cursors whose streams
/// together contain every family exactly once.
std::vector<EnumerationCursor> partition_search(int n, int parts,
                                                Strategy strategy = Strategy::recursive);

}  // namespace ucslab
