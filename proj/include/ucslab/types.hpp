#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucslab {

/// A subset of the ground set, one bit per element.
using Mask = std::uint64_t;

inline constexpr int kDefaultMaxGroundSize = 16;
inline constexpr int kHardMaxGroundSize = 64;

/// Ground set {0, ..., n-1}.
struct GroundSet {
  int n;

  explicit GroundSet(int size, int max_size = kDefaultMaxGroundSize) : n(size) {
    if (max_size > kHardMaxGroundSize) max_size = kHardMaxGroundSize;
    if (n < 1 || n > max_size)
      throw std::invalid_argument("ground set size out of range: " + std::to_string(n));
  }

  Mask full_mask() const {
    return n == kHardMaxGroundSize ? ~Mask{0} : (Mask{1} << n) - 1;
  }
  bool fits(Mask m) const { return (m & ~full_mask()) == 0; }

  bool operator==(const GroundSet&) const = default;
};

/// The pair (k, l) with k >= l >= 1.
struct SeparationParams {
  int k;
  int l;

  SeparationParams(int k_, int l_) : k(k_), l(l_) {
    if (l < 1 || k < l)
      throw std::invalid_argument("separation params require k >= l >= 1");
  }
};

/// Non-negative rational, stored reduced.  All comparisons cross-multiply
/// in 128-bit integers; no floating point anywhere in a decision path.
struct ExactFraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  ExactFraction() = default;
  ExactFraction(std::uint64_t n_, std::uint64_t d_) : num(n_), den(d_) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  friend bool operator==(const ExactFraction& a, const ExactFraction& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const ExactFraction& a, const ExactFraction& b) {
    const unsigned __int128 lhs = static_cast<unsigned __int128>(a.num) * b.den;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// A union-closed family: sorted distinct member masks, always containing
/// the empty mask and the full mask, closed under pairwise union.
class Family {
 public:
  /// Validates all invariants; throws std::invalid_argument on violation.
  Family(GroundSet ground, std::vector<Mask> members);

  const GroundSet& ground() const { return ground_; }
  const std::vector<Mask>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Mask m) const;

  /// Comma-separated decimal member masks, ascending, e.g. "0,1,3".
  std::string to_text() const;
  /// Parses the text format; hex masks accepted with a 0x prefix.
  static Family from_text(const std::string& line, GroundSet ground);

  bool operator==(const Family&) const = default;

 private:
  GroundSet ground_;
  std::vector<Mask> members_;
};

/// Smallest union-closed family containing the seeds plus {empty, full}.
Family union_closure(const std::vector<Mask>& seed_sets, GroundSet ground);

/// True iff the sorted, deduplicated mask list is a union-closed family
/// containing the empty and full masks.  Pure predicate, never throws.
bool is_union_closed(const std::vector<Mask>& members, GroundSet ground);

}  // namespace ucslab
