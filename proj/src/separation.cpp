#include "ucslab/separation.hpp"

#include <bit>

namespace ucslab {
namespace {

// Next k-subset mask in increasing numeric order (Gosper), or 0 past the end.
Mask next_subset_same_size(Mask v, Mask limit) {
  const Mask t = v | (v - 1);
  const Mask next = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  return next > limit ? 0 : next;
}

// Enumerates all size-k submasks of `universe` in increasing numeric order
// of the *expanded* mask by walking combinations of the universe's bit
// positions via a compact index mask.
class SubsetRange {
 public:
  SubsetRange(Mask universe, int k) : bits_(), k_(k) {
    for (int i = 0; i < 64; ++i)
      if (universe >> i & 1) bits_.push_back(i);
    done_ = k_ > static_cast<int>(bits_.size());
    compact_ = k_ == 0 ? 0 : (Mask{1} << k_) - 1;
  }

  bool done() const { return done_; }
  Mask current() const {
    Mask m = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (compact_ >> i & 1) m |= Mask{1} << bits_[i];
    return m;
  }
  void advance() {
    if (k_ == 0) {
      done_ = true;
      return;
    }
    const Mask limit = (bits_.size() == 64) ? ~Mask{0} : (Mask{1} << bits_.size()) - 1;
    compact_ = next_subset_same_size(compact_, limit);
    if (compact_ == 0) done_ = true;
  }

 private:
  std::vector<int> bits_;
  int k_;
  Mask compact_ = 0;
  bool done_ = false;
};

bool separated_impl(const Family& f, SeparationParams p, bool weak) {
  const int n = f.ground().n;
  if (n < p.k) return false;
  const Mask full = f.ground().full_mask();
  for (SubsetRange ls(full, p.l); !ls.done(); ls.advance()) {
    const Mask L = ls.current();
    for (SubsetRange rs(full & ~L, p.k - p.l); !rs.done(); rs.advance()) {
      const Mask R = rs.current();
      bool found = false;
      for (Mask a : f.members()) {
        if ((a & R) != 0) continue;
        if (weak ? (a & L) != 0 : (a & L) == L) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

std::uint64_t binomial_tail_sum(int k, int l) {
  if (l < 0 || k < l || k > 62)
    throw std::invalid_argument("binomial_tail_sum requires 0 <= l <= k <= 62");
  // Pascal row k; entries and their sum stay below 2^62.
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 1);
  for (int i = 1; i <= k; ++i)
    for (int j = i - 1; j >= 1; --j) row[j] += row[j - 1];
  std::uint64_t sum = 0;
  for (int i = l; i <= k; ++i) sum += row[i];
  return sum;
}

ExactFraction conjecture_bound(SeparationParams p) {
  if (p.k > 62) throw std::invalid_argument("conjecture_bound supports k <= 62");
  return ExactFraction(binomial_tail_sum(p.k, p.l), Mask{1} << p.k);
}

bool is_separated(const Family& f, SeparationParams p) {
  return separated_impl(f, p, /*weak=*/false);
}

bool is_weakly_separated(const Family& f, SeparationParams p) {
  return separated_impl(f, p, /*weak=*/true);
}

std::uint64_t cover_count(const Family& f, Mask s, int l) {
  if (!f.ground().fits(s)) throw std::invalid_argument("cover set exceeds ground set");
  if (l < 1) throw std::invalid_argument("cover threshold must be >= 1");
  std::uint64_t count = 0;
  for (Mask a : f.members())
    if (std::popcount(a & s) >= l) ++count;
  return count;
}

std::pair<Mask, std::uint64_t> best_cover(const Family& f, SeparationParams p) {
  if (f.ground().n < p.k)
    throw std::invalid_argument("best_cover requires k <= ground size");
  Mask best_s = 0;
  std::uint64_t best_count = 0;
  bool first = true;
  for (SubsetRange ss(f.ground().full_mask(), p.k); !ss.done(); ss.advance()) {
    const Mask s = ss.current();
    const std::uint64_t c = cover_count(f, s, p.l);
    if (first || c > best_count) {
      best_s = s;
      best_count = c;
      first = false;
    }
  }
  return {best_s, best_count};
}

std::pair<int, std::uint64_t> max_frequency(const Family& f) {
  int best = 0;
  std::uint64_t best_count = 0;
  for (int i = 0; i < f.ground().n; ++i) {
    std::uint64_t c = 0;
    for (Mask a : f.members())
      if (a >> i & 1) ++c;
    if (i == 0 || c > best_count) {
      best = i;
      best_count = c;
    }
  }
  return {best, best_count};
}

}  // namespace ucslab
