#pragma once

#include <cstdint>
#include <utility>

#include "ucslab/types.hpp"

namespace ucslab {

/// Sum of binomial coefficients C(k, l) + ... + C(k, k).  Requires
/// 0 <= l <= k <= 62 so the sum fits an unsigned 64-bit word.
std::uint64_t binomial_tail_sum(int k, int l);

/// The conjectured extremal fraction (sum_{i=l}^{k} C(k,i)) / 2^k, reduced.
ExactFraction conjecture_bound(SeparationParams p);

/// True iff for every choice of disjoint L, R with |L| = l, |R| = k - l,
/// some member contains all of L and avoids all of R.  False when n < k.
bool is_separated(const Family& f, SeparationParams p);

/// Weak variant: the member need only intersect L while avoiding R.
bool is_weakly_separated(const Family& f, SeparationParams p);

/// Number of members A with |A intersect s| >= l.
std::uint64_t cover_count(const Family& f, Mask s, int l);

/// The k-subset S of the ground set maximizing cover_count(f, S, l),
/// smallest mask on ties, together with its count.  Throws when n < k.
std::pair<Mask, std::uint64_t> best_cover(const Family& f, SeparationParams p);

/// Ground element belonging to the most members (smallest index on ties)
/// and its membership count.
std::pair<int, std::uint64_t> max_frequency(const Family& f);

}  // namespace ucslab
