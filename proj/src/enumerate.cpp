#include "ucslab/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

namespace ucslab {
namespace {

void check_exhaustive_n(int n) {
  if (n < 1 || n > kMaxExhaustiveN)
    throw std::invalid_argument("exhaustive enumeration supports 1 <= n <= " +
                                std::to_string(kMaxExhaustiveN));
}

// Lexicographic order on the sorted member sequences of two equal-or-not
// families: the lowest differing subset index decides.
bool word_lex_less(FamilyWord a, FamilyWord b) {
  if (a == b) return false;
  const int j = std::countr_zero(a ^ b);
  return a >> j & 1;
}

int decision_count(int n) { return (1 << n) - 2; }

// Recursive strategy: decide each proper nonempty mask in decreasing mask
// order.  Including mask m is legal iff every union with an already-included
// member is already a member; excluding is always legal (a union equal to m
// would need both operands below m, which are undecided except the empty
// set).  Every leaf is therefore a valid family.  `prefix` forces the first
// branch decisions; an illegal forced include makes the subtree empty.
void recursive_enumerate(int n, const std::string& prefix,
                         const std::function<void(FamilyWord)>& sink) {
  const int total = decision_count(n);
  const FamilyWord base = FamilyWord{1} | (FamilyWord{1} << ((1 << n) - 1));

  std::function<void(FamilyWord, int)> dfs = [&](FamilyWord w, int idx) {
    if (idx == total) {
      sink(w);
      return;
    }
    const Mask m = static_cast<Mask>(total - idx);
    bool include_legal = true;
    for (FamilyWord rest = w; rest; rest &= rest - 1) {
      const int a = std::countr_zero(rest);
      const Mask u = m | static_cast<Mask>(a);
      if (u != m && !(w >> u & 1)) {
        include_legal = false;
        break;
      }
    }
    const int forced = idx < static_cast<int>(prefix.size()) ? prefix[idx] - '0' : -1;
    if (forced != 1) dfs(w, idx + 1);
    if (forced != 0 && include_legal) dfs(w | (FamilyWord{1} << m), idx + 1);
  };
  dfs(base, 0);
}

// Filter strategy: test every subset of the proper nonempty subsets.
// Candidate bit (m - 1) decides mask m, so decision index i reads candidate
// bit (total - 1 - i) and prefixes constrain high candidate bits.
void filter_enumerate(int n, const std::string& prefix,
                      const std::function<void(FamilyWord)>& sink) {
  const int total = decision_count(n);
  if (n > 4)
    throw std::invalid_argument(
        "filter strategy is limited to n <= 4 (use sampled spot-checks above)");
  const FamilyWord base = FamilyWord{1} | (FamilyWord{1} << ((1 << n) - 1));
  const std::uint64_t candidates = std::uint64_t{1} << total;
  for (std::uint64_t c = 0; c < candidates; ++c) {
    bool match = true;
    for (std::size_t i = 0; i < prefix.size(); ++i)
      if (((c >> (total - 1 - static_cast<int>(i))) & 1) != std::uint64_t(prefix[i] - '0')) {
        match = false;
        break;
      }
    if (!match) continue;
    const FamilyWord w = base | (c << 1);
    if (word_is_union_closed(w, n)) sink(w);
  }
}

std::vector<FamilyWord> collect(int n, Strategy strategy, const std::string& prefix) {
  std::vector<FamilyWord> out;
  auto sink = [&](FamilyWord w) { out.push_back(w); };
  if (strategy == Strategy::recursive)
    recursive_enumerate(n, prefix, sink);
  else
    filter_enumerate(n, prefix, sink);
  std::sort(out.begin(), out.end(), stream_order_less);
  return out;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return perms;
}

Mask permute_mask(Mask m, const std::vector<int>& perm) {
  Mask out = 0;
  for (Mask rest = m; rest; rest &= rest - 1)
    out |= Mask{1} << perm[std::countr_zero(rest)];
  return out;
}

}  // namespace

Strategy strategy_from_name(const std::string& name) {
  if (name == "recursive") return Strategy::recursive;
  if (name == "filter") return Strategy::filter;
  throw std::invalid_argument("unknown strategy: " + name);
}

std::string strategy_name(Strategy s) {
  return s == Strategy::recursive ? "recursive" : "filter";
}

FamilyWord family_to_word(const Family& f) {
  if (f.ground().n > 6)
    throw std::invalid_argument("family word packing requires n <= 6");
  FamilyWord w = 0;
  for (Mask m : f.members()) w |= FamilyWord{1} << m;
  return w;
}

Family word_to_family(FamilyWord w, GroundSet ground) {
  std::vector<Mask> members;
  for (FamilyWord rest = w; rest; rest &= rest - 1)
    members.push_back(static_cast<Mask>(std::countr_zero(rest)));
  return Family(ground, std::move(members));
}

bool word_is_union_closed(FamilyWord w, int n) {
  const Mask full = (Mask{1} << n) - 1;
  if (!(w & 1) || !(w >> full & 1)) return false;
  for (FamilyWord ra = w; ra; ra &= ra - 1) {
    const Mask a = static_cast<Mask>(std::countr_zero(ra));
    for (FamilyWord rb = ra & (ra - 1); rb; rb &= rb - 1) {
      const Mask b = static_cast<Mask>(std::countr_zero(rb));
      if (!(w >> (a | b) & 1)) return false;
    }
  }
  return true;
}

bool stream_order_less(FamilyWord a, FamilyWord b) {
  const int ca = std::popcount(a);
  const int cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  return word_lex_less(a, b);
}

std::vector<FamilyWord> enumerate_family_words(int n, Strategy strategy) {
  check_exhaustive_n(n);
  return collect(n, strategy, "");
}

std::vector<Family> enumerate_families(int n, Strategy strategy) {
  const auto words = enumerate_family_words(n, strategy);
  std::vector<Family> out;
  out.reserve(words.size());
  const GroundSet ground(n);
  for (FamilyWord w : words) out.push_back(word_to_family(w, ground));
  return out;
}

CanonicalFamily canonical_form(const Family& f) {
  const int n = f.ground().n;
  if (n > kMaxCanonicalN)
    throw std::invalid_argument("canonical_form factorial scan requires n <= " +
                                std::to_string(kMaxCanonicalN));
  const auto perms = all_permutations(n);
  std::vector<Mask> best = f.members();
  std::uint64_t stabilizer = 0;
  for (const auto& perm : perms) {
    std::vector<Mask> image;
    image.reserve(f.size());
    for (Mask m : f.members()) image.push_back(permute_mask(m, perm));
    std::sort(image.begin(), image.end());
    if (image == f.members()) ++stabilizer;
    if (image < best) best = std::move(image);
  }
  return CanonicalFamily{Family(f.ground(), std::move(best)),
                         perms.size() / stabilizer};
}

PermutationTables::PermutationTables(int n) : n_(n) {
  if (n > 6) throw std::invalid_argument("word permutation tables require n <= 6");
  const int subsets = 1 << n;
  for (const auto& perm : all_permutations(n)) {
    std::vector<std::uint8_t> table(subsets);
    for (int j = 0; j < subsets; ++j)
      table[j] = static_cast<std::uint8_t>(permute_mask(static_cast<Mask>(j), perm));
    tables_.push_back(std::move(table));
  }
}

FamilyWord PermutationTables::apply(std::size_t perm, FamilyWord w) const {
  const auto& table = tables_[perm];
  FamilyWord out = 0;
  for (FamilyWord rest = w; rest; rest &= rest - 1)
    out |= FamilyWord{1} << table[std::countr_zero(rest)];
  return out;
}

FamilyWord PermutationTables::canonicalize(FamilyWord w) const {
  FamilyWord best = w;
  for (std::size_t p = 1; p < tables_.size(); ++p) {
    const FamilyWord image = apply(p, w);
    if (word_lex_less(image, best)) best = image;
  }
  return best;
}

std::uint64_t PermutationTables::orbit_size(FamilyWord w) const {
  std::uint64_t stabilizer = 0;
  for (std::size_t p = 0; p < tables_.size(); ++p)
    if (apply(p, w) == w) ++stabilizer;
  return tables_.size() / stabilizer;
}

std::vector<CanonicalFamily> enumerate_canonical(int n) {
  check_exhaustive_n(n);
  const auto words = enumerate_family_words(n, Strategy::recursive);
  const PermutationTables pt(n);
  const GroundSet ground(n);
  std::vector<CanonicalFamily> out;
  for (FamilyWord w : words)
    if (pt.canonicalize(w) == w)
      out.push_back(CanonicalFamily{word_to_family(w, ground), pt.orbit_size(w)});
  return out;
}

std::vector<FamilyWord> EnumerationCursor::remaining() const {
  check_exhaustive_n(n);
  std::vector<FamilyWord> all;
  for (const auto& prefix : prefixes) {
    auto part = collect(n, strategy, prefix);
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end(), stream_order_less);
  if (consumed >= all.size()) return {};
  all.erase(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(consumed));
  return all;
}

std::string EnumerationCursor::serialize() const {
  std::string out = "ucslab-cursor v1;n=" + std::to_string(n) +
                    ";strategy=" + strategy_name(strategy) +
                    ";consumed=" + std::to_string(consumed) + ";prefixes=";
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    if (i) out += ',';
    out += prefixes[i].empty() ? "." : prefixes[i];
  }
  return out;
}

EnumerationCursor EnumerationCursor::deserialize(const std::string& token) {
  const std::string magic = "ucslab-cursor v1;";
  if (token.rfind(magic, 0) != 0)
    throw std::invalid_argument("bad cursor token header");
  EnumerationCursor cur;
  cur.prefixes.clear();
  std::stringstream ss(token.substr(magic.size()));
  std::string field;
  bool saw_n = false, saw_strategy = false, saw_consumed = false, saw_prefixes = false;
  while (std::getline(ss, field, ';')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad cursor field: " + field);
    const std::string key = field.substr(0, eq);
    const std::string val = field.substr(eq + 1);
    if (key == "n") {
      cur.n = std::stoi(val);
      saw_n = true;
    } else if (key == "strategy") {
      cur.strategy = strategy_from_name(val);
      saw_strategy = true;
    } else if (key == "consumed") {
      cur.consumed = std::stoull(val);
      saw_consumed = true;
    } else if (key == "prefixes") {
      saw_prefixes = true;
      std::stringstream ps(val);
      std::string p;
      while (std::getline(ps, p, ',')) {
        if (p == ".") p.clear();
        for (char ch : p)
          if (ch != '0' && ch != '1')
            throw std::invalid_argument("bad cursor prefix: " + p);
        cur.prefixes.push_back(p);
      }
    } else {
      throw std::invalid_argument("unknown cursor field: " + key);
    }
  }
  if (!saw_n || !saw_strategy || !saw_consumed || !saw_prefixes)
    throw std::invalid_argument("incomplete cursor token");
  check_exhaustive_n(cur.n);
  return cur;
}

std::vector<EnumerationCursor> partition_search(int n, int parts, Strategy strategy) {
  check_exhaustive_n(n);
  if (parts < 1) throw std::invalid_argument("parts must be >= 1");

  int depth = 0;
  while ((1 << depth) < 4 * parts && depth < decision_count(n)) ++depth;

  std::vector<EnumerationCursor> cursors(parts);
  for (int i = 0; i < parts; ++i) {
    cursors[i].n = n;
    cursors[i].strategy = strategy;
  }
  for (int node = 0; node < (1 << depth); ++node) {
    std::string prefix(depth, '0');
    for (int b = 0; b < depth; ++b)
      if (node >> (depth - 1 - b) & 1) prefix[b] = '1';
    cursors[node % parts].prefixes.push_back(prefix);
  }
  return cursors;
}

}  // namespace ucslab
