#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "ucslab/enumerate.hpp"

using namespace ucslab;

namespace {

// Test-local oracle, independent of both production strategies: walk every
// subset of the proper nonempty subsets and keep the union-closed ones.
std::uint64_t brute_count(int n) {
  const int masks = 1 << n;
  std::uint64_t count = 0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << (masks - 2)); ++pick) {
    std::vector<Mask> members{0, static_cast<Mask>(masks - 1)};
    for (Mask m = 1; m < static_cast<Mask>(masks - 1); ++m)
      if (pick >> (m - 1) & 1) members.push_back(m);
    std::sort(members.begin(), members.end());
    bool closed = true;
    for (std::size_t i = 0; i < members.size() && closed; ++i)
      for (std::size_t j = i + 1; j < members.size() && closed; ++j)
        closed = std::binary_search(members.begin(), members.end(), members[i] | members[j]);
    if (closed) ++count;
  }
  return count;
}

Family relabel(const Family& f, const std::vector<int>& perm) {
  std::vector<Mask> members;
  for (Mask m : f.members()) {
    Mask out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (m >> i & 1) out |= Mask{1} << perm[i];
    members.push_back(out);
  }
  std::sort(members.begin(), members.end());
  return Family(f.ground(), std::move(members));
}

}  // namespace

TEST_CASE("labeled counts match the brute-force oracle") {
  CHECK(brute_count(1) == 1);
  CHECK(brute_count(2) == 4);
  CHECK(brute_count(3) == 45);
  for (int n = 1; n <= 3; ++n) {
    CHECK(enumerate_family_words(n, Strategy::recursive).size() == brute_count(n));
    CHECK(enumerate_family_words(n, Strategy::filter).size() == brute_count(n));
  }
}

TEST_CASE("strategies produce identical streams for n <= 4") {
  for (int n = 1; n <= 4; ++n)
    CHECK(enumerate_family_words(n, Strategy::recursive) ==
          enumerate_family_words(n, Strategy::filter));
}

TEST_CASE("stream order and soundness") {
  for (int n = 1; n <= 4; ++n) {
    const auto words = enumerate_family_words(n, Strategy::recursive);
    CHECK(std::is_sorted(words.begin(), words.end(), stream_order_less));
    CHECK(std::adjacent_find(words.begin(), words.end()) == words.end());
    for (FamilyWord w : words) {
      CHECK(word_is_union_closed(w, n));
      CHECK(is_union_closed(word_to_family(w, GroundSet(n)).members(), GroundSet(n)));
    }
  }
  // n=2 stream starts with the minimal family {empty, full}
  const auto two = enumerate_families(2, Strategy::recursive);
  CHECK(two.front().to_text() == "0,3");
  CHECK(two.size() == 4);
  CHECK(enumerate_families(1, Strategy::recursive).front().to_text() == "0,1");
}

TEST_CASE("word packing round-trips") {
  for (const Family& f : enumerate_families(3, Strategy::recursive))
    CHECK(word_to_family(family_to_word(f), GroundSet(3)) == f);
}

TEST_CASE("range checks") {
  CHECK_THROWS_AS(enumerate_family_words(0, Strategy::recursive), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_family_words(6, Strategy::recursive), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_family_words(5, Strategy::filter), std::invalid_argument);
  CHECK_THROWS_AS(strategy_from_name("nope"), std::invalid_argument);
}

TEST_CASE("canonical_form on known orbits") {
  const Family swapped(GroundSet(2), {0, 2, 3});
  const auto canon = canonical_form(swapped);
  CHECK(canon.representative.to_text() == "0,1,3");
  CHECK(canon.orbit_size == 2);

  for (int n = 1; n <= 5; ++n) {
    std::vector<Mask> members;
    for (Mask m = 0; m < (Mask{1} << n); ++m) members.push_back(m);
    const auto p = canonical_form(Family(GroundSet(n), std::move(members)));
    CHECK(p.orbit_size == 1);  // fully symmetric
  }

  const Family diamond(GroundSet(2), {0, 1, 2, 3});
  CHECK(canonical_form(diamond).representative == diamond);
  CHECK(canonical_form(diamond).orbit_size == 1);
}

TEST_CASE("canonical_form is idempotent and constant on orbits") {
  std::mt19937_64 rng(51);
  for (int n : {3, 4}) {
    const auto families = enumerate_families(n, Strategy::recursive);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int trial = 0; trial < 60; ++trial) {
      const Family& f = families[rng() % families.size()];
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto base = canonical_form(f);
      const auto moved = canonical_form(relabel(f, perm));
      CHECK(base.representative == moved.representative);
      CHECK(base.orbit_size == moved.orbit_size);
      CHECK(canonical_form(base.representative).representative == base.representative);
    }
  }
}

TEST_CASE("word-level canonicalization agrees with the generic scan") {
  for (int n = 1; n <= 4; ++n) {
    const PermutationTables pt(n);
    for (FamilyWord w : enumerate_family_words(n, Strategy::recursive)) {
      const auto generic = canonical_form(word_to_family(w, GroundSet(n)));
      CHECK(word_to_family(pt.canonicalize(w), GroundSet(n)) == generic.representative);
      CHECK(pt.orbit_size(w) == generic.orbit_size);
    }
  }
}

TEST_CASE("enumerate_canonical covers the labeled stream") {
  CHECK(enumerate_canonical(1).size() == 1);

  const auto two = enumerate_canonical(2);
  CHECK(two.size() == 3);
  std::multiset<std::uint64_t> orbits;
  std::uint64_t total = 0;
  for (const auto& c : two) {
    orbits.insert(c.orbit_size);
    total += c.orbit_size;
  }
  CHECK(orbits == std::multiset<std::uint64_t>{1, 1, 2});
  CHECK(total == 4);

  for (int n = 1; n <= 4; ++n) {
    std::uint64_t sum = 0;
    for (const auto& c : enumerate_canonical(n)) {
      sum += c.orbit_size;
      CHECK(canonical_form(c.representative).representative == c.representative);
    }
    CHECK(sum == enumerate_family_words(n, Strategy::recursive).size());
  }
}

TEST_CASE("orbit sizes divide n!") {
  const std::uint64_t factorial[] = {1, 1, 2, 6, 24, 120};
  for (int n = 1; n <= 4; ++n)
    for (const auto& c : enumerate_canonical(n)) CHECK(factorial[n] % c.orbit_size == 0);
}

TEST_CASE("partition_search covers the stream exactly") {
  for (int n = 2; n <= 4; ++n) {
    const auto whole = enumerate_family_words(n, Strategy::recursive);
    for (int parts : {1, 3, 4, 7}) {
      std::vector<FamilyWord> merged;
      for (const auto& cursor : partition_search(n, parts)) {
        const auto chunk = cursor.remaining();
        merged.insert(merged.end(), chunk.begin(), chunk.end());
      }
      std::sort(merged.begin(), merged.end(), stream_order_less);
      CHECK(merged == whole);
    }
  }
  CHECK_THROWS_AS(partition_search(3, 0), std::invalid_argument);
  // single part covers everything in stream order directly
  const auto solo = partition_search(3, 1).front().remaining();
  CHECK(solo == enumerate_family_words(3, Strategy::recursive));
}

TEST_CASE("partition works under the filter strategy too") {
  const auto whole = enumerate_family_words(3, Strategy::filter);
  std::vector<FamilyWord> merged;
  for (const auto& cursor : partition_search(3, 2, Strategy::filter)) {
    const auto chunk = cursor.remaining();
    merged.insert(merged.end(), chunk.begin(), chunk.end());
  }
  std::sort(merged.begin(), merged.end(), stream_order_less);
  CHECK(merged == whole);
}

TEST_CASE("cursor resume yields the exact suffix") {
  for (const auto& cursor : partition_search(3, 4)) {
    const auto full = cursor.remaining();
    for (std::size_t eaten : {std::size_t{0}, full.size() / 2, full.size()}) {
      EnumerationCursor resumed = cursor;
      resumed.consumed += eaten;
      const auto round = EnumerationCursor::deserialize(resumed.serialize());
      CHECK(round.serialize() == resumed.serialize());
      const auto suffix = round.remaining();
      CHECK(suffix == std::vector<FamilyWord>(full.begin() + eaten, full.end()));
    }
  }
}

TEST_CASE("cursor token validation") {
  CHECK_THROWS_AS(EnumerationCursor::deserialize("garbage"), std::invalid_argument);
  CHECK_THROWS_AS(EnumerationCursor::deserialize("ucslab-cursor v1;n=3"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      EnumerationCursor::deserialize(
          "ucslab-cursor v1;n=3;strategy=recursive;consumed=0;prefixes=01,2x"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      EnumerationCursor::deserialize(
          "ucslab-cursor v1;n=9;strategy=recursive;consumed=0;prefixes=."),
      std::invalid_argument);
}
