#include "ucslab/analysis.hpp"

#include <algorithm>
#include <bit>

namespace ucslab {
namespace {

// Word-level predicate tables for one (n, k, l).  Each separation pair
// (L, R) gets the bitset of subsets that would witness it; a family word w
// satisfies the pair iff (w & witnesses) != 0.  Each k-set S gets the
// bitset of subsets meeting it in >= l elements, so cover counts are a
// single popcount.
struct ClassTables {
  int n, k, l;
  std::uint64_t tail;  // sum_{i=l}^{k} C(k,i)
  std::vector<FamilyWord> strong_pairs, weak_pairs;
  std::vector<std::pair<Mask, FamilyWord>> cover;  // k-sets ascending

  ClassTables(int n_, SeparationParams p) : n(n_), k(p.k), l(p.l) {
    tail = binomial_tail_sum(k, l);
    const int subsets = 1 << n;
    const Mask full = static_cast<Mask>(subsets - 1);
    for (Mask L = 0; L <= full; ++L) {
      if (std::popcount(L) != l) continue;
      for (Mask R = 0; R <= full; ++R) {
        if ((R & L) || std::popcount(R) != k - l) continue;
        FamilyWord strong = 0, weak = 0;
        for (int a = 0; a < subsets; ++a) {
          const Mask A = static_cast<Mask>(a);
          if (A & R) continue;
          if ((A & L) == L) strong |= FamilyWord{1} << a;
          if (A & L) weak |= FamilyWord{1} << a;
        }
        strong_pairs.push_back(strong);
        weak_pairs.push_back(weak);
      }
    }
    for (Mask S = 0; S <= full; ++S) {
      if (std::popcount(S) != k) continue;
      FamilyWord qual = 0;
      for (int a = 0; a < subsets; ++a)
        if (std::popcount(static_cast<Mask>(a) & S) >= l) qual |= FamilyWord{1} << a;
      cover.emplace_back(S, qual);
    }
  }

  bool in_class(FamilyWord w, FamilyClass kind) const {
    if (kind == FamilyClass::all) return true;
    const auto& pairs = kind == FamilyClass::separated ? strong_pairs : weak_pairs;
    for (FamilyWord q : pairs)
      if (!(w & q)) return false;
    return true;
  }

  // (S, count) maximizing the cover count, smallest mask on ties.
  std::pair<Mask, std::uint64_t> best(FamilyWord w) const {
    Mask best_s = cover.front().first;
    std::uint64_t best_count = 0;
    bool first = true;
    for (const auto& [s, qual] : cover) {
      const std::uint64_t c = static_cast<std::uint64_t>(std::popcount(w & qual));
      if (first || c > best_count) {
        best_s = s;
        best_count = c;
        first = false;
      }
    }
    return {best_s, best_count};
  }
};

void require_scan_params(int n, SeparationParams p) {
  if (n < 1 || n > kMaxExhaustiveN)
    throw std::invalid_argument("class scans support 1 <= n <= 5");
  if (p.k > n) throw std::invalid_argument("class scans require k <= n");
}

// count_a / members_a < count_b / members_b, exactly.
bool fraction_less(std::uint64_t ca, std::uint64_t ma, std::uint64_t cb, std::uint64_t mb) {
  return ca * mb < cb * ma;
}

Mask compact_mask(Mask m, Mask keep) {
  Mask out = 0;
  int j = 0;
  for (Mask rest = keep; rest; rest &= rest - 1) {
    if (m >> std::countr_zero(rest) & 1) out |= Mask{1} << j;
    ++j;
  }
  return out;
}

}  // namespace

FamilyClass family_class_from_name(const std::string& name) {
  if (name == "all") return FamilyClass::all;
  if (name == "separated") return FamilyClass::separated;
  if (name == "weakly_separated" || name == "weak") return FamilyClass::weakly_separated;
  throw std::invalid_argument("unknown family class: " + name);
}

std::string family_class_name(FamilyClass c) {
  switch (c) {
    case FamilyClass::all: return "all";
    case FamilyClass::separated: return "separated";
    default: return "weakly_separated";
  }
}

Variant variant_from_name(const std::string& name) {
  if (name == "standard") return Variant::standard;
  if (name == "strong") return Variant::strong;
  throw std::invalid_argument("unknown variant: " + name);
}

std::string variant_name(Variant v) {
  return v == Variant::standard ? "standard" : "strong";
}

ScanPartial scan_class(std::span<const FamilyWord> words, int n, FamilyClassSelector sel,
                       std::span<const std::uint64_t> weights) {
  require_scan_params(n, sel.params);
  if (!weights.empty() && weights.size() != words.size())
    throw std::invalid_argument("weights must align with words");
  const ClassTables tables(n, sel.params);
  const std::uint64_t pow2k = std::uint64_t{1} << sel.params.k;
  ScanPartial out;
  for (std::size_t idx = 0; idx < words.size(); ++idx) {
    const FamilyWord w = words[idx];
    if (!tables.in_class(w, sel.kind)) continue;
    ++out.in_class;
    out.labeled += weights.empty() ? 1 : weights[idx];
    const auto [s, count] = tables.best(w);
    const auto members = static_cast<std::uint64_t>(std::popcount(w));
    if (!out.has_min || fraction_less(count, members, out.min_cover, out.min_members)) {
      out.has_min = true;
      out.min_cover = count;
      out.min_members = members;
      out.min_witness = w;
      out.min_witness_s = s;
    }
    if (count * pow2k < members * tables.tail && !out.has_counterexample) {
      out.has_counterexample = true;
      out.counterexample = w;
    }
  }
  return out;
}

void merge_scan(ScanPartial& into, const ScanPartial& part) {
  into.in_class += part.in_class;
  into.labeled += part.labeled;
  if (part.has_min) {
    const bool replace =
        !into.has_min ||
        fraction_less(part.min_cover, part.min_members, into.min_cover, into.min_members) ||
        (!fraction_less(into.min_cover, into.min_members, part.min_cover, part.min_members) &&
         stream_order_less(part.min_witness, into.min_witness));
    if (replace) {
      into.has_min = true;
      into.min_cover = part.min_cover;
      into.min_members = part.min_members;
      into.min_witness = part.min_witness;
      into.min_witness_s = part.min_witness_s;
    }
  }
  if (part.has_counterexample &&
      (!into.has_counterexample || stream_order_less(part.counterexample, into.counterexample))) {
    into.has_counterexample = true;
    into.counterexample = part.counterexample;
  }
}

ConstantReport build_constant_report(int n, FamilyClassSelector sel, const ScanPartial& scan) {
  if (scan.in_class == 0)
    throw EmptyClassError("no family on n=" + std::to_string(n) + " in class " +
                          family_class_name(sel.kind));
  ConstantReport report{
      .n = n,
      .k = sel.params.k,
      .l = sel.params.l,
      .kind = sel.kind,
      .value = ExactFraction(scan.min_cover, scan.min_members),
      .witness = word_to_family(scan.min_witness, GroundSet(n)).to_text(),
      .witness_s = scan.min_witness_s,
      .witness_cover = scan.min_cover,
      .witness_members = scan.min_members,
      .families_scanned = scan.labeled,
      .conjectured = conjecture_bound(sel.params),
      .verdict = "",
  };
  report.verdict = report.value < report.conjectured ? "below_bound" : "meets_bound";
  return report;
}

VerifyReport build_verify_report(int n, SeparationParams p, Variant variant,
                                 const ScanPartial& scan) {
  VerifyReport report{
      .n = n,
      .k = p.k,
      .l = p.l,
      .variant = variant,
      .pass = !scan.has_counterexample,
      .vacuous = scan.in_class == 0,
      .families_scanned = scan.labeled,
      .bound = conjecture_bound(p),
      .min_value = ExactFraction(0, 1),
      .min_witness = "",
      .min_witness_s = 0,
      .counterexample = std::nullopt,
      .counterexample_counts = {},
  };
  if (scan.has_min) {
    report.min_value = ExactFraction(scan.min_cover, scan.min_members);
    report.min_witness = word_to_family(scan.min_witness, GroundSet(n)).to_text();
    report.min_witness_s = scan.min_witness_s;
  }
  if (scan.has_counterexample) {
    const Family f = word_to_family(scan.counterexample, GroundSet(n));
    report.counterexample = f.to_text();
    const ClassTables tables(n, p);
    for (const auto& [s, qual] : tables.cover)
      report.counterexample_counts.emplace_back(
          s, static_cast<std::uint64_t>(std::popcount(scan.counterexample & qual)));
  }
  return report;
}

ConstantReport empirical_constant(int n, FamilyClassSelector sel) {
  require_scan_params(n, sel.params);
  const auto words = enumerate_family_words(n, Strategy::recursive);
  return build_constant_report(n, sel, scan_class(words, n, sel));
}

VerifyReport verify_conjecture(int n, SeparationParams p, Variant variant) {
  require_scan_params(n, p);
  const FamilyClassSelector sel{
      variant == Variant::standard ? FamilyClass::separated : FamilyClass::weakly_separated, p};
  const auto words = enumerate_family_words(n, Strategy::recursive);
  return build_verify_report(n, p, variant, scan_class(words, n, sel));
}

AuditReport audit_binomial(int max_k) {
  if (max_k < 1 || max_k > 30)
    throw std::invalid_argument("audit supports 1 <= max_k <= 30");
  AuditReport report{.max_k = max_k, .failures = {}};

  // Superadditivity, denominators cleared by 2^(k+k2):
  //   S(k+k2,l) >= S(k,l)*2^k2 + S(k2,l)*2^k - S(k,l)*S(k2,l)
  for (int k = 1; k <= max_k; ++k)
    for (int k2 = 1; k2 <= max_k; ++k2)
      for (int l = 1; l <= std::min(k, k2); ++l) {
        const std::uint64_t a = binomial_tail_sum(k, l);
        const std::uint64_t b = binomial_tail_sum(k2, l);
        const std::uint64_t c = binomial_tail_sum(k + k2, l);
        const unsigned __int128 rhs = (static_cast<unsigned __int128>(a) << k2) +
                                      (static_cast<unsigned __int128>(b) << k) -
                                      static_cast<unsigned __int128>(a) * b;
        if (static_cast<unsigned __int128>(c) < rhs)
          report.failures.push_back({"superadditivity", k, k2, l});
      }

  // Product form, denominators cleared by 2^(k2+k): S(k2+k,l) >= S(k,l).
  for (int k2 = 1; k2 <= max_k; ++k2)
    for (int k = 1; k <= max_k; ++k)
      for (int l = 1; l <= k; ++l)
        if (binomial_tail_sum(k2 + k, l) < binomial_tail_sum(k, l))
          report.failures.push_back({"product", k, k2, l});

  return report;
}

DisjointSubfamilyResult derive_disjoint_subfamily(const Family& f, Mask s, int l) {
  if (!f.ground().fits(s)) throw std::invalid_argument("s exceeds ground set");
  if (l < 1) throw std::invalid_argument("partition threshold must be >= 1");
  const Mask remainder = f.ground().full_mask() & ~s;
  DisjointSubfamilyResult res{
      .valid = false,
      .family = std::nullopt,
      .remainder_n = std::popcount(remainder),
      .size_b = 0,
      .size_b_prime = 0,
      .size_a_prime = 0,
  };
  std::vector<Mask> kept;
  for (Mask a : f.members()) {
    const int hit = std::popcount(a & s);
    if (hit >= l)
      ++res.size_b;
    else if (hit >= 1)
      ++res.size_b_prime;
    else {
      ++res.size_a_prime;
      kept.push_back(compact_mask(a, remainder));
    }
  }
  if (res.size_b + res.size_b_prime + res.size_a_prime != f.size())
    throw std::logic_error("partition does not cover the family");
  if (res.remainder_n >= 1) {
    std::sort(kept.begin(), kept.end());
    const GroundSet ground(res.remainder_n);
    if (is_union_closed(kept, ground)) {
      res.valid = true;
      res.family = Family(ground, std::move(kept));
    }
  }
  return res;
}

Family derive_quotient_subfamily(const Family& f, Mask s) {
  if (!f.ground().fits(s)) throw std::invalid_argument("s exceeds ground set");
  const Mask remainder = f.ground().full_mask() & ~s;
  const int remainder_n = std::popcount(remainder);
  if (remainder_n < 1)
    throw std::invalid_argument("quotient remainder ground set is empty");
  std::vector<Mask> members{0};
  for (Mask a : f.members())
    if ((a & s) == s) members.push_back(compact_mask(a, remainder));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Family(GroundSet(remainder_n), std::move(members));
}

std::vector<ClassifyRow> classify_all(int n) {
  if (n < 1 || n > kMaxExhaustiveN)
    throw std::invalid_argument("classify_all supports 1 <= n <= 5");
  const auto words = enumerate_family_words(n, Strategy::recursive);
  std::vector<ClassifyRow> rows;
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= k; ++l) {
      const ClassTables tables(n, SeparationParams(k, l));
      ClassifyRow row{.k = k, .l = l, .separated = 0, .weakly_separated = 0,
                      .total = words.size()};
      for (FamilyWord w : words) {
        if (tables.in_class(w, FamilyClass::separated)) ++row.separated;
        if (tables.in_class(w, FamilyClass::weakly_separated)) ++row.weakly_separated;
      }
      rows.push_back(row);
    }
  return rows;
}

std::vector<ProofStepFinding> check_disjoint_proof_step(int n, int k, int k_prime, int l,
                                                        bool sweep_all_s) {
  const SeparationParams whole(k + k_prime, l);
  const SeparationParams inner(k, l);
  const SeparationParams rest(k_prime, l);
  require_scan_params(n, whole);
  if (k < l || k_prime < l) throw std::invalid_argument("need k, k' >= l");

  std::vector<ProofStepFinding> findings;
  auto check_one = [&](const Family& f, Mask s) {
    const auto res = derive_disjoint_subfamily(f, s, l);
    if (!res.valid) {
      findings.push_back({"disjoint", n, k, k_prime, l, f.to_text(), s,
                          "disjoint members are not a family on the remainder"});
      return;
    }
    if (!is_separated(*res.family, rest))
      findings.push_back({"disjoint", n, k, k_prime, l, f.to_text(), s,
                          "remainder family is not " + std::to_string(k_prime) + "|" +
                              std::to_string(l) + "-separated"});
  };

  const ClassTables inner_tables(n, inner);
  for (const Family& f : enumerate_families(n, Strategy::recursive)) {
    if (!is_separated(f, whole)) continue;
    if (sweep_all_s) {
      for (const auto& [s, qual] : inner_tables.cover) check_one(f, s);
    } else {
      check_one(f, best_cover(f, inner).first);
    }
  }
  return findings;
}

std::vector<ProofStepFinding> check_quotient_proof_step(int n, int k, int k_dprime, int l) {
  const SeparationParams whole(k + k_dprime, l + k_dprime);
  const SeparationParams inner(k, l);
  require_scan_params(n, whole);

  std::vector<ProofStepFinding> findings;
  const std::uint64_t pow2 = std::uint64_t{1} << k_dprime;
  const ClassTables tables(n, SeparationParams(k_dprime, k_dprime));
  for (const Family& f : enumerate_families(n, Strategy::recursive)) {
    if (!is_separated(f, whole)) continue;
    for (const auto& [s, qual] : tables.cover) {
      // S must be contained in at least |members| / 2^k'' members.
      if (cover_count(f, s, k_dprime) * pow2 < f.size()) continue;
      const Family q = derive_quotient_subfamily(f, s);
      if (!is_separated(q, inner))
        findings.push_back({"quotient", n, k, k_dprime, l, f.to_text(), s,
                            "quotient family is not " + std::to_string(k) + "|" +
                                std::to_string(l) + "-separated"});
    }
  }
  return findings;
}

}  // namespace ucslab
