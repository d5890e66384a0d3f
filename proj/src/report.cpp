#include "ucslab/report.hpp"

namespace ucslab {

using nlohmann::json;

json to_json(const ConstantReport& r, const std::string& manifest_hash) {
  return json{{"n", r.n},
              {"k", r.k},
              {"l", r.l},
              {"class", family_class_name(r.kind)},
              {"value_num", r.value.num},
              {"value_den", r.value.den},
              {"witness", r.witness},
              {"witness_s", r.witness_s},
              {"witness_cover", r.witness_cover},
              {"witness_members", r.witness_members},
              {"families_scanned", r.families_scanned},
              {"conjectured_num", r.conjectured.num},
              {"conjectured_den", r.conjectured.den},
              {"verdict", r.verdict},
              {"manifest_hash", manifest_hash}};
}

json to_json(const VerifyReport& r, const std::string& manifest_hash) {
  json counts = json::array();
  for (const auto& [s, c] : r.counterexample_counts) counts.push_back(json::array({s, c}));
  return json{{"n", r.n},
              {"k", r.k},
              {"l", r.l},
              {"variant", variant_name(r.variant)},
              {"pass", r.pass},
              {"vacuous", r.vacuous},
              {"families_scanned", r.families_scanned},
              {"bound_num", r.bound.num},
              {"bound_den", r.bound.den},
              {"min_value_num", r.min_value.num},
              {"min_value_den", r.min_value.den},
              {"min_witness", r.min_witness},
              {"min_witness_s", r.min_witness_s},
              {"counterexample", r.counterexample ? json(*r.counterexample) : json(nullptr)},
              {"counterexample_counts", counts},
              {"manifest_hash", manifest_hash}};
}

json to_json(const AuditReport& r, const std::string& manifest_hash) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back(
        json{{"inequality", f.inequality}, {"k", f.k}, {"k2", f.k2}, {"l", f.l}});
  return json{{"max_k", r.max_k},
              {"failures", failures},
              {"passed", r.passed()},
              {"manifest_hash", manifest_hash}};
}

VerifyReport verify_report_from_json(const json& j) {
  VerifyReport r{
      .n = j.at("n"),
      .k = j.at("k"),
      .l = j.at("l"),
      .variant = variant_from_name(j.at("variant")),
      .pass = j.at("pass"),
      .vacuous = j.at("vacuous"),
      .families_scanned = j.at("families_scanned"),
      .bound = ExactFraction(j.at("bound_num"), j.at("bound_den")),
      .min_value = ExactFraction(j.at("min_value_num"), j.at("min_value_den")),
      .min_witness = j.at("min_witness"),
      .min_witness_s = j.at("min_witness_s"),
      .counterexample = std::nullopt,
      .counterexample_counts = {},
  };
  if (!j.at("counterexample").is_null())
    r.counterexample = j.at("counterexample").get<std::string>();
  for (const auto& pair : j.at("counterexample_counts"))
    r.counterexample_counts.emplace_back(pair.at(0).get<Mask>(),
                                         pair.at(1).get<std::uint64_t>());
  return r;
}

std::string constant_csv_row(const ConstantReport& r, const std::string& manifest_hash) {
  std::string row;
  row += std::to_string(r.n) + ',' + std::to_string(r.k) + ',' + std::to_string(r.l) + ',';
  row += family_class_name(r.kind) + ',';
  row += std::to_string(r.value.num) + ',' + std::to_string(r.value.den) + ',';
  row += "\"" + r.witness + "\",";
  row += std::to_string(r.witness_s) + ',';
  row += std::to_string(r.families_scanned) + ',';
  row += r.verdict + ',' + manifest_hash;
  return row;
}

}  // namespace ucslab
