#pragma once

#include <string>

#include "json.hpp"
#include "ucslab/analysis.hpp"

namespace ucslab {

nlohmann::json to_json(const ConstantReport& r, const std::string& manifest_hash = "");
nlohmann::json to_json(const VerifyReport& r, const std::string& manifest_hash = "");
nlohmann::json to_json(const AuditReport& r, const std::string& manifest_hash = "");

VerifyReport verify_report_from_json(const nlohmann::json& j);

inline constexpr const char* kConstantCsvHeader =
    "n,k,l,class,value_num,value_den,witness,witness_s,families_scanned,verdict,manifest_hash";
std::string constant_csv_row(const ConstantReport& r, const std::string& manifest_hash = "");

}  // namespace ucslab
