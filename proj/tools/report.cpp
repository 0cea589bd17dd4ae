#include "report.hpp"

namespace hopftwist::cli {

void Report::check(const std::string& name, bool pass, const std::string& detail) {
  results_.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
  ok_ = ok_ && pass;
}

void Report::value(const std::string& name, nlohmann::json v, const std::string& detail) {
  results_.push_back({{"name", name}, {"value", std::move(v)}, {"detail", detail}});
}

nlohmann::json Report::to_json() const {
  return {{"schema", kSchema}, {"command", command_}, {"params", params_}, {"results", results_}};
}

std::string schema_violation(const nlohmann::json& j) {
  if (!j.is_object()) return "report is not an object";
  if (j.value("schema", "") != kSchema) return "schema tag missing or wrong";
  if (!j.contains("command") || !j["command"].is_string()) return "command must be a string";
  if (!j.contains("params") || !j["params"].is_object()) return "params must be an object";
  if (!j.contains("results") || !j["results"].is_array()) return "results must be an array";
  for (const auto& r : j["results"]) {
    if (!r.is_object()) return "result is not an object";
    if (!r.contains("name") || !r["name"].is_string()) return "result name must be a string";
    const bool has_pass = r.contains("pass"), has_value = r.contains("value");
    if (has_pass == has_value) return "result " + r["name"].get<std::string>() + " needs exactly one of pass, value";
    if (has_pass && !r["pass"].is_boolean()) return "pass must be a boolean";
    if (r.contains("detail") && !r["detail"].is_string()) return "detail must be a string";
  }
  return {};
}

}  // namespace hopftwist::cli
