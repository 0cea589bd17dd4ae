// JSON report shared by every subcommand:
//   {"schema": "hopf-twist/1", "command": ..., "params": {...},
//    "results": [{"name": ..., "pass": bool | "value": any, "detail": str}]}
#ifndef HOPFTWIST_TOOLS_REPORT_HPP
#define HOPFTWIST_TOOLS_REPORT_HPP

#include <json.hpp>
#include <string>

namespace hopftwist::cli {

inline constexpr const char* kSchema = "hopf-twist/1";

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  nlohmann::json& params() { return params_; }
  void check(const std::string& name, bool pass, const std::string& detail = {});
  void value(const std::string& name, nlohmann::json v, const std::string& detail = {});
  // false once any check failed
  bool ok() const { return ok_; }
  nlohmann::json to_json() const;

 private:
  std::string command_;
  nlohmann::json params_ = nlohmann::json::object();
  nlohmann::json results_ = nlohmann::json::array();
  bool ok_ = true;
};

// Empty string when j conforms to the schema, otherwise the first problem.
std::string schema_violation(const nlohmann::json& j);

}  // namespace hopftwist::cli

#endif
