#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace coxlift {

struct CliOptions {
  /// lift, verify, decompose, factor or snf
  std::string command;
  std::string input;
  /// verify: the result document to check
  std::string result;
  std::string out;
  /// human, json or both
  std::string log = "both";
  std::size_t step_cap = 10000;
  unsigned long spotcheck_bound = 4;
  std::string matrix;
  std::string element;
};

/// What a command produced: exit status, the human log and the JSON document.
struct CommandOutput {
  int status = 0;
  std::string human;
  nlohmann::json document;
};

CommandOutput lift_command(const nlohmann::json& problem, std::size_t step_cap = 10000,
                           unsigned long spotcheck_bound = 4);
CommandOutput verify_command(const nlohmann::json& problem, const nlohmann::json& result,
                             std::size_t step_cap = 10000);
/// `doc` holds a "stack" and optionally "cyclotomic_order" and "options".
CommandOutput decompose_command(const nlohmann::json& doc, std::size_t step_cap = 10000);
/// `doc` is a problem (the source ring is used) or holds a "ring".
CommandOutput factor_command(const nlohmann::json& doc, const std::string& element, std::size_t step_cap = 10000);
CommandOutput snf_command(const nlohmann::json& matrix);

/// Exit status: 0 success, 1 verification failure, 2 input error, 3 invariant violation.
int run_command(const CliOptions& options, std::ostream& out, std::ostream& err);

}  // namespace coxlift
