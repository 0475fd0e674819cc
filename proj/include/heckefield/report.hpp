#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace heckefield {

enum class CheckStatus { Pass, Fail, OutOfHypothesis, Error };

std::string to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  nlohmann::json detail;

  nlohmann::json to_json() const;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;

  bool all_passed() const;
  nlohmann::json to_json() const;
  std::string render_text() const;
};

}  // namespace heckefield
