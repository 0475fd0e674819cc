#include "heckefield/report.hpp"

#include <sstream>

namespace heckefield {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::OutOfHypothesis: return "out-of-hypothesis";
    case CheckStatus::Error: return "error";
  }
  return "?";
}

nlohmann::json Check::to_json() const {
  return {{"name", name}, {"status", to_string(status)}, {"detail", detail}};
}

bool SuiteReport::all_passed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail || c.status == CheckStatus::Error) return false;
  return true;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) arr.push_back(c.to_json());
  return {{"suite", suite}, {"checks", arr}};
}

std::string SuiteReport::render_text() const {
  std::ostringstream os;
  os << "suite: " << suite << "\n";
  for (const auto& c : checks) {
    os << "  [" << to_string(c.status) << "] " << c.name;
    if (!c.detail.is_null() && !(c.detail.is_object() && c.detail.empty()))
      os << "  " << c.detail.dump();
    os << "\n";
  }
  os << (all_passed() ? "all checks passed" : "FAILURES present") << "\n";
  return os.str();
}

}  // namespace heckefield
