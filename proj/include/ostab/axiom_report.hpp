#pragma once

#include <string>
#include <vector>

namespace ostab {

enum class CheckStatus { passed, failed, not_checkable };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::passed: return "pass";
    case CheckStatus::failed: return "fail";
    case CheckStatus::not_checkable: return "not-checkable";
  }
  return "?";
}

// One law of an axiom system, as verified on a finite sample. A failing law
// is a report entry with a counterexample, never an exception. Existential
// laws without a witness provider come back not_checkable: finite sampling
// cannot refute existence.
struct AxiomCheck {
  std::string axiom;
  CheckStatus status = CheckStatus::passed;
  std::string counterexample;      // set when status == failed
  long long samples_checked = 0;
  long long nonvacuous = 0;        // samples where the law's premise applied

  AxiomCheck() = default;
  explicit AxiomCheck(std::string name) : axiom(std::move(name)) {}
};

struct AxiomReport {
  std::string subject;
  std::vector<AxiomCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::failed) return false;
    return true;
  }

  const AxiomCheck* find(const std::string& axiom) const {
    for (const auto& c : checks)
      if (c.axiom == axiom) return &c;
    return nullptr;
  }
};

}  // namespace ostab
