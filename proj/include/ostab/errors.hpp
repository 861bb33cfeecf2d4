#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ostab {

// Machine-readable failure codes. These surface in reports ("pass.failure_code")
// and drive the CLI exit-code contract: invalid parameters exit with 2, failed
// bound/residual checks with 1.
inline constexpr const char* kInvalidArgument = "invalid-argument";
inline constexpr const char* kInvalidM = "invalid-M";
inline constexpr const char* kInvalidLambda = "invalid-lambda";
inline constexpr const char* kConditionViolation = "condition-violation";
inline constexpr const char* kNonConvergence = "non-convergence";
inline constexpr const char* kOverflow = "overflow";
inline constexpr const char* kIoError = "io-error";

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Thrown when a reduction's convergence condition fails; carries both the
// statement-side and recurrence-side condition values for diagnostics.
class ConditionViolation : public Error {
 public:
  ConditionViolation(const std::string& message, double paper_side, double lemma_side)
      : Error(kConditionViolation, message),
        paper_side_(paper_side),
        lemma_side_(lemma_side) {}

  double paper_side() const noexcept { return paper_side_; }
  double lemma_side() const noexcept { return lemma_side_; }

 private:
  double paper_side_;
  double lemma_side_;
};

// Iteration envelope not reached within n_max steps. Distinct from overflow.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& message, int n_max, double envelope)
      : Error(kNonConvergence, message), n_max_(n_max), envelope_(envelope) {}

  int n_max() const noexcept { return n_max_; }
  double envelope() const noexcept { return envelope_; }

 private:
  int n_max_;
  double envelope_;
};

// Codomain value left the representable double range at iteration step n.
class OverflowAtStep : public Error {
 public:
  explicit OverflowAtStep(int n)
      : Error(kOverflow, "codomain value overflowed double range at iteration n=" +
                             std::to_string(n)),
        step_(n) {}

  int step() const noexcept { return step_; }

 private:
  int step_;
};

}  // namespace ostab
