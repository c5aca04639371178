#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dsc {

// Base for all domain errors. The code doubles as the machine-readable
// "error" field the CLI prints; keep codes stable.
class DscError : public std::runtime_error {
public:
  DscError(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

struct SyntaxError : DscError {
  explicit SyntaxError(const std::string& detail) : DscError("SyntaxError", detail) {}
};

struct UnknownCategory : DscError {
  explicit UnknownCategory(const std::string& detail) : DscError("UnknownCategory", detail) {}
};

struct LeafShape : DscError {
  explicit LeafShape(const std::string& detail) : DscError("LeafShape", detail) {}
};

struct BadConfig : DscError {
  explicit BadConfig(const std::string& detail) : DscError("BadConfig", detail) {}
};

struct BasisMismatch : DscError {
  explicit BasisMismatch(const std::string& detail) : DscError("BasisMismatch", detail) {}
};

// Raised when an operation needs structure the active semiring does not
// provide (additive cancellation, mostly).
struct UnsupportedInstance : DscError {
  explicit UnsupportedInstance(const std::string& detail)
      : DscError("UnsupportedInstance", detail) {}
};

struct NotAnObjectWord : DscError {
  explicit NotAnObjectWord(const std::string& detail) : DscError("NotAnObjectWord", detail) {}
};

struct NotAModifierCandidate : DscError {
  explicit NotAModifierCandidate(const std::string& detail)
      : DscError("NotAModifierCandidate", detail) {}
};

struct NotAnInteractionCandidate : DscError {
  explicit NotAnInteractionCandidate(const std::string& detail)
      : DscError("NotAnInteractionCandidate", detail) {}
};

// A coordinated (ternary) node where the evaluation recursion would have to
// split; we refuse rather than invent semantics for it.
struct ConjunctionJoin : DscError {
  explicit ConjunctionJoin(const std::string& detail) : DscError("ConjunctionJoin", detail) {}
};

struct TooLarge : DscError {
  explicit TooLarge(const std::string& detail) : DscError("TooLarge", detail) {}
};

struct UnknownSentence : DscError {
  explicit UnknownSentence(const std::string& detail) : DscError("UnknownSentence", detail) {}
};

struct ModelFormat : DscError {
  explicit ModelFormat(const std::string& detail) : DscError("ModelFormat", detail) {}
};

struct IoError : DscError {
  explicit IoError(const std::string& detail) : DscError("IoError", detail) {}
};

struct BadWordSpec : DscError {
  explicit BadWordSpec(const std::string& detail) : DscError("BadWordSpec", detail) {}
};

}  // namespace dsc
