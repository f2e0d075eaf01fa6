#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace intdep {

/// A caller violated an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal cross-check failed. Signals an engine bug, never bad input.
class EngineError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class HypothesisCode {
  not_contained,
  dimension_too_small,
  height_zero,
  height_order,
  height_full,
  domain_not_asserted,
  ring_mismatch,
};

inline const char* to_string(HypothesisCode code) {
  switch (code) {
    case HypothesisCode::not_contained: return "not_contained";
    case HypothesisCode::dimension_too_small: return "dimension_too_small";
    case HypothesisCode::height_zero: return "height_zero";
    case HypothesisCode::height_order: return "height_order";
    case HypothesisCode::height_full: return "height_full";
    case HypothesisCode::domain_not_asserted: return "domain_not_asserted";
    case HypothesisCode::ring_mismatch: return "ring_mismatch";
  }
  return "unknown";
}

/// The input pair lies outside the setting the decision procedures cover.
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(HypothesisCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  HypothesisCode code() const { return code_; }

 private:
  HypothesisCode code_;
};

/// Syntax or semantic error in a problem file, with 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        message_(what) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace intdep
