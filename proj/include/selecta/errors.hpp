#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace selecta {

struct FieldError {
  std::string field;
  std::string message;
};

/// Invalid argument or configuration value. Carries per-field messages so the
/// CLI and HTTP layers can report exactly which input violated which rule.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& message, std::vector<FieldError> fields = {})
      : std::domain_error(message), fields_(std::move(fields)) {}

  DomainError(const std::string& field, const std::string& message)
      : std::domain_error(field + ": " + message), fields_{{field, message}} {}

  const std::vector<FieldError>& fields() const noexcept { return fields_; }

 private:
  std::vector<FieldError> fields_;
};

/// Malformed configuration: unparsable JSON, wrong value type, unknown key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Numerical routine failed to reach its tolerance within its budget.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The sizing criterion does not hold at the upper search bound.
class NotAttained : public std::runtime_error {
 public:
  NotAttained(int n_hi, double value, double threshold)
      : std::runtime_error("criterion not attained at n_hi=" + std::to_string(n_hi) +
                           " (value " + std::to_string(value) + " <= threshold " +
                           std::to_string(threshold) + "); raise n_hi"),
        n_hi_(n_hi),
        value_(value),
        threshold_(threshold) {}

  int n_hi() const noexcept { return n_hi_; }
  double value() const noexcept { return value_; }
  double threshold() const noexcept { return threshold_; }

 private:
  int n_hi_;
  double value_;
  double threshold_;
};

/// Collects field errors and throws a single DomainError if any were added.
class Validator {
 public:
  explicit Validator(std::string context) : context_(std::move(context)) {}

  Validator& require(bool ok, const std::string& field, const std::string& message) {
    if (!ok) errors_.push_back({field, message});
    return *this;
  }

  /// Runs a nested validation and keeps its field errors instead of throwing.
  template <class Fn>
  Validator& nested(Fn&& fn) {
    try {
      fn();
    } catch (const DomainError& e) {
      for (const auto& f : e.fields()) errors_.push_back(f);
    }
    return *this;
  }

  void throw_if_failed() const {
    if (errors_.empty()) return;
    std::string msg = "invalid " + context_ + ":";
    for (const auto& f : errors_) msg += " " + f.field + " (" + f.message + ");";
    throw DomainError(msg, errors_);
  }

 private:
  std::string context_;
  std::vector<FieldError> errors_;
};

}  // namespace selecta
