#pragma once

#include <stdexcept>
#include <string>

namespace helly {

/// Base class for every error thrown by the library.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or contract-violating input (bad field, wrong dimension,
/// invalid witness, ...).  CLI exit code 2.
class input_error : public error {
 public:
  explicit input_error(const std::string& msg) : error(msg) {}
};

/// An exhaustive enumeration would exceed its configured budget.
/// Budgets are never silently truncated.  CLI exit code 3.
class budget_error : public error {
 public:
  explicit budget_error(const std::string& msg) : error(msg) {}
};

/// A verified mathematical statement failed to hold.  This is never
/// expected; it either falsifies a theorem or exposes a bug, so callers
/// must abort loudly.  CLI exit code 4.
class contradiction_error : public error {
 public:
  explicit contradiction_error(const std::string& msg) : error(msg) {}
};

/// A searched-for certificate does not exist for the given input.
/// Distinct from input_error: the input was well-formed, the property it
/// asked about is simply refuted.  CLI exit code 1.
class witness_absent_error : public error {
 public:
  explicit witness_absent_error(const std::string& msg) : error(msg) {}
};

}  // namespace helly
