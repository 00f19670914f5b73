/// @file error.hpp
/// @brief Error types and the warning channel shared by all modules.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ns2d {

/// Raised when an input violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the integrator when a monitored norm leaves the safe range.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(const std::string& what, double tau) : std::runtime_error(what), tau_(tau) {}
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

/// Callback receiving (code, message) for non-fatal diagnostics.
using WarningHandler = std::function<void(std::string_view, std::string_view)>;

/// Installs a new handler and returns the previous one. An empty handler restores stderr output.
WarningHandler set_warning_handler(WarningHandler handler);

/// Emits a warning through the installed handler.
void warn(std::string_view code, std::string_view message);

/// Collects warnings for the lifetime of the object instead of printing them.
class WarningCapture {
 public:
  struct Entry {
    std::string code;
    std::string message;
  };

  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  const std::vector<Entry>& entries() const { return entries_; }
  bool contains(std::string_view code) const;

 private:
  std::vector<Entry> entries_;
  WarningHandler previous_;
};

void require(bool condition, const std::string& message);

}  // namespace ns2d
