#include "ns2d/error.hpp"

#include <iostream>
#include <mutex>

namespace ns2d {

namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler_slot() {
  static WarningHandler h;
  return h;
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  WarningHandler previous = std::move(handler_slot());
  handler_slot() = std::move(handler);
  return previous;
}

void warn(std::string_view code, std::string_view message) {
  WarningHandler h;
  {
    std::lock_guard lock(handler_mutex());
    h = handler_slot();
  }
  if (h) {
    h(code, message);
  } else {
    std::cerr << "warning [" << code << "]: " << message << '\n';
  }
}

WarningCapture::WarningCapture() {
  previous_ = set_warning_handler([this](std::string_view code, std::string_view message) {
    entries_.push_back({std::string(code), std::string(message)});
  });
}

WarningCapture::~WarningCapture() { set_warning_handler(std::move(previous_)); }

bool WarningCapture::contains(std::string_view code) const {
  for (const auto& e : entries_) {
    if (e.code == code) return true;
  }
  return false;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace ns2d
