#pragma once

#include <stdexcept>
#include <string>

namespace kpz {

enum class ErrorClass {
  invalid_input,
  domain,
  pole,
  contour,
  capacity,
  accuracy,
  diverged,
  step_size,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  ErrorClass cls() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

inline const char* error_class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::invalid_input: return "invalid-input";
    case ErrorClass::domain: return "domain";
    case ErrorClass::pole: return "pole";
    case ErrorClass::contour: return "contour-construction";
    case ErrorClass::capacity: return "capacity";
    case ErrorClass::accuracy: return "accuracy";
    case ErrorClass::diverged: return "simulation-diverged";
    case ErrorClass::step_size: return "step-size";
  }
  return "unknown";
}

// CLI exit code for an error class: 3 invalid config, 4 numerical accuracy, 5 capacity.
inline int exit_code_for(ErrorClass c) {
  switch (c) {
    case ErrorClass::capacity: return 5;
    case ErrorClass::accuracy:
    case ErrorClass::diverged:
    case ErrorClass::step_size: return 4;
    default: return 3;
  }
}

[[noreturn]] inline void fail(ErrorClass c, const std::string& msg) { throw Error(c, msg); }

}  // namespace kpz
