#pragma once

#include <stdexcept>
#include <string>

namespace flexcycle {

// Coarse failure classes; the CLI maps them onto its exit-code contract
// (2 = validation, 3 = rigid, 4 = numerical).
enum class ErrorKind {
    Validation,
    Rigid,
    Numerical,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

inline Error validation_error(std::string message) {
    return Error(ErrorKind::Validation, std::move(message));
}

inline Error rigid_error(std::string message) {
    return Error(ErrorKind::Rigid, std::move(message));
}

inline Error numerical_error(std::string message) {
    return Error(ErrorKind::Numerical, std::move(message));
}

}  // namespace flexcycle
