#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dust {

enum class ErrorKind {
  Parse,
  FullGrid,
  EmptyGrid,
  GridTooSmall,
  BudgetExceeded,
  InvalidArgument,
  ConnectedAttractor,
  NotDustType,
  NonIntegralMultiplier,
  NonBinaryCoefficient,
  SingularSystem,
  InternalInconsistency,
  Domain,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Errors that mean the pattern falls outside the replacement-rule model.
  bool is_model_violation() const noexcept {
    return kind_ == ErrorKind::NonIntegralMultiplier || kind_ == ErrorKind::NonBinaryCoefficient ||
           kind_ == ErrorKind::SingularSystem;
  }

private:
  ErrorKind kind_;
};

}  // namespace dust
