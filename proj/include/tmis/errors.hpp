#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tmis {

enum class ErrorCode {
  NotInvertible,
  OutOfRange,
  NonResidue,
  PointNotOnCurve,
  DecryptFailure,
  PackingOverflow,
  DecodeAmbiguous,
  InvalidParameters,
  DuplicateIdentity,
  UnknownIdentity,
  RegistrationRejected,
  ServerUnreachable,
  Unsupported,
  UnknownScheme,
  UnknownScenario,
  UnsupportedTamper,
  NoRecordedSession,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (CLI, bindings, tests) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tmis
