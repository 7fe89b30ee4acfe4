#include "tmis/errors.hpp"

namespace tmis {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonResidue: return "NonResidue";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::DecryptFailure: return "DecryptFailure";
    case ErrorCode::PackingOverflow: return "PackingOverflow";
    case ErrorCode::DecodeAmbiguous: return "DecodeAmbiguous";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::DuplicateIdentity: return "DuplicateIdentity";
    case ErrorCode::UnknownIdentity: return "UnknownIdentity";
    case ErrorCode::RegistrationRejected: return "RegistrationRejected";
    case ErrorCode::ServerUnreachable: return "ServerUnreachable";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::UnknownScheme: return "UnknownScheme";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::UnsupportedTamper: return "UnsupportedTamper";
    case ErrorCode::NoRecordedSession: return "NoRecordedSession";
  }
  return "Unknown";
}

}  // namespace tmis
