#pragma once

#include <stdexcept>
#include <string>

namespace bodygraphs {

enum class ErrorCode {
  ParseError,
  InvalidBody,
  DegenerateBody,
  SingularMap,
  NotCompatible,
  PairTooClose,
  NotTouching,
  ManySolutions,
  NotRigid,
  BeamTooShort,
  AttachFailed,
  DepthTooSmall,
  NoConvergence,
  NotUrtc,
  IoError,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C layer can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidBody: return "InvalidBody";
    case ErrorCode::DegenerateBody: return "DegenerateBody";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::PairTooClose: return "PairTooClose";
    case ErrorCode::NotTouching: return "NotTouching";
    case ErrorCode::ManySolutions: return "ManySolutions";
    case ErrorCode::NotRigid: return "NotRigid";
    case ErrorCode::BeamTooShort: return "BeamTooShort";
    case ErrorCode::AttachFailed: return "AttachFailed";
    case ErrorCode::DepthTooSmall: return "DepthTooSmall";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotUrtc: return "NotUrtc";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace bodygraphs
