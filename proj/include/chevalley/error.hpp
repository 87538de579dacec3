#pragma once

#include <stdexcept>
#include <string>

namespace chev {

enum class Err {
  NonPrimeCharacteristic,
  ReducibleModulus,
  FieldTooLarge,
  DivisionByZero,
  FieldMismatch,
  ZeroInput,
  InadmissibleFamilyParameter,
  ShapeMismatch,
  BadCharacteristic,
  SingularShift,
  FamilyNotSupported,
  BadEta,
  GroupTooLarge,
  TorusTooLarge,
  ArityMismatch,
  AmbientTooLarge,
  AmbientMismatch,
  KTooLarge,
  NoEscapeWithinBall,
  BallCapExceeded,
  NotHomogenizable,
  NotGenerating,
  HypothesisFailed,
  TheoremViolation,
  RankDeficient,
  ZeroEta,
  RankTooSmall,
  InequalityFailed,
  ParseError,
  UsageError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case Err::ReducibleModulus: return "ReducibleModulus";
    case Err::FieldTooLarge: return "FieldTooLarge";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::ZeroInput: return "ZeroInput";
    case Err::InadmissibleFamilyParameter: return "InadmissibleFamilyParameter";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::BadCharacteristic: return "BadCharacteristic";
    case Err::SingularShift: return "SingularShift";
    case Err::FamilyNotSupported: return "FamilyNotSupported";
    case Err::BadEta: return "BadEta";
    case Err::GroupTooLarge: return "GroupTooLarge";
    case Err::TorusTooLarge: return "TorusTooLarge";
    case Err::ArityMismatch: return "ArityMismatch";
    case Err::AmbientTooLarge: return "AmbientTooLarge";
    case Err::AmbientMismatch: return "AmbientMismatch";
    case Err::KTooLarge: return "KTooLarge";
    case Err::NoEscapeWithinBall: return "NoEscapeWithinBall";
    case Err::BallCapExceeded: return "BallCapExceeded";
    case Err::NotHomogenizable: return "NotHomogenizable";
    case Err::NotGenerating: return "NotGenerating";
    case Err::HypothesisFailed: return "HypothesisFailed";
    case Err::TheoremViolation: return "TheoremViolation";
    case Err::RankDeficient: return "RankDeficient";
    case Err::ZeroEta: return "ZeroEta";
    case Err::RankTooSmall: return "RankTooSmall";
    case Err::InequalityFailed: return "InequalityFailed";
    case Err::ParseError: return "ParseError";
    case Err::UsageError: return "UsageError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(Err kind, const std::string& msg)
    : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}
  Err kind() const { return kind_; }
private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) {
  throw Error(kind, msg);
}

} // namespace chev
