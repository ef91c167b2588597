#include "ekr/error.hpp"

namespace ekr {

const char* to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::CompositeCharacteristic: return "CompositeCharacteristic";
  case ErrorKind::FieldTooLarge: return "FieldTooLarge";
  case ErrorKind::ThetaUndefined: return "ThetaUndefined";
  case ErrorKind::GroupTooLarge: return "GroupTooLarge";
  case ErrorKind::InvalidGenerator: return "InvalidGenerator";
  case ErrorKind::NotASubgroup: return "NotASubgroup";
  case ErrorKind::NoSuchSubgroup: return "NoSuchSubgroup";
  case ErrorKind::IdentityMissing: return "IdentityMissing";
  case ErrorKind::NotSemiregular: return "NotSemiregular";
  case ErrorKind::InconsistentCertificate: return "InconsistentCertificate";
  case ErrorKind::IncompatibleWeighting: return "IncompatibleWeighting";
  case ErrorKind::NonRealSpectrum: return "NonRealSpectrum";
  case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
  case ErrorKind::Unbounded: return "Unbounded";
  case ErrorKind::NoConvergence: return "NoConvergence";
  case ErrorKind::NotADivisor: return "NotADivisor";
  case ErrorKind::InadmissibleParameters: return "InadmissibleParameters";
  case ErrorKind::EvenQ: return "EvenQ";
  case ErrorKind::InadmissibleQ: return "InadmissibleQ";
  case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

} // namespace ekr
