#pragma once

#include <stdexcept>
#include <string>

namespace ekr {

enum class ErrorKind {
  CompositeCharacteristic,
  FieldTooLarge,
  ThetaUndefined,
  GroupTooLarge,
  InvalidGenerator,
  NotASubgroup,
  NoSuchSubgroup,
  IdentityMissing,
  NotSemiregular,
  InconsistentCertificate,
  IncompatibleWeighting,
  NonRealSpectrum,
  DegenerateSpectrum,
  Unbounded,
  NoConvergence,
  NotADivisor,
  InadmissibleParameters,
  EvenQ,
  InadmissibleQ,
  ParseError,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace ekr
