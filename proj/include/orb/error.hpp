#pragma once

#include <stdexcept>
#include <string>

namespace orb {

enum class ErrorKind {
  ConductorMismatch,
  DivisionByZero,
  NotReal,
  DimMismatch,
  PointOutsideDomain,
  NoConjugator,
  NotUnique,
  OracleRefused,
  AtlasMismatch,
  BoundaryMismatch,
  IllTypedDiagram,
  NotComposable,
  InvalidAtlas,
  InvalidSystem,
  InvalidCell,
  IllTypedFixture,
  NotASubAtlas,
  WitnessInvalid,
  NotEquivalent,
  InvalidRelabeling,
  UnsupportedPresentation,
  ParseError,
  UnsupportedParams,
  PointOutsideUnitSpace,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace orb
