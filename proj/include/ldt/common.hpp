#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ldt {

using Fel = std::uint16_t;  // canonical field element encoding, value in [0, q)

enum class Errc {
  NotPrime,
  Reducible,
  TooLarge,
  DivisionByZero,
  DependentDirections,
  AmbientMismatch,
  CapExceeded,
  Inconsistent,
  Underdetermined,
  NotContained,
  WeightMismatch,
  FormatError,
  HeaderMismatch,
  MissingEntry,
  DegreeViolation,
  SpecInvalid,
  EmptyConditional,
  NotCorrectable,
  DegreeTooHigh,
  NoCandidate,
  OutOfRange,
  NotBiRegular,
  NoConvergence,
  CoDegreeViolated,
  Overflow,
};

const char* errc_name(Errc e);

// Exit-code classes used by the CLI: 2 validation, 3 cap, 4 no-candidate/no-convergence.
int exit_code_for(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what) : std::runtime_error(errc_name(c) + (": " + what)), code_(c) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

}  // namespace ldt
