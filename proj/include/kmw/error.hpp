#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kmw {

enum class Errc {
  ZeroInversion,
  NonIrreducibleModulus,
  ZeroArgument,
  ZeroPolynomial,
  EvenPrimeForLegendre,
  InfinitePlace,
  MixedFields,
  UnsupportedField,
  UnsupportedDegree,
  UnsupportedPlace,
  DegreeOverflow,
  ZeroEntry,
  EvenQ,
  TooSmallQ,
  RelationNotKilled,
  DegenerateArguments,
  NonUnitArgument,
  MissingBound,
  BadBound,
  InvalidInput,
};

std::string_view errc_name(Errc code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace kmw
