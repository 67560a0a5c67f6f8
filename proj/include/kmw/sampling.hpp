#pragma once

// Seeded random field elements for the verification suites.

#include <cstdint>
#include <random>

#include "kmw/field.hpp"

namespace kmw {

using Rng = std::mt19937_64;

struct SampleBounds {
  long height = 1000;  // Q: numerator and denominator
  int degree = 3;      // k(t): numerator and denominator degree
};

Elem random_nonzero(const Field& f, Rng& rng, const SampleBounds& b = {});
/// Nonzero element of the constant field of k(t), embedded.
Elem random_constant(const Field& f, Rng& rng, const SampleBounds& b = {});
/// Nonzero a with 1 - a also nonzero.
Elem random_non_one(const Field& f, Rng& rng, const SampleBounds& b = {});

}  // namespace kmw
