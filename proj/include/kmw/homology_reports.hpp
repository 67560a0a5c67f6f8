#pragma once

// Structured descriptors for the low-dimensional homology of SL_2 over
// Laurent polynomial rings and for the stabilization maps.

#include <optional>

#include "kmw/descriptor.hpp"
#include "kmw/field.hpp"

namespace kmw {

/// field is Q (bound required) or F_q; F_q results are formal functor
/// evaluations.
GroupDescriptor h2_laurent_report(const Field& k, std::optional<long> prime_bound = std::nullopt);
GroupDescriptor h3_laurent_report(const Field& k, std::optional<long> prime_bound = std::nullopt);
/// Kernel (and symbolic cokernel) of stabilization in degree 2 or 3.
GroupDescriptor stabilization_report(const Field& k, int degree);

/// K_1^MW(F_q), computed as the fiber product F_q^x x_{I/I^2} I.
GroupDescriptor k1mw_finite(const Field& fq);
/// K_2^MW(F_q) = 0 x_{I^2/I^3} I^2.
GroupDescriptor k2mw_finite(const Field& fq);

}  // namespace kmw
