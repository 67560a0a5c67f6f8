#pragma once

// Seeded verification suites shared by the CLI and the acceptance binary.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "kmw/field.hpp"

namespace kmw {

struct VerifyResult {
  std::string name;
  bool pass = true;
  long checks = 0;
  /// Smallest failing instance seen (by printed length).
  std::string witness;

  void check(bool ok, const std::string& instance);
  nlohmann::ordered_json to_json() const;
};

/// (a) [ab] = [a] + [b] + eta[a][b], (b) [a][1-a] = 0, (d) eta h = 0,
/// h[a][b] = [a^2][b].
VerifyResult verify_mw_relations(const Field& f, int samples, std::uint64_t seed);
/// Residue identities at t over k(t) for unit pairs from k.
VerifyResult verify_delta_t(const Field& k, int samples, std::uint64_t seed);
/// S_v kills admissible refined five-term relations over F_q(t); the
/// RP_1 projection identities for delta_t.
VerifyResult verify_sv(long q, int samples, std::uint64_t seed);
/// Sampled I^3 membership implies Witt-zero over F_q or F_q(t); over F_q
/// also I^2 = 0.
VerifyResult verify_witt(const Field& f, int samples, std::uint64_t seed);
/// Product formula for the Hilbert symbol over Q.
VerifyResult verify_hilbert_product(int samples, std::uint64_t seed);

}  // namespace kmw
