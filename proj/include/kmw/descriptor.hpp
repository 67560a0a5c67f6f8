#pragma once

// Structured description of a (partially computed) abelian group.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kmw/linalg.hpp"

namespace kmw {

struct SymbolicFactor {
  std::string name;
  std::string cite;
  friend bool operator==(const SymbolicFactor&, const SymbolicFactor&) = default;
};

struct GroupDescriptor {
  /// nullopt means "infinite rank".
  std::optional<long> free_rank = 0;
  std::vector<Int> cyclic_factors;
  std::vector<SymbolicFactor> symbolic;
  std::optional<long> bound;
  std::string label;
  std::vector<std::string> provenance;

  static GroupDescriptor from_group(const AbGroup& g, std::string label = {});

  /// Appends the factors of `other` (direct sum); symbolic parts are concatenated.
  void absorb(const GroupDescriptor& other);
  bool is_zero() const;
  Int torsion_order() const;
  std::string describe() const;
  nlohmann::json to_json() const;
};

/// Integers as decimal strings.
nlohmann::json int_json(const Int& n);
nlohmann::json ints_json(const std::vector<Int>& v);
nlohmann::json matrix_json(const IntMatrix& m);
IntMatrix matrix_from_json(const nlohmann::json& j);

std::vector<long> primes_up_to(long bound);

}  // namespace kmw
