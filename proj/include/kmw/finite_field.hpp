#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace kmw {

/// F_q = F_p[x]/(m(x)) for an odd prime p.  Elements are encoded as the
/// integer sum c_i p^i of the residue's coefficients, so F_p embeds as 0..p-1.
class FiniteField {
 public:
  using Elem = std::uint32_t;

  /// Uses the first monic irreducible of the given degree in the order where
  /// lower coefficients vary fastest.
  FiniteField(std::uint32_t p, unsigned degree);
  /// `modulus` lists coefficients from the constant term up; must be monic and
  /// irreducible over F_p.
  FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint64_t order() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// Fixed element of multiplicative order q - 1.
  Elem generator() const { return gen_; }
  bool is_prime_field() const { return e_ == 1; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long n) const;
  /// The element x (class of the indeterminate); only for degree > 1.
  Elem x() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, const mpz_class& k) const;
  Elem pow(Elem a, long long k) const { return pow(a, mpz_class(static_cast<long>(k))); }

  bool is_square(Elem a) const;
  /// Quadratic character: 0 on zero, otherwise +1 / -1.
  int quadratic_character(Elem a) const;
  /// Discrete logarithm with respect to generator(); only when tables exist.
  std::uint64_t log(Elem a) const;
  Elem exp(std::uint64_t k) const;
  bool has_log_tables() const { return !log_.empty(); }

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;
  std::string format(Elem a) const;
  std::string name() const;

 private:
  void init();
  Elem mul_poly(Elem a, Elem b) const;

  std::uint32_t p_;
  unsigned e_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  Elem gen_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

/// Whether a monic polynomial over F_p (coefficients low to high) is irreducible.
bool is_irreducible_mod_p(std::uint32_t p, const std::vector<std::uint32_t>& f);

bool is_prime(std::uint64_t n);

}  // namespace kmw
