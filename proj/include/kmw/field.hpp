#pragma once

// Arithmetic contexts for F_q, Q, F_q(t) and a restricted Q(t): elements,
// square classes, places, valuations, and the classical symbols.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kmw/finite_field.hpp"
#include "kmw/linalg.hpp"
#include "kmw/poly.hpp"

namespace kmw {

enum class FieldKind { Finite, Rationals, FiniteRatFun, RationalRatFun };

template <class P>
struct RatFun {
  P num;
  P den;  // monic, coprime to num
  friend bool operator==(const RatFun&, const RatFun&) = default;
};
using FqRat = RatFun<FqPoly>;
using QRat = RatFun<QPoly>;

struct Elem {
  std::variant<FiniteField::Elem, mpq_class, FqRat, QRat> v;
  friend bool operator==(const Elem&, const Elem&) = default;
};

/// Canonical representative data of a square class.
///   F_q:     `nonsquare`.
///   Q:       `negative` and the sorted primes of odd exponent.
///   F_q(t):  constant `nonsquare` bit times the monic square-free `fpoly`.
///   Q(t):    constant (negative, primes) times the monic square-free `qpoly`.
struct SquareClass {
  bool nonsquare = false;
  bool negative = false;
  std::vector<Int> primes;
  FqPoly fpoly;
  QPoly qpoly;
};
bool operator==(const SquareClass& a, const SquareClass& b);
std::strong_ordering operator<=>(const SquareClass& a, const SquareClass& b);

/// A place of Q (infinity or a prime) or of k(t) (infinity or a monic
/// irreducible polynomial).
struct Place {
  enum class Kind { Infinite, Prime, Poly };
  Kind kind = Kind::Infinite;
  Int prime;
  FqPoly fpoly;
  QPoly qpoly;

  static Place infinite() { return {}; }
  static Place at_prime(Int p);
  static Place at(FqPoly pi);
  static Place at(QPoly pi);
  bool is_infinite() const { return kind == Kind::Infinite; }
};
bool operator==(const Place& a, const Place& b);
std::strong_ordering operator<=>(const Place& a, const Place& b);

/// Element of the residue field at a place: an integer mod p (Q), a
/// polynomial mod pi or a constant (F_q(t)), or a rational (Q(t)).
struct ResidueValue {
  std::variant<Int, FqPoly, mpq_class> v;
  friend bool operator==(const ResidueValue&, const ResidueValue&) = default;
};

class Field {
 public:
  static Field finite(std::uint32_t p, unsigned degree = 1);
  static Field finite(std::shared_ptr<const FiniteField> f);
  static Field rationals();
  static Field rational_functions(const Field& base);
  /// "Q", "F7", "F49", "F7t", "Qt".
  static Field parse(std::string_view spec);

  FieldKind kind() const;
  bool is_function_field() const;
  bool is_finite() const { return kind() == FieldKind::Finite; }
  const FiniteField& fq() const;
  std::shared_ptr<const FiniteField> fq_ptr() const;
  Field base() const;
  std::string name() const;
  friend bool operator==(const Field& a, const Field& b);

  // ---- elements
  Elem zero() const;
  Elem one() const;
  Elem from_int(long long n) const;
  Elem from_rational(const mpq_class& r) const;
  Elem t() const;
  /// Constant embedding of a base-field element into k(t).
  Elem from_base(const Elem& c) const;
  Elem from_fq_rat(FqPoly num, FqPoly den) const;
  Elem from_q_rat(QPoly num, QPoly den) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, long k) const;
  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const { return a == one(); }
  /// Whether a function-field element lies in the constant field.
  bool is_constant(const Elem& a) const;

  Elem parse_elem(std::string_view text) const;
  std::string format(const Elem& a) const;

  // ---- square classes
  SquareClass square_class(const Elem& a) const;
  bool is_square(const Elem& a) const;
  SquareClass class_one() const;
  SquareClass class_mul(const SquareClass& a, const SquareClass& b) const;
  Elem representative(const SquareClass& c) const;
  std::string format_class(const SquareClass& c) const;

  // ---- places, valuations, residues
  /// a = pi^v * u with u a unit at the place; returns v and the residue of u.
  std::pair<long, ResidueValue> valuation(const Elem& a, const Place& v) const;
  /// Finite places at which a class has odd valuation.
  std::vector<Place> class_places(const SquareClass& c) const;
  /// Finite places at which the element has nonzero valuation.
  std::vector<Place> support(const Elem& a) const;
  /// Places at which Hilbert symbols among the given classes can be nontrivial.
  std::vector<Place> hilbert_places(const std::vector<SquareClass>& classes) const;
  Field residue_field(const Place& v) const;
  Elem residue_elem(const Place& v, const ResidueValue& r) const;
  ResidueValue residue_of(const Place& v, const Elem& unit) const;

  ResidueValue residue_one(const Place& v) const;
  ResidueValue residue_mul(const Place& v, const ResidueValue& a, const ResidueValue& b) const;
  ResidueValue residue_pow(const Place& v, const ResidueValue& a, long k) const;
  bool residue_is_one(const Place& v, const ResidueValue& a) const;
  int residue_character(const Place& v, const ResidueValue& a) const;
  std::string format_residue(const Place& v, const ResidueValue& a) const;
  std::string format_place(const Place& v) const;

  /// (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)} reduced into the residue field.
  ResidueValue tame_symbol(const Elem& a, const Elem& b, const Place& v) const;
  /// Hilbert symbol (a,b)_v in {+1,-1}.
  int hilbert(const Elem& a, const Elem& b, const Place& v) const;
  int hilbert(const SquareClass& a, const SquareClass& b, const Place& v) const;
  /// Sign of a real embedding (Q only): +1 or -1.
  int sign(const Elem& a) const;
  int sign(const SquareClass& c) const;
  bool has_real_place() const { return kind() == FieldKind::Rationals; }

  struct Impl;

 private:
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Legendre symbol (a/p) for an odd prime p; 0 when p divides a.
int legendre(const Int& a, const Int& p);
/// Legendre symbol of a rational (numerator and denominator prime to p).
int legendre(const mpq_class& a, const Int& p);
/// Sorted prime factorization by trial division, n > 0.
std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n);

}  // namespace kmw
