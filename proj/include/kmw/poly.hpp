#pragma once

// Dense univariate polynomials over a coefficient field, parameterized by a
// small "ops" object that supplies the field arithmetic.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "kmw/error.hpp"
#include "kmw/finite_field.hpp"

namespace kmw {

struct FqOps {
  using value_type = FiniteField::Elem;
  const FiniteField* f;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const { return f->add(a, b); }
  value_type sub(value_type a, value_type b) const { return f->sub(a, b); }
  value_type neg(value_type a) const { return f->neg(a); }
  value_type mul(value_type a, value_type b) const { return f->mul(a, b); }
  value_type div(value_type a, value_type b) const { return f->div(a, b); }
  value_type from_int(long long n) const { return f->from_int(n); }
  bool is_zero(value_type a) const { return a == 0; }
};

struct QOps {
  using value_type = mpq_class;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type div(const value_type& a, const value_type& b) const {
    if (b == 0) throw Error(Errc::ZeroInversion, "division by zero rational");
    return a / b;
  }
  value_type from_int(long long n) const { return mpq_class(static_cast<long>(n)); }
  bool is_zero(const value_type& a) const { return a == 0; }
};

template <class Ops>
class PolyAlg {
 public:
  using C = typename Ops::value_type;
  using P = std::vector<C>;  // low to high, no trailing zeros

  explicit PolyAlg(Ops ops) : ops_(std::move(ops)) {}
  const Ops& ops() const { return ops_; }

  void trim(P& a) const {
    while (!a.empty() && ops_.is_zero(a.back())) a.pop_back();
  }
  static long deg(const P& a) { return static_cast<long>(a.size()) - 1; }
  C lc(const P& a) const { return a.empty() ? ops_.zero() : a.back(); }
  P constant(const C& c) const {
    P r{c};
    trim(r);
    return r;
  }
  P one() const { return P{ops_.one()}; }
  P var() const { return P{ops_.zero(), ops_.one()}; }

  P add(const P& a, const P& b) const {
    P r(std::max(a.size(), b.size()), ops_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = ops_.add(r[i], b[i]);
    trim(r);
    return r;
  }
  P neg(const P& a) const {
    P r = a;
    for (auto& c : r) c = ops_.neg(c);
    return r;
  }
  P sub(const P& a, const P& b) const { return add(a, neg(b)); }
  P scale(const C& c, const P& a) const {
    P r = a;
    for (auto& x : r) x = ops_.mul(c, x);
    trim(r);
    return r;
  }
  P mul(const P& a, const P& b) const {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1, ops_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (ops_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = ops_.add(r[i + j], ops_.mul(a[i], b[j]));
    }
    trim(r);
    return r;
  }
  P pow(const P& a, unsigned long k) const {
    P r = one(), b = a;
    while (k) {
      if (k & 1) r = mul(r, b);
      k >>= 1;
      if (k) b = mul(b, b);
    }
    return r;
  }

  std::pair<P, P> divmod(const P& a, const P& b) const {
    if (b.empty()) throw Error(Errc::ZeroPolynomial, "polynomial division by zero");
    P r = a;
    trim(r);
    if (r.size() < b.size()) return {P{}, r};
    P q(r.size() - b.size() + 1, ops_.zero());
    const C lead = b.back();
    while (r.size() >= b.size()) {
      const std::size_t shift = r.size() - b.size();
      C c = ops_.div(r.back(), lead);
      q[shift] = c;
      for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = ops_.sub(r[shift + i], ops_.mul(c, b[i]));
      r.pop_back();  // leading term cancels exactly
      trim(r);
    }
    trim(q);
    return {std::move(q), std::move(r)};
  }
  P mod(const P& a, const P& b) const { return divmod(a, b).second; }
  P quo(const P& a, const P& b) const { return divmod(a, b).first; }
  bool divides(const P& b, const P& a) const { return mod(a, b).empty(); }

  P monic(const P& a) const {
    if (a.empty()) return a;
    return scale(ops_.div(ops_.one(), a.back()), a);
  }
  P gcd(P a, P b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      P r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  P derivative(const P& a) const {
    P r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(ops_.mul(ops_.from_int(static_cast<long long>(i)), a[i]));
    trim(r);
    return r;
  }
  C eval(const P& a, const C& x) const {
    C r = ops_.zero();
    for (std::size_t i = a.size(); i-- > 0;) r = ops_.add(ops_.mul(r, x), a[i]);
    return r;
  }
  P mulmod(const P& a, const P& b, const P& m) const { return mod(mul(a, b), m); }
  P powmod(const P& base, const mpz_class& k, const P& m) const {
    P r = mod(one(), m), b = mod(base, m);
    for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
      r = mulmod(r, r, m);
      if (mpz_tstbit(k.get_mpz_t(), bit)) r = mulmod(r, b, m);
    }
    return r;
  }
  /// Multiplicity of `pi` in nonzero a, and a / pi^v.
  std::pair<long, P> split_off(const P& pi, P a) const {
    if (a.empty()) throw Error(Errc::ZeroArgument, "valuation of zero");
    long v = 0;
    for (;;) {
      auto [q, r] = divmod(a, pi);
      if (!r.empty()) break;
      a = std::move(q);
      ++v;
    }
    return {v, std::move(a)};
  }
  /// Inverse of a modulo m (a coprime to m).
  P invmod(const P& a, const P& m) const {
    P r0 = m, r1 = mod(a, m), s0{}, s1 = one();
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      P s = sub(s0, mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    if (r0.size() != 1) throw Error(Errc::ZeroInversion, "polynomial not invertible modulo m");
    return mod(scale(ops_.div(ops_.one(), r0[0]), s0), m);
  }

 private:
  Ops ops_;
};

using FqPoly = std::vector<FiniteField::Elem>;
using QPoly = std::vector<mpq_class>;

/// Square-free factorization f = lc * prod g_i^i over F_q (monic g_i,
/// pairwise coprime, square-free).
std::vector<std::pair<FqPoly, int>> squarefree_factor(const FiniteField& f, const FqPoly& a);
/// Square-free factorization over Q.
std::vector<std::pair<QPoly, int>> squarefree_factor(const QPoly& a);
/// Complete factorization into monic irreducibles with multiplicities
/// (Cantor-Zassenhaus with a fixed-seed splitting sequence).
std::vector<std::pair<FqPoly, int>> factor_poly(const FiniteField& f, const FqPoly& a);
bool is_irreducible(const FiniteField& f, const FqPoly& a);

}  // namespace kmw
