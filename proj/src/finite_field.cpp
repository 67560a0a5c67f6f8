#include "kmw/finite_field.hpp"

#include <algorithm>
#include <sstream>

#include "kmw/error.hpp"

namespace kmw {

namespace {

using U64 = std::uint64_t;
using ModPoly = std::vector<U64>;  // coefficients mod p, low to high

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

U64 inv_mod(U64 a, U64 p) {
  // p prime: Fermat.
  U64 r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

ModPoly poly_mod(ModPoly a, const ModPoly& m, U64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const U64 lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    U64 c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, U64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(c), m, p);
}

ModPoly poly_powmod(ModPoly base, const mpz_class& k, const ModPoly& m, U64 p) {
  ModPoly r{1};
  r = poly_mod(r, m, p);
  base = poly_mod(base, m, p);
  for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
    r = poly_mulmod(r, r, m, p);
    if (mpz_tstbit(k.get_mpz_t(), bit)) r = poly_mulmod(r, base, m, p);
  }
  return r;
}

ModPoly poly_gcd(ModPoly a, ModPoly b, U64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<U64> prime_factors(U64 n) {
  std::vector<U64> out;
  for (U64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_mod_p(std::uint32_t p, const std::vector<std::uint32_t>& f) {
  ModPoly m(f.begin(), f.end());
  trim(m);
  if (m.size() < 2) return false;
  const std::size_t d = m.size() - 1;
  if (d == 1) return true;
  mpz_class pp = p;
  // Rabin: x^(p^d) = x mod f and gcd(x^(p^(d/r)) - x, f) = 1 for primes r | d.
  auto frob = [&](std::size_t k) {
    mpz_class e;
    mpz_pow_ui(e.get_mpz_t(), pp.get_mpz_t(), k);
    return poly_powmod(ModPoly{0, 1}, e, m, p);
  };
  ModPoly xd = frob(d);
  ModPoly x = poly_mod(ModPoly{0, 1}, m, p);
  if (xd != x) return false;
  for (U64 r : prime_factors(d)) {
    ModPoly h = frob(d / r);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    ModPoly g = poly_gcd(m, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

FiniteField::FiniteField(std::uint32_t p, unsigned degree) : p_(p), e_(degree) {
  if (p == 2 || !is_prime(p)) throw Error(Errc::InvalidInput, "characteristic must be an odd prime");
  if (degree == 0) throw Error(Errc::InvalidInput, "field degree must be positive");
  if (degree == 1) {
    modulus_ = {0, 1};
  } else {
    // Enumerate monic polynomials of the given degree, low coefficients fastest.
    std::vector<std::uint32_t> f(degree + 1, 0);
    f[degree] = 1;
    for (;;) {
      if (f[0] != 0 && is_irreducible_mod_p(p, f)) break;
      std::size_t i = 0;
      while (i < degree && ++f[i] == p) f[i++] = 0;
      if (i == degree) throw Error(Errc::NonIrreducibleModulus, "no irreducible polynomial found");
    }
    modulus_ = f;
  }
  init();
}

FiniteField::FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), modulus_(std::move(modulus)) {
  if (p == 2 || !is_prime(p)) throw Error(Errc::InvalidInput, "characteristic must be an odd prime");
  for (auto& c : modulus_) c %= p;
  while (!modulus_.empty() && modulus_.back() == 0) modulus_.pop_back();
  if (modulus_.size() < 2 || modulus_.back() != 1)
    throw Error(Errc::NonIrreducibleModulus, "modulus must be monic of positive degree");
  if (!is_irreducible_mod_p(p, modulus_))
    throw Error(Errc::NonIrreducibleModulus, "modulus is reducible over F_" + std::to_string(p));
  e_ = static_cast<unsigned>(modulus_.size() - 1);
  init();
}

void FiniteField::init() {
  q_ = 1;
  for (unsigned i = 0; i < e_; ++i) {
    q_ *= p_;
    if (q_ > (1ULL << 31)) throw Error(Errc::InvalidInput, "field too large");
  }
  if (e_ > 1 && q_ > (1ULL << 22)) throw Error(Errc::InvalidInput, "extension field too large");

  const auto factors = prime_factors(q_ - 1);
  auto has_full_order = [&](Elem g) {
    for (U64 r : factors)
      if (pow(g, mpz_class(static_cast<unsigned long>((q_ - 1) / r))) == 1) return false;
    return true;
  };
  for (Elem g = 1; g < q_; ++g) {
    if (has_full_order(g)) {
      gen_ = g;
      break;
    }
  }

  if (q_ <= (1ULL << 20)) {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    Elem cur = 1;
    for (U64 k = 0; k + 1 < q_; ++k) {
      exp_[k] = cur;
      log_[cur] = static_cast<std::uint32_t>(k);
      cur = mul_poly(cur, gen_);
    }
  }
}

FiniteField::Elem FiniteField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::x() const {
  if (e_ == 1) throw Error(Errc::InvalidInput, "prime field has no extension generator");
  return p_;
}

std::vector<std::uint32_t> FiniteField::digits(Elem a) const {
  std::vector<std::uint32_t> d(e_);
  for (unsigned i = 0; i < e_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

FiniteField::Elem FiniteField::from_digits(const std::vector<std::uint32_t>& d) const {
  Elem a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + (d[i] % p_);
  return a;
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (e_ == 1) return static_cast<Elem>((static_cast<U64>(a) + b) % p_);
  Elem r = 0, scale = 1;
  for (unsigned i = 0; i < e_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  if (e_ == 1) return a == 0 ? 0 : p_ - a;
  Elem r = 0, scale = 1;
  for (unsigned i = 0; i < e_; ++i) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FiniteField::Elem FiniteField::mul_poly(Elem a, Elem b) const {
  if (e_ == 1) return static_cast<Elem>(static_cast<U64>(a) * b % p_);
  auto da = digits(a), db = digits(b);
  ModPoly pa(da.begin(), da.end()), pb(db.begin(), db.end()), m(modulus_.begin(), modulus_.end());
  trim(pa);
  trim(pb);
  ModPoly c = poly_mulmod(pa, pb, m, p_);
  std::vector<std::uint32_t> out(e_, 0);
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = static_cast<std::uint32_t>(c[i]);
  return from_digits(out);
}

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) return exp_[(static_cast<U64>(log_[a]) + log_[b]) % (q_ - 1)];
  return mul_poly(a, b);
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw Error(Errc::ZeroInversion, "inverse of zero in " + name());
  if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, mpz_class(static_cast<unsigned long>(q_ - 2)));
}

FiniteField::Elem FiniteField::pow(Elem a, const mpz_class& k) const {
  if (a == 0) {
    if (k == 0) return 1;
    if (k < 0) throw Error(Errc::ZeroInversion, "negative power of zero");
    return 0;
  }
  mpz_class e;
  mpz_class order = static_cast<unsigned long>(q_ - 1);
  mpz_fdiv_r(e.get_mpz_t(), k.get_mpz_t(), order.get_mpz_t());
  if (!log_.empty()) {
    mpz_class idx = e * static_cast<unsigned long>(log_[a]);
    mpz_fdiv_r(idx.get_mpz_t(), idx.get_mpz_t(), order.get_mpz_t());
    return exp_[idx.get_ui()];
  }
  Elem r = 1;
  for (long bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
    r = mul_poly(r, r);
    if (mpz_tstbit(e.get_mpz_t(), bit)) r = mul_poly(r, a);
  }
  return r;
}

int FiniteField::quadratic_character(Elem a) const {
  if (a == 0) return 0;
  if (!log_.empty()) return (log_[a] % 2 == 0) ? 1 : -1;
  return pow(a, mpz_class(static_cast<unsigned long>((q_ - 1) / 2))) == 1 ? 1 : -1;
}

bool FiniteField::is_square(Elem a) const {
  if (a == 0) throw Error(Errc::ZeroArgument, "square class of zero");
  return quadratic_character(a) == 1;
}

std::uint64_t FiniteField::log(Elem a) const {
  if (a == 0) throw Error(Errc::ZeroArgument, "discrete log of zero");
  if (log_.empty()) throw Error(Errc::InvalidInput, "no discrete log tables for " + name());
  return log_[a];
}

FiniteField::Elem FiniteField::exp(std::uint64_t k) const {
  if (!exp_.empty()) return exp_[k % (q_ - 1)];
  return pow(gen_, mpz_class(static_cast<unsigned long>(k)));
}

std::string FiniteField::format(Elem a) const {
  if (e_ == 1) return std::to_string(a);
  auto d = digits(a);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << d[i];
      continue;
    }
    if (d[i] != 1) os << d[i] << "*";
    os << "x";
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

std::string FiniteField::name() const { return "F" + std::to_string(q_); }

}  // namespace kmw
