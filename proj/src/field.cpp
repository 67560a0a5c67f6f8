#include "kmw/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "kmw/error.hpp"

namespace kmw {

// ----------------------------------------------------------- comparisons

namespace {

std::strong_ordering cmp_int(const Int& a, const Int& b) {
  int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::strong_ordering cmp_rat(const mpq_class& a, const mpq_class& b) {
  int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

template <class V, class Cmp>
std::strong_ordering cmp_seq(const V& a, const V& b, Cmp c) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    auto r = c(a[i], b[i]);
    if (r != 0) return r;
  }
  return std::strong_ordering::equal;
}

}  // namespace

bool operator==(const SquareClass& a, const SquareClass& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const SquareClass& a, const SquareClass& b) {
  if (auto r = a.nonsquare <=> b.nonsquare; r != 0) return r;
  if (auto r = a.negative <=> b.negative; r != 0) return r;
  if (auto r = cmp_seq(a.primes, b.primes, cmp_int); r != 0) return r;
  if (auto r = cmp_seq(a.fpoly, b.fpoly, [](auto x, auto y) { return x <=> y; }); r != 0) return r;
  return cmp_seq(a.qpoly, b.qpoly, cmp_rat);
}

Place Place::at_prime(Int p) {
  Place v;
  v.kind = Kind::Prime;
  v.prime = std::move(p);
  return v;
}

Place Place::at(FqPoly pi) {
  Place v;
  v.kind = Kind::Poly;
  v.fpoly = std::move(pi);
  return v;
}

Place Place::at(QPoly pi) {
  Place v;
  v.kind = Kind::Poly;
  v.qpoly = std::move(pi);
  return v;
}

bool operator==(const Place& a, const Place& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Place& a, const Place& b) {
  if (auto r = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); r != 0) return r;
  if (auto r = cmp_int(a.prime, b.prime); r != 0) return r;
  if (auto r = cmp_seq(a.fpoly, b.fpoly, [](auto x, auto y) { return x <=> y; }); r != 0) return r;
  return cmp_seq(a.qpoly, b.qpoly, cmp_rat);
}

// ------------------------------------------------------------- integers

std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n_in) {
  if (n_in <= 0) throw Error(Errc::InvalidInput, "factor_integer expects a positive integer");
  Int n = n_in;
  std::vector<std::pair<Int, unsigned>> out;
  auto strip = [&](unsigned long d) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
      ++e;
    }
    if (e) out.emplace_back(Int(d), e);
  };
  strip(2);
  for (unsigned long d = 3; Int(d) * d <= n; d += 2) strip(d);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int legendre(const Int& a, const Int& p) {
  if (p == 2) throw Error(Errc::EvenPrimeForLegendre, "Legendre symbol needs an odd prime");
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

int legendre(const mpq_class& a, const Int& p) {
  return legendre(Int(a.get_num()), p) * legendre(Int(a.get_den()), p);
}

// ----------------------------------------------------------------- Field

struct Field::Impl {
  FieldKind kind;
  std::shared_ptr<const FiniteField> fq;
};

namespace {

std::shared_ptr<const FiniteField> cached_fq(std::uint32_t p, unsigned e) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, e}];
  if (!slot) slot = std::make_shared<const FiniteField>(p, e);
  return slot;
}

template <class Alg, class P>
RatFun<P> rf_make(const Alg& R, P num, P den) {
  R.trim(num);
  R.trim(den);
  if (den.empty()) throw Error(Errc::ZeroInversion, "rational function with zero denominator");
  if (num.empty()) return {P{}, R.one()};
  P g = R.gcd(num, den);
  if (R.deg(g) > 0) {
    num = R.quo(num, g);
    den = R.quo(den, g);
  }
  auto c = R.ops().div(R.ops().one(), den.back());
  return {R.scale(c, num), R.scale(c, den)};
}

template <class Alg, class P>
RatFun<P> rf_add(const Alg& R, const RatFun<P>& a, const RatFun<P>& b) {
  return rf_make(R, R.add(R.mul(a.num, b.den), R.mul(b.num, a.den)), R.mul(a.den, b.den));
}

template <class Alg, class P>
RatFun<P> rf_mul(const Alg& R, const RatFun<P>& a, const RatFun<P>& b) {
  return rf_make(R, R.mul(a.num, b.num), R.mul(a.den, b.den));
}

template <class Alg, class P>
RatFun<P> rf_inv(const Alg& R, const RatFun<P>& a) {
  if (a.num.empty()) throw Error(Errc::ZeroInversion, "inverse of zero rational function");
  return rf_make(R, a.den, a.num);
}

template <class T>
const T& get_as(const Elem& e) {
  if (auto p = std::get_if<T>(&e.v)) return *p;
  throw Error(Errc::MixedFields, "element does not belong to this field");
}

void sq_parity(const std::vector<std::pair<Int, unsigned>>& f, std::set<Int>& odd) {
  for (const auto& [p, e] : f)
    if (e % 2) {
      if (!odd.erase(p)) odd.insert(p);
    }
}

// Square class data of a nonzero rational.
void rational_class(const mpq_class& a, bool& negative, std::vector<Int>& primes) {
  if (a == 0) throw Error(Errc::ZeroArgument, "square class of zero");
  negative = sgn(a) < 0;
  std::set<Int> odd;
  Int n = abs(Int(a.get_num()));
  Int d = a.get_den();
  if (n > 1) sq_parity(factor_integer(n), odd);
  if (d > 1) sq_parity(factor_integer(d), odd);
  primes.assign(odd.begin(), odd.end());
}

std::vector<Int> sym_diff(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
                                [](const Int& x, const Int& y) { return x < y; });
  return out;
}

template <class Alg, class P>
P squarefree_product(const Alg& R, const P& f, const P& g) {
  P gg = R.gcd(f, g);
  P prod = R.mul(f, g);
  if (R.deg(gg) > 0) prod = R.quo(prod, R.mul(gg, gg));
  return prod;
}

template <class Ops>
std::string format_poly(const PolyAlg<Ops>& R, const typename PolyAlg<Ops>::P& a,
                        const std::function<std::string(const typename Ops::value_type&)>& coef) {
  (void)R;
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (R.ops().is_zero(a[i])) continue;
    std::string c = coef(a[i]);
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    if (c.find_first_of("+-/") != std::string::npos && i > 0) c = "(" + c + ")";
    std::string term;
    if (i == 0) {
      term = c;
    } else {
      if (c != "1") term = c + "*";
      term += "t";
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (out.empty()) {
      out = (neg ? "-" : "") + term;
    } else {
      out += (neg ? "-" : "+") + term;
    }
  }
  return out;
}

}  // namespace

Field Field::finite(std::uint32_t p, unsigned degree) {
  return Field(std::make_shared<const Impl>(Impl{FieldKind::Finite, cached_fq(p, degree)}));
}

Field Field::finite(std::shared_ptr<const FiniteField> f) {
  return Field(std::make_shared<const Impl>(Impl{FieldKind::Finite, std::move(f)}));
}

Field Field::rationals() { return Field(std::make_shared<const Impl>(Impl{FieldKind::Rationals, nullptr})); }

Field Field::rational_functions(const Field& base) {
  switch (base.kind()) {
    case FieldKind::Finite:
      return Field(std::make_shared<const Impl>(Impl{FieldKind::FiniteRatFun, base.impl_->fq}));
    case FieldKind::Rationals:
      return Field(std::make_shared<const Impl>(Impl{FieldKind::RationalRatFun, nullptr}));
    default:
      throw Error(Errc::UnsupportedField, "rational functions over " + base.name());
  }
}

Field Field::parse(std::string_view spec) {
  std::string s(spec);
  if (s == "Q") return rationals();
  if (s == "Qt" || s == "Q(t)") return rational_functions(rationals());
  if (s.size() >= 2 && s[0] == 'F') {
    bool fun = false;
    std::string digits = s.substr(1);
    if (!digits.empty() && digits.back() == 't') {
      fun = true;
      digits.pop_back();
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); }))
      throw Error(Errc::InvalidInput, "bad field spec '" + s + "'");
    unsigned long q = std::stoul(digits);
    if (q < 3) throw Error(Errc::InvalidInput, "bad field order in '" + s + "'");
    if (q % 2 == 0) throw Error(Errc::EvenQ, "characteristic 2 is not supported");
    std::uint32_t p = 0;
    for (std::uint32_t d = 3; static_cast<unsigned long>(d) * d <= q; d += 2)
      if (q % d == 0) {
        p = d;
        break;
      }
    if (p == 0) p = static_cast<std::uint32_t>(q);
    unsigned e = 0;
    unsigned long r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) throw Error(Errc::InvalidInput, "field order must be a prime power: '" + s + "'");
    Field f = finite(p, e);
    return fun ? rational_functions(f) : f;
  }
  throw Error(Errc::InvalidInput, "unknown field spec '" + s + "'");
}

FieldKind Field::kind() const { return impl_->kind; }

bool Field::is_function_field() const {
  return kind() == FieldKind::FiniteRatFun || kind() == FieldKind::RationalRatFun;
}

const FiniteField& Field::fq() const {
  if (!impl_->fq) throw Error(Errc::UnsupportedField, name() + " is not built on a finite field");
  return *impl_->fq;
}

std::shared_ptr<const FiniteField> Field::fq_ptr() const { return impl_->fq; }

Field Field::base() const {
  switch (kind()) {
    case FieldKind::FiniteRatFun:
      return Field::finite(impl_->fq);
    case FieldKind::RationalRatFun:
      return rationals();
    default:
      throw Error(Errc::UnsupportedField, name() + " is not a rational function field");
  }
}

std::string Field::name() const {
  switch (kind()) {
    case FieldKind::Finite:
      return impl_->fq->name();
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::FiniteRatFun:
      return impl_->fq->name() + "t";
    case FieldKind::RationalRatFun:
      return "Qt";
  }
  return "?";
}

bool operator==(const Field& a, const Field& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.kind() != b.kind()) return false;
  if (!a.impl_->fq) return true;
  return a.impl_->fq == b.impl_->fq ||
         (a.impl_->fq->characteristic() == b.impl_->fq->characteristic() &&
          a.impl_->fq->modulus() == b.impl_->fq->modulus());
}

// ------------------------------------------------------------ elements

Elem Field::zero() const { return from_int(0); }
Elem Field::one() const { return from_int(1); }

Elem Field::from_int(long long n) const {
  switch (kind()) {
    case FieldKind::Finite:
      return {fq().from_int(n)};
    case FieldKind::Rationals:
      return {mpq_class(static_cast<long>(n))};
    case FieldKind::FiniteRatFun: {
      PolyAlg<FqOps> R(FqOps{&fq()});
      return {FqRat{R.constant(fq().from_int(n)), R.one()}};
    }
    case FieldKind::RationalRatFun: {
      PolyAlg<QOps> R(QOps{});
      return {QRat{R.constant(mpq_class(static_cast<long>(n))), R.one()}};
    }
  }
  return {};
}

Elem Field::from_rational(const mpq_class& r) const {
  switch (kind()) {
    case FieldKind::Rationals:
      return {r};
    case FieldKind::RationalRatFun:
      return {QRat{PolyAlg<QOps>(QOps{}).constant(r), QPoly{1}}};
    case FieldKind::Finite:
    case FieldKind::FiniteRatFun: {
      Int n = r.get_num(), d = r.get_den();
      Int p = fq().characteristic();
      Int nr, dr;
      mpz_fdiv_r(nr.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
      mpz_fdiv_r(dr.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
      if (dr == 0) throw Error(Errc::ZeroInversion, "denominator divisible by the characteristic");
      Elem a = from_int(static_cast<long long>(nr.get_ui()));
      Elem b = from_int(static_cast<long long>(dr.get_ui()));
      return div(a, b);
    }
  }
  return {};
}

Elem Field::t() const {
  switch (kind()) {
    case FieldKind::FiniteRatFun:
      return {FqRat{FqPoly{0, 1}, FqPoly{1}}};
    case FieldKind::RationalRatFun:
      return {QRat{QPoly{0, 1}, QPoly{1}}};
    default:
      throw Error(Errc::UnsupportedField, name() + " has no variable t");
  }
}

Elem Field::from_base(const Elem& c) const {
  switch (kind()) {
    case FieldKind::FiniteRatFun: {
      PolyAlg<FqOps> R(FqOps{&fq()});
      return {FqRat{R.constant(get_as<FiniteField::Elem>(c)), R.one()}};
    }
    case FieldKind::RationalRatFun:
      return {QRat{PolyAlg<QOps>(QOps{}).constant(get_as<mpq_class>(c)), QPoly{1}}};
    default:
      return c;
  }
}

Elem Field::from_fq_rat(FqPoly num, FqPoly den) const {
  if (kind() != FieldKind::FiniteRatFun) throw Error(Errc::MixedFields, "not an F_q(t) field");
  return {rf_make(PolyAlg<FqOps>(FqOps{&fq()}), std::move(num), std::move(den))};
}

Elem Field::from_q_rat(QPoly num, QPoly den) const {
  if (kind() != FieldKind::RationalRatFun) throw Error(Errc::MixedFields, "not a Q(t) field");
  return {rf_make(PolyAlg<QOps>(QOps{}), std::move(num), std::move(den))};
}

Elem Field::add(const Elem& a, const Elem& b) const {
  switch (kind()) {
    case FieldKind::Finite:
      return {fq().add(get_as<FiniteField::Elem>(a), get_as<FiniteField::Elem>(b))};
    case FieldKind::Rationals:
      return {mpq_class(get_as<mpq_class>(a) + get_as<mpq_class>(b))};
    case FieldKind::FiniteRatFun:
      return {rf_add(PolyAlg<FqOps>(FqOps{&fq()}), get_as<FqRat>(a), get_as<FqRat>(b))};
    case FieldKind::RationalRatFun:
      return {rf_add(PolyAlg<QOps>(QOps{}), get_as<QRat>(a), get_as<QRat>(b))};
  }
  return {};
}

Elem Field::neg(const Elem& a) const {
  switch (kind()) {
    case FieldKind::Finite:
      return {fq().neg(get_as<FiniteField::Elem>(a))};
    case FieldKind::Rationals:
      return {mpq_class(-get_as<mpq_class>(a))};
    case FieldKind::FiniteRatFun: {
      const auto& x = get_as<FqRat>(a);
      return {FqRat{PolyAlg<FqOps>(FqOps{&fq()}).neg(x.num), x.den}};
    }
    case FieldKind::RationalRatFun: {
      const auto& x = get_as<QRat>(a);
      return {QRat{PolyAlg<QOps>(QOps{}).neg(x.num), x.den}};
    }
  }
  return {};
}

Elem Field::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Field::mul(const Elem& a, const Elem& b) const {
  switch (kind()) {
    case FieldKind::Finite:
      return {fq().mul(get_as<FiniteField::Elem>(a), get_as<FiniteField::Elem>(b))};
    case FieldKind::Rationals:
      return {mpq_class(get_as<mpq_class>(a) * get_as<mpq_class>(b))};
    case FieldKind::FiniteRatFun:
      return {rf_mul(PolyAlg<FqOps>(FqOps{&fq()}), get_as<FqRat>(a), get_as<FqRat>(b))};
    case FieldKind::RationalRatFun:
      return {rf_mul(PolyAlg<QOps>(QOps{}), get_as<QRat>(a), get_as<QRat>(b))};
  }
  return {};
}

Elem Field::inv(const Elem& a) const {
  switch (kind()) {
    case FieldKind::Finite:
      return {fq().inv(get_as<FiniteField::Elem>(a))};
    case FieldKind::Rationals: {
      const auto& x = get_as<mpq_class>(a);
      if (x == 0) throw Error(Errc::ZeroInversion, "inverse of zero in Q");
      return {mpq_class(1 / x)};
    }
    case FieldKind::FiniteRatFun:
      return {rf_inv(PolyAlg<FqOps>(FqOps{&fq()}), get_as<FqRat>(a))};
    case FieldKind::RationalRatFun:
      return {rf_inv(PolyAlg<QOps>(QOps{}), get_as<QRat>(a))};
  }
  return {};
}

Elem Field::pow(const Elem& a, long k) const {
  if (k < 0) return pow(inv(a), -k);
  Elem r = one(), b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    k >>= 1;
    if (k) b = mul(b, b);
  }
  return r;
}

bool Field::is_zero(const Elem& a) const {
  switch (kind()) {
    case FieldKind::Finite:
      return get_as<FiniteField::Elem>(a) == 0;
    case FieldKind::Rationals:
      return get_as<mpq_class>(a) == 0;
    case FieldKind::FiniteRatFun:
      return get_as<FqRat>(a).num.empty();
    case FieldKind::RationalRatFun:
      return get_as<QRat>(a).num.empty();
  }
  return false;
}

bool Field::is_constant(const Elem& a) const {
  switch (kind()) {
    case FieldKind::FiniteRatFun: {
      const auto& x = get_as<FqRat>(a);
      return x.num.size() <= 1 && x.den.size() == 1;
    }
    case FieldKind::RationalRatFun: {
      const auto& x = get_as<QRat>(a);
      return x.num.size() <= 1 && x.den.size() == 1;
    }
    default:
      return true;
  }
}

// ---------------------------------------------------------------- parsing

namespace {

class ElemParser {
 public:
  ElemParser(const Field& f, std::string text) : f_(f), s_(std::move(text)) {}

  Elem parse() {
    Elem e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::InvalidInput, "cannot parse element '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Elem expr() {
    Elem e = term();
    for (;;) {
      if (eat('+'))
        e = f_.add(e, term());
      else if (eat('-'))
        e = f_.sub(e, term());
      else
        return e;
    }
  }
  Elem term() {
    Elem e = unary();
    for (;;) {
      if (eat('*')) {
        e = f_.mul(e, unary());
      } else if (eat('/')) {
        Elem d = unary();
        if (f_.is_zero(d)) throw Error(Errc::ZeroInversion, "division by zero in '" + s_ + "'");
        e = f_.div(e, d);
      } else {
        skip();
        // Implicit multiplication: "2t", "3x".
        if (pos_ < s_.size() && (s_[pos_] == 't' || s_[pos_] == 'x' || s_[pos_] == '('))
          e = f_.mul(e, unary());
        else
          return e;
      }
    }
  }
  Elem unary() {
    if (eat('-')) return f_.neg(unary());
    if (eat('+')) return unary();
    return power();
  }
  Elem power() {
    Elem b = atom();
    if (eat('^')) {
      skip();
      bool neg = false;
      if (pos_ < s_.size() && s_[pos_] == '-') {
        neg = true;
        ++pos_;
      }
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent expected");
      long k = std::stol(s_.substr(start, pos_ - start));
      if (neg && f_.is_zero(b)) throw Error(Errc::ZeroInversion, "negative power of zero");
      b = f_.pow(b, neg ? -k : k);
    }
    return b;
  }
  Elem atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Elem e = expr();
      if (!eat(')')) fail("')' expected");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return f_.from_rational(mpq_class(Int(s_.substr(start, pos_ - start))));
    }
    if (c == 't') {
      ++pos_;
      return f_.t();
    }
    if (c == 'x') {
      ++pos_;
      if (!f_.fq_ptr() || f_.fq().degree() == 1) fail("'x' only names the generator of an extension field");
      Elem x{f_.fq().x()};
      return f_.is_function_field() ? f_.from_base(x) : x;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Field& f_;
  std::string s_;
  std::size_t pos_ = 0;
};

std::string normalize_minus(std::string_view text) {
  std::string s(text);
  const std::string uminus = "\xE2\x88\x92";
  for (std::size_t i; (i = s.find(uminus)) != std::string::npos;) s.replace(i, uminus.size(), "-");
  return s;
}

}  // namespace

Elem Field::parse_elem(std::string_view text) const { return ElemParser(*this, normalize_minus(text)).parse(); }

std::string Field::format(const Elem& a) const {
  switch (kind()) {
    case FieldKind::Finite:
      return fq().format(get_as<FiniteField::Elem>(a));
    case FieldKind::Rationals:
      return get_as<mpq_class>(a).get_str();
    case FieldKind::FiniteRatFun: {
      PolyAlg<FqOps> R(FqOps{&fq()});
      const auto& x = get_as<FqRat>(a);
      std::function<std::string(const FiniteField::Elem&)> cf = [&](const FiniteField::Elem& c) {
        return fq().format(c);
      };
      std::string n = format_poly(R, x.num, cf);
      if (x.den.size() == 1) return n;
      return "(" + n + ")/(" + format_poly(R, x.den, cf) + ")";
    }
    case FieldKind::RationalRatFun: {
      PolyAlg<QOps> R(QOps{});
      const auto& x = get_as<QRat>(a);
      std::function<std::string(const mpq_class&)> cf = [](const mpq_class& c) { return c.get_str(); };
      std::string n = format_poly(R, x.num, cf);
      if (x.den.size() == 1) return n;
      return "(" + n + ")/(" + format_poly(R, x.den, cf) + ")";
    }
  }
  return "?";
}

// ------------------------------------------------------- square classes

SquareClass Field::square_class(const Elem& a) const {
  if (is_zero(a)) throw Error(Errc::ZeroArgument, "square class of zero");
  SquareClass c;
  switch (kind()) {
    case FieldKind::Finite:
      c.nonsquare = !fq().is_square(get_as<FiniteField::Elem>(a));
      break;
    case FieldKind::Rationals:
      rational_class(get_as<mpq_class>(a), c.negative, c.primes);
      break;
    case FieldKind::FiniteRatFun: {
      PolyAlg<FqOps> R(FqOps{&fq()});
      const auto& x = get_as<FqRat>(a);
      c.nonsquare = !fq().is_square(x.num.back());
      FqPoly part = R.one();
      for (const FqPoly* p : {&x.num, &x.den})
        for (const auto& [g, m] : squarefree_factor(fq(), *p))
          if (m % 2) part = R.mul(part, g);
      c.fpoly = std::move(part);
      break;
    }
    case FieldKind::RationalRatFun: {
      PolyAlg<QOps> R(QOps{});
      const auto& x = get_as<QRat>(a);
      rational_class(x.num.back(), c.negative, c.primes);
      QPoly part = R.one();
      for (const QPoly* p : {&x.num, &x.den})
        for (const auto& [g, m] : squarefree_factor(*p))
          if (m % 2) part = R.mul(part, g);
      c.qpoly = std::move(part);
      break;
    }
  }
  return c;
}

bool Field::is_square(const Elem& a) const { return square_class(a) == class_one(); }

SquareClass Field::class_one() const {
  SquareClass c;
  if (kind() == FieldKind::FiniteRatFun) c.fpoly = FqPoly{1};
  if (kind() == FieldKind::RationalRatFun) c.qpoly = QPoly{1};
  return c;
}

SquareClass Field::class_mul(const SquareClass& a, const SquareClass& b) const {
  SquareClass c;
  c.nonsquare = a.nonsquare != b.nonsquare;
  c.negative = a.negative != b.negative;
  c.primes = sym_diff(a.primes, b.primes);
  if (kind() == FieldKind::FiniteRatFun)
    c.fpoly = squarefree_product(PolyAlg<FqOps>(FqOps{&fq()}), a.fpoly, b.fpoly);
  if (kind() == FieldKind::RationalRatFun) c.qpoly = squarefree_product(PolyAlg<QOps>(QOps{}), a.qpoly, b.qpoly);
  return c;
}

Elem Field::representative(const SquareClass& c) const {
  auto rational_rep = [&]() {
    Int n = c.negative ? -1 : 1;
    for (const auto& p : c.primes) n *= p;
    return mpq_class(n);
  };
  switch (kind()) {
    case FieldKind::Finite:
      return {c.nonsquare ? fq().generator() : fq().one()};
    case FieldKind::Rationals:
      return {rational_rep()};
    case FieldKind::FiniteRatFun: {
      PolyAlg<FqOps> R(FqOps{&fq()});
      FiniteField::Elem k = c.nonsquare ? fq().generator() : fq().one();
      return {FqRat{R.scale(k, c.fpoly), R.one()}};
    }
    case FieldKind::RationalRatFun: {
      PolyAlg<QOps> R(QOps{});
      return {QRat{R.scale(rational_rep(), c.qpoly), R.one()}};
    }
  }
  return {};
}

std::string Field::format_class(const SquareClass& c) const { return "<" + format(representative(c)) + ">"; }

// ---------------------------------------------------------------- places

namespace {

FqPoly place_modulus(const Place& v) {
  if (v.is_infinite()) return FqPoly{0, 1};  // residues at infinity are constants
  return v.fpoly;
}

}  // namespace

std::pair<long, ResidueValue> Field::valuation(const Elem& a, const Place& v) const {
  if (is_zero(a)) throw Error(Errc::ZeroArgument, "valuation of zero");
  switch (kind()) {
    case FieldKind::Finite:
      throw Error(Errc::UnsupportedPlace, "finite fields carry no nontrivial valuations");
    case FieldKind::Rationals: {
      if (v.kind != Place::Kind::Prime) throw Error(Errc::InfinitePlace, "archimedean place of Q has no valuation");
      const auto& x = get_as<mpq_class>(a);
      Int n = x.get_num(), d = x.get_den();
      long vn = static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), v.prime.get_mpz_t()));
      long vd = static_cast<long>(mpz_remove(d.get_mpz_t(), d.get_mpz_t(), v.prime.get_mpz_t()));
      Int di;
      mpz_invert(di.get_mpz_t(), d.get_mpz_t(), v.prime.get_mpz_t());
      Int r = n * di;
      mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), v.prime.get_mpz_t());
      return {vn - vd, ResidueValue{r}};
    }
    case FieldKind::FiniteRatFun: {
      PolyAlg<FqOps> R(FqOps{&fq()});
      const auto& x = get_as<FqRat>(a);
      if (v.is_infinite()) {
        long val = R.deg(x.den) - R.deg(x.num);
        return {val, ResidueValue{FqPoly{x.num.back()}}};
      }
      if (v.kind != Place::Kind::Poly) throw Error(Errc::UnsupportedPlace, "not a place of " + name());
      auto [vn, un] = R.split_off(v.fpoly, x.num);
      auto [vd, ud] = R.split_off(v.fpoly, x.den);
      FqPoly r = R.mulmod(un, R.invmod(ud, v.fpoly), v.fpoly);
      return {vn - vd, ResidueValue{r}};
    }
    case FieldKind::RationalRatFun: {
      PolyAlg<QOps> R(QOps{});
      const auto& x = get_as<QRat>(a);
      if (v.is_infinite()) {
        long val = R.deg(x.den) - R.deg(x.num);
        return {val, ResidueValue{mpq_class(x.num.back())}};
      }
      if (v.kind != Place::Kind::Poly || v.qpoly.size() != 2)
        throw Error(Errc::UnsupportedPlace, "Q(t) supports only degree-one places");
      mpq_class root = -v.qpoly[0] / v.qpoly[1];
      auto [vn, un] = R.split_off(v.qpoly, x.num);
      auto [vd, ud] = R.split_off(v.qpoly, x.den);
      return {vn - vd, ResidueValue{mpq_class(R.eval(un, root) / R.eval(ud, root))}};
    }
  }
  return {};
}

ResidueValue Field::residue_of(const Place& v, const Elem& unit) const {
  auto [val, r] = valuation(unit, v);
  if (val != 0) throw Error(Errc::NonUnitArgument, format(unit) + " is not a unit at " + format_place(v));
  return r;
}

std::vector<Place> Field::class_places(const SquareClass& c) const {
  std::vector<Place> out;
  switch (kind()) {
    case FieldKind::Finite:
      break;
    case FieldKind::Rationals:
      for (const auto& p : c.primes) out.push_back(Place::at_prime(p));
      break;
    case FieldKind::FiniteRatFun:
      for (auto& [g, m] : factor_poly(fq(), c.fpoly)) out.push_back(Place::at(g));
      break;
    case FieldKind::RationalRatFun:
      throw Error(Errc::UnsupportedField, "Q(t) has no factorization oracle");
  }
  return out;
}

std::vector<Place> Field::support(const Elem& a) const {
  if (is_zero(a)) throw Error(Errc::ZeroArgument, "support of zero");
  std::vector<Place> out;
  switch (kind()) {
    case FieldKind::Finite:
      break;
    case FieldKind::Rationals: {
      const auto& x = get_as<mpq_class>(a);
      Int n = abs(Int(x.get_num()));
      Int d = x.get_den();
      std::set<Int> ps;
      if (n > 1)
        for (auto& [p, e] : factor_integer(n)) ps.insert(p);
      if (d > 1)
        for (auto& [p, e] : factor_integer(d)) ps.insert(p);
      for (const auto& p : ps) out.push_back(Place::at_prime(p));
      break;
    }
    case FieldKind::FiniteRatFun: {
      const auto& x = get_as<FqRat>(a);
      std::set<Place> ps;
      for (const FqPoly* p : {&x.num, &x.den})
        for (auto& [g, m] : factor_poly(fq(), *p)) ps.insert(Place::at(g));
      out.assign(ps.begin(), ps.end());
      break;
    }
    case FieldKind::RationalRatFun:
      throw Error(Errc::UnsupportedField, "Q(t) has no factorization oracle");
  }
  return out;
}

std::vector<Place> Field::hilbert_places(const std::vector<SquareClass>& classes) const {
  std::set<Place> ps;
  switch (kind()) {
    case FieldKind::Finite:
      return {};
    case FieldKind::Rationals:
      ps.insert(Place::infinite());
      ps.insert(Place::at_prime(2));
      break;
    case FieldKind::FiniteRatFun:
      ps.insert(Place::infinite());
      break;
    case FieldKind::RationalRatFun:
      throw Error(Errc::UnsupportedField, "Hilbert symbols over Q(t) are not supported");
  }
  for (const auto& c : classes)
    for (auto& v : class_places(c)) ps.insert(std::move(v));
  return {ps.begin(), ps.end()};
}

Field Field::residue_field(const Place& v) const {
  switch (kind()) {
    case FieldKind::Rationals:
      if (v.kind != Place::Kind::Prime) throw Error(Errc::InfinitePlace, "no residue field at infinity");
      if (v.prime == 2 || !v.prime.fits_ulong_p() || v.prime > 0x7fffffffUL)
        throw Error(Errc::UnsupportedPlace, "residue field at " + v.prime.get_str() + " not supported");
      return Field::finite(static_cast<std::uint32_t>(v.prime.get_ui()));
    case FieldKind::FiniteRatFun:
      if (v.is_infinite() || v.fpoly.size() == 2) return base();
      if (fq().is_prime_field())
        return Field::finite(std::make_shared<const FiniteField>(fq().characteristic(), v.fpoly));
      throw Error(Errc::UnsupportedPlace, "residue extension of a non-prime constant field");
    case FieldKind::RationalRatFun:
      if (v.is_infinite() || v.qpoly.size() == 2) return base();
      throw Error(Errc::UnsupportedPlace, "Q(t) supports only degree-one places");
    default:
      throw Error(Errc::UnsupportedPlace, name() + " has no places");
  }
}

Elem Field::residue_elem(const Place& v, const ResidueValue& r) const {
  switch (kind()) {
    case FieldKind::Rationals:
      return {static_cast<FiniteField::Elem>(std::get<Int>(r.v).get_ui())};
    case FieldKind::FiniteRatFun: {
      const auto& p = std::get<FqPoly>(r.v);
      if (v.is_infinite() || v.fpoly.size() == 2) return {p.empty() ? FiniteField::Elem(0) : p[0]};
      std::vector<std::uint32_t> digits(p.begin(), p.end());
      digits.resize(v.fpoly.size() - 1, 0);
      std::uint32_t pch = fq().characteristic();
      FiniteField::Elem e = 0;
      for (std::size_t i = digits.size(); i-- > 0;) e = e * pch + digits[i];
      return {e};
    }
    case FieldKind::RationalRatFun:
      return {std::get<mpq_class>(r.v)};
    default:
      throw Error(Errc::UnsupportedPlace, name() + " has no places");
  }
}

ResidueValue Field::residue_one(const Place& v) const {
  switch (kind()) {
    case FieldKind::Rationals:
      return {Int(1)};
    case FieldKind::FiniteRatFun:
      (void)v;
      return {FqPoly{1}};
    case FieldKind::RationalRatFun:
      return {mpq_class(1)};
    default:
      throw Error(Errc::UnsupportedPlace, name() + " has no places");
  }
}

ResidueValue Field::residue_mul(const Place& v, const ResidueValue& a, const ResidueValue& b) const {
  switch (kind()) {
    case FieldKind::Rationals: {
      Int r = std::get<Int>(a.v) * std::get<Int>(b.v);
      mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), v.prime.get_mpz_t());
      return {r};
    }
    case FieldKind::FiniteRatFun: {
      PolyAlg<FqOps> R(FqOps{&fq()});
      return {R.mulmod(std::get<FqPoly>(a.v), std::get<FqPoly>(b.v), place_modulus(v))};
    }
    case FieldKind::RationalRatFun:
      return {mpq_class(std::get<mpq_class>(a.v) * std::get<mpq_class>(b.v))};
    default:
      throw Error(Errc::UnsupportedPlace, name() + " has no places");
  }
}

ResidueValue Field::residue_pow(const Place& v, const ResidueValue& a, long k) const {
  switch (kind()) {
    case FieldKind::Rationals: {
      Int base = std::get<Int>(a.v);
      if (k < 0) {
        if (mpz_invert(base.get_mpz_t(), base.get_mpz_t(), v.prime.get_mpz_t()) == 0)
          throw Error(Errc::ZeroInversion, "residue not invertible");
        k = -k;
      }
      Int r;
      mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k), v.prime.get_mpz_t());
      return {r};
    }
    case FieldKind::FiniteRatFun: {
      PolyAlg<FqOps> R(FqOps{&fq()});
      FqPoly m = place_modulus(v);
      FqPoly base = std::get<FqPoly>(a.v);
      if (k < 0) {
        base = R.invmod(base, m);
        k = -k;
      }
      return {R.powmod(base, Int(static_cast<unsigned long>(k)), m)};
    }
    case FieldKind::RationalRatFun: {
      mpq_class base = std::get<mpq_class>(a.v);
      if (k < 0) {
        if (base == 0) throw Error(Errc::ZeroInversion, "residue not invertible");
        base = 1 / base;
        k = -k;
      }
      mpq_class r = 1;
      for (long i = 0; i < k; ++i) r *= base;
      return {r};
    }
    default:
      throw Error(Errc::UnsupportedPlace, name() + " has no places");
  }
}

bool Field::residue_is_one(const Place& v, const ResidueValue& a) const { return a == residue_one(v); }

int Field::residue_character(const Place& v, const ResidueValue& a) const {
  switch (kind()) {
    case FieldKind::Rationals:
      return legendre(std::get<Int>(a.v), v.prime);
    case FieldKind::FiniteRatFun: {
      PolyAlg<FqOps> R(FqOps{&fq()});
      FqPoly m = place_modulus(v);
      const auto& x = std::get<FqPoly>(a.v);
      if (x.empty()) return 0;
      Int qd;
      mpz_ui_pow_ui(qd.get_mpz_t(), static_cast<unsigned long>(fq().order()), static_cast<unsigned long>(m.size() - 1));
      FqPoly r = R.powmod(x, (qd - 1) / 2, m);
      return r == FqPoly{1} ? 1 : -1;
    }
    default:
      throw Error(Errc::UnsupportedField, "no quadratic residue character for " + name());
  }
}

std::string Field::format_residue(const Place& v, const ResidueValue& a) const {
  switch (kind()) {
    case FieldKind::Rationals:
      return std::get<Int>(a.v).get_str();
    case FieldKind::FiniteRatFun: {
      PolyAlg<FqOps> R(FqOps{&fq()});
      std::function<std::string(const FiniteField::Elem&)> cf = [&](const FiniteField::Elem& c) {
        return fq().format(c);
      };
      (void)v;
      return format_poly(R, std::get<FqPoly>(a.v), cf);
    }
    case FieldKind::RationalRatFun:
      return std::get<mpq_class>(a.v).get_str();
    default:
      return "?";
  }
}

std::string Field::format_place(const Place& v) const {
  switch (v.kind) {
    case Place::Kind::Infinite:
      return "inf";
    case Place::Kind::Prime:
      return v.prime.get_str();
    case Place::Kind::Poly:
      if (kind() == FieldKind::FiniteRatFun) {
        PolyAlg<FqOps> R(FqOps{&fq()});
        std::function<std::string(const FiniteField::Elem&)> cf = [&](const FiniteField::Elem& c) {
          return fq().format(c);
        };
        return format_poly(R, v.fpoly, cf);
      } else {
        PolyAlg<QOps> R(QOps{});
        std::function<std::string(const mpq_class&)> cf = [](const mpq_class& c) { return c.get_str(); };
        return format_poly(R, v.qpoly, cf);
      }
  }
  return "?";
}

ResidueValue Field::tame_symbol(const Elem& a, const Elem& b, const Place& v) const {
  if (is_zero(a) || is_zero(b)) throw Error(Errc::ZeroArgument, "tame symbol of zero");
  if (kind() == FieldKind::Rationals && v.kind != Place::Kind::Prime)
    throw Error(Errc::InfinitePlace, "tame symbol at the archimedean place");
  auto [va, ra] = valuation(a, v);
  auto [vb, rb] = valuation(b, v);
  ResidueValue r = residue_mul(v, residue_pow(v, ra, vb), residue_pow(v, rb, -va));
  if ((va * vb) % 2 != 0) r = residue_mul(v, r, residue_of(v, from_int(-1)));
  return r;
}

int Field::sign(const Elem& a) const {
  if (kind() != FieldKind::Rationals) throw Error(Errc::UnsupportedField, name() + " has no real place");
  const auto& x = get_as<mpq_class>(a);
  if (x == 0) throw Error(Errc::ZeroArgument, "sign of zero");
  return sgn(x) < 0 ? -1 : 1;
}

int Field::sign(const SquareClass& c) const {
  if (kind() != FieldKind::Rationals) throw Error(Errc::UnsupportedField, name() + " has no real place");
  return c.negative ? -1 : 1;
}

namespace {

// (a,b)_2 for nonzero rationals.
int hilbert_two(const mpq_class& a, const mpq_class& b) {
  auto split = [](const mpq_class& x, long& val, unsigned& unit_mod8) {
    Int n = x.get_num(), d = x.get_den();
    Int two = 2;
    long vn = static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), two.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(d.get_mpz_t(), d.get_mpz_t(), two.get_mpz_t()));
    val = vn - vd;
    // d^{-1} = d mod 8 for odd d.
    Int u = n * d;
    mpz_fdiv_r_ui(u.get_mpz_t(), u.get_mpz_t(), 8);
    unit_mod8 = static_cast<unsigned>(u.get_ui());
  };
  long alpha, beta;
  unsigned u, w;
  split(a, alpha, u);
  split(b, beta, w);
  auto eps = [](unsigned x) { return ((x - 1) / 2) % 2; };
  auto omega = [](unsigned x) { return ((x * x - 1) / 8) % 2; };
  long e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
  return (e % 2 == 0) ? 1 : -1;
}

}  // namespace

int Field::hilbert(const Elem& a, const Elem& b, const Place& v) const {
  if (is_zero(a) || is_zero(b)) throw Error(Errc::ZeroArgument, "Hilbert symbol of zero");
  switch (kind()) {
    case FieldKind::Finite:
      throw Error(Errc::UnsupportedPlace, "finite fields carry no places");
    case FieldKind::Rationals: {
      const auto& x = get_as<mpq_class>(a);
      const auto& y = get_as<mpq_class>(b);
      if (v.is_infinite()) return (sgn(x) < 0 && sgn(y) < 0) ? -1 : 1;
      if (v.prime == 2) return hilbert_two(x, y);
      return residue_character(v, tame_symbol(a, b, v));
    }
    case FieldKind::FiniteRatFun:
      return residue_character(v, tame_symbol(a, b, v));
    case FieldKind::RationalRatFun:
      throw Error(Errc::UnsupportedField, "Hilbert symbols over Q(t) are not supported");
  }
  return 1;
}

int Field::hilbert(const SquareClass& a, const SquareClass& b, const Place& v) const {
  return hilbert(representative(a), representative(b), v);
}

}  // namespace kmw
