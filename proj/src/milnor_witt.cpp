#include "kmw/milnor_witt.hpp"

#include <cctype>
#include <set>

#include "kmw/error.hpp"

namespace kmw {

namespace {

constexpr int kMinDegree = -1;
constexpr int kMaxDegree = 3;

void check_degree(int n) {
  if (n < kMinDegree || n > kMaxDegree)
    throw Error(Errc::DegreeOverflow, "degree " + std::to_string(n) + " outside -1..3");
}

long small(const Int& n) {
  if (!n.fits_slong_p()) throw Error(Errc::InvalidInput, "coefficient too large");
  return n.get_si();
}

}  // namespace

MWElem::MWElem(Field f, int degree) : field_(std::move(f)), degree_(degree) { check_degree(degree); }

void MWElem::add_term(const Int& coeff, Monomial m) {
  if (coeff == 0) return;
  if (m.degree() != degree_) throw Error(Errc::InvalidInput, "monomial degree mismatch");
  for (const auto& a : m.syms)
    if (field_.is_zero(a)) throw Error(Errc::ZeroArgument, "[0] is undefined");
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->mono == m) {
      it->coeff += coeff;
      if (it->coeff == 0) terms_.erase(it);
      return;
    }
  }
  terms_.push_back({coeff, std::move(m)});
}

std::string MWElem::format() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [c, m] : terms_) {
    std::string body;
    for (int i = 0; i < m.eta; ++i) body += (body.empty() ? "" : "*") + std::string("eta");
    std::string syms;
    for (const auto& a : m.syms) syms += "[" + field_.format(a) + "]";
    if (!syms.empty()) body += (body.empty() ? "" : "*") + syms;
    Int mag = abs(c);
    std::string term;
    if (body.empty())
      term = mag.get_str();
    else
      term = (mag == 1 ? std::string() : mag.get_str() + "*") + body;
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

MWElem mw_symbol(const Field& f, const std::vector<Elem>& syms) {
  MWElem x(f, static_cast<int>(syms.size()));
  x.add_term(1, Monomial{0, syms});
  return x;
}

MWElem mw_zero(const Field& f, int degree) { return MWElem(f, degree); }

MWElem mw_one(const Field& f) { return mw_symbol(f, {}); }

MWElem mw_eta(const Field& f) {
  MWElem x(f, -1);
  x.add_term(1, Monomial{1, {}});
  return x;
}

MWElem h_elem(const Field& f) {
  MWElem x(f, 0);
  x.add_term(2, Monomial{0, {}});
  x.add_term(1, Monomial{1, {f.from_int(-1)}});
  return x;
}

MWElem mw_add(const MWElem& x, const MWElem& y) {
  require_same_field(x.field(), y.field());
  if (x.degree() != y.degree()) throw Error(Errc::InvalidInput, "adding elements of different degrees");
  MWElem r = x;
  for (const auto& [c, m] : y.terms()) r.add_term(c, m);
  return r;
}

MWElem mw_scale(const MWElem& x, const Int& n) {
  MWElem r(x.field(), x.degree());
  for (const auto& [c, m] : x.terms()) r.add_term(c * n, m);
  return r;
}

MWElem mw_neg(const MWElem& x) { return mw_scale(x, -1); }
MWElem mw_sub(const MWElem& x, const MWElem& y) { return mw_add(x, mw_neg(y)); }

MWElem mw_mul(const MWElem& x, const MWElem& y) {
  require_same_field(x.field(), y.field());
  MWElem r(x.field(), x.degree() + y.degree());
  for (const auto& [c, m] : x.terms())
    for (const auto& [d, n] : y.terms()) {
      Monomial p{m.eta + n.eta, m.syms};
      p.syms.insert(p.syms.end(), n.syms.begin(), n.syms.end());
      r.add_term(c * d, std::move(p));
    }
  return r;
}

MWElem eta_mul(const MWElem& x) { return mw_mul(mw_eta(x.field()), x); }

MWElem unit_action(const Elem& u, const MWElem& x) {
  const Field& f = x.field();
  if (f.is_zero(u)) throw Error(Errc::ZeroArgument, "<0> is undefined");
  MWElem etau(f, 0);
  etau.add_term(1, Monomial{1, {u}});
  return mw_add(x, mw_mul(etau, x));
}

VirtualForm witt_component(const MWElem& x) {
  const Field& f = x.field();
  VirtualForm phi(f);
  for (const auto& [c, m] : x.terms()) phi = vf_add(phi, vf_mul_int(pfister(f, m.syms), c));
  return phi;
}

namespace {

std::vector<Place> tame_places(const MWElem& x) {
  const Field& f = x.field();
  std::set<Place> ps;
  for (const auto& [c, m] : x.terms()) {
    if (m.eta != 0) continue;
    for (const auto& a : m.syms)
      for (auto& v : f.support(a)) ps.insert(v);
  }
  if (f.kind() == FieldKind::Rationals) ps.erase(Place::at_prime(2));
  return {ps.begin(), ps.end()};
}

int milnor_hilbert(const MWElem& x, const Place& v) {
  const Field& f = x.field();
  int s = 1;
  for (const auto& [c, m] : x.terms()) {
    if (m.eta != 0 || !mpz_odd_p(c.get_mpz_t())) continue;
    s *= f.hilbert(m.syms[0], m.syms[1], v);
  }
  return s;
}

}  // namespace

MilnorCoords milnor_coords(const MWElem& x) {
  const Field& f = x.field();
  MilnorCoords mc;
  mc.degree = x.degree();
  switch (x.degree()) {
    case -1:
      break;
    case 0:
      mc.rank = 0;
      for (const auto& [c, m] : x.terms())
        if (m.eta == 0) mc.rank += c;
      break;
    case 1:
      mc.unit = f.one();
      for (const auto& [c, m] : x.terms())
        if (m.eta == 0) mc.unit = f.mul(mc.unit, f.pow(m.syms[0], small(c)));
      break;
    case 2: {
      if (f.kind() == FieldKind::RationalRatFun)
        throw Error(Errc::UnsupportedField, "no K2 fingerprint over Q(t)");
      if (f.is_finite()) break;
      for (const auto& v : tame_places(x)) {
        ResidueValue r = f.residue_one(v);
        for (const auto& [c, m] : x.terms()) {
          if (m.eta != 0) continue;
          r = f.residue_mul(v, r, f.residue_pow(v, f.tame_symbol(m.syms[0], m.syms[1], v), small(c)));
        }
        if (!f.residue_is_one(v, r)) mc.tame.emplace(v, r);
      }
      if (f.kind() == FieldKind::Rationals) {
        mc.real = milnor_hilbert(x, Place::infinite());
        mc.two_adic = milnor_hilbert(x, Place::at_prime(2));
      }
      break;
    }
    default:
      throw Error(Errc::UnsupportedDegree, "Milnor coordinates are formal in degree 3");
  }
  return mc;
}

bool milnor_is_trivial(const MWElem& x) {
  MilnorCoords mc = milnor_coords(x);
  switch (mc.degree) {
    case 0:
      return mc.rank == 0;
    case 1:
      return x.field().is_one(mc.unit);
    case 2:
      return mc.tame.empty() && mc.real == 1 && mc.two_adic == 1;
    default:
      return true;
  }
}

bool mw_equal(const MWElem& x, const MWElem& y) {
  require_same_field(x.field(), y.field());
  if (x.degree() != y.degree()) throw Error(Errc::InvalidInput, "comparing elements of different degrees");
  if (x.degree() > 2) throw Error(Errc::UnsupportedDegree, "no equality oracle in degree 3");
  if (x.field().kind() == FieldKind::RationalRatFun)
    throw Error(Errc::UnsupportedField, "no equality oracle over Q(t)");
  MWElem z = mw_sub(x, y);
  return milnor_is_trivial(z) && witt_is_zero(witt_component(z));
}

bool mw_compatible(const MWElem& x) {
  const Field& f = x.field();
  if (x.degree() > 2) throw Error(Errc::UnsupportedDegree, "no compatibility check in degree 3");
  if (f.kind() == FieldKind::RationalRatFun) throw Error(Errc::UnsupportedField, "no invariants over Q(t)");
  VirtualForm w = witt_component(x);
  if (x.degree() >= 1 && !in_I_power(w, x.degree())) return false;
  MilnorCoords mc = milnor_coords(x);
  switch (x.degree()) {
    case 0:
      return mpz_odd_p(mc.rank.get_mpz_t()) == mpz_odd_p(w.rank().get_mpz_t());
    case 1:
      return signed_discriminant(w) == f.square_class(mc.unit);
    case 2: {
      std::vector<SquareClass> cls;
      for (const auto& [c, m] : x.terms())
        for (const auto& a : m.syms) cls.push_back(f.square_class(a));
      for (const auto& v : f.hilbert_places(cls))
        if (clifford_invariant(w, v) != milnor_hilbert(x, v)) return false;
      return true;
    }
    default:
      return true;
  }
}

// ------------------------------------------------------------- residues

namespace {

// A symbol that is either the uniformizer or (the residue of) a unit.
struct Sym {
  bool pi = false;
  Elem u;
};

// c * <w> * eta^k * syms, with w and units already reduced to the residue field.
struct ResTerm {
  Int c;
  Elem w;
  int eta = 0;
  std::vector<Sym> syms;
};

std::vector<ResTerm> expand_symbol(const Field& f, const Field& kappa, const Elem& a, const Place& pi) {
  auto [v, r] = f.valuation(a, pi);
  Elem u = f.residue_elem(pi, r);
  Elem minus = kappa.from_int(-1);
  std::vector<ResTerm> out;
  if (!kappa.is_one(u)) out.push_back({1, kappa.one(), 0, {Sym{false, u}}});
  const long w = v >= 0 ? v : -v;
  for (long i = 0; i < w; ++i) {
    Elem wi = (i % 2 == 0) ? u : kappa.mul(u, minus);
    if (v > 0) {
      out.push_back({1, wi, 0, {Sym{true, {}}}});
    } else {
      out.push_back({-1, wi, 0, {Sym{true, {}}}});
      // <pi>[pi] = [pi] + eta[-1][pi]
      if (w % 2 == 1) out.push_back({-1, wi, 1, {Sym{false, minus}, Sym{true, {}}}});
    }
  }
  return out;
}

// Moves every [pi] to the right end using [x][pi] = -<-1>[pi][x], and
// collapses [pi][pi] = [-1][pi].  Returns false when no [pi] remains.
bool normalize_pi_right(const Field& kappa, ResTerm& t) {
  Elem minus = kappa.from_int(-1);
  auto pass = [&]() {
    t.c = -t.c;
    t.w = kappa.mul(t.w, minus);
  };
  for (;;) {
    std::ptrdiff_t n = static_cast<std::ptrdiff_t>(t.syms.size());
    std::ptrdiff_t last = -1;
    for (std::ptrdiff_t i = n - 1; i >= 0; --i)
      if (t.syms[i].pi) {
        last = i;
        break;
      }
    if (last < 0) return false;
    for (std::ptrdiff_t i = last; i + 1 < n; ++i) {
      std::swap(t.syms[i], t.syms[i + 1]);
      pass();
    }
    std::ptrdiff_t prev = -1;
    for (std::ptrdiff_t i = n - 2; i >= 0; --i)
      if (t.syms[i].pi) {
        prev = i;
        break;
      }
    if (prev < 0) return true;
    for (std::ptrdiff_t i = prev; i + 2 < n; ++i) {
      std::swap(t.syms[i], t.syms[i + 1]);
      pass();
    }
    t.syms[n - 2] = Sym{false, minus};
  }
}

Place checked_delta_place(const Field& f, const Place& pi) {
  if (!f.is_function_field()) throw Error(Errc::UnsupportedField, "residue maps need k(t)");
  if (pi.kind != Place::Kind::Poly) throw Error(Errc::UnsupportedPlace, "residue maps need a finite place");
  if (f.kind() == FieldKind::RationalRatFun && pi.qpoly.size() != 2)
    throw Error(Errc::UnsupportedPlace, "over Q(t) only places t - c are supported");
  return pi;
}

}  // namespace

MWElem mw_delta(const MWElem& x, const Place& pi_in) {
  const Field& f = x.field();
  Place pi = checked_delta_place(f, pi_in);
  Field kappa = f.residue_field(pi);
  if (x.degree() - 1 < kMinDegree) throw Error(Errc::DegreeOverflow, "residue would leave degree range");
  MWElem out(kappa, x.degree() - 1);
  for (const auto& [c, m] : x.terms()) {
    std::vector<ResTerm> acc{{c, kappa.one(), m.eta, {}}};
    for (const auto& a : m.syms) {
      std::vector<ResTerm> ex = expand_symbol(f, kappa, a, pi);
      std::vector<ResTerm> next;
      for (const auto& s : acc)
        for (const auto& e : ex) {
          ResTerm t{s.c * e.c, kappa.mul(s.w, e.w), s.eta + e.eta, s.syms};
          t.syms.insert(t.syms.end(), e.syms.begin(), e.syms.end());
          next.push_back(std::move(t));
        }
      acc = std::move(next);
    }
    for (auto& t : acc) {
      if (!normalize_pi_right(kappa, t)) continue;
      Monomial mono{t.eta, {}};
      bool dead = false;
      for (std::size_t i = 0; i + 1 < t.syms.size(); ++i) {
        if (kappa.is_one(t.syms[i].u)) dead = true;
        mono.syms.push_back(t.syms[i].u);
      }
      if (dead) continue;
      out.add_term(t.c, mono);
      if (!kappa.is_one(t.w)) {
        Monomial twisted{t.eta + 1, {t.w}};
        twisted.syms.insert(twisted.syms.end(), mono.syms.begin(), mono.syms.end());
        out.add_term(t.c, std::move(twisted));
      }
    }
  }
  return out;
}

Int t_sigma(const MWElem& x) {
  if (x.field().kind() != FieldKind::Rationals) throw Error(Errc::UnsupportedField, "T_sigma is defined over Q");
  if (x.degree() != 2) throw Error(Errc::UnsupportedDegree, "T_sigma expects degree 2");
  Int s = signature(witt_component(x));
  if (s % 4 != 0) throw Error(Errc::InvalidInput, "signature of an I^2 class must be divisible by 4");
  return s / 4;
}

GroupDescriptor mw_descriptor(const Field& q, int n, long prime_bound) {
  if (q.kind() != FieldKind::Rationals) throw Error(Errc::UnsupportedField, "descriptor is for Q");
  if (n != 1 && n != 2) throw Error(Errc::UnsupportedDegree, "descriptor exists for n = 1, 2");
  if (prime_bound < 3) throw Error(Errc::BadBound, "prime bound must be at least 3");
  GroupDescriptor d;
  d.bound = prime_bound;
  auto primes = primes_up_to(prime_bound);
  if (n == 2) {
    d.label = "K2MW(Q)";
    d.free_rank = 1;
    for (long p : primes)
      if (p != 2) d.cyclic_factors.push_back(Int(p - 1));
    d.provenance = {"0 -> K2(Q)+ -> K2MW(Q) -> Z -> 0, split by [-1][-1] -> 1",
                    "K2(Q)+ = sum over odd p of F_p^x via tame symbols"};
  } else {
    d.label = "K1MW(Q)";
    d.free_rank = 1 + static_cast<long>(primes.size());
    for (long p : primes)
      if (p != 2) d.cyclic_factors.push_back(Int(2));
    d.provenance = {"0 -> I2(Q) -> K1MW(Q) -> Q^x -> 0 split over the positive part",
                    "Q^x+ = sum over p of Z; k2(Q)+ = sum over odd p of Z/2"};
  }
  return d;
}

// ------------------------------------------------------------- parsing

namespace {

using Poly = std::vector<MWTerm>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [c, m] : a)
    for (const auto& [d, n] : b) {
      Monomial p{m.eta + n.eta, m.syms};
      p.syms.insert(p.syms.end(), n.syms.begin(), n.syms.end());
      out.push_back({c * d, std::move(p)});
    }
  return out;
}

class MWParser {
 public:
  MWParser(const Field& f, std::string s) : f_(f), s_(std::move(s)) {}

  MWElem parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
    if (p.empty()) return MWElem(f_, 0);
    int deg = p.front().mono.degree();
    for (const auto& t : p)
      if (t.mono.degree() != deg) fail("terms of different degrees");
    check_degree(deg);
    MWElem x(f_, deg);
    for (auto& t : p) x.add_term(t.coeff, std::move(t.mono));
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::InvalidInput, "cannot parse '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool at_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '[' || c == '<' || c == '(' || c == 'e' || c == 'h' || std::isdigit(static_cast<unsigned char>(c)) ||
           s_.compare(pos_, 2, "\xCE\xB7") == 0;
  }
  Poly expr() {
    Poly acc;
    bool neg = eat("-");
    for (;;) {
      Poly t = term();
      if (neg)
        for (auto& x : t) x.coeff = -x.coeff;
      acc.insert(acc.end(), t.begin(), t.end());
      if (eat("+"))
        neg = false;
      else if (eat("-"))
        neg = true;
      else
        return acc;
    }
  }
  Poly term() {
    Poly acc{{1, Monomial{}}};
    if (!at_factor()) fail("factor expected");
    while (at_factor()) {
      acc = poly_mul(acc, factor());
      eat("*");
    }
    return acc;
  }
  std::string until(char close) {
    std::size_t end = s_.find(close, pos_);
    if (end == std::string::npos) fail(std::string("missing '") + close + "'");
    std::string inner = s_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return inner;
  }
  Poly factor() {
    skip();
    if (eat("[")) {
      Elem a = f_.parse_elem(until(']'));
      if (f_.is_zero(a)) throw Error(Errc::ZeroArgument, "[0] is undefined");
      return {{1, Monomial{0, {a}}}};
    }
    if (eat("<")) {
      Elem a = f_.parse_elem(until('>'));
      if (f_.is_zero(a)) throw Error(Errc::ZeroArgument, "<0> is undefined");
      return {{1, Monomial{}}, {1, Monomial{1, {a}}}};
    }
    if (eat("(")) {
      Poly p = expr();
      if (!eat(")")) fail("')' expected");
      return p;
    }
    if (eat("eta") || eat("\xCE\xB7")) return {{1, Monomial{1, {}}}};
    if (eat("h")) return {{2, Monomial{}}, {1, Monomial{1, {f_.from_int(-1)}}}};
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("factor expected");
    return {{Int(s_.substr(start, pos_ - start)), Monomial{}}};
  }

  const Field& f_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

MWElem parse_mw(const Field& f, std::string_view text) {
  std::string s(text);
  const std::string uminus = "\xE2\x88\x92";
  for (std::size_t i; (i = s.find(uminus)) != std::string::npos;) s.replace(i, uminus.size(), "-");
  return MWParser(f, std::move(s)).parse();
}

}  // namespace kmw
