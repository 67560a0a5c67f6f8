#include "kmw/witt.hpp"

#include <set>

#include "kmw/error.hpp"

namespace kmw {

Int VirtualForm::rank() const {
  Int r = 0;
  for (const auto& [c, n] : terms_) r += n;
  return r;
}

void VirtualForm::add_term(const SquareClass& c, const Int& coeff) {
  if (coeff == 0) return;
  auto [it, fresh] = terms_.try_emplace(c, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

std::string VirtualForm::format() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [c, n] : terms_) {
    std::string term = (abs(n) != 1 ? Int(abs(n)).get_str() : std::string()) + field_.format_class(c);
    if (out.empty())
      out = (n < 0 ? "-" : "") + term;
    else
      out += (n < 0 ? " - " : " + ") + term;
  }
  return out;
}

VirtualForm VirtualForm::diag(const Field& f, const std::vector<Elem>& entries) {
  VirtualForm phi(f);
  for (const auto& a : entries) {
    if (f.is_zero(a)) throw Error(Errc::ZeroEntry, "diagonal entry is zero");
    phi.add_term(f.square_class(a), 1);
  }
  return phi;
}

VirtualForm VirtualForm::from_group_ring(const GroupRingElem& x) {
  VirtualForm phi(x.field());
  for (const auto& [c, n] : x.terms()) phi.add_term(c, n);
  return phi;
}

VirtualForm vf_add(const VirtualForm& a, const VirtualForm& b) {
  require_same_field(a.field(), b.field());
  VirtualForm r = a;
  for (const auto& [c, n] : b.terms()) r.add_term(c, n);
  return r;
}

VirtualForm vf_mul_int(const VirtualForm& a, const Int& n) {
  VirtualForm r(a.field());
  for (const auto& [c, m] : a.terms()) r.add_term(c, m * n);
  return r;
}

VirtualForm vf_neg(const VirtualForm& a) { return vf_mul_int(a, -1); }
VirtualForm vf_sub(const VirtualForm& a, const VirtualForm& b) { return vf_add(a, vf_neg(b)); }

VirtualForm vf_scale(const VirtualForm& phi, const Elem& a) {
  const Field& f = phi.field();
  if (f.is_zero(a)) throw Error(Errc::ZeroArgument, "<0> is undefined");
  SquareClass s = f.square_class(a);
  VirtualForm r(f);
  for (const auto& [c, n] : phi.terms()) r.add_term(f.class_mul(s, c), n);
  return r;
}

VirtualForm vf_tensor(const VirtualForm& a, const VirtualForm& b) {
  require_same_field(a.field(), b.field());
  const Field& f = a.field();
  VirtualForm r(f);
  for (const auto& [c, m] : a.terms())
    for (const auto& [d, n] : b.terms()) r.add_term(f.class_mul(c, d), m * n);
  return r;
}

VirtualForm pfister(const Field& f, const std::vector<Elem>& entries) {
  VirtualForm r(f);
  r.add_term(f.class_one(), 1);
  for (const auto& a : entries) {
    if (f.is_zero(a)) throw Error(Errc::ZeroArgument, "Pfister entry is zero");
    VirtualForm p(f);
    p.add_term(f.square_class(a), 1);
    p.add_term(f.class_one(), -1);
    r = vf_tensor(r, p);
  }
  return r;
}

namespace {

// A genuine diagonal form with the same Witt class: -<a> becomes <-a>, and
// hyperbolic pairs <a> + <-a> are cancelled.
struct Honest {
  std::map<SquareClass, Int> count;
  Int dim = 0;
};

void require_invariant_field(const Field& f) {
  if (f.kind() == FieldKind::RationalRatFun)
    throw Error(Errc::UnsupportedField, "Witt invariants over Q(t) are not supported");
}

Honest honest_form(const VirtualForm& phi) {
  const Field& f = phi.field();
  SquareClass minus = f.square_class(f.from_int(-1));
  Honest h;
  for (const auto& [c, n] : phi.terms()) {
    if (n > 0)
      h.count[c] += n;
    else
      h.count[f.class_mul(c, minus)] += -n;
  }
  for (auto it = h.count.begin(); it != h.count.end(); ++it) {
    SquareClass opp = f.class_mul(it->first, minus);
    if (opp == it->first) {
      it->second = it->second % 2;  // -1 is a square: <a,a> is hyperbolic
      continue;
    }
    auto jt = h.count.find(opp);
    if (jt == h.count.end()) continue;
    Int m = std::min(it->second, jt->second);
    it->second -= m;
    jt->second -= m;
  }
  for (auto it = h.count.begin(); it != h.count.end();) {
    if (it->second == 0)
      it = h.count.erase(it);
    else
      h.dim += (it++)->second;
  }
  return h;
}

SquareClass entry_product(const Field& f, const Honest& h) {
  SquareClass p = f.class_one();
  for (const auto& [c, n] : h.count)
    if (mpz_odd_p(n.get_mpz_t())) p = f.class_mul(p, c);
  return p;
}

int pow_sign(int s, const Int& e) { return (s == -1 && mpz_odd_p(e.get_mpz_t())) ? -1 : 1; }

int hasse_at(const Field& f, const Honest& h, const Place& v) {
  int s = 1;
  for (auto it = h.count.begin(); it != h.count.end(); ++it) {
    const Int& n = it->second;
    s *= pow_sign(f.hilbert(it->first, it->first, v), n * (n - 1) / 2);
    for (auto jt = std::next(it); jt != h.count.end(); ++jt)
      s *= pow_sign(f.hilbert(it->first, jt->first, v), n * jt->second);
  }
  return s;
}

std::vector<Place> relevant_places(const Field& f, const Honest& h) {
  std::vector<SquareClass> cls{f.square_class(f.from_int(-1))};
  for (const auto& [c, n] : h.count) cls.push_back(c);
  return f.hilbert_places(cls);
}

SquareClass sign_power(const Field& f, const Int& e) {
  return mpz_odd_p(e.get_mpz_t()) ? f.square_class(f.from_int(-1)) : f.class_one();
}

// Clifford invariant of an honest form of even dimension 2m with trivial
// signed discriminant.
int clifford_of(const Field& f, const Honest& h, const Place& v) {
  Int m = h.dim / 2;
  int mm = f.hilbert(f.from_int(-1), f.from_int(-1), v);
  return hasse_at(f, h, v) * pow_sign(mm, m * (m - 1) / 2);
}

// Whether h lies in I^2 (even dimension, trivial signed discriminant).
bool in_i2(const Field& f, const Honest& h) {
  if (mpz_odd_p(h.dim.get_mpz_t())) return false;
  return entry_product(f, h) == sign_power(f, h.dim / 2);
}

}  // namespace

Int signature(const VirtualForm& phi) {
  const Field& f = phi.field();
  if (!f.has_real_place()) throw Error(Errc::UnsupportedField, f.name() + " has no real place");
  Int s = 0;
  for (const auto& [c, n] : phi.terms()) s += f.sign(c) * n;
  return s;
}

SquareClass signed_discriminant(const VirtualForm& phi) {
  const Field& f = phi.field();
  require_invariant_field(f);
  Honest h = honest_form(phi);
  return f.class_mul(sign_power(f, h.dim * (h.dim - 1) / 2), entry_product(f, h));
}

int clifford_invariant(const VirtualForm& phi, const Place& v) {
  const Field& f = phi.field();
  require_invariant_field(f);
  Honest h = honest_form(phi);
  if (!in_i2(f, h)) throw Error(Errc::InvalidInput, "Clifford invariant needs a class in I^2");
  return clifford_of(f, h, v);
}

WittInvariants witt_invariants(const VirtualForm& phi) {
  const Field& f = phi.field();
  require_invariant_field(f);
  Honest h = honest_form(phi);
  WittInvariants w;
  w.rank = phi.rank();
  w.signed_discriminant = f.class_mul(sign_power(f, h.dim * (h.dim - 1) / 2), entry_product(f, h));
  if (f.has_real_place()) w.signatures[Place::infinite()] = signature(phi);
  if (!f.is_finite())
    for (const auto& v : relevant_places(f, h)) w.hasse[v] = hasse_at(f, h, v);
  return w;
}

bool witt_is_zero(const VirtualForm& phi) {
  const Field& f = phi.field();
  require_invariant_field(f);
  Honest h = honest_form(phi);
  if (h.dim == 0) return true;
  if (!in_i2(f, h)) return false;
  if (f.has_real_place() && signature(phi) != 0) return false;
  if (f.is_finite()) return true;
  for (const auto& v : relevant_places(f, h))
    if (clifford_of(f, h, v) != 1) return false;
  return true;
}

bool witt_equal(const VirtualForm& a, const VirtualForm& b) { return witt_is_zero(vf_sub(a, b)); }

bool in_I_power(const VirtualForm& phi, int n) {
  const Field& f = phi.field();
  if (n < 0 || n > 3) throw Error(Errc::UnsupportedDegree, "I^n membership is implemented for n <= 3");
  require_invariant_field(f);
  if (n == 0) return true;
  Honest h = honest_form(phi);
  if (mpz_odd_p(h.dim.get_mpz_t())) return false;
  if (n == 1) return true;
  if (!in_i2(f, h)) return false;
  if (n == 2) return true;
  if (f.has_real_place()) {
    Int s = signature(phi);
    if (s % 8 != 0) return false;
  }
  if (f.is_finite()) return true;
  for (const auto& v : relevant_places(f, h))
    if (clifford_of(f, h, v) != 1) return false;
  return true;
}

VirtualForm second_residue(const VirtualForm& phi, const Place& pi) {
  const Field& f = phi.field();
  if (!f.is_function_field()) throw Error(Errc::UnsupportedField, "second residue needs k(t)");
  Field kappa = f.residue_field(pi);
  VirtualForm out(kappa);
  for (const auto& [c, n] : phi.terms()) {
    auto [v, r] = f.valuation(f.representative(c), pi);
    if (v % 2 == 0) continue;
    Elem u = f.residue_elem(pi, r);
    if (kappa.is_zero(u)) throw Error(Errc::ZeroEntry, "residue of a unit vanished");
    out.add_term(kappa.square_class(u), n);
  }
  return out;
}

GroupDescriptor witt_descriptor(const Field& fq) {
  if (!fq.is_finite()) throw Error(Errc::UnsupportedField, "witt_descriptor expects a finite field");
  Elem g{fq.fq().generator()};
  std::vector<IntVec> relations;
  for (long a = 0; a <= 4; ++a)
    for (long b = 0; a + b <= 4; ++b) {
      if (a + b == 0) continue;
      VirtualForm phi(fq);
      phi.add_term(fq.class_one(), a);
      phi.add_term(fq.square_class(g), b);
      if (witt_is_zero(phi)) relations.push_back({Int(a), Int(b)});
    }
  AbGroup w({"<1>", "<g>"}, IntMatrix::from_rows(2, relations));
  GroupDescriptor d = GroupDescriptor::from_group(w, "W(" + fq.name() + ")");
  return d;
}

bool i_squared_vanishes(const Field& fq) {
  if (!fq.is_finite()) throw Error(Errc::UnsupportedField, "expects a finite field");
  std::vector<Elem> reps{fq.one(), Elem{fq.fq().generator()}};
  for (const auto& a : reps)
    for (const auto& b : reps)
      if (!witt_is_zero(pfister(fq, {a, b}))) return false;
  return true;
}

}  // namespace kmw
