#include "kmw/group_ring.hpp"

#include "kmw/error.hpp"

namespace kmw {

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw Error(Errc::MixedFields, a.name() + " vs " + b.name());
}

GroupRingElem GroupRingElem::basis(const Field& f, const SquareClass& c, const Int& coeff) {
  GroupRingElem x(f);
  x.add_term(c, coeff);
  return x;
}

GroupRingElem GroupRingElem::bracket(const Field& f, const Elem& a) {
  if (f.is_zero(a)) throw Error(Errc::ZeroArgument, "<0> is undefined");
  return basis(f, f.square_class(a));
}

GroupRingElem GroupRingElem::integer(const Field& f, const Int& n) { return basis(f, f.class_one(), n); }

Int GroupRingElem::coeff(const SquareClass& c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? Int(0) : it->second;
}

std::array<Int, 2> GroupRingElem::as_pair() const {
  if (!field_.is_finite()) throw Error(Errc::UnsupportedField, "pair form needs a finite field");
  std::array<Int, 2> out{0, 0};
  for (const auto& [c, n] : terms_) out[c.nonsquare ? 1 : 0] += n;
  return out;
}

void GroupRingElem::add_term(const SquareClass& c, const Int& coeff) {
  if (coeff == 0) return;
  auto [it, fresh] = terms_.try_emplace(c, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

std::string GroupRingElem::format() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [c, n] : terms_) {
    std::string term;
    bool one = c == field_.class_one();
    if (one) {
      term = Int(abs(n)).get_str();
    } else {
      if (abs(n) != 1) term = Int(abs(n)).get_str();
      term += field_.format_class(c);
    }
    if (out.empty())
      out = (n < 0 ? "-" : "") + term;
    else
      out += (n < 0 ? "-" : "+") + term;
  }
  return out;
}

GroupRingElem gr_add(const GroupRingElem& x, const GroupRingElem& y) {
  require_same_field(x.field(), y.field());
  GroupRingElem r = x;
  for (const auto& [c, n] : y.terms()) r.add_term(c, n);
  return r;
}

GroupRingElem gr_neg(const GroupRingElem& x) { return gr_scale(x, -1); }

GroupRingElem gr_sub(const GroupRingElem& x, const GroupRingElem& y) { return gr_add(x, gr_neg(y)); }

GroupRingElem gr_scale(const GroupRingElem& x, const Int& n) {
  GroupRingElem r(x.field());
  for (const auto& [c, m] : x.terms()) r.add_term(c, m * n);
  return r;
}

GroupRingElem gr_mul(const GroupRingElem& x, const GroupRingElem& y) {
  require_same_field(x.field(), y.field());
  const Field& f = x.field();
  GroupRingElem r(f);
  for (const auto& [a, m] : x.terms())
    for (const auto& [b, n] : y.terms()) r.add_term(f.class_mul(a, b), m * n);
  return r;
}

Int augmentation(const GroupRingElem& x) {
  Int s = 0;
  for (const auto& [c, n] : x.terms()) s += n;
  return s;
}

GroupRingElem pfister_elem(const Field& f, const Elem& a) {
  return gr_sub(GroupRingElem::bracket(f, a), GroupRingElem::integer(f, 1));
}

}  // namespace kmw
