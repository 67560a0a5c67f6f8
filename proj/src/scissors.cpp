#include "kmw/scissors.hpp"

#include "kmw/error.hpp"

namespace kmw {

void RPElem::add_term(const GroupRingElem& c, const Elem& x) {
  require_same_field(field_, c.field());
  if (field_.is_zero(x)) throw Error(Errc::ZeroArgument, "[0] is not a generator");
  if (c.is_zero()) return;
  GroupRingElem cc = refined_ ? c : GroupRingElem::integer(field_, augmentation(c));
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->arg == x) {
      it->coeff = gr_add(it->coeff, cc);
      if (it->coeff.is_zero()) terms_.erase(it);
      return;
    }
  }
  terms_.push_back({cc, x});
}

std::string RPElem::format() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [c, x] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.format() + ")[" + field_.format(x) + "]";
  }
  return out;
}

RPElem rp_generator(const Field& f, const Elem& x, bool refined) {
  RPElem r(f, refined);
  r.add_term(GroupRingElem::integer(f, 1), x);
  return r;
}

RPElem rp_add(const RPElem& a, const RPElem& b) {
  require_same_field(a.field(), b.field());
  RPElem r = a;
  for (const auto& [c, x] : b.terms()) r.add_term(c, x);
  return r;
}

RPElem rp_scale(const GroupRingElem& c, const RPElem& a) {
  RPElem r(a.field(), a.refined());
  for (const auto& [d, x] : a.terms()) r.add_term(gr_mul(c, d), x);
  return r;
}

Field field_for_q(long q) {
  if (q < 2) throw Error(Errc::InvalidInput, "q must be a prime power");
  if (q % 2 == 0) throw Error(Errc::EvenQ, "q = " + std::to_string(q) + " is even");
  auto fac = factor_integer(Int(q));
  if (fac.size() != 1) throw Error(Errc::InvalidInput, std::to_string(q) + " is not a prime power");
  if (q < 4) throw Error(Errc::TooSmallQ, "need at least four elements");
  return Field::finite(static_cast<std::uint32_t>(fac[0].first.get_ui()), fac[0].second);
}

namespace {

std::size_t units(const Field& fq) { return static_cast<std::size_t>(fq.fq().order() - 1); }

std::size_t elem_index(const Field&, const Elem& x) {
  return std::get<FiniteField::Elem>(x.v) - 1;
}

bool nonsquare(const Field& f, const SquareClass& c) {
  (void)f;
  return c.nonsquare;
}

std::vector<Elem> nonzero_elems(const Field& fq) {
  std::vector<Elem> out;
  for (std::uint32_t a = 1; a < fq.fq().order(); ++a) out.push_back(Elem{a});
  return out;
}

void require_finite(const Field& f) {
  if (!f.is_finite()) throw Error(Errc::UnsupportedField, "presentation coordinates need a finite field");
}

}  // namespace

std::size_t rp_index(const Field& fq, bool ns, const Elem& x) { return (ns ? units(fq) : 0) + elem_index(fq, x); }

IntVec p_coords(const RPElem& x) {
  const Field& f = x.field();
  require_finite(f);
  IntVec v(units(f));
  for (const auto& [c, a] : x.terms()) v[elem_index(f, a)] += augmentation(c);
  return v;
}

IntVec rp_coords(const RPElem& x) {
  const Field& f = x.field();
  require_finite(f);
  IntVec v(2 * units(f));
  for (const auto& [c, a] : x.terms())
    for (const auto& [cl, n] : c.terms()) v[rp_index(f, nonsquare(f, cl), a)] += n;
  return v;
}

RPElem rp_from_coords(const Field& fq, const IntVec& v) {
  require_finite(fq);
  std::size_t n = units(fq);
  if (v.size() != 2 * n) throw Error(Errc::InvalidInput, "coordinate vector has the wrong length");
  RPElem r(fq);
  Elem s{fq.fq().generator()};
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Elem g = i < n ? fq.one() : s;
    r.add_term(gr_scale(GroupRingElem::bracket(fq, g), v[i]), Elem{static_cast<std::uint32_t>(i % n + 1)});
  }
  return r;
}

RPElem five_term(const Field& f, const Elem& x, const Elem& y) {
  RPElem r = refined_five_term(f, x, y);
  RPElem out(f, false);
  for (const auto& [c, a] : r.terms()) out.add_term(c, a);
  return out;
}

RPElem refined_five_term(const Field& f, const Elem& x, const Elem& y) {
  if (f.is_zero(x) || f.is_zero(y) || f.is_one(x) || f.is_one(y) || x == y)
    throw Error(Errc::DegenerateArguments, "five-term relation needs x, y outside {0,1} and x != y");
  Elem one = f.one();
  Elem xi = f.inv(x), yi = f.inv(y);
  RPElem r(f);
  auto gr = [&](const Elem& a) { return GroupRingElem::bracket(f, a); };
  r.add_term(GroupRingElem::integer(f, 1), x);
  r.add_term(GroupRingElem::integer(f, -1), y);
  r.add_term(gr(x), f.div(y, x));
  r.add_term(gr_neg(gr(f.sub(xi, one))), f.div(f.sub(one, xi), f.sub(one, yi)));
  r.add_term(gr(f.sub(one, x)), f.div(f.sub(one, x), f.sub(one, y)));
  return r;
}

bool five_term_admissible(const Field& f, const Elem& x, const Elem& y, const Place& v) {
  if (f.is_zero(x) || f.is_zero(y) || f.is_one(x) || f.is_one(y) || x == y) return false;
  auto reduce = [&](const Elem& a, Elem* out) {
    auto [k, r] = f.valuation(a, v);
    if (k != 0) return false;
    *out = f.residue_elem(v, r);
    return true;
  };
  Field kappa = f.residue_field(v);
  Elem xb, yb;
  if (!reduce(x, &xb) || !reduce(y, &yb)) return false;
  if (kappa.is_one(xb) || kappa.is_one(yb) || xb == yb) return false;
  RPElem r = refined_five_term(f, x, y);
  for (const auto& [c, a] : r.terms()) {
    Elem ab;
    if (!reduce(a, &ab) || kappa.is_one(ab)) return false;
  }
  return true;
}

RPElem psi1(const Field& f, const Elem& x) {
  RPElem r = rp_generator(f, x);
  r.add_term(GroupRingElem::bracket(f, f.from_int(-1)), f.inv(x));
  return r;
}

RPElem r_elem(const Field& f, const Elem& x) {
  if (f.is_one(x)) throw Error(Errc::DegenerateArguments, "r(1) is undefined");
  GroupRingElem c = gr_add(GroupRingElem::bracket(f, f.from_int(-1)), GroupRingElem::integer(f, 1));
  RPElem r = rp_scale(c, rp_generator(f, x));
  return rp_add(r, rp_scale(pfister_elem(f, f.sub(f.one(), x)), psi1(f, x)));
}

RPElem base_extend(const RPElem& x, const Field& kt) {
  if (!kt.is_function_field() || !(kt.base() == x.field()))
    throw Error(Errc::MixedFields, "base extension target must be k(t) over the element's field");
  RPElem r(kt, x.refined());
  for (const auto& [c, a] : x.terms()) {
    GroupRingElem cc(kt);
    for (const auto& [cl, n] : c.terms())
      cc = gr_add(cc, gr_scale(GroupRingElem::bracket(kt, kt.from_base(x.field().representative(cl))), n));
    r.add_term(cc, kt.from_base(a));
  }
  return r;
}

SvPair sv_apply(const RPElem& x, const Place& v) {
  const Field& f = x.field();
  if (!f.is_function_field() || f.base().kind() != FieldKind::Finite)
    throw Error(Errc::UnsupportedField, "S_v is implemented for F_q(t)");
  if (v.is_infinite()) throw Error(Errc::UnsupportedPlace, "S_v needs a finite place");
  Field kappa = f.residue_field(v);
  SvPair out{IntVec(2 * units(kappa)), IntVec(2 * units(kappa))};
  for (const auto& [c, a] : x.terms()) {
    auto [k, r] = f.valuation(a, v);
    if (k != 0) throw Error(Errc::NonUnitArgument, "[" + f.format(a) + "] is not a unit at " + f.format_place(v));
    Elem ab = f.residue_elem(v, r);
    for (const auto& [cl, n] : c.terms()) {
      auto [kc, rc] = f.valuation(f.representative(cl), v);
      Elem ub = f.residue_elem(v, rc);
      IntVec& side = (kc % 2 != 0) ? out.second : out.first;
      side[rp_index(kappa, !kappa.is_square(ub), ab)] += n;
    }
  }
  return out;
}

IntVec delta_t_rp(const RPElem& x, const Place& v) { return sv_apply(x, v).second; }

// ------------------------------------------------------------- presentations

AbGroup pb_group(long q) {
  Field f = field_for_q(q);
  std::size_t n = units(f);
  std::vector<std::string> labels;
  for (const auto& a : nonzero_elems(f)) labels.push_back("[" + f.format(a) + "]");
  std::vector<IntVec> rows;
  IntVec one(n);
  one[elem_index(f, f.one())] = 1;
  rows.push_back(one);
  for (const auto& x : nonzero_elems(f))
    for (const auto& y : nonzero_elems(f)) {
      if (f.is_one(x) || f.is_one(y) || x == y) continue;
      rows.push_back(p_coords(five_term(f, x, y)));
    }
  return AbGroup(labels, IntMatrix::from_rows(n, rows));
}

AbGroup pb_half(long q) { return odd_part(pb_group(q)); }

FlatPresentation rp_presentation(long q) {
  Field f = field_for_q(q);
  std::size_t n = units(f);
  FlatPresentation fp;
  for (const char* g : {"", "s"})
    for (const auto& a : nonzero_elems(f)) fp.labels.push_back(std::string(g) + "[" + f.format(a) + "]");
  GroupRingElem s = GroupRingElem::bracket(f, Elem{f.fq().generator()});
  std::vector<IntVec> rows;
  auto push_both = [&](const RPElem& r) {
    rows.push_back(rp_coords(r));
    rows.push_back(rp_coords(rp_scale(s, r)));
  };
  push_both(rp_generator(f, f.one()));
  for (const auto& x : nonzero_elems(f))
    for (const auto& y : nonzero_elems(f)) {
      if (f.is_one(x) || f.is_one(y) || x == y) continue;
      push_both(refined_five_term(f, x, y));
      ++fp.five_term_pairs;
    }
  fp.relations = IntMatrix::from_rows(2 * n, rows);
  fp.group = AbGroup(fp.labels, fp.relations);
  return fp;
}

LambdaMaps lambda_maps(long q) {
  Field f = field_for_q(q);
  std::size_t n = units(f);
  AbGroup p = pb_group(q);
  AbGroup rp = rp_presentation(q).group;
  AbGroup zg({"1", "s"}, IntMatrix(0, 2));
  AbGroup z2({"a o b"}, IntMatrix(1, 1, {2}));
  AbGroup zgz2({"1", "s", "a o b"}, IntMatrix(1, 3, {0, 0, 2}));

  IntMatrix l1(2 * n, 2), l2(2 * n, 1), l(n, 1), big(2 * n, 3), proj(2 * n, n);
  for (const auto& a : nonzero_elems(f)) {
    std::size_t i = elem_index(f, a);
    bool both = false;
    if (!f.is_one(a)) both = !f.is_square(a) && !f.is_square(f.sub(f.one(), a));
    int lam = both ? 1 : 0;
    l(i, 0) = lam;
    for (int g = 0; g < 2; ++g) {
      std::size_t row = g * n + i;
      // <<a>><<b>> = 2 - 2s for nonsquares a, b; s swaps the two coordinates
      if (both) {
        l1(row, 0) = g == 0 ? 2 : -2;
        l1(row, 1) = g == 0 ? -2 : 2;
      }
      l2(row, 0) = lam;
      big(row, 0) = l1(row, 0);
      big(row, 1) = l1(row, 1);
      big(row, 2) = lam;
      proj(row, i) = 1;
    }
  }
  return {AbMap(rp, zg, l1), AbMap(rp, z2, l2), AbMap(p, z2, l), AbMap(rp, zgz2, big), AbMap(rp, p, proj)};
}

DerivedGroups derived_groups(long q) {
  Field f = field_for_q(q);
  std::size_t n = units(f);
  LambdaMaps lm = lambda_maps(q);
  DerivedGroups d;
  d.q = q;
  d.P = lm.lambda.source();
  d.RP = lm.lambda1.source();

  KernelResult b = fp_kernel(lm.lambda);
  d.B = b.group;
  KernelResult rb = fp_kernel(lm.Lambda);
  d.RB = rb.group;
  AbMap rb_to_p = lm.to_p.compose_after(rb.inclusion);
  d.rblker = fp_kernel(rb_to_p).group;
  d.rb_to_b_surjective = true;
  for (std::size_t i = 0; i < b.group.num_generators(); ++i) {
    IntVec img = b.inclusion.apply(b.group.unit_vector(i));
    if (!in_image(rb_to_p, img)) {
      d.rb_to_b_surjective = false;
      break;
    }
  }

  KernelResult rp1 = fp_kernel(lm.lambda1);
  d.RP1 = rp1.group;
  d.rp1_generators = IntMatrix(0, 2 * n);
  for (std::size_t i = 0; i < rp1.group.num_generators(); ++i) {
    IntVec v = rp1.inclusion.apply(rp1.group.unit_vector(i));
    d.rp1_generators.append_row(v);
  }

  GroupRingElem s = GroupRingElem::bracket(f, Elem{f.fq().generator()});
  std::vector<IntVec> k1;
  for (const auto& x : nonzero_elems(f)) {
    RPElem p = psi1(f, x);
    k1.push_back(rp_coords(p));
    k1.push_back(rp_coords(rp_scale(s, p)));
  }
  IntMatrix k1m = IntMatrix::from_rows(2 * n, k1);
  d.RPtilde = quotient(d.RP, k1m);
  AbMap phi(AbGroup::free(k1.size()), d.RP, k1m);
  KernelResult pre = fp_kernel(lm.lambda1.compose_after(phi));
  d.K1cap = fp_image(phi.compose_after(pre.inclusion));
  d.k1cap_exponent = d.K1cap.exponent();
  return d;
}

// ------------------------------------------------------------- Sym^2

void Sym2Elem::add(const std::pair<Int, Int>& key, const Int& n) {
  bool torsion = field_.is_finite() || key.first == key.second || key.first == -1 || key.second == -1;
  Int& c = coords_[key];
  c += n;
  if (torsion) c = ((c % 2) + 2) % 2;
  if (c == 0) coords_.erase(key);
}

std::string Sym2Elem::format() const {
  if (coords_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : coords_) {
    if (!out.empty()) out += " + ";
    out += c.get_str() + "*(" + k.first.get_str() + " o " + k.second.get_str() + ")";
  }
  return out;
}

namespace {

std::map<Int, Int> exponent_vector(const Field& f, const Elem& a) {
  const mpq_class& r = std::get<mpq_class>(a.v);
  std::map<Int, Int> e;
  if (r < 0) e[Int(-1)] = 1;
  Int num = abs(r.get_num()), den = r.get_den();
  if (num > 1)
    for (auto& [p, k] : factor_integer(num)) e[p] += k;
  if (den > 1)
    for (auto& [p, k] : factor_integer(den)) e[p] -= k;
  (void)f;
  return e;
}

}  // namespace

Sym2Elem sym2_product(const Field& f, const Elem& a, const Elem& b) {
  if (f.is_zero(a) || f.is_zero(b)) throw Error(Errc::ZeroArgument, "Sym^2 of zero");
  Sym2Elem s(f);
  if (f.is_finite()) {
    if (!f.is_square(a) && !f.is_square(b)) s.add({0, 0}, 1);
    return s;
  }
  if (f.kind() != FieldKind::Rationals) throw Error(Errc::UnsupportedField, "Sym^2 is implemented for F_q and Q");
  auto ea = exponent_vector(f, a), eb = exponent_vector(f, b);
  for (const auto& [i, x] : ea)
    for (const auto& [j, y] : eb) {
      if (i <= j)
        s.add({i, j}, x * y);
      else
        s.add({j, i}, -x * y);
    }
  return s;
}

Sym2Elem sym2_add(const Sym2Elem& a, const Sym2Elem& b) {
  require_same_field(a.field(), b.field());
  Sym2Elem r = a;
  for (const auto& [k, c] : b.coords()) r.add(k, c);
  return r;
}

Sym2Elem sym2_neg(const Sym2Elem& a) {
  Sym2Elem r(a.field());
  for (const auto& [k, c] : a.coords()) r.add(k, -c);
  return r;
}

Sym2Elem lambda_sym2(const Field& f, const Elem& a) {
  if (f.is_one(a)) return Sym2Elem(f);
  return sym2_product(f, a, f.sub(f.one(), a));
}

}  // namespace kmw
