#include "kmw/verify.hpp"

#include <set>

#include "kmw/error.hpp"
#include "kmw/milnor_witt.hpp"
#include "kmw/sampling.hpp"
#include "kmw/scissors.hpp"
#include "kmw/witt.hpp"

namespace kmw {

void VerifyResult::check(bool ok, const std::string& instance) {
  ++checks;
  if (ok) return;
  if (pass || instance.size() < witness.size()) witness = instance;
  pass = false;
}

nlohmann::ordered_json VerifyResult::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = name;
  j["checks"] = checks;
  j["pass"] = pass;
  if (!pass) j["witness"] = witness;
  return j;
}

namespace {

SampleBounds bounds_for(const Field& f) {
  SampleBounds b;
  if (f.is_function_field()) b.degree = 2;
  return b;
}

Place t_place(const Field& kt) {
  return kt.kind() == FieldKind::RationalRatFun ? Place::at(QPoly{0, 1}) : Place::at(FqPoly{0, 1});
}

Elem random_unit_at(const Field& kt, const Place& t, Rng& rng, bool constant) {
  if (constant) return random_constant(kt, rng);
  Elem a = random_nonzero(kt, rng, bounds_for(kt));
  long v = kt.valuation(a, t).first;
  return v == 0 ? a : kt.mul(a, kt.pow(kt.t(), -v));
}

}  // namespace

VerifyResult verify_mw_relations(const Field& f, int samples, std::uint64_t seed) {
  VerifyResult r;
  r.name = "mw-relations " + f.name();
  Rng rng(seed);
  SampleBounds b = bounds_for(f);
  r.check(mw_equal(mw_mul(mw_eta(f), h_elem(f)), mw_zero(f, -1)), "eta*h");
  for (int i = 0; i < samples; ++i) {
    Elem a = random_non_one(f, rng, b), c = random_nonzero(f, rng, b);
    std::string sa = f.format(a), sc = f.format(c);
    MWElem ra = mw_symbol(f, {a}), rc = mw_symbol(f, {c});
    MWElem rel = mw_sub(mw_sub(mw_sub(mw_symbol(f, {f.mul(a, c)}), ra), rc), eta_mul(mw_mul(ra, rc)));
    r.check(mw_equal(rel, mw_zero(f, 1)), "(a) a=" + sa + " b=" + sc);
    r.check(mw_equal(mw_symbol(f, {a, f.sub(f.one(), a)}), mw_zero(f, 2)), "(b) a=" + sa);
    r.check(mw_equal(mw_mul(mw_eta(f), h_elem(f)), mw_zero(f, -1)), "(d)");
    r.check(mw_equal(mw_mul(h_elem(f), mw_symbol(f, {a, c})), mw_symbol(f, {f.mul(a, a), c})),
            "h[a][b] a=" + sa + " b=" + sc);
  }
  return r;
}

VerifyResult verify_delta_t(const Field& k_in, int samples, std::uint64_t seed) {
  Field kt = k_in.is_function_field() ? k_in : Field::rational_functions(k_in);
  Field k = kt.base();
  VerifyResult r;
  r.name = "delta-t " + kt.name();
  Place t = t_place(kt);
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    bool constant = i % 2 == 0;
    Elem a = random_unit_at(kt, t, rng, constant), b = random_unit_at(kt, t, rng, constant);
    Elem ab = kt.residue_elem(t, kt.valuation(a, t).second);
    Elem bb = kt.residue_elem(t, kt.valuation(b, t).second);
    std::string w = " a=" + kt.format(a) + " b=" + kt.format(b);
    r.check(mw_equal(mw_delta(mw_symbol(kt, {a, kt.t()}), t), mw_symbol(k, {ab})), "d[a][t]" + w);
    r.check(mw_delta(mw_symbol(kt, {a, b}), t).terms().empty(), "d[a][b]" + w);
    r.check(mw_equal(mw_delta(unit_action(kt.t(), mw_symbol(kt, {a, b})), t), eta_mul(mw_symbol(k, {ab, bb}))),
            "d<t>[a][b]" + w);
    r.check(mw_equal(mw_delta(mw_symbol(kt, {kt.mul(a, a), kt.t()}), t), mw_symbol(k, {k.mul(ab, ab)})),
            "d[a^2][t]" + w);
  }
  return r;
}

VerifyResult verify_sv(long q, int samples, std::uint64_t seed) {
  Field k = field_for_q(q);
  Field kt = Field::rational_functions(k);
  VerifyResult r;
  r.name = "sv " + kt.name();
  Place t = Place::at(FqPoly{0, 1});
  DerivedGroups d = derived_groups(q);
  Rng rng(seed);
  SampleBounds b;
  b.degree = 2;
  int seen = 0;
  for (long tries = 0; seen < samples && tries < 1000L * samples; ++tries) {
    Elem x = random_nonzero(kt, rng, b), y = random_nonzero(kt, rng, b);
    if (!five_term_admissible(kt, x, y, t)) continue;
    ++seen;
    SvPair sp = sv_apply(refined_five_term(kt, x, y), t);
    r.check(d.RPtilde.is_zero(sp.first) && d.RPtilde.is_zero(sp.second),
            "S_v five-term x=" + kt.format(x) + " y=" + kt.format(y));
  }
  r.check(seen == samples, "only " + std::to_string(seen) + " admissible samples");
  GroupRingElem tt = GroupRingElem::bracket(kt, kt.t());
  for (std::size_t i = 0; i < d.rp1_generators.rows(); ++i) {
    IntVec xi = d.rp1_generators.row_vec(i);
    RPElem iota = base_extend(rp_from_coords(k, xi), kt);
    r.check(d.RPtilde.is_zero(delta_t_rp(iota, t)), "delta_t(iota xi) for RP1 generator " + std::to_string(i));
    r.check(d.RPtilde.equal(delta_t_rp(rp_scale(tt, iota), t), xi),
            "delta_t(<t> iota xi) for RP1 generator " + std::to_string(i));
  }
  return r;
}

VerifyResult verify_witt(const Field& f, int samples, std::uint64_t seed) {
  if (!f.is_finite() && !(f.is_function_field() && f.base().is_finite()))
    throw Error(Errc::UnsupportedField, "the Witt suite runs over F_q and F_q(t)");
  VerifyResult r;
  r.name = "witt " + f.name();
  if (f.is_finite()) r.check(i_squared_vanishes(f), "I^2(" + f.name() + ") != 0");
  Rng rng(seed);
  SampleBounds b = bounds_for(f);
  std::uniform_int_distribution<int> coeff(-2, 2), len(1, 4);
  for (int i = 0; i < samples; ++i) {
    Elem a = random_nonzero(f, rng, b), c = random_nonzero(f, rng, b), e = random_nonzero(f, rng, b);
    VirtualForm p3 = pfister(f, {a, c, e});
    std::string w = "<<" + f.format(a) + "," + f.format(c) + "," + f.format(e) + ">>";
    r.check(in_I_power(p3, 3), w + " not in I^3");
    r.check(witt_is_zero(p3), w + " nonzero");
    VirtualForm phi = vf_mul_int(p3, coeff(rng));
    int n = len(rng);
    for (int j = 0; j < n; ++j) phi.add_term(f.square_class(random_nonzero(f, rng, b)), coeff(rng));
    if (in_I_power(phi, 3)) r.check(witt_is_zero(phi), phi.format() + " in I^3 but nonzero");
    else ++r.checks;
  }
  return r;
}

VerifyResult verify_hilbert_product(int samples, std::uint64_t seed) {
  Field q = Field::rationals();
  VerifyResult r;
  r.name = "hilbert-product Q";
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    Elem a = random_nonzero(q, rng), b = random_nonzero(q, rng);
    std::set<Place> places{Place::infinite(), Place::at_prime(2)};
    for (const auto& v : q.support(a)) places.insert(v);
    for (const auto& v : q.support(b)) places.insert(v);
    int prod = 1;
    for (const auto& v : places) prod *= q.hilbert(a, b, v);
    r.check(prod == 1, "a=" + q.format(a) + " b=" + q.format(b));
  }
  return r;
}

}  // namespace kmw
