#include <random>

#include "doctest.h"
#include "kmw/error.hpp"
#include "kmw/group_ring.hpp"
#include "kmw/witt.hpp"

using namespace kmw;

namespace {

std::vector<Elem> nonzero_elems(const Field& f) {
  std::vector<Elem> out;
  for (std::uint32_t a = 1; a < f.fq().order(); ++a) out.push_back(Elem{a});
  return out;
}

VirtualForm form(const Field& f, std::initializer_list<std::pair<long, long>> terms) {
  VirtualForm phi(f);
  for (auto [a, n] : terms) phi.add_term(f.square_class(f.from_int(a)), n);
  return phi;
}

}  // namespace

TEST_CASE("group ring examples") {
  Field f5 = Field::parse("F5");
  CHECK(pfister_elem(f5, f5.from_int(4)).is_zero());
  CHECK(pfister_elem(f5, f5.one()).is_zero());
  Field f7 = Field::parse("F7");
  auto p = pfister_elem(f7, f7.from_int(3));
  auto sq = gr_mul(p, p);
  auto expect = gr_sub(GroupRingElem::integer(f7, 2), gr_scale(GroupRingElem::bracket(f7, f7.from_int(3)), 2));
  CHECK(sq == expect);
  CHECK(sq.as_pair() == std::array<Int, 2>{2, -2});
  CHECK_THROWS_AS(GroupRingElem::bracket(f7, f7.zero()), Error);
  CHECK_THROWS_AS(gr_add(p, pfister_elem(f5, f5.from_int(2))), Error);
}

TEST_CASE("augmentation is a ring map") {
  std::mt19937_64 rng(1);
  Field q = Field::rationals();
  std::uniform_int_distribution<long> d(-30, 30);
  for (int i = 0; i < 50; ++i) {
    GroupRingElem x(q), y(q);
    for (int k = 0; k < 3; ++k) {
      long a = d(rng), b = d(rng);
      if (a) x = gr_add(x, gr_scale(GroupRingElem::bracket(q, q.from_int(a)), d(rng)));
      if (b) y = gr_add(y, gr_scale(GroupRingElem::bracket(q, q.from_int(b)), d(rng)));
    }
    CHECK(augmentation(gr_mul(x, y)) == augmentation(x) * augmentation(y));
  }
}

TEST_CASE("pfister identities in Z[G] over small finite fields") {
  for (const char* name : {"F3", "F5", "F7", "F9", "F11", "F13", "F25", "F27"}) {
    Field f = Field::parse(name);
    auto elems = nonzero_elems(f);
    GroupRingElem s = pfister_elem(f, Elem{f.fq().generator()});
    for (const auto& a : elems) {
      CHECK(augmentation(pfister_elem(f, a)) == 0);
      if (a != f.one()) {
        auto l = gr_mul(pfister_elem(f, a), pfister_elem(f, f.sub(f.one(), a)));
        CHECK(augmentation(l) == 0);
        // I^2 of Z[G] for G = {1,s} is spanned by <<s>>^2 = 2 - 2s.
        auto pr = l.as_pair();
        auto ss = gr_mul(s, s).as_pair();
        CHECK(pr[1] % ss[1] == 0);
        CHECK(l == gr_scale(gr_mul(s, s), pr[1] / ss[1]));
      }
      for (const auto& b : elems) {
        auto lhs = pfister_elem(f, f.mul(a, b));
        auto rhs = gr_add(gr_add(pfister_elem(f, a), pfister_elem(f, b)), gr_mul(pfister_elem(f, a), pfister_elem(f, b)));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("virtual forms: pfister expansion and scaling") {
  Field q = Field::rationals();
  auto p = pfister(q, {q.from_int(2)});
  CHECK(p == form(q, {{2, 1}, {1, -1}}));
  CHECK(p.rank() == 0);
  auto p23 = pfister(q, {q.from_int(2), q.from_int(3)});
  CHECK(p23 == form(q, {{6, 1}, {2, -1}, {3, -1}, {1, 1}}));
  CHECK_THROWS_AS(pfister(q, {q.zero()}), Error);

  Field ft = Field::parse("F5t");
  VirtualForm phi = VirtualForm::diag(ft, {ft.one(), ft.parse_elem("t+1")});
  VirtualForm scaled = vf_scale(phi, ft.t());
  CHECK(scaled == VirtualForm::diag(ft, {ft.t(), ft.parse_elem("t^2+t")}));
  CHECK(scaled.rank() == phi.rank());
}

TEST_CASE("witt invariants examples") {
  Field q = Field::rationals();
  auto w = witt_invariants(VirtualForm::diag(q, {q.one(), q.one()}));
  CHECK(w.rank == 2);
  CHECK(w.signatures.at(Place::infinite()) == 2);
  CHECK(w.signed_discriminant == q.square_class(q.from_int(-1)));

  auto z = witt_invariants(VirtualForm(q));
  CHECK(z.rank == 0);
  CHECK(z.signed_discriminant == q.class_one());
  for (auto& [v, s] : z.hasse) CHECK(s == 1);

  VirtualForm hyp = VirtualForm::diag(q, {q.one(), q.from_int(-1)});
  CHECK(witt_is_zero(hyp));
  for (auto& [v, s] : witt_invariants(hyp).hasse) CHECK(s == 1);
  CHECK_THROWS_AS(witt_invariants(VirtualForm(Field::parse("Qt"))), Error);
}

TEST_CASE("witt zero and I^n examples") {
  Field f3 = Field::parse("F3");
  CHECK(witt_is_zero(form(f3, {{1, 4}})));
  CHECK_FALSE(witt_is_zero(form(f3, {{1, 2}})));
  Field q = Field::rationals();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-40, 40);
  for (int i = 0; i < 30; ++i) {
    long a = d(rng), b = d(rng);
    if (!a || !b) continue;
    CHECK(in_I_power(pfister(q, {q.from_int(a), q.from_int(b)}), 2));
  }
  auto p23 = pfister(q, {q.from_int(2), q.from_int(3)});
  CHECK_FALSE(in_I_power(p23, 3));
  CHECK(clifford_invariant(p23, Place::at_prime(3)) == -1);
  CHECK(in_I_power(pfister(q, {q.from_int(-1), q.from_int(-1), q.from_int(-1)}), 3));
  CHECK_FALSE(witt_is_zero(pfister(q, {q.from_int(-1), q.from_int(-1), q.from_int(-1)})));
}

TEST_CASE("clifford invariant of <<a>><<b>> is the Hilbert symbol") {
  Field q = Field::rationals();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-50, 50);
  for (int i = 0; i < 40; ++i) {
    long a = d(rng), b = d(rng);
    if (!a || !b) continue;
    Elem x = q.from_int(a), y = q.from_int(b);
    auto p = pfister(q, {x, y});
    for (const auto& v : q.hilbert_places({q.square_class(x), q.square_class(y)}))
      CHECK(clifford_invariant(p, v) == q.hilbert(x, y, v));
  }
}

TEST_CASE("witt_equal is compatible with addition") {
  Field q = Field::rationals();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-20, 20);
  auto rnd = [&]() {
    VirtualForm phi(q);
    for (int k = 0; k < 3; ++k) {
      long a = d(rng);
      if (a) phi.add_term(q.square_class(q.from_int(a)), d(rng) % 3);
    }
    return phi;
  };
  for (int i = 0; i < 30; ++i) {
    VirtualForm phi = rnd(), chi = rnd();
    // phi + H ~ phi
    VirtualForm psi = vf_add(phi, VirtualForm::diag(q, {q.from_int(5), q.from_int(-5)}));
    CHECK(witt_equal(phi, psi));
    CHECK(witt_equal(vf_add(phi, chi), vf_add(psi, chi)));
    CHECK(witt_equal(phi, phi));
  }
}

TEST_CASE("second residue") {
  Field f = Field::parse("F7t");
  Place t = Place::at(FqPoly{0, 1});
  Field f7 = Field::parse("F7");
  CHECK(second_residue(VirtualForm::diag(f, {f.t()}), t) == VirtualForm::diag(f7, {f7.one()}));
  CHECK(second_residue(VirtualForm::diag(f, {f.parse_elem("t+3")}), t).is_formally_zero());
  Elem a = f.parse_elem("t+3");
  auto r = second_residue(pfister(f, {f.t(), a}), t);
  CHECK(r == pfister(f7, {f7.from_int(3)}));

  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::uint32_t> cf(0, 6);
  auto rnd = [&]() {
    FqPoly p(3);
    for (auto& c : p) c = cf(rng);
    p.push_back(1);
    return f.from_fq_rat(p, {1});
  };
  for (int i = 0; i < 30; ++i) {
    Elem x = rnd(), g = rnd();
    if (f.is_zero(x)) continue;
    Elem y = f.mul(x, f.mul(g, g));
    CHECK(second_residue(VirtualForm::diag(f, {x}), t) == second_residue(VirtualForm::diag(f, {y}), t));
  }
  // lifts from the constant field residue to zero
  CHECK(second_residue(VirtualForm::diag(f, {f.from_int(3), f.from_int(5)}), t).is_formally_zero());
}

TEST_CASE("witt descriptor and I^2 of finite fields") {
  CHECK(witt_descriptor(Field::parse("F3")).cyclic_factors == std::vector<Int>{4});
  CHECK(witt_descriptor(Field::parse("F5")).cyclic_factors == std::vector<Int>{2, 2});
  CHECK(witt_descriptor(Field::parse("F7")).cyclic_factors == std::vector<Int>{4});
  CHECK(witt_descriptor(Field::parse("F9")).cyclic_factors == std::vector<Int>{2, 2});
  for (const char* name : {"F3", "F5", "F7", "F9"}) CHECK(i_squared_vanishes(Field::parse(name)));
}

TEST_CASE("I^3 membership implies Witt-zero over finite fields") {
  for (const char* name : {"F3", "F5", "F7", "F9"}) {
    Field f = Field::parse(name);
    SquareClass one = f.class_one(), s = f.square_class(Elem{f.fq().generator()});
    for (long a = -4; a <= 4; ++a)
      for (long b = -4; b <= 4; ++b) {
        VirtualForm phi(f);
        phi.add_term(one, a);
        phi.add_term(s, b);
        if (in_I_power(phi, 3)) CHECK(witt_is_zero(phi));
        CHECK(in_I_power(phi, 2) == witt_is_zero(phi));
      }
  }
}
