#include "doctest.h"
#include "kmw/error.hpp"
#include "kmw/sampling.hpp"
#include "kmw/scissors.hpp"

using namespace kmw;

TEST_CASE("P(F_q) and its odd part") {
  CHECK(pb_half(5).invariant_factors() == std::vector<Int>{3});
  CHECK(pb_half(7).is_trivial());
  CHECK(pb_half(9).invariant_factors() == std::vector<Int>{5});
  for (long q : {5, 7, 9, 11, 13}) {
    AbGroup p = pb_group(q);
    CHECK(p.free_rank() == 0);
    CHECK(p.order() % odd_part(Int(q + 1)) == 0);
  }
  CHECK_THROWS_AS(pb_group(8), Error);
  CHECK_THROWS_AS(pb_group(3), Error);
  CHECK_THROWS_AS(pb_group(15), Error);
  try {
    pb_group(16);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EvenQ);
  }
}

TEST_CASE("refined presentation shape") {
  FlatPresentation f5 = rp_presentation(5);
  CHECK(f5.labels.size() == 8);
  CHECK(f5.five_term_pairs == 6);
  CHECK(f5.relations.rows() == 2 * (6 + 1));
  for (long q : {7, 9, 11}) {
    FlatPresentation fp = rp_presentation(q);
    CHECK(fp.labels.size() == static_cast<std::size_t>(2 * (q - 1)));
    CHECK(fp.five_term_pairs == static_cast<std::size_t>((q - 2) * (q - 3)));
  }
  Field f = field_for_q(5);
  CHECK(rp_presentation(5).group.is_zero(rp_coords(refined_five_term(f, f.from_int(2), f.from_int(3)))));
  CHECK_THROWS_AS(refined_five_term(f, f.from_int(2), f.from_int(2)), Error);
  CHECK_THROWS_AS(refined_five_term(f, f.one(), f.from_int(2)), Error);
}

TEST_CASE("lambda maps") {
  Field f = field_for_q(5);
  LambdaMaps lm = lambda_maps(5);
  IntVec two = rp_coords(rp_generator(f, f.from_int(2)));
  CHECK(lm.lambda1.apply(two) == IntVec{0, 0});
  CHECK(lm.lambda2.apply(two) == IntVec{0});
  IntVec one = rp_coords(rp_generator(f, f.one()));
  CHECK(lm.lambda1.apply(one) == IntVec{0, 0});
  CHECK(sym2_product(f, f.from_int(2), f.from_int(4)).is_zero());
  // a nonsquare with 1 - a a nonsquare: F_7 has 3 and 1 - 3 = 5
  Field f7 = field_for_q(7);
  LambdaMaps l7 = lambda_maps(7);
  IntVec three = rp_coords(rp_generator(f7, f7.from_int(3)));
  CHECK(l7.lambda1.apply(three) == IntVec{2, -2});
  CHECK(l7.lambda2.apply(three) == IntVec{1});
}

TEST_CASE("r(x) lies in ker lambda_1 and lambda_2(r(x)) = 2 lambda([x])") {
  for (long q : {5, 7, 9, 11, 13}) {
    Field f = field_for_q(q);
    LambdaMaps lm = lambda_maps(q);
    for (std::uint32_t a = 2; a < f.fq().order(); ++a) {
      Elem x{a};
      IntVec r = rp_coords(r_elem(f, x));
      CHECK(lm.lambda1.target().is_zero(lm.lambda1.apply(r)));
      IntVec l2 = lm.lambda2.apply(r);
      IntVec lam = lm.lambda.apply(p_coords(rp_generator(f, x, false)));
      CHECK(lm.lambda2.target().equal(l2, IntVec{2 * lam[0]}));
    }
  }
}

TEST_CASE("derived groups") {
  for (long q : {5, 7, 9}) {
    DerivedGroups d = derived_groups(q);
    CHECK(d.rblker.is_trivial());
    CHECK(d.rb_to_b_surjective);
    CHECK(4 % d.k1cap_exponent == 0);
    Int lhs = odd_part(d.RP1).order();
    Int rhs = odd_part(d.rblker).order() * odd_part(d.P).order();
    CHECK(lhs == rhs);
    CHECK(lhs == odd_part(Int(q + 1)));
  }
  CHECK(odd_part(derived_groups(5).RP1).invariant_factors() == std::vector<Int>{3});
}

TEST_CASE("Sym^2 relations") {
  Field q = Field::rationals();
  Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    Elem a = random_nonzero(q, rng), b = random_nonzero(q, rng);
    CHECK(sym2_add(sym2_product(q, a, b), sym2_product(q, b, a)).is_zero());
    Sym2Elem aa = sym2_product(q, a, a);
    CHECK(sym2_add(aa, aa).is_zero());
  }
  CHECK_FALSE(sym2_product(q, q.from_int(2), q.from_int(3)).is_zero());
  CHECK(lambda_sym2(q, q.one()).is_zero());
}

TEST_CASE("specialization") {
  for (long qq : {5, 7, 9}) {
    Field k = field_for_q(qq);
    Field kt = Field::rational_functions(k);
    Place t = Place::at(FqPoly{0, 1});
    DerivedGroups d = derived_groups(qq);
    Rng rng(5);
    int seen = 0;
    for (int tries = 0; seen < 20 && tries < 2000; ++tries) {
      Elem x = random_nonzero(kt, rng), y = random_nonzero(kt, rng);
      if (!five_term_admissible(kt, x, y, t)) continue;
      ++seen;
      SvPair sp = sv_apply(refined_five_term(kt, x, y), t);
      CHECK(d.RPtilde.is_zero(sp.first));
      CHECK(d.RPtilde.is_zero(sp.second));
    }
    CHECK(seen == 20);
    GroupRingElem tt = GroupRingElem::bracket(kt, kt.t());
    for (std::size_t i = 0; i < d.rp1_generators.rows(); ++i) {
      IntVec xi = d.rp1_generators.row_vec(i);
      RPElem iota = base_extend(rp_from_coords(k, xi), kt);
      CHECK(d.RPtilde.is_zero(delta_t_rp(iota, t)));
      CHECK(d.RPtilde.equal(delta_t_rp(rp_scale(tt, iota), t), xi));
    }
  }
  Field kt = Field::parse("F5t");
  Place t = Place::at(FqPoly{0, 1});
  RPElem u = rp_generator(kt, kt.parse_elem("t+2"));
  IntVec ub = rp_coords(rp_generator(field_for_q(5), Elem{std::uint32_t{2}}));
  CHECK(delta_t_rp(rp_scale(GroupRingElem::bracket(kt, kt.t()), u), t) == ub);
  CHECK(sv_apply(u, t).first == ub);
  CHECK_THROWS_AS(sv_apply(rp_generator(kt, kt.t()), t), Error);
  CHECK(five_term_admissible(Field::parse("F7t"), Field::parse("F7t").parse_elem("t+2"), Field::parse("F7t").from_int(3),
                             t));
}
