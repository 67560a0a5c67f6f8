#include <random>

#include "doctest.h"
#include "kmw/error.hpp"
#include "kmw/field.hpp"

using namespace kmw;

TEST_CASE("finite field arithmetic") {
  Field f7 = Field::parse("F7");
  CHECK(f7.mul(f7.from_int(3), f7.from_int(5)) == f7.one());
  // exhaustive inverse table
  for (int a = 1; a < 7; ++a) CHECK(f7.mul(f7.from_int(a), f7.inv(f7.from_int(a))) == f7.one());
  CHECK_THROWS_AS(f7.inv(f7.zero()), Error);

  Field f9 = Field::parse("F9");
  Elem x = f9.parse_elem("x");
  CHECK(f9.mul(x, x) == f9.from_int(-1));
  CHECK(f9.fq().modulus() == std::vector<std::uint32_t>{1, 0, 1});

  Field q = Field::rationals();
  CHECK(q.add(q.parse_elem("2/3"), q.parse_elem("1/3")) == q.one());
}

TEST_CASE("irreducible modulus is checked") {
  CHECK_THROWS_AS(FiniteField(3, std::vector<std::uint32_t>{2, 0, 1}), Error);  // x^2 - 1
  CHECK_NOTHROW(FiniteField(3, std::vector<std::uint32_t>{1, 0, 1}));
}

TEST_CASE("generator has full order") {
  for (unsigned q : {3u, 5u, 7u, 9u, 25u, 27u, 49u, 81u}) {
    Field f = Field::parse("F" + std::to_string(q));
    const auto& F = f.fq();
    auto g = F.generator();
    std::uint64_t ord = 1;
    for (auto y = g; y != F.one(); y = F.mul(y, g)) ++ord;
    CHECK(ord == q - 1);
  }
}

TEST_CASE("square classes") {
  Field f7 = Field::parse("F7");
  CHECK_FALSE(f7.is_square(f7.from_int(3)));
  CHECK(f7.is_square(f7.from_int(2)));
  CHECK(f7.is_square(f7.one()));
  CHECK_THROWS_AS(f7.square_class(f7.zero()), Error);

  Field q = Field::rationals();
  SquareClass c = q.square_class(q.from_int(-18));
  CHECK(c == q.square_class(q.from_int(-2)));
  CHECK(c.negative);
  CHECK(c.primes == std::vector<Int>{2});
  CHECK(q.is_square(q.parse_elem("9/4")));
  CHECK(q.is_square(q.one()));
}

TEST_CASE("square classes are multiplicative over small finite fields") {
  for (unsigned qq : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
    Field f = Field::parse("F" + std::to_string(qq));
    for (std::uint32_t a = 1; a < qq; ++a)
      for (std::uint32_t b = 1; b < qq; ++b) {
        Elem x{a}, y{b};
        CHECK(f.square_class(f.mul(x, y)) == f.class_mul(f.square_class(x), f.square_class(y)));
      }
  }
}

TEST_CASE("square classes multiplicative over Q and F_q(t), invariant under squares") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> d(-500, 500);
  Field q = Field::rationals();
  for (int i = 0; i < 100; ++i) {
    long a = d(rng), b = d(rng), c = d(rng);
    if (!a || !b || !c) continue;
    Elem x = q.from_int(a), y = q.from_int(b), z = q.from_int(c);
    CHECK(q.square_class(q.mul(x, y)) == q.class_mul(q.square_class(x), q.square_class(y)));
    CHECK(q.square_class(q.mul(x, q.mul(z, z))) == q.square_class(x));
  }
  Field ft = Field::parse("F5t");
  std::uniform_int_distribution<std::uint32_t> cf(0, 4);
  auto rnd = [&]() {
    FqPoly p(3);
    for (auto& v : p) v = cf(rng);
    p.push_back(1 + cf(rng) % 4);
    return ft.from_fq_rat(p, {1});
  };
  for (int i = 0; i < 50; ++i) {
    Elem x = rnd(), y = rnd(), z = rnd();
    CHECK(ft.square_class(ft.mul(x, y)) == ft.class_mul(ft.square_class(x), ft.square_class(y)));
    CHECK(ft.square_class(ft.div(x, ft.mul(z, z))) == ft.square_class(x));
  }
}

TEST_CASE("polynomial factorization") {
  FiniteField F3(3, 1), F5(5, 1);
  auto f1 = factor_poly(F3, {1, 0, 1});
  REQUIRE(f1.size() == 1);
  CHECK(f1[0].second == 1);
  auto f2 = factor_poly(F5, {4, 0, 1});
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].first == FqPoly{1, 1});
  CHECK(f2[1].first == FqPoly{4, 1});
  auto f3 = factor_poly(F3, {0, 2, 0, 1});
  CHECK(f3.size() == 3);
  CHECK_THROWS_AS(factor_poly(F3, {}), Error);
}

TEST_CASE("factorization reconstructs and degrees add up") {
  std::mt19937_64 rng(2);
  for (unsigned qq : {3u, 5u, 9u, 25u}) {
    FiniteField F(static_cast<std::uint32_t>(qq == 9 ? 3 : qq == 25 ? 5 : qq), qq == 9 || qq == 25 ? 2 : 1);
    PolyAlg<FqOps> R(FqOps{&F});
    std::uniform_int_distribution<std::uint32_t> cf(0, qq - 1);
    for (int i = 0; i < 30; ++i) {
      FqPoly a(7);
      for (auto& v : a) v = cf(rng);
      a.push_back(1);
      // force a repeated factor now and then
      if (i % 3 == 0) a = R.mul(a, R.mul(FqPoly{1, 1}, FqPoly{1, 1}));
      auto fac = factor_poly(F, a);
      FqPoly prod = R.one();
      long total = 0;
      for (auto& [g, m] : fac) {
        CHECK(is_irreducible(F, g));
        prod = R.mul(prod, R.pow(g, static_cast<unsigned long>(m)));
        total += m * R.deg(g);
        CHECK(g.back() == 1);
      }
      CHECK(prod == a);
      CHECK(total == R.deg(a));
    }
  }
}

TEST_CASE("valuations") {
  Field f = Field::parse("F5t");
  Elem t = f.t();
  auto [v1, r1] = f.valuation(f.parse_elem("t^2*(t+1)"), Place::at(FqPoly{0, 1}));
  CHECK(v1 == 2);
  CHECK(r1 == ResidueValue{FqPoly{1}});
  auto [v2, r2] = f.valuation(t, Place::at(FqPoly{0, 1}));
  CHECK(v2 == 1);
  CHECK(r2 == ResidueValue{FqPoly{1}});
  auto [v3, r3] = f.valuation(f.parse_elem("(t+2)/t"), Place::at(FqPoly{4, 1}));
  CHECK(v3 == 0);
  CHECK(r3 == ResidueValue{FqPoly{3}});
  CHECK_THROWS_AS(f.valuation(f.zero(), Place::infinite()), Error);
  auto [vi, ri] = f.valuation(f.parse_elem("3*t^2+1"), Place::infinite());
  CHECK(vi == -2);
  CHECK(ri == ResidueValue{FqPoly{3}});
}

TEST_CASE("legendre, hilbert, tame examples") {
  Field q = Field::rationals();
  CHECK(legendre(Int(2), Int(7)) == 1);
  CHECK_THROWS_AS(legendre(Int(3), Int(2)), Error);
  CHECK(q.hilbert(q.from_int(-1), q.from_int(-1), Place::infinite()) == -1);
  CHECK(q.hilbert(q.from_int(-1), q.from_int(-1), Place::at_prime(2)) == -1);
  CHECK(q.hilbert(q.from_int(2), q.from_int(3), Place::at_prime(3)) == -1);

  CHECK(q.tame_symbol(q.from_int(5), q.from_int(7), Place::at_prime(5)) == ResidueValue{Int(3)});  // 7^{-1} mod 5
  CHECK(q.tame_symbol(q.from_int(3), q.from_int(7), Place::at_prime(5)) == ResidueValue{Int(1)});
  CHECK_THROWS_AS(q.tame_symbol(q.from_int(3), q.from_int(7), Place::infinite()), Error);

  Field f = Field::parse("F5t");
  CHECK(f.tame_symbol(f.t(), f.from_int(3), Place::at(FqPoly{0, 1})) == ResidueValue{FqPoly{2}});
}

namespace {

// Whether z^2 = a x^2 + b y^2 has a primitive solution mod 2^k (k = 6 is
// enough to decide the 2-adic symbol for arguments with valuation <= 1).
bool solvable_mod_64(long a, long b) {
  for (long x = 0; x < 64; ++x)
    for (long y = 0; y < 64; ++y)
      for (long z = 0; z < 64; ++z) {
        if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
        if (((z * z - a * x * x - b * y * y) % 64 + 64) % 64 == 0) return true;
      }
  return false;
}

}  // namespace

TEST_CASE("2-adic Hilbert symbol against brute force") {
  Field q = Field::rationals();
  const long reps[] = {1, 3, 5, 7, 2, 6, 10, 14, -1, -3, -2};
  for (long a : reps)
    for (long b : reps) {
      int h = q.hilbert(q.from_int(a), q.from_int(b), Place::at_prime(2));
      CHECK_MESSAGE((h == 1) == solvable_mod_64(a, b), "a=" << a << " b=" << b);
    }
}

TEST_CASE("Hilbert symbol is symmetric and bimultiplicative") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> d(-60, 60);
  Field q = Field::rationals();
  for (int i = 0; i < 60; ++i) {
    long a = d(rng), b = d(rng), c = d(rng);
    if (!a || !b || !c) continue;
    Elem x = q.from_int(a), y = q.from_int(b), z = q.from_int(c);
    for (Place v : {Place::infinite(), Place::at_prime(2), Place::at_prime(3), Place::at_prime(5), Place::at_prime(7)}) {
      CHECK(q.hilbert(x, y, v) == q.hilbert(y, x, v));
      CHECK(q.hilbert(x, q.mul(y, z), v) == q.hilbert(x, y, v) * q.hilbert(x, z, v));
    }
  }
}

TEST_CASE("Hilbert product formula over Q") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> d(1, 1000);
  std::bernoulli_distribution s(0.5);
  Field q = Field::rationals();
  for (int i = 0; i < 100; ++i) {
    mpq_class a(d(rng) * (s(rng) ? -1 : 1), d(rng)), b(d(rng) * (s(rng) ? -1 : 1), d(rng));
    a.canonicalize();
    b.canonicalize();
    Elem x = q.from_rational(a), y = q.from_rational(b);
    int prod = 1;
    for (const auto& v : q.hilbert_places({q.square_class(x), q.square_class(y)})) prod *= q.hilbert(x, y, v);
    CHECK(prod == 1);
  }
}

TEST_CASE("Steinberg consistency: tame character equals Hilbert at odd places") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> d(-300, 300);
  Field q = Field::rationals();
  for (int i = 0; i < 80; ++i) {
    long a = d(rng);
    if (a == 0 || a == 1) continue;
    Elem x = q.from_int(a), y = q.from_int(1 - a);
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
      Place v = Place::at_prime(p);
      CHECK(q.residue_character(v, q.tame_symbol(x, y, v)) == q.hilbert(x, y, v));
      CHECK(q.hilbert(x, y, v) == 1);
    }
  }
}

TEST_CASE("Hilbert reciprocity over F_q(t)") {
  std::mt19937_64 rng(8);
  Field f = Field::parse("F7t");
  std::uniform_int_distribution<std::uint32_t> cf(0, 6);
  auto rnd = [&]() {
    FqPoly p(2);
    for (auto& v : p) v = cf(rng);
    p.push_back(1 + cf(rng) % 6);
    PolyAlg<FqOps> R(FqOps{&f.fq()});
    R.trim(p);
    return f.from_fq_rat(p, {1});
  };
  for (int i = 0; i < 40; ++i) {
    Elem x = rnd(), y = rnd();
    if (f.is_zero(x) || f.is_zero(y)) continue;
    int prod = 1;
    for (const auto& v : f.hilbert_places({f.square_class(x), f.square_class(y)})) {
      // places of odd degree contribute through the character of the residue field
      prod *= f.hilbert(x, y, v);
    }
    CHECK(prod == 1);
  }
}

TEST_CASE("element parsing") {
  Field q = Field::rationals();
  CHECK(q.parse_elem("\xE2\x88\x92" "3") == q.from_int(-3));
  CHECK(q.parse_elem("2^-2") == q.from_rational(mpq_class(1, 4)));
  CHECK_THROWS_AS(q.parse_elem("t"), Error);
  CHECK_THROWS_AS(q.parse_elem("1/0"), Error);
  Field f = Field::parse("F7t");
  CHECK(f.format(f.parse_elem("(t+1)^2")) == "t^2+2*t+1");
  CHECK(f.format(f.parse_elem("1/t")) == "(1)/(t)");
  CHECK_THROWS_AS(Field::parse("F8"), Error);
  CHECK_THROWS_AS(Field::parse("F6"), Error);
  CHECK_THROWS_AS(Field::parse("R"), Error);
}
