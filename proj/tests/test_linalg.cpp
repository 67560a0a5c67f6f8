#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "kmw/linalg.hpp"

using namespace kmw;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<long> d(-20, 20);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

std::vector<Int> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("snf small cases") {
  auto s = snf(IntMatrix(2, 2, {2, 0, 0, 3}));
  CHECK(s.d == IntMatrix(2, 2, {1, 0, 0, 6}));

  IntMatrix z(3, 2);
  auto sz = snf(z);
  CHECK(sz.d.is_zero());
  CHECK(sz.u == IntMatrix::identity(3));
  CHECK(sz.v == IntMatrix::identity(2));

  CHECK(snf(IntMatrix(1, 1, {2})).d == IntMatrix(1, 1, {2}));
}

TEST_CASE("snf random: unimodular factors and D = U M V") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix m = random_matrix(rng, dim(rng), dim(rng));
    auto s = snf(m);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    CHECK(s.u * m * s.v == s.d);
    REQUIRE(s.d.is_diagonal());
    std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(s.d(i, i) >= 0);
      if (i + 1 < n && s.d(i, i) != 0) CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
      if (s.d(i, i) == 0 && i + 1 < n) CHECK(s.d(i + 1, i + 1) == 0);
    }
  }
}

TEST_CASE("fp_group examples") {
  AbGroup a({"g"}, IntMatrix(1, 1, {2}));
  CHECK(a.invariant_factors() == ints({2}));
  CHECK(a.free_rank() == 0);

  AbGroup b({"x", "y"}, IntMatrix(2, 2, {2, 0, 0, 3}));
  CHECK(b.invariant_factors() == ints({6}));
  CHECK(b.describe() == "Z/6");

  AbGroup c({"g"}, IntMatrix(0, 1));
  CHECK(c.free_rank() == 1);
  CHECK(c.invariant_factors().empty());
}

TEST_CASE("fp_group is invariant under generator permutation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix m = random_matrix(rng, 5, 4);
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    IntMatrix p(5, 4);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 4; ++j) p(i, perm[j]) = m(i, j);
    AbGroup g({"a", "b", "c", "d"}, m), h({"a", "b", "c", "d"}, p);
    CHECK(g.invariant_factors() == h.invariant_factors());
    CHECK(g.free_rank() == h.free_rank());
  }
}

TEST_CASE("is_zero agrees with coordinates") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-6, 6);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix m = random_matrix(rng, 3, 3);
    AbGroup g({"a", "b", "c"}, m);
    for (int k = 0; k < 20; ++k) {
      IntVec x{d(rng), d(rng), d(rng)};
      auto c = g.coordinates(x);
      bool zero = std::all_of(c.begin(), c.end(), [](const Int& v) { return v == 0; });
      CHECK(zero == g.is_zero(x));
    }
    // relation rows die
    for (std::size_t i = 0; i < 3; ++i) CHECK(g.is_zero(m.row_vec(i)));
  }
}

TEST_CASE("fp_kernel examples") {
  {
    AbMap f(AbGroup::free(1), AbGroup::free(1), IntMatrix(1, 1, {2}));
    CHECK(fp_kernel(f).group.is_trivial());
  }
  {
    AbMap f(AbGroup::from_invariants(ints({4}), 0), AbGroup::from_invariants(ints({2}), 0), IntMatrix(1, 1, {1}));
    auto k = fp_kernel(f);
    CHECK(k.group.invariant_factors() == ints({2}));
    CHECK(k.group.free_rank() == 0);
  }
  {
    AbMap f(AbGroup::free(2), AbGroup::free(1), IntMatrix(2, 1, {1, 1}));
    auto k = fp_kernel(f);
    CHECK(k.group.free_rank() == 1);
    CHECK(k.group.invariant_factors().empty());
    IntVec gen = k.inclusion.apply(k.group.unit_vector(0));
    CHECK(((gen[0] == 1 && gen[1] == -1) || (gen[0] == -1 && gen[1] == 1)));
  }
}

TEST_CASE("kernel composite vanishes and ranks add up") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    IntMatrix img(3, 2);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) img(i, j) = d(rng);
    AbMap f(AbGroup::free(3), AbGroup::free(2), img);
    auto k = fp_kernel(f);
    for (std::size_t i = 0; i < k.group.num_generators(); ++i) {
      IntVec y = f.apply(k.inclusion.apply(k.group.unit_vector(i)));
      CHECK(f.target().is_zero(y));
    }
    AbGroup im = fp_image(f);
    CHECK(k.group.free_rank() + im.free_rank() == 3);
  }
}

TEST_CASE("finite kernel and image orders agree with enumeration") {
  // Z/6 + Z/4 -> Z/12 with random images; exhaustive element count.
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> d(0, 11);
  AbGroup src = AbGroup::from_invariants(ints({2, 12}), 0);  // order 24
  AbGroup tgt = AbGroup::from_invariants(ints({12}), 0);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix img(src.num_generators(), 1);
    // generator of Z/2 must map to 2-torsion
    img(0, 0) = 6 * (d(rng) % 2);
    img(1, 0) = d(rng);
    AbMap f(src, tgt, img);
    long kernel_count = 0;
    std::set<long> image;
    for (long a = 0; a < 2; ++a)
      for (long b = 0; b < 12; ++b) {
        IntVec y = f.apply(IntVec{a, b});
        Int r = y[0] % 12;
        if (r < 0) r += 12;
        if (r == 0) ++kernel_count;
        image.insert(r.get_si());
      }
    auto k = fp_kernel(f);
    CHECK(k.group.order() == kernel_count);
    CHECK(fp_image(f).order() == static_cast<long>(image.size()));
    CHECK(k.group.order() * fp_image(f).order() == 24);
  }
}

TEST_CASE("odd_part examples") {
  CHECK(odd_part(AbGroup::from_invariants(ints({3, 8}), 0)).invariant_factors() == ints({3}));
  CHECK(odd_part(AbGroup::from_invariants(ints({6}), 0)).invariant_factors() == ints({3}));
  auto g = odd_part(AbGroup::from_invariants(ints({12}), 1));
  CHECK(g.invariant_factors() == ints({3}));
  CHECK(g.free_rank() == 1);
  CHECK(odd_part(Int(48)) == 3);
}

TEST_CASE("quotient and surjectivity") {
  AbGroup z2 = AbGroup::free(2);
  AbGroup q = quotient(z2, IntMatrix(1, 2, {2, 4}));
  CHECK(q.describe() == "Z + Z/2");
  AbMap f(AbGroup::free(1), AbGroup::free(1), IntMatrix(1, 1, {3}));
  CHECK_FALSE(is_surjective(f));
  CHECK(in_image(f, IntVec{Int(6)}));
  CHECK_FALSE(in_image(f, IntVec{Int(4)}));
}
