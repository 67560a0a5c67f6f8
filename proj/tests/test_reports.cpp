#include <algorithm>

#include "doctest.h"
#include "kmw/error.hpp"
#include "kmw/homology_reports.hpp"

using namespace kmw;

namespace {

std::vector<Int> sorted(std::vector<Int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("H2 report over Q") {
  Field q = Field::rationals();
  auto d7 = h2_laurent_report(q, 7);
  CHECK(d7.free_rank == 5);
  CHECK(d7.cyclic_factors == std::vector<Int>{2, 2, 4, 2, 6, 2});
  CHECK(d7.bound == 7);
  auto d3 = h2_laurent_report(q, 3);
  CHECK(d3.free_rank == 3);
  CHECK(d3.cyclic_factors == std::vector<Int>{2, 2});
  for (long b : {13L, 50L}) {
    auto d = h2_laurent_report(q, b);
    std::vector<Int> want;
    long np = 0;
    for (long p = 2; p <= b; ++p) {
      bool prime = true;
      for (long e = 2; e * e <= p; ++e) prime = prime && p % e != 0;
      if (!prime) continue;
      ++np;
      if (p == 2) continue;
      want.push_back(p - 1);
      want.push_back(2);
    }
    CHECK(d.free_rank == 1 + np);
    CHECK(sorted(d.cyclic_factors) == sorted(want));
  }
  // monotone in the bound
  auto small = sorted(h2_laurent_report(q, 13).cyclic_factors), big = sorted(h2_laurent_report(q, 50).cyclic_factors);
  CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
  CHECK_THROWS_AS(h2_laurent_report(q), Error);
  try {
    h2_laurent_report(q);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingBound);
  }
}

TEST_CASE("H2 report over a finite field is labeled formal") {
  auto d = h2_laurent_report(Field::parse("F5"));
  CHECK(d.label.find("formal functor evaluation") != std::string::npos);
  CHECK(d.cyclic_factors == std::vector<Int>{4});
  CHECK(k2mw_finite(Field::parse("F5")).is_zero());
  CHECK(k1mw_finite(Field::parse("F9")).cyclic_factors == std::vector<Int>{8});
}

TEST_CASE("H3 reports") {
  auto f5 = h3_laurent_report(Field::parse("F5"));
  CHECK(f5.cyclic_factors == std::vector<Int>{3});
  CHECK(f5.label.find("formal functor evaluation") != std::string::npos);
  CHECK(h3_laurent_report(Field::parse("F7")).cyclic_factors.empty());
  auto q7 = h3_laurent_report(Field::rationals(), 7);
  CHECK(q7.cyclic_factors == std::vector<Int>{3, 1, 3, 1});
  CHECK_FALSE(q7.free_rank.has_value());
  CHECK(q7.symbolic.size() >= 3);
  CHECK_THROWS_AS(h3_laurent_report(Field::rationals()), Error);
}

TEST_CASE("stabilization reports") {
  CHECK(stabilization_report(Field::parse("F7"), 2).is_zero());
  auto q2 = stabilization_report(Field::rationals(), 2);
  CHECK(q2.free_rank == 1);
  CHECK(q2.symbolic.size() == 1);
  auto f5 = stabilization_report(Field::parse("F5"), 3);
  CHECK(f5.cyclic_factors == std::vector<Int>{3});
  CHECK_THROWS_AS(stabilization_report(Field::parse("F5"), 4), Error);
  auto j = f5.to_json();
  CHECK(j["cyclic_factors"][0] == "3");
}
