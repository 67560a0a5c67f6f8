#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kmw/error.hpp"
#include "kmw/homology_reports.hpp"
#include "kmw/scissors.hpp"
#include "kmw/verify.hpp"
#include "kmw/witt.hpp"

using namespace kmw;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string factors(const std::vector<Int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "]";
}

void absorb(Outcome& o, const VerifyResult& r) {
  o.require(r.pass, r.name + ": " + r.witness);
  if (o.pass) o.detail += (o.detail.empty() ? "" : ", ") + r.name + " " + std::to_string(r.checks);
}

Outcome scissors_sweep() {
  Outcome o;
  for (long q : {5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49}) {
    AbGroup half = pb_half(q);
    AbGroup want = AbGroup::from_invariants({odd_part(Int(q + 1))}, 0);
    o.require(half.isomorphic(want), "q=" + std::to_string(q) + " gives " + factors(half.invariant_factors()));
  }
  if (o.pass) o.detail = "17 fields";
  return o;
}

Outcome rblker_collapse(const std::vector<DerivedGroups>& d) {
  Outcome o;
  for (const auto& g : d) {
    o.require(g.rblker.is_trivial(), "q=" + std::to_string(g.q) + " rblker " + g.rblker.describe());
    o.require(g.rb_to_b_surjective, "q=" + std::to_string(g.q) + " RB -> B not onto");
  }
  if (o.pass) o.detail = "trivial for 5 fields, RB -> B onto";
  return o;
}

Outcome order_equation(const std::vector<DerivedGroups>& d) {
  Outcome o;
  for (const auto& g : d) {
    Int lhs = odd_part(g.RP1).order();
    Int rhs = odd_part(g.rblker).order() * odd_part(g.P).order();
    o.require(lhs == rhs, "q=" + std::to_string(g.q) + ": " + lhs.get_str() + " vs " + rhs.get_str());
    o.require(lhs == odd_part(Int(g.q + 1)), "q=" + std::to_string(g.q) + ": |1/2 RP1| = " + lhs.get_str());
    o.detail += (o.detail.empty() ? "" : " ") + std::to_string(g.q) + ":" + lhs.get_str();
  }
  return o;
}

Outcome k1_torsion(const std::vector<DerivedGroups>& d) {
  Outcome o;
  for (const auto& g : d) {
    if (g.q > 9) continue;
    o.require(4 % g.k1cap_exponent == 0,
              "q=" + std::to_string(g.q) + " exponent " + g.k1cap_exponent.get_str());
    o.detail += (o.detail.empty() ? "exponents" : "") + std::string(" ") + g.k1cap_exponent.get_str();
  }
  return o;
}

Outcome mw_relations() {
  Outcome o;
  for (const char* f : {"Q", "F5t", "F7t", "F9t"}) absorb(o, verify_mw_relations(Field::parse(f), 200, kSeed));
  return o;
}

Outcome residues() {
  Outcome o;
  for (const char* f : {"Q", "F5", "F7"}) absorb(o, verify_delta_t(Field::parse(f), 100, kSeed));
  return o;
}

Outcome specialization() {
  Outcome o;
  for (long q : {5, 7, 9}) absorb(o, verify_sv(q, 200, kSeed));
  return o;
}

Outcome h2_report() {
  Outcome o;
  Field q = Field::rationals();
  auto d = h2_laurent_report(q, 50);
  std::vector<Int> want;
  long primes = 0;
  for (long p : primes_up_to(50)) {
    ++primes;
    if (p == 2) continue;
    want.push_back(p - 1);
    want.push_back(2);
  }
  o.require(primes == 15 && d.free_rank == 16, "free rank at bound 50");
  auto got = d.cyclic_factors;
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  o.require(got == want, "torsion at bound 50 " + factors(d.cyclic_factors));
  auto d7 = h2_laurent_report(q, 7);
  o.require(d7.free_rank == 5 && d7.cyclic_factors == std::vector<Int>{2, 2, 4, 2, 6, 2},
            "bound 7 gives " + d7.describe());
  if (o.pass) o.detail = "bound 7: " + d7.describe();
  return o;
}

Outcome hilbert() {
  Outcome o;
  absorb(o, verify_hilbert_product(100, kSeed));
  return o;
}

Outcome witt_oracle() {
  Outcome o;
  auto w3 = witt_descriptor(Field::parse("F3")), w5 = witt_descriptor(Field::parse("F5"));
  o.require(w3.free_rank == 0 && w3.cyclic_factors == std::vector<Int>{4}, "W(F3) = " + w3.describe());
  o.require(w5.free_rank == 0 && w5.cyclic_factors == std::vector<Int>{2, 2}, "W(F5) = " + w5.describe());
  for (const char* f : {"F3", "F5", "F7", "F9"})
    o.require(i_squared_vanishes(Field::parse(f)), std::string("I^2(") + f + ") != 0");
  std::string head = o.pass ? "W(F3)=" + w3.describe() + " W(F5)=" + w5.describe() : "";
  for (const char* f : {"F3", "F5", "F7", "F9", "F5t", "F7t", "F9t"})
    absorb(o, verify_witt(Field::parse(f), 100, kSeed));
  if (o.pass) o.detail = head + "; " + o.detail;
  return o;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  std::vector<DerivedGroups> derived;
  auto derived_for = [&]() -> const std::vector<DerivedGroups>& {
    if (derived.empty())
      for (long q : {5, 7, 9, 11, 13}) derived.push_back(derived_groups(q));
    return derived;
  };

  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "odd part of P(F_q) is Z/(q+1)' for 17 prime powers", scissors_sweep},
      {2, "rblker(F_q) = 0 for q in {5,7,9,11,13}", [&] { return rblker_collapse(derived_for()); }},
      {3, "|1/2 RP1| = |1/2 rblker| * |1/2 P| for q in {5,7,9,11,13}", [&] { return order_equation(derived_for()); }},
      {4, "exponent of RP1 n K1 divides 4 for q in {5,7,9}", [&] { return k1_torsion(derived_for()); }},
      {5, "Milnor-Witt relations over Q and F_q(t)", mw_relations},
      {6, "residue identities at t over Q, F5, F7", residues},
      {7, "S_v kills five-term relations; delta_t on RP1 generators", specialization},
      {8, "H2 report for Q at bounds 50 and 7", h2_report},
      {9, "Hilbert reciprocity over Q", hilbert},
      {10, "Witt ring oracle and I^3 = 0", witt_oracle},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2d %s  %s (%.2fs)  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
