#include "kmw/homology_reports.hpp"

#include "kmw/error.hpp"
#include "kmw/milnor_witt.hpp"
#include "kmw/scissors.hpp"
#include "kmw/witt.hpp"

namespace kmw {

namespace {

const char* kFormal = "formal functor evaluation (finite field; the decomposition is stated for infinite fields)";

long require_bound(std::optional<long> b) {
  if (!b) throw Error(Errc::MissingBound, "a prime bound is required over Q");
  if (*b < 3) throw Error(Errc::BadBound, "prime bound must be at least 3");
  return *b;
}

long finite_order(const Field& fq) {
  if (!fq.is_finite()) throw Error(Errc::UnsupportedField, "expected Q or a finite field");
  return static_cast<long>(fq.fq().order());
}

void require_q_or_finite(const Field& k) {
  if (k.kind() != FieldKind::Rationals && k.kind() != FieldKind::Finite)
    throw Error(Errc::UnsupportedField, "reports are defined for Q and F_q");
}

Int i_order(const Field& fq) {
  // W(F_q) has order 4; I is the rank-0 part
  return witt_descriptor(fq).torsion_order() / 2;
}

// Lower bound for 1/2 rblker(Q): the surjection onto the sum of 1/2 P(F_p).
std::vector<Int> rblker_q_lower_bound(long bound) {
  std::vector<Int> out;
  for (long p : primes_up_to(bound)) {
    if (p < 5)
      out.push_back(odd_part(Int(p + 1)));
    else
      out.push_back(pb_half(p).order());
  }
  return out;
}

}  // namespace

GroupDescriptor k2mw_finite(const Field& fq) {
  finite_order(fq);
  GroupDescriptor d;
  d.label = "K2MW(" + fq.name() + ")";
  if (!i_squared_vanishes(fq)) throw Error(Errc::InvalidInput, "I^2 of a finite field did not vanish");
  d.provenance = {"K2M of a finite field vanishes", "I^2(" + fq.name() + ") = 0 by the Witt oracle"};
  return d;
}

GroupDescriptor k1mw_finite(const Field& fq) {
  long q = finite_order(fq);
  if (!i_squared_vanishes(fq)) throw Error(Errc::InvalidInput, "I^2 of a finite field did not vanish");
  Int i = i_order(fq);
  // I -> I/I^2 is an isomorphism, so the fiber product projects isomorphically to F_q^x
  if (i != 2) throw Error(Errc::InvalidInput, "unexpected order of I(F_q)");
  GroupDescriptor d;
  d.label = "K1MW(" + fq.name() + ")";
  d.cyclic_factors = {Int(q - 1)};
  d.provenance = {"fiber product F_q^x x_{I/I^2} I with I^2 = 0 and |I| = 2"};
  return d;
}

GroupDescriptor h2_laurent_report(const Field& k, std::optional<long> prime_bound) {
  require_q_or_finite(k);
  GroupDescriptor d;
  if (k.kind() == FieldKind::Rationals) {
    long b = require_bound(prime_bound);
    auto primes = primes_up_to(b);
    d.label = "H2(SL2(Q[t,1/t]))";
    d.bound = b;
    d.free_rank = 1 + static_cast<long>(primes.size());
    for (long p : primes)
      if (p != 2) {
        d.cyclic_factors.push_back(Int(p - 1));
        d.cyclic_factors.push_back(Int(2));
      }
    GroupDescriptor k2 = mw_descriptor(k, 2, b), k1 = mw_descriptor(k, 1, b);
    d.provenance = {"H2(SL2(k[t,1/t])) = H2(SL2(k)) + K1MW(k) for infinite k of characteristic not 2",
                    "Z + sum_p Z + sum_{p odd} (F_p^x + Z/2), truncated at primes <= " + std::to_string(b),
                    "constituents: " + k2.label + " = " + k2.describe() + ", " + k1.label + " = " + k1.describe()};
    return d;
  }
  d.label = "H2(SL2(" + k.name() + "[t,1/t])) [" + std::string(kFormal) + "]";
  d.absorb(k2mw_finite(k));
  d.absorb(k1mw_finite(k));
  d.symbolic.push_back({"H2(SL2(" + k.name() + "))", "second homology of SL2 over the base field, not computed"});
  d.provenance.push_back("K2MW(k) + K1MW(k) evaluated at " + k.name());
  return d;
}

GroupDescriptor h3_laurent_report(const Field& k, std::optional<long> prime_bound) {
  require_q_or_finite(k);
  GroupDescriptor d;
  if (k.kind() == FieldKind::Rationals) {
    long b = require_bound(prime_bound);
    d.label = "1/2 H3(SL2(Q[t,1/t]))";
    d.bound = b;
    d.free_rank.reset();
    d.cyclic_factors = rblker_q_lower_bound(b);
    d.symbolic = {{"1/2 H3(SL2(Q))", "third homology of SL2(Q) with 2 inverted"},
                  {"1/2 K3ind(Q) = Z/3", "indecomposable K3 of Q (order 24) with 2 inverted"},
                  {"1/2 P(Q) = Z/3 + V", "B(Q) = Z/6; V of countably infinite rank"},
                  {"1/2 rblker(Q)", "surjects onto sum over p of 1/2 P(F_p); listed factors are a lower bound only"}};
    d.provenance = {"1/2 H3(SL2(k[t,1/t])) = 1/2 H3(SL2(k)) + 1/2 RP1(k)",
                    "cyclic factors: (p+1)' for primes p <= " + std::to_string(b) + ", a lower bound"};
    return d;
  }
  long q = finite_order(k);
  DerivedGroups g = derived_groups(q);
  d = GroupDescriptor::from_group(odd_part(g.RP1), "1/2 H3(SL2(" + k.name() + "[t,1/t])) [" + kFormal + "]");
  d.symbolic.push_back({"1/2 H3(SL2(" + k.name() + "))", "third homology of SL2 over the base field, not computed"});
  d.provenance = {"computed part: 1/2 RP1(" + k.name() + ") from the refined presentation"};
  return d;
}

GroupDescriptor stabilization_report(const Field& k, int degree) {
  require_q_or_finite(k);
  if (degree != 2 && degree != 3) throw Error(Errc::UnsupportedDegree, "stabilization is reported in degrees 2, 3");
  GroupDescriptor d;
  bool finite = k.is_finite();
  std::string tag = finite ? std::string(" [") + kFormal + "]" : "";
  if (degree == 2) {
    d.label = "ker(H2(SL2(" + k.name() + "[t,1/t])) -> H2(SL3))" + tag;
    if (finite) {
      if (!i_squared_vanishes(k)) throw Error(Errc::InvalidInput, "I^2 of a finite field did not vanish");
      d.provenance = {"kernel I^3(k) + I^2(k)", "I^2(" + k.name() + ") = 0, hence I^3 = 0"};
    } else {
      d.free_rank = 1;
      d.symbolic = {{"I^2(Q)", "second power of the fundamental ideal of Q"}};
      d.provenance = {"kernel I^3(k) + I^2(k)", "I^3(Q) = I^3(R) = Z via the signature"};
    }
    return d;
  }
  d.label = "ker(1/2 H3(SL2(" + k.name() + "[t,1/t])) -> 1/2 H3(SL3))" + tag;
  if (finite) {
    DerivedGroups g = derived_groups(finite_order(k));
    d.absorb(GroupDescriptor::from_group(odd_part(g.rblker)));
    d.absorb(GroupDescriptor::from_group(odd_part(g.RP1)));
    d.provenance = {"kernel 1/2 rblker(k) + 1/2 RP1(k), both computed"};
  } else {
    d.free_rank.reset();
    d.symbolic = {{"1/2 rblker(Q)", "surjects onto sum over p of 1/2 P(F_p)"},
                  {"1/2 RP1(Q)", "refined Bloch kernel of Q with 2 inverted"}};
    d.provenance = {"kernel 1/2 rblker(k) + 1/2 RP1(k)"};
  }
  d.symbolic.push_back({"cokernel 1/2 K3M(k) + 1/2 K2M(k)", "Milnor K-theory in degrees 3 and 2 with 2 inverted"});
  return d;
}

}  // namespace kmw
