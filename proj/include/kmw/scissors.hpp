#pragma once

// Scissors congruence groups P(F_q), RP(F_q) from their presentations, the
// maps lambda_1, lambda_2, lambda, the derived kernels, and the
// specialization S_v / delta for F_q(t).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kmw/field.hpp"
#include "kmw/group_ring.hpp"
#include "kmw/linalg.hpp"

namespace kmw {

struct RPTerm {
  GroupRingElem coeff;
  Elem arg;
};

/// Formal combination sum c_i [x_i] with c_i in Z[G_k].  Unrefined elements
/// carry integer coefficients only.
class RPElem {
 public:
  explicit RPElem(Field f, bool refined = true) : field_(std::move(f)), refined_(refined) {}

  const Field& field() const { return field_; }
  bool refined() const { return refined_; }
  const std::vector<RPTerm>& terms() const { return terms_; }

  void add_term(const GroupRingElem& c, const Elem& x);
  std::string format() const;

 private:
  Field field_;
  bool refined_;
  std::vector<RPTerm> terms_;
};

RPElem rp_generator(const Field& f, const Elem& x, bool refined = true);
RPElem rp_add(const RPElem& a, const RPElem& b);
RPElem rp_scale(const GroupRingElem& c, const RPElem& a);

/// F_q for an odd prime power q >= 5.
Field field_for_q(long q);

/// Generators (g, x): index g*(q-1) + (x-1), g = 1 for the nonsquare class.
std::size_t rp_index(const Field& fq, bool nonsquare, const Elem& x);
IntVec p_coords(const RPElem& x);
IntVec rp_coords(const RPElem& x);
RPElem rp_from_coords(const Field& fq, const IntVec& v);

AbGroup pb_group(long q);
AbGroup pb_half(long q);

struct FlatPresentation {
  std::vector<std::string> labels;
  IntMatrix relations;
  AbGroup group;
  std::size_t five_term_pairs = 0;
};
FlatPresentation rp_presentation(long q);

struct LambdaMaps {
  AbMap lambda1;  // RP -> Z[G] = Z^2 (basis 1, s)
  AbMap lambda2;  // RP -> Z/2
  AbMap lambda;   // P -> Z/2
  AbMap Lambda;   // RP -> Z^2 + Z/2
  AbMap to_p;     // RP -> P
};
LambdaMaps lambda_maps(long q);

struct DerivedGroups {
  long q = 0;
  AbGroup P, RP, B, RB, RP1, rblker, RPtilde, K1cap;
  Int k1cap_exponent;
  bool rb_to_b_surjective = false;
  /// Rows: generators of RP_1 in RP coordinates.
  IntMatrix rp1_generators;
};
DerivedGroups derived_groups(long q);

RPElem five_term(const Field& f, const Elem& x, const Elem& y);
RPElem refined_five_term(const Field& f, const Elem& x, const Elem& y);
/// All five arguments and x, y units at v with reductions outside {0,1},
/// and x, y reducing to distinct values.
bool five_term_admissible(const Field& f, const Elem& x, const Elem& y, const Place& v);

/// psi_1(x) = [x] + <-1>[x^-1]
RPElem psi1(const Field& f, const Elem& x);
/// r(x) = (<-1> + 1)[x] + <<1-x>> psi_1(x)
RPElem r_elem(const Field& f, const Elem& x);

/// Constant extension F_q -> F_q(t) on refined elements.
RPElem base_extend(const RPElem& x, const Field& kt);

struct SvPair {
  IntVec first;   // RP(kappa) coordinates
  IntVec second;  // coefficient of <pi>
};
SvPair sv_apply(const RPElem& x, const Place& v);
IntVec delta_t_rp(const RPElem& x, const Place& v);

/// Graded symmetric square of k^x for F_q and Q.  Keys are basis pairs
/// (i <= j); -1 is the basis element -1, primes otherwise.  F_q uses the
/// single key (0,0).
class Sym2Elem {
 public:
  explicit Sym2Elem(Field f) : field_(std::move(f)) {}
  const Field& field() const { return field_; }
  const std::map<std::pair<Int, Int>, Int>& coords() const { return coords_; }
  void add(const std::pair<Int, Int>& key, const Int& n);
  bool is_zero() const { return coords_.empty(); }
  std::string format() const;
  friend bool operator==(const Sym2Elem& a, const Sym2Elem& b) { return a.coords_ == b.coords_; }

 private:
  Field field_;
  std::map<std::pair<Int, Int>, Int> coords_;
};

Sym2Elem sym2_product(const Field& f, const Elem& a, const Elem& b);
Sym2Elem sym2_add(const Sym2Elem& a, const Sym2Elem& b);
Sym2Elem sym2_neg(const Sym2Elem& a);
/// a o (1 - a); zero for a = 1.
Sym2Elem lambda_sym2(const Field& f, const Elem& a);

}  // namespace kmw
