#pragma once

// Milnor-Witt K-theory in low degrees via the fiber product of Milnor
// K-theory and powers of the fundamental ideal.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kmw/descriptor.hpp"
#include "kmw/field.hpp"
#include "kmw/witt.hpp"

namespace kmw {

/// eta^eta [syms_1]...[syms_m]; its degree is m - eta.
struct Monomial {
  int eta = 0;
  std::vector<Elem> syms;
  int degree() const { return static_cast<int>(syms.size()) - eta; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct MWTerm {
  Int coeff;
  Monomial mono;
};

/// Formal integer combination of monomials of a fixed degree in -1..3.
class MWElem {
 public:
  MWElem(Field f, int degree);

  const Field& field() const { return field_; }
  int degree() const { return degree_; }
  const std::vector<MWTerm>& terms() const { return terms_; }

  void add_term(const Int& coeff, Monomial m);
  std::string format() const;

 private:
  Field field_;
  int degree_;
  std::vector<MWTerm> terms_;
};

struct MilnorCoords {
  int degree = 0;
  Int rank;                              // degree 0
  Elem unit;                             // degree 1
  std::map<Place, ResidueValue> tame;    // degree 2, nontrivial entries only
  int real = 1;                          // degree 2 over Q
  int two_adic = 1;                      // degree 2 over Q
};

MWElem mw_symbol(const Field& f, const std::vector<Elem>& syms);
MWElem mw_zero(const Field& f, int degree);
MWElem mw_one(const Field& f);
/// eta, degree -1
MWElem mw_eta(const Field& f);
MWElem h_elem(const Field& f);

MWElem mw_add(const MWElem& x, const MWElem& y);
MWElem mw_sub(const MWElem& x, const MWElem& y);
MWElem mw_neg(const MWElem& x);
MWElem mw_scale(const MWElem& x, const Int& n);
MWElem mw_mul(const MWElem& x, const MWElem& y);
MWElem eta_mul(const MWElem& x);
/// <u> x := x + eta [u] x
MWElem unit_action(const Elem& u, const MWElem& x);

MilnorCoords milnor_coords(const MWElem& x);
VirtualForm witt_component(const MWElem& x);
bool milnor_is_trivial(const MWElem& x);
bool mw_equal(const MWElem& x, const MWElem& y);
/// Mod-2 invariants of both components agree place by place.
bool mw_compatible(const MWElem& x);

/// Residue map at a finite place of k(t), landing in the residue field.
MWElem mw_delta(const MWElem& x, const Place& pi);

/// Signature of the Witt component divided by 4 (degree 2 over Q).
Int t_sigma(const MWElem& x);

GroupDescriptor mw_descriptor(const Field& q, int n, long prime_bound);

/// "[2][3]", "eta*[-1][2][t]", "h*[2]", "<t>*[2][3] - 2*[5][7]".
MWElem parse_mw(const Field& f, std::string_view text);

}  // namespace kmw
