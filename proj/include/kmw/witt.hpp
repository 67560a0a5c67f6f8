#pragma once

// Virtual quadratic forms sum n_i <a_i>, Witt-class invariants and the
// second residue.  Pfister convention: <<a>> = <a> - <1>.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmw/descriptor.hpp"
#include "kmw/field.hpp"
#include "kmw/group_ring.hpp"

namespace kmw {

class VirtualForm {
 public:
  explicit VirtualForm(Field f) : field_(std::move(f)) {}

  static VirtualForm diag(const Field& f, const std::vector<Elem>& entries);
  static VirtualForm from_group_ring(const GroupRingElem& x);

  const Field& field() const { return field_; }
  const std::map<SquareClass, Int>& terms() const { return terms_; }
  Int rank() const;
  bool is_formally_zero() const { return terms_.empty(); }

  void add_term(const SquareClass& c, const Int& coeff);
  std::string format() const;

  friend bool operator==(const VirtualForm& a, const VirtualForm& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  Field field_;
  std::map<SquareClass, Int> terms_;
};

VirtualForm vf_add(const VirtualForm& a, const VirtualForm& b);
VirtualForm vf_sub(const VirtualForm& a, const VirtualForm& b);
VirtualForm vf_neg(const VirtualForm& a);
VirtualForm vf_mul_int(const VirtualForm& a, const Int& n);
/// <a> * phi
VirtualForm vf_scale(const VirtualForm& phi, const Elem& a);
VirtualForm vf_tensor(const VirtualForm& a, const VirtualForm& b);
/// prod (<a_i> - <1>); the empty product is <1>.
VirtualForm pfister(const Field& f, const std::vector<Elem>& entries);

struct WittInvariants {
  Int rank;
  SquareClass signed_discriminant;
  std::map<Place, Int> signatures;  // real places (Q only)
  std::map<Place, int> hasse;       // only places where a symbol can be nontrivial
};

WittInvariants witt_invariants(const VirtualForm& phi);
bool witt_is_zero(const VirtualForm& phi);
bool witt_equal(const VirtualForm& a, const VirtualForm& b);
/// n in 0..3
bool in_I_power(const VirtualForm& phi, int n);

/// Signature at the real place of Q.
Int signature(const VirtualForm& phi);
/// Signed discriminant of the Witt class, computed on an anisotropic-free
/// honest representative.
SquareClass signed_discriminant(const VirtualForm& phi);
/// Clifford invariant at v of a class in I^2, as +1/-1.
int clifford_invariant(const VirtualForm& phi, const Place& v);

/// Second residue with respect to the uniformizer of the place.
VirtualForm second_residue(const VirtualForm& phi, const Place& pi);

/// W(F_q) by exhaustive classification of diagonal forms of rank <= 4.
GroupDescriptor witt_descriptor(const Field& fq);
/// Whether every product <<a>><<b>> is Witt-zero (I^2 = 0).
bool i_squared_vanishes(const Field& fq);

}  // namespace kmw
