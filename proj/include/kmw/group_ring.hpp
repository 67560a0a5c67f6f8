#pragma once

// Z[G_k] for G_k = k^x / (k^x)^2, with <a> and <<a>> = <a> - 1.

#include <array>
#include <map>
#include <string>

#include "kmw/field.hpp"

namespace kmw {

class GroupRingElem {
 public:
  explicit GroupRingElem(Field f) : field_(std::move(f)) {}

  /// coeff * <class>
  static GroupRingElem basis(const Field& f, const SquareClass& c, const Int& coeff = 1);
  /// <a>
  static GroupRingElem bracket(const Field& f, const Elem& a);
  static GroupRingElem integer(const Field& f, const Int& n);

  const Field& field() const { return field_; }
  const std::map<SquareClass, Int>& terms() const { return terms_; }
  Int coeff(const SquareClass& c) const;
  bool is_zero() const { return terms_.empty(); }

  /// Finite k only: (coefficient of 1, coefficient of s) with s the nonsquare class.
  std::array<Int, 2> as_pair() const;

  void add_term(const SquareClass& c, const Int& coeff);
  std::string format() const;

  friend bool operator==(const GroupRingElem& a, const GroupRingElem& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  Field field_;
  std::map<SquareClass, Int> terms_;
};

GroupRingElem gr_add(const GroupRingElem& x, const GroupRingElem& y);
GroupRingElem gr_sub(const GroupRingElem& x, const GroupRingElem& y);
GroupRingElem gr_neg(const GroupRingElem& x);
GroupRingElem gr_scale(const GroupRingElem& x, const Int& n);
GroupRingElem gr_mul(const GroupRingElem& x, const GroupRingElem& y);
Int augmentation(const GroupRingElem& x);
/// <<a>> = <a> - 1
GroupRingElem pfister_elem(const Field& f, const Elem& a);

void require_same_field(const Field& a, const Field& b);

}  // namespace kmw
