#pragma once

// Exact integer linear algebra: Hermite/Smith normal forms and finitely
// presented abelian groups.  All arithmetic is over GMP integers.

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace kmw {

using Int = mpz_class;
using IntVec = std::vector<Int>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::initializer_list<long> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::size_t cols, const std::vector<IntVec>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Int> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Int> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  IntVec row_vec(std::size_t i) const;

  void append_row(std::span<const Int> r);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  IntMatrix transposed() const;
  bool is_zero() const;
  bool is_diagonal() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntVec vec_times_matrix(std::span<const Int> x, const IntMatrix& m);

/// Exact determinant (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
};

/// D = U * M * V with U, V unimodular and D diagonal, d1 | d2 | ..., di >= 0.
SmithForm snf(const IntMatrix& m);

/// Row-style Hermite normal form of the row lattice; zero rows are dropped.
/// Pivots are positive and entries above a pivot lie in [0, pivot).
IntMatrix hermite_form(const IntMatrix& m);

/// Basis (in Hermite form) of {x : x * m = 0}.
IntMatrix left_kernel(const IntMatrix& m);

/// Solves x = c * h for a Hermite-form basis h.  Returns false when x is not in
/// the row lattice.
bool solve_in_lattice(const IntMatrix& h, std::span<const Int> x, IntVec* coeffs);

/// A finitely presented abelian group Z^n / (row lattice of the relations),
/// together with its canonical decomposition Z^r (+) Z/d1 (+) ... (+) Z/dk.
class AbGroup {
 public:
  AbGroup();
  AbGroup(std::vector<std::string> labels, IntMatrix relations);

  static AbGroup free(std::size_t rank);
  /// Canonical presentation of Z^free_rank (+) Z/d1 (+) ...
  static AbGroup from_invariants(const std::vector<Int>& factors, std::size_t free_rank);

  std::size_t num_generators() const;
  const std::vector<std::string>& labels() const;
  const IntMatrix& relations() const;
  /// d1 | d2 | ..., each >= 2.
  const std::vector<Int>& invariant_factors() const;
  std::size_t free_rank() const;

  /// Canonical coordinates: torsion coordinates reduced into [0, di) followed by
  /// the free coordinates.
  IntVec coordinates(std::span<const Int> x) const;
  /// Membership of x in the relation lattice, decided by the Hermite basis.
  bool is_zero(std::span<const Int> x) const;
  bool equal(std::span<const Int> x, std::span<const Int> y) const;

  bool is_trivial() const;
  bool is_finite() const;
  Int order() const;     // throws InvalidInput when infinite
  Int exponent() const;  // throws InvalidInput when infinite
  /// Additive order of an element; 0 if infinite.
  Int element_order(std::span<const Int> x) const;

  IntVec unit_vector(std::size_t generator) const;
  std::string describe() const;

  bool isomorphic(const AbGroup& other) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Homomorphism between presented groups; row i of `images` is the image of
/// source generator i in target generator coordinates.
class AbMap {
 public:
  /// Throws RelationNotKilled if a source relation does not map to zero.
  AbMap(AbGroup source, AbGroup target, IntMatrix images);

  const AbGroup& source() const { return source_; }
  const AbGroup& target() const { return target_; }
  const IntMatrix& images() const { return images_; }

  IntVec apply(std::span<const Int> x) const;
  AbMap compose_after(const AbMap& first) const;  // this o first

 private:
  AbGroup source_;
  AbGroup target_;
  IntMatrix images_;
};

struct KernelResult {
  AbGroup group;
  AbMap inclusion;
};

KernelResult fp_kernel(const AbMap& f);
/// The image subgroup as an abstract group (source generators modulo the
/// preimage of zero).
AbGroup fp_image(const AbMap& f);
/// Whether y (target coordinates) lies in the image of f.
bool in_image(const AbMap& f, std::span<const Int> y);
/// Whether the image of f is all of the target.
bool is_surjective(const AbMap& f);
/// The group with additional relation rows appended.
AbGroup quotient(const AbGroup& g, const IntMatrix& extra_relations);
/// Odd part: invariant factors replaced by their odd parts, ones dropped.
AbGroup odd_part(const AbGroup& g);

Int odd_part(const Int& n);

}  // namespace kmw
