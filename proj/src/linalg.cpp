#include "kmw/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "kmw/error.hpp"

namespace kmw {

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::initializer_list<long> entries)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (entries.size() != rows * cols) throw Error(Errc::InvalidInput, "matrix entry count mismatch");
  std::size_t k = 0;
  for (long e : entries) data_[k++] = e;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::size_t cols, const std::vector<IntVec>& rows) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

IntVec IntMatrix::row_vec(std::size_t i) const {
  auto r = row(i);
  return IntVec(r.begin(), r.end());
}

void IntMatrix::append_row(std::span<const Int> r) {
  if (r.size() != cols_) throw Error(Errc::InvalidInput, "row length mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  Int* d = data_.data() + dst * cols_;
  const Int* s = data_.data() + src * cols_;
  for (std::size_t j = 0; j < cols_; ++j)
    if (s[j] != 0) mpz_addmul(d[j].get_mpz_t(), k.get_mpz_t(), s[j].get_mpz_t());
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Int& s = (*this)(i, src);
    if (s != 0) mpz_addmul((*this)(i, dst).get_mpz_t(), k.get_mpz_t(), s.get_mpz_t());
  }
}

void IntMatrix::negate_row(std::size_t i) {
  for (auto& e : row(i)) e = -e;
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& e) { return e == 0; });
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(Errc::InvalidInput, "matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) mpz_addmul(c(i, j).get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntVec vec_times_matrix(std::span<const Int> x, const IntMatrix& m) {
  if (x.size() != m.rows()) throw Error(Errc::InvalidInput, "vector/matrix shape mismatch");
  IntVec y(m.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) mpz_addmul(y[j].get_mpz_t(), x[i].get_mpz_t(), m(i, j).get_mpz_t());
  }
  return y;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::InvalidInput, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ------------------------------------------------------------ normal forms

namespace {

Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Row echelon reduction pivoting only on columns [0, pivot_cols).  Applies the
// same row operations to the whole row.  Returns the number of pivot rows.
std::size_t echelon(IntMatrix& a, std::size_t pivot_cols) {
  const std::size_t rows = a.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        if (best == rows || mpz_cmpabs(a(i, c).get_mpz_t(), a(best, c).get_mpz_t()) < 0) best = i;
      }
      if (best == rows) break;
      a.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        a.add_row_multiple(i, r, -tdiv(a(i, c), a(r, c)));
        if (a(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= rows || a(r, c) == 0) continue;
    if (a(r, c) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i)
      if (a(i, c) != 0) a.add_row_multiple(i, r, -fdiv(a(i, c), a(r, c)));
    ++r;
  }
  return r;
}

// Diagonalizes `a` in place.  Row operations are mirrored in *u, column
// operations in *v (either may be null).
void smith_in_place(IntMatrix& a, IntMatrix* u, IntMatrix* v) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          if (bi == rows || mpz_cmpabs(a(i, j).get_mpz_t(), a(bi, bj).get_mpz_t()) < 0) {
            bi = i;
            bj = j;
          }
        }
      if (bi == rows) return;  // remaining block is zero
      a.swap_rows(t, bi);
      if (u) u->swap_rows(t, bi);
      a.swap_cols(t, bj);
      if (v) v->swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Int q = -tdiv(a(i, t), a(t, t));
        a.add_row_multiple(i, t, q);
        if (u) u->add_row_multiple(i, t, q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Int q = -tdiv(a(t, j), a(t, t));
        a.add_col_multiple(j, t, q);
        if (v) v->add_col_multiple(j, t, q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the rest of the block.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      a.add_row_multiple(t, bad, 1);
      if (u) u->add_row_multiple(t, bad, 1);
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      if (u) u->negate_row(t);
    }
  }
}

}  // namespace

SmithForm snf(const IntMatrix& m) {
  SmithForm s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  smith_in_place(s.d, &s.u, &s.v);
  return s;
}

IntMatrix hermite_form(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = echelon(a, a.cols());
  IntMatrix h(0, a.cols());
  for (std::size_t i = 0; i < r; ++i) h.append_row(a.row(i));
  return h;
}

IntMatrix left_kernel(const IntMatrix& m) {
  const std::size_t n = m.rows();
  IntMatrix aug(n, m.cols() + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols() + i) = 1;
  }
  std::size_t r = echelon(aug, m.cols());
  IntMatrix k(0, n);
  for (std::size_t i = r; i < n; ++i) k.append_row(aug.row(i).subspan(m.cols()));
  return hermite_form(k);
}

bool solve_in_lattice(const IntMatrix& h, std::span<const Int> x, IntVec* coeffs) {
  IntVec rest(x.begin(), x.end());
  if (coeffs) coeffs->assign(h.rows(), Int(0));
  std::size_t c = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    while (c < h.cols() && h(i, c) == 0) {
      if (rest[c] != 0) return false;
      ++c;
    }
    if (!mpz_divisible_p(rest[c].get_mpz_t(), h(i, c).get_mpz_t())) return false;
    Int q;
    mpz_divexact(q.get_mpz_t(), rest[c].get_mpz_t(), h(i, c).get_mpz_t());
    if (q != 0) {
      for (std::size_t j = c; j < h.cols(); ++j)
        if (h(i, j) != 0) mpz_submul(rest[j].get_mpz_t(), q.get_mpz_t(), h(i, j).get_mpz_t());
    }
    if (coeffs) (*coeffs)[i] = q;
    ++c;
  }
  return std::all_of(rest.begin(), rest.end(), [](const Int& e) { return e == 0; });
}

// ------------------------------------------------------------------ AbGroup

struct AbGroup::Impl {
  std::vector<std::string> labels;
  IntMatrix relations;
  IntMatrix hermite;
  std::vector<Int> factors;
  std::size_t free_rank = 0;
  // n x (factors + free_rank): x * coord gives unreduced canonical coordinates.
  IntMatrix coord;
};

AbGroup::AbGroup() : AbGroup({}, IntMatrix(0, 0)) {}

AbGroup::AbGroup(std::vector<std::string> labels, IntMatrix relations) {
  if (relations.cols() != labels.size())
    throw Error(Errc::InvalidInput, "relation columns must match generator labels");
  auto impl = std::make_shared<Impl>();
  const std::size_t n = labels.size();
  impl->labels = std::move(labels);
  impl->relations = std::move(relations);
  impl->hermite = hermite_form(impl->relations);

  IntMatrix d = impl->hermite;
  IntMatrix v = IntMatrix::identity(n);
  smith_in_place(d, nullptr, &v);
  std::size_t rank = 0;
  while (rank < std::min(d.rows(), d.cols()) && d(rank, rank) != 0) ++rank;

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < rank; ++i)
    if (d(i, i) != 1) {
      impl->factors.push_back(d(i, i));
      keep.push_back(i);
    }
  impl->free_rank = n - rank;
  for (std::size_t i = rank; i < n; ++i) keep.push_back(i);
  impl->coord = IntMatrix(n, keep.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < keep.size(); ++k) impl->coord(i, k) = v(i, keep[k]);
  impl_ = std::move(impl);
}

AbGroup AbGroup::free(std::size_t rank) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rank; ++i) labels.push_back("e" + std::to_string(i));
  return AbGroup(std::move(labels), IntMatrix(0, rank));
}

AbGroup AbGroup::from_invariants(const std::vector<Int>& factors, std::size_t free_rank) {
  const std::size_t n = factors.size() + free_rank;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("c" + std::to_string(i));
  IntMatrix rel(factors.size(), n);
  for (std::size_t i = 0; i < factors.size(); ++i) rel(i, i) = factors[i];
  return AbGroup(std::move(labels), std::move(rel));
}

std::size_t AbGroup::num_generators() const { return impl_->labels.size(); }
const std::vector<std::string>& AbGroup::labels() const { return impl_->labels; }
const IntMatrix& AbGroup::relations() const { return impl_->relations; }
const std::vector<Int>& AbGroup::invariant_factors() const { return impl_->factors; }
std::size_t AbGroup::free_rank() const { return impl_->free_rank; }

IntVec AbGroup::coordinates(std::span<const Int> x) const {
  if (x.size() != num_generators()) throw Error(Errc::InvalidInput, "element length mismatch");
  IntVec y = vec_times_matrix(x, impl_->coord);
  for (std::size_t i = 0; i < impl_->factors.size(); ++i)
    mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), impl_->factors[i].get_mpz_t());
  return y;
}

bool AbGroup::is_zero(std::span<const Int> x) const {
  if (x.size() != num_generators()) throw Error(Errc::InvalidInput, "element length mismatch");
  return solve_in_lattice(impl_->hermite, x, nullptr);
}

bool AbGroup::equal(std::span<const Int> x, std::span<const Int> y) const {
  if (x.size() != y.size()) throw Error(Errc::InvalidInput, "element length mismatch");
  IntVec d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return is_zero(d);
}

bool AbGroup::is_trivial() const { return impl_->factors.empty() && impl_->free_rank == 0; }
bool AbGroup::is_finite() const { return impl_->free_rank == 0; }

Int AbGroup::order() const {
  if (!is_finite()) throw Error(Errc::InvalidInput, "order of an infinite group");
  Int o = 1;
  for (const auto& d : impl_->factors) o *= d;
  return o;
}

Int AbGroup::exponent() const {
  if (!is_finite()) throw Error(Errc::InvalidInput, "exponent of an infinite group");
  return impl_->factors.empty() ? Int(1) : impl_->factors.back();
}

Int AbGroup::element_order(std::span<const Int> x) const {
  IntVec c = coordinates(x);
  for (std::size_t i = impl_->factors.size(); i < c.size(); ++i)
    if (c[i] != 0) return 0;
  Int o = 1;
  for (std::size_t i = 0; i < impl_->factors.size(); ++i) {
    Int g = gcd(c[i], impl_->factors[i]);
    Int ord = impl_->factors[i] / g;
    o = lcm(o, ord);
  }
  return o;
}

IntVec AbGroup::unit_vector(std::size_t generator) const {
  IntVec e(num_generators());
  e.at(generator) = 1;
  return e;
}

std::string AbGroup::describe() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (impl_->free_rank > 0) {
    os << "Z";
    if (impl_->free_rank > 1) os << "^" << impl_->free_rank;
    first = false;
  }
  for (const auto& d : impl_->factors) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

bool AbGroup::isomorphic(const AbGroup& other) const {
  return free_rank() == other.free_rank() && invariant_factors() == other.invariant_factors();
}

// -------------------------------------------------------------------- AbMap

AbMap::AbMap(AbGroup source, AbGroup target, IntMatrix images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.rows() != source_.num_generators() || images_.cols() != target_.num_generators())
    throw Error(Errc::InvalidInput, "image matrix shape does not match source/target");
  const IntMatrix& rel = source_.relations();
  for (std::size_t i = 0; i < rel.rows(); ++i) {
    IntVec y = vec_times_matrix(rel.row(i), images_);
    if (!target_.is_zero(y))
      throw Error(Errc::RelationNotKilled, "source relation " + std::to_string(i) + " has nonzero image");
  }
}

IntVec AbMap::apply(std::span<const Int> x) const { return vec_times_matrix(x, images_); }

AbMap AbMap::compose_after(const AbMap& first) const {
  return AbMap(first.source(), target_, first.images() * images_);
}

namespace {

// Lattice of x in Z^n with x * F in the relation lattice of the target.
IntMatrix preimage_of_zero(const AbMap& f) {
  const std::size_t n = f.source().num_generators();
  IntMatrix stacked = f.images();
  const IntMatrix& rb = f.target().relations();
  for (std::size_t i = 0; i < rb.rows(); ++i) stacked.append_row(rb.row(i));
  IntMatrix k = left_kernel(stacked);
  IntMatrix proj(0, n);
  for (std::size_t i = 0; i < k.rows(); ++i) proj.append_row(k.row(i).subspan(0, n));
  return hermite_form(proj);
}

}  // namespace

KernelResult fp_kernel(const AbMap& f) {
  IntMatrix basis = preimage_of_zero(f);
  const IntMatrix& ra = f.source().relations();
  IntMatrix rel(0, basis.rows());
  for (std::size_t i = 0; i < ra.rows(); ++i) {
    IntVec c;
    if (!solve_in_lattice(basis, ra.row(i), &c))
      throw Error(Errc::RelationNotKilled, "source relation outside kernel lattice");
    rel.append_row(c);
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < basis.rows(); ++i) labels.push_back("k" + std::to_string(i));
  AbGroup k(std::move(labels), std::move(rel));
  AbMap inc(k, f.source(), basis);
  return {std::move(k), std::move(inc)};
}

AbGroup fp_image(const AbMap& f) {
  return AbGroup(f.source().labels(), preimage_of_zero(f));
}

bool in_image(const AbMap& f, std::span<const Int> y) {
  IntMatrix stacked = f.images();
  const IntMatrix& rb = f.target().relations();
  for (std::size_t i = 0; i < rb.rows(); ++i) stacked.append_row(rb.row(i));
  return solve_in_lattice(hermite_form(stacked), y, nullptr);
}

bool is_surjective(const AbMap& f) {
  IntMatrix stacked = f.images();
  const IntMatrix& rb = f.target().relations();
  for (std::size_t i = 0; i < rb.rows(); ++i) stacked.append_row(rb.row(i));
  IntMatrix h = hermite_form(stacked);
  for (std::size_t j = 0; j < f.target().num_generators(); ++j)
    if (!solve_in_lattice(h, f.target().unit_vector(j), nullptr)) return false;
  return true;
}

AbGroup quotient(const AbGroup& g, const IntMatrix& extra_relations) {
  IntMatrix rel = g.relations();
  for (std::size_t i = 0; i < extra_relations.rows(); ++i) rel.append_row(extra_relations.row(i));
  return AbGroup(g.labels(), std::move(rel));
}

Int odd_part(const Int& n) {
  Int m = abs(n);
  if (m == 0) return 0;
  while (mpz_even_p(m.get_mpz_t())) m /= 2;
  return m;
}

AbGroup odd_part(const AbGroup& g) {
  std::vector<Int> f;
  for (const auto& d : g.invariant_factors()) {
    Int o = odd_part(d);
    if (o != 1) f.push_back(o);
  }
  // Odd parts of a divisibility chain still form one.
  return AbGroup::from_invariants(f, g.free_rank());
}

}  // namespace kmw
