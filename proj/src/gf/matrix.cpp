#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "perverx/gf.hpp"

namespace perverx::gf {

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(&f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::operator<(const Matrix& o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_;
  if (cols_ != o.cols_) return cols_ < o.cols_;
  return data_ < o.data_;
}

Matrix Matrix::row_block(std::size_t r0, std::size_t n) const {
  Matrix m(*field_, n, cols_);
  std::copy(data_.begin() + r0 * cols_, data_.begin() + (r0 + n) * cols_, m.data_.begin());
  return m;
}

Matrix Matrix::col_block(std::size_t c0, std::size_t n) const {
  Matrix m(*field_, rows_, n);
  for (std::size_t i = 0; i < rows_; ++i)
    std::copy(row(i) + c0, row(i) + c0 + n, m.row(i));
  return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix m(*field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) std::copy(row(idx[i]), row(idx[i]) + cols_, m.row(i));
  return m;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix m(*field_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("set_block");
  for (std::size_t i = 0; i < b.rows(); ++i) std::copy(b.row(i), b.row(i) + b.cols(), row(r0 + i) + c0);
}

void Matrix::append_row(const Elem* r) {
  data_.insert(data_.end(), r, r + cols_);
  ++rows_;
}

void Matrix::resize_rows(std::size_t n) {
  data_.resize(n * cols_, 0);
  rows_ = n;
}

namespace {

void same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  same_shape(a, b, "add");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) axpy(a.field(), c.row(i), b.row(i), 1, 0, a.cols());
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  same_shape(a, b, "sub");
  Matrix c = a;
  Elem m1 = a.field().neg(1);
  for (std::size_t i = 0; i < a.rows(); ++i) axpy(a.field(), c.row(i), b.row(i), m1, 0, a.cols());
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }

Matrix scale(const Matrix& a, Elem c) {
  Matrix m = a;
  const Elem* mr = a.field().mul_row(c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = mr[a(i, j)];
  return m;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  Matrix m(a.field(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  Matrix m(a.field(), a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  const Field& f = a.field();
  Matrix m(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Elem x = a(i, j);
      if (!x) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = f.mul(x, b(k, l));
    }
  return m;
}

Matrix power(const Matrix& a, unsigned long e) {
  Matrix r = Matrix::identity(a.field(), a.rows());
  Matrix b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::size_t rank(const Matrix& a) { return rref(a).rank(); }

Matrix row_basis(const Matrix& a) {
  Echelon e = rref(a);
  return e.m.row_block(0, e.rank());
}

Matrix nullspace(const Matrix& a) {
  Echelon e = rref(a);
  const Field& f = a.field();
  std::vector<bool> is_piv(a.cols(), false);
  for (auto c : e.pivots) is_piv[c] = true;
  Matrix n(f, 0, a.cols());
  std::vector<Elem> v(a.cols());
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_piv[free]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) v[e.pivots[r]] = f.neg(e.m(r, free));
    n.append_row(v.data());
  }
  return row_basis(n);
}

Matrix left_nullspace(const Matrix& a) { return nullspace(transpose(a)); }

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const Field& f = a.field();
  Echelon e = rref(hstack(a, b));
  Matrix x(f, a.cols(), b.cols());
  for (std::size_t r = 0; r < e.rank(); ++r) {
    std::size_t c = e.pivots[r];
    if (c >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = e.m(r, a.cols() + j);
  }
  return x;
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
  auto x = solve(transpose(a), transpose(b));
  if (!x) return std::nullopt;
  return transpose(*x);
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  Echelon e = rref(hstack(a, Matrix::identity(a.field(), a.rows())));
  if (e.rank() < a.rows() || (a.rows() && e.pivots[a.rows() - 1] >= a.cols())) return std::nullopt;
  return e.m.col_block(a.cols(), a.cols());
}

Matrix subspace_sum(const Matrix& u, const Matrix& v) { return row_basis(vstack(u, v)); }

Matrix subspace_intersect(const Matrix& u, const Matrix& v) {
  // Zassenhaus: rows [u u; v 0]; the echelon rows with zero left half give the intersection.
  const Field& f = u.field();
  std::size_t n = u.cols();
  Matrix z(f, u.rows() + v.rows(), 2 * n);
  z.set_block(0, 0, u);
  z.set_block(0, n, u);
  z.set_block(u.rows(), 0, v);
  Echelon e = rref(z);
  Matrix out(f, 0, n);
  for (std::size_t r = 0; r < e.rank(); ++r)
    if (e.pivots[r] >= n) out.append_row(e.m.row(r) + n);
  return row_basis(out);
}

bool subspace_contains(const Matrix& basis, const Matrix& vectors) {
  if (vectors.rows() == 0) return true;
  return rank(vstack(basis, vectors)) == rank(basis);
}

Matrix coordinates(const Matrix& basis, const Matrix& v) {
  auto x = solve_left(basis, v);
  if (!x) throw std::invalid_argument("coordinates: vector outside span");
  return *x;
}

std::vector<std::size_t> complement_indices(const Echelon& e) {
  std::vector<bool> is_piv(e.m.cols(), false);
  for (auto c : e.pivots) is_piv[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < e.m.cols(); ++c)
    if (!is_piv[c]) out.push_back(c);
  return out;
}

void write(std::ostream& os, const Matrix& m) {
  os << m.rows() << ' ' << m.cols() << ' ' << m.field().q() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m.field().name(m(i, j));
    }
    os << '\n';
  }
}

Matrix read(std::istream& is) {
  std::size_t r, c;
  int q;
  if (!(is >> r >> c >> q)) throw std::invalid_argument("matrix header: expected 'rows cols q'");
  const Field& f = Field::get(q);
  Matrix m(f, r, c);
  std::string tok;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      if (!(is >> tok)) throw std::invalid_argument("matrix body truncated at row " + std::to_string(i + 1));
      m(i, j) = f.parse(tok);
    }
  return m;
}

std::string to_text(const Matrix& m) {
  std::ostringstream os;
  write(os, m);
  return os.str();
}

Matrix from_text(const std::string& s) {
  std::istringstream is(s);
  return read(is);
}

}  // namespace perverx::gf
