#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace perverx::gf {

using Elem = std::uint8_t;

// GF(q) for q in {2,3,4,9}. Extension elements a + b*x are stored as a + p*b.
class Field {
 public:
  static const Field& get(int q);

  int q() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return d_; }

  Elem add(Elem a, Elem b) const { return add_[a][b]; }
  Elem sub(Elem a, Elem b) const { return add_[a][neg_[b]]; }
  Elem mul(Elem a, Elem b) const { return mul_[a][b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem inv(Elem a) const;
  Elem from_int(long v) const;

  const Elem* add_row(Elem a) const { return add_[a]; }
  const Elem* mul_row(Elem a) const { return mul_[a]; }

  const std::string& name(Elem a) const { return names_[a]; }
  Elem parse(const std::string& s) const;

 private:
  explicit Field(int q);

  int q_, p_, d_;
  Elem add_[16][16]{};
  Elem mul_[16][16]{};
  Elem neg_[16]{};
  Elem inv_[16]{};
  std::vector<std::string> names_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& f, std::size_t n);

  const Field& field() const { return *field_; }
  bool has_field() const { return field_ != nullptr; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem* row(std::size_t i) const { return data_.data() + i * cols_; }
  Elem* row(std::size_t i) { return data_.data() + i * cols_; }
  const std::vector<Elem>& data() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool operator<(const Matrix& o) const;

  Matrix row_block(std::size_t r0, std::size_t n) const;
  Matrix col_block(std::size_t c0, std::size_t n) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  Matrix select_cols(const std::vector<std::size_t>& idx) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  void append_row(const Elem* r);
  void resize_rows(std::size_t n);

 private:
  const Field* field_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> data_;
};

// dst[j] += c * src[j] for j in [from, n)
inline void axpy(const Field& f, Elem* dst, const Elem* src, Elem c, std::size_t from, std::size_t n) {
  if (c == 0) return;
  const Elem* m = f.mul_row(c);
  for (std::size_t j = from; j < n; ++j) {
    Elem s = src[j];
    if (s) dst[j] = f.add(dst[j], m[s]);
  }
}

struct Echelon {
  Matrix m;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, Elem c);
Matrix transpose(const Matrix& a);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);
Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix power(const Matrix& a, unsigned long e);

// Parallel kernels; the *_serial variants are the reference implementations.
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix multiply_serial(const Matrix& a, const Matrix& b);
Echelon rref(const Matrix& a);
Echelon rref_serial(const Matrix& a);

std::size_t rank(const Matrix& a);
// Basis of {x : a x^T = 0}, rows in reduced echelon form.
Matrix nullspace(const Matrix& a);
// Basis of {v : v a = 0}.
Matrix left_nullspace(const Matrix& a);
// x with a x = b, if any.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
// x with x a = b, if any.
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& a);

// Subspaces are given by spanning rows; results are echelon bases.
Matrix row_basis(const Matrix& a);
Matrix subspace_sum(const Matrix& u, const Matrix& v);
Matrix subspace_intersect(const Matrix& u, const Matrix& v);
bool subspace_contains(const Matrix& basis, const Matrix& vectors);
// Coordinates of rows of v in terms of the rows of an independent basis (throws if outside).
Matrix coordinates(const Matrix& basis, const Matrix& v);
// Indices of standard vectors completing an echelon basis to the whole space.
std::vector<std::size_t> complement_indices(const Echelon& e);

Elem field_add(const Field& f, Elem a, Elem b);
Elem field_mul(const Field& f, Elem a, Elem b);
Elem field_inv(const Field& f, Elem a);

std::string to_text(const Matrix& m);
Matrix from_text(const std::string& s);
void write(std::ostream& os, const Matrix& m);
Matrix read(std::istream& is);

}  // namespace perverx::gf
