#include "perverx/gf.hpp"

#include <stdexcept>
#include <utility>

namespace perverx::gf {

namespace {

constexpr std::size_t kParallelWork = 1 << 14;

void check_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  if (&a.field() != &b.field()) throw std::invalid_argument("multiply: field mismatch");
}

void mul_row(const Field& f, const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
  Elem* out = c.row(i);
  const Elem* ar = a.row(i);
  for (std::size_t k = 0; k < a.cols(); ++k)
    if (ar[k]) axpy(f, out, b.row(k), ar[k], 0, b.cols());
}

// Pivot search and normalisation for column c starting at row r. Returns false if none.
bool place_pivot(const Field& f, Matrix& m, std::size_t r, std::size_t c) {
  std::size_t piv = r;
  while (piv < m.rows() && m(piv, c) == 0) ++piv;
  if (piv == m.rows()) return false;
  if (piv != r) {
    Elem* x = m.row(piv);
    Elem* y = m.row(r);
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(x[j], y[j]);
  }
  Elem inv = f.inv(m(r, c));
  if (inv != 1) {
    const Elem* mr = f.mul_row(inv);
    Elem* y = m.row(r);
    for (std::size_t j = c; j < m.cols(); ++j) y[j] = mr[y[j]];
  }
  return true;
}

void eliminate(const Field& f, Matrix& m, std::size_t r, std::size_t c, std::size_t i) {
  if (i == r) return;
  Elem v = m(i, c);
  if (v) axpy(f, m.row(i), m.row(r), f.neg(v), c, m.cols());
}

}  // namespace

Matrix multiply_serial(const Matrix& a, const Matrix& b) {
  check_mul(a, b);
  Matrix c(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) mul_row(a.field(), a, b, c, i);
  return c;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  check_mul(a, b);
  Matrix c(a.field(), a.rows(), b.cols());
  const Field& f = a.field();
  const long n = static_cast<long>(a.rows());
  const bool par = a.rows() * a.cols() * b.cols() >= kParallelWork;
#pragma omp parallel for schedule(static) if (par)
  for (long i = 0; i < n; ++i) mul_row(f, a, b, c, static_cast<std::size_t>(i));
  return c;
}

Echelon rref_serial(const Matrix& a) {
  Echelon e{a, {}};
  if (!a.has_field()) return e;
  const Field& f = a.field();
  Matrix& m = e.m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    if (!place_pivot(f, m, r, c)) continue;
    for (std::size_t i = 0; i < m.rows(); ++i) eliminate(f, m, r, c, i);
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

Echelon rref(const Matrix& a) {
  Echelon e{a, {}};
  if (!a.has_field()) return e;
  const Field& f = a.field();
  Matrix& m = e.m;
  const bool par = m.rows() * m.cols() >= kParallelWork;
  const long rows = static_cast<long>(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    if (!place_pivot(f, m, r, c)) continue;
#pragma omp parallel for schedule(static) if (par)
    for (long i = 0; i < rows; ++i) eliminate(f, m, r, c, static_cast<std::size_t>(i));
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

}  // namespace perverx::gf
