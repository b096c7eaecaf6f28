#pragma once

#include <random>
#include <vector>

#include "perverx/rep.hpp"

namespace perverx::rep {

// Row-reduced basis grown one vector at a time.
class Echelonizer {
 public:
  Echelonizer(const Field& f, std::size_t n);
  bool add(std::vector<Elem> v);  // false if v is already in the span
  bool contains(const Elem* v) const;
  bool reduce(std::vector<Elem>& v) const;  // true if a nonzero remainder is left
  std::size_t rank() const { return pivots_.size(); }
  Matrix basis() const;

 private:
  const Field* f_;
  std::size_t n_;
  Matrix rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<Elem> row_times(const Elem* v, const Matrix& a);
std::vector<Matrix> element_matrices(const Module& m, const std::vector<int>& elems);

inline Matrix random_combination(const std::vector<Matrix>& basis, std::mt19937_64& rng) {
  const Field& f = basis.front().field();
  Matrix r(f, basis.front().rows(), basis.front().cols());
  for (const auto& b : basis) {
    Elem c = static_cast<Elem>(rng() % f.q());
    if (c) r = r + gf::scale(b, c);
  }
  return r;
}

}  // namespace perverx::rep
