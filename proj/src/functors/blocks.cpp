#include <stdexcept>

#include "../rep/rep_internal.hpp"
#include "perverx/functors.hpp"

namespace perverx::functors {

using rep::Elem;
using rep::Matrix;

std::vector<Block> blocks(const AlgebraPtr& kg, const rep::SimpleIndex& idx, std::uint64_t seed) {
  if (!kg->is_group()) throw std::invalid_argument("blocks: group algebra required");
  const auto& g = kg->group();
  const rep::Field& f = kg->field();
  auto classes = group::conjugacy_classes(g);
  const std::size_t nc = classes.size();
  std::vector<int> class_of(g->order());
  for (std::size_t c = 0; c < nc; ++c)
    for (int x : classes[c]) class_of[x] = static_cast<int>(c);
  // z_a z_b is central, so its coefficients are read off at class representatives
  std::vector<Matrix> right_mult(nc, Matrix(f, nc, nc));
  for (std::size_t a = 0; a < nc; ++a) {
    for (std::size_t b = 0; b < nc; ++b) {
      std::vector<Elem> prod(g->order(), 0);
      for (int x : classes[a])
        for (int y : classes[b]) {
          int xy = g->mul(x, y);
          prod[xy] = f.add(prod[xy], 1);
        }
      for (std::size_t c = 0; c < nc; ++c) right_mult[b](a, c) = prod[classes[c].front()];
    }
  }
  Matrix unit(f, 1, nc);
  unit(0, class_of[0]) = 1;
  auto z = rep::Algebra::structure(f, right_mult, unit, kg->id() + "_centre");
  auto parts = rep::decompose(rep::regular_module(z), seed);
  std::vector<Block> out;
  for (const auto& p : parts) {
    Matrix e = unit * p.projection * p.embedding;
    Block b;
    for (std::size_t c = 0; c < nc; ++c)
      if (e(0, c))
        for (int x : classes[c]) b.idempotent.emplace_back(x, e(0, c));
    for (std::size_t s = 0; s < idx.size(); ++s)
      if (!rep::combination_matrix(idx.simple(s).module, b.idempotent).is_zero()) b.simples.push_back(static_cast<int>(s));
    Module triv = rep::trivial_module(kg);
    b.principal = !rep::combination_matrix(triv, b.idempotent).is_zero();
    out.push_back(std::move(b));
  }
  return out;
}

Module project_to_block(const Module& m, const Block& b) {
  Matrix img = rep::image(rep::combination_matrix(m, b.idempotent));
  if (!img.rows()) return rep::zero_module(m.algebra);
  return rep::submodule(m, img);
}

}  // namespace perverx::functors
