#include <algorithm>
#include <map>
#include <stdexcept>

#include "../rep/rep_internal.hpp"
#include "perverx/functors.hpp"

namespace perverx::functors {

using rep::Matrix;

AlgebraPtr subgroup_algebra(const group::Embedding& h, const AlgebraPtr& kg) {
  return rep::Algebra::group_algebra(h.sub, kg->field().q());
}

Module restrict(const Module& m, const group::Embedding& h, const AlgebraPtr& kh) {
  if (kh->group() != h.sub) throw std::invalid_argument("restrict: algebra does not match the subgroup");
  std::vector<int> parent_gens;
  for (int g : h.sub->generators()) parent_gens.push_back(h.map[g]);
  Module r{kh, m.dim, rep::element_matrices(m, parent_gens)};
  return r;
}

namespace {

struct CosetData {
  std::vector<int> reps;
  std::vector<int> coset_of;  // parent element -> coset index
};

CosetData cosets(const group::Embedding& h) {
  group::Subgroup s{h.parent, h.map};
  std::sort(s.elements.begin(), s.elements.end());
  CosetData c{group::right_coset_reps(s), std::vector<int>(h.parent->order(), -1)};
  for (std::size_t i = 0; i < c.reps.size(); ++i)
    for (int y : s.elements) c.coset_of[h.parent->mul(y, c.reps[i])] = static_cast<int>(i);
  return c;
}

}  // namespace

Module induce(const Module& m, const group::Embedding& h, const AlgebraPtr& kg) {
  if (kg->group() != h.parent) throw std::invalid_argument("induce: algebra does not match the parent group");
  const auto& g = h.parent;
  CosetData c = cosets(h);
  std::map<int, int> to_sub;
  for (std::size_t i = 0; i < h.map.size(); ++i) to_sub[h.map[i]] = static_cast<int>(i);
  const std::size_t nc = c.reps.size(), d = m.dim;
  // collect the H elements needed: h = t_i s t_j^{-1}
  std::vector<int> needed;
  std::vector<std::vector<std::pair<int, int>>> blocks(g->generators().size());
  for (std::size_t k = 0; k < g->generators().size(); ++k) {
    int s = g->generators()[k];
    for (std::size_t i = 0; i < nc; ++i) {
      int x = g->mul(c.reps[i], s);
      int j = c.coset_of[x];
      int hh = g->mul(x, g->inv(c.reps[j]));
      blocks[k].emplace_back(j, to_sub.at(hh));
      needed.push_back(to_sub.at(hh));
    }
  }
  auto mats = rep::element_matrices(m, needed);
  Module out{kg, nc * d, {}};
  std::size_t pos = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    Matrix a(m.field(), nc * d, nc * d);
    for (std::size_t i = 0; i < nc; ++i) a.set_block(i * d, blocks[k][i].first * d, mats[pos++]);
    out.gens.push_back(std::move(a));
  }
  return out;
}

Matrix induce_map(const Matrix& f, const group::Embedding& h) {
  std::size_t nc = static_cast<std::size_t>(h.parent->order()) / h.map.size();
  Matrix out(f.field(), nc * f.rows(), nc * f.cols());
  for (std::size_t i = 0; i < nc; ++i) out.set_block(i * f.rows(), i * f.cols(), f);
  return out;
}

Module inflate(const Module& m, const std::vector<int>& image, const AlgebraPtr& kg) {
  const auto& g = kg->group();
  std::vector<int> imgs;
  for (int s : g->generators()) imgs.push_back(image[s]);
  return Module{kg, m.dim, rep::element_matrices(m, imgs)};
}

}  // namespace perverx::functors
