#include <algorithm>
#include <set>
#include <stdexcept>

#include "perverx/functors.hpp"

namespace perverx::functors {

namespace {

int position(const group::Subgroup& s, int g) {
  auto it = std::lower_bound(s.elements.begin(), s.elements.end(), g);
  return (it != s.elements.end() && *it == g) ? static_cast<int>(it - s.elements.begin()) : -1;
}

// All homomorphisms P -> Z/ell, as value tables indexed like p.elements.
std::vector<std::vector<int>> characters(const group::GroupPtr& g, const group::Subgroup& p, int ell) {
  std::vector<int> gens;
  group::Subgroup span = group::generated(g, {});
  for (int x : p.elements)
    if (!span.contains(x)) {
      gens.push_back(x);
      span = group::generated(g, gens);
    }
  std::vector<std::vector<int>> out;
  std::vector<int> a(gens.size(), 0);
  for (;;) {
    std::vector<int> val(p.elements.size(), -1);
    val[position(p, 0)] = 0;
    std::vector<int> queue{0};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (std::size_t i = 0; i < gens.size(); ++i) {
        int y = g->mul(queue[h], gens[i]);
        int v = (val[position(p, queue[h])] + a[i]) % ell;
        int& slot = val[position(p, y)];
        if (slot < 0) {
          slot = v;
          queue.push_back(y);
        } else if (slot != v) {
          throw std::logic_error("clifford_reductions: P is not elementary abelian");
        }
      }
    out.push_back(val);
    std::size_t i = 0;
    while (i < a.size() && ++a[i] == ell) a[i++] = 0;
    if (i == a.size()) break;
  }
  return out;
}

}  // namespace

std::vector<rep::Multiplicities> clifford_reductions(const AlgebraPtr& kh, const rep::SimpleIndex& idx,
                                                     std::uint64_t seed) {
  const auto& g = kh->group();
  const int ell = kh->field().characteristic();
  auto p = group::normal_p_core(g, ell);
  auto e = group::complement_find(g, p);
  auto chars = characters(g, p, ell);
  auto act = [&](const std::vector<int>& lam, int x) {
    std::vector<int> out(lam.size());
    for (std::size_t i = 0; i < p.elements.size(); ++i)
      out[i] = lam[position(p, g->conj(p.elements[i], g->inv(x)))];
    return out;
  };
  std::set<std::vector<int>> seen;
  std::vector<rep::Multiplicities> out;
  for (const auto& lam : chars) {
    if (std::all_of(lam.begin(), lam.end(), [](int v) { return v == 0; }) || seen.count(lam)) continue;
    std::vector<int> stab;
    for (int x : e.elements) {
      auto im = act(lam, x);
      seen.insert(im);
      if (im == lam) stab.push_back(x);
    }
    group::Subgroup el{g, stab};
    auto pe = group::product(p, el);
    auto emb_e = group::embed(el, g->name() + "_El");
    auto emb_pe = group::embed(pe, g->name() + "_PEl");
    auto ke = subgroup_algebra(emb_e, kh);
    auto kpe = subgroup_algebra(emb_pe, kh);
    std::vector<int> image(pe.elements.size());
    for (std::size_t i = 0; i < pe.elements.size(); ++i)
      for (std::size_t j = 0; j < stab.size(); ++j)
        if (p.contains(g->mul(pe.elements[i], g->inv(stab[j])))) image[i] = static_cast<int>(j);
    auto eidx = rep::SimpleIndex::build(ke, seed);
    for (const auto& u : eidx->simples())
      out.push_back(rep::composition_factors(induce(inflate(u.module, image, kpe), emb_pe, kh), idx));
  }
  return out;
}

}  // namespace perverx::functors
