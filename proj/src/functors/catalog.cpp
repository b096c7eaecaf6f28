#include <algorithm>
#include <stdexcept>

#include "../rep/rep_internal.hpp"
#include "perverx/functors.hpp"

namespace perverx::functors {

using rep::Matrix;

const CatalogEntry* RelProjCatalog::find(const std::string& label) const {
  for (const auto& e : entries)
    if (e.label == label) return &e;
  return nullptr;
}

namespace {

struct Candidate {
  Module module;
  int subgroup_class;
  int source_dim;
  std::string loewy, socle;
};

// Non-projective indecomposable summands of Ind_Q^N (source), deduplicated up to isomorphism.
void add_summands(std::vector<Candidate>& out, const Module& induced, const rep::SimpleIndex& idx, int cls, int source_dim,
                  std::uint64_t seed) {
  auto core = rep::strip_projectives(induced, idx).core;
  if (core.dim == 0) return;
  for (auto& part : rep::decompose(core, seed)) {
    bool seen = std::any_of(out.begin(), out.end(), [&](const Candidate& c) {
      return c.module.dim == part.module.dim && rep::is_isomorphic(c.module, part.module, seed);
    });
    if (seen) continue;
    Candidate c{part.module, cls, source_dim, rep::render_layers(rep::loewy_layers(part.module, idx), idx),
                rep::render_layers(rep::socle_layers(part.module, idx), idx)};
    out.push_back(std::move(c));
  }
}

// The 2-dimensional indecomposable module of a cyclic group of order ell: regular module modulo its radical squared.
Module uniserial_two(const AlgebraPtr& kq, std::uint64_t seed) {
  auto idx = rep::SimpleIndex::build(kq, seed);
  Module reg = rep::regular_module(kq);
  auto series = rep::radical_series(reg, *idx);
  if (series.size() < 3) throw std::logic_error("subgroup too small for a 2-dimensional source");
  return rep::quotient(reg, series[2]);
}

bool same_layers(const std::string& a, const std::string& b, const rep::SimpleIndex& idx) {
  return rep::parse_layers(a, idx) == rep::parse_layers(b, idx);
}

}  // namespace

RelProjCatalog build_relproj_catalog(const AlgebraPtr& kn, const rep::SimpleIndex& idx, int ell,
                                     const std::vector<std::pair<std::string, std::string>>& displays,
                                     std::uint64_t seed) {
  RelProjCatalog cat;
  auto classes = group::conjugacy_classes_of_order_ell_subgroups(kn->group(), ell);
  std::vector<Candidate> cands;
  std::vector<group::Embedding> embs;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    embs.push_back(group::embed(classes[c], kn->group()->name() + "_Q" + std::to_string(c + 1)));
    auto kq = subgroup_algebra(embs.back(), kn);
    add_summands(cands, induce(rep::trivial_module(kq), embs.back(), kn), idx, static_cast<int>(c), 1, seed);
  }
  auto matches = [&](const std::string& display) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (same_layers(cands[i].loewy, display, idx) || same_layers(cands[i].socle, display, idx)) hits.push_back(i);
    return hits;
  };
  bool need_more = std::any_of(displays.begin(), displays.end(), [&](const auto& d) { return matches(d.second).empty(); });
  if (need_more) {
    for (std::size_t c = 0; c < classes.size(); ++c) {
      auto kq = subgroup_algebra(embs[c], kn);
      add_summands(cands, induce(uniserial_two(kq, seed), embs[c], kn), idx, static_cast<int>(c), 2, seed);
    }
  }
  for (const auto& [label, display] : displays) {
    auto hits = matches(display);
    if (hits.size() != 1)
      throw std::runtime_error("relative projective " + label + " = " + display + ": " + std::to_string(hits.size()) +
                               " matching summands");
    const auto& c = cands[hits[0]];
    cat.entries.push_back({label, c.module, c.subgroup_class, c.source_dim});
  }
  // order classes so that the first display's module lies over class 0
  std::vector<int> order(classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  if (!cat.entries.empty() && classes.size() > 1) std::swap(order[0], order[cat.entries[0].subgroup_class]);
  std::vector<int> where(classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) where[order[i]] = static_cast<int>(i);
  for (int i : order) cat.classes.push_back(classes[i]);
  for (auto& e : cat.entries) e.subgroup_class = where[e.subgroup_class];
  return cat;
}

bool is_relatively_projective(const Module& m, const group::Subgroup& q, const AlgebraPtr& kn, std::uint64_t seed) {
  (void)seed;
  const rep::Field& f = m.field();
  if (m.dim == 0) return true;
  auto emb = group::embed(q, kn->group()->name() + "_rel");
  auto kq = subgroup_algebra(emb, kn);
  Module res = restrict(m, emb, kq);
  auto endq = rep::hom(res, res);
  // Higman: m is a summand of Ind Res m iff the identity is a relative trace from Q
  const auto& g = kn->group();
  auto reps = group::right_coset_reps(q);
  std::vector<int> elems;
  for (int t : reps) {
    elems.push_back(g->inv(t));
    elems.push_back(t);
  }
  auto mats = rep::element_matrices(m, elems);
  Matrix traces(f, 0, m.dim * m.dim);
  for (const auto& phi : endq) {
    Matrix tr(f, m.dim, m.dim);
    for (std::size_t i = 0; i < reps.size(); ++i) tr = tr + mats[2 * i] * phi * mats[2 * i + 1];
    Matrix flat(f, 1, m.dim * m.dim);
    for (std::size_t r = 0; r < m.dim; ++r) std::copy(tr.row(r), tr.row(r) + m.dim, flat.row(0) + r * m.dim);
    traces = gf::vstack(traces, flat);
  }
  Matrix id(f, 1, m.dim * m.dim);
  for (std::size_t r = 0; r < m.dim; ++r) id(0, r * m.dim + r) = 1;
  return traces.rows() && gf::subspace_contains(gf::row_basis(traces), id);
}

}  // namespace perverx::functors
