#include <random>

#include "doctest.h"
#include "perverx/functors.hpp"
#include "support.hpp"

using namespace perverx;
using namespace perverx::rep;
using testing_support::local_group;

namespace {

struct Local {
  AlgebraPtr kn;
  IndexPtr idx;
};

const std::vector<std::string> kD8Proj{"1/5/123/5/1", "2/5/124/5/2", "3/5/134/5/3", "4/5/234/5/4", "5/1234/555/1234/5"};
const std::vector<std::string> kSD16Proj{"1/7/35/6/1",    "2/7/45/6/2",      "3/6/15/7/3",     "4/6/25/7/4",
                                         "5/67/12345/67/5", "6/125/677/345/6", "7/345/667/125/7"};

Local labelled(const std::string& e, const std::vector<std::string>& displays) {
  Local l;
  l.kn = Algebra::group_algebra(local_group(e), 3);
  auto idx = SimpleIndex::build(l.kn);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < idx->size(); ++i) labels.push_back(std::to_string(i + 1));
  auto orders = match_projective_displays(*idx, labels, displays);
  REQUIRE_FALSE(orders.empty());
  l.idx = idx->relabel(orders.front(), labels);
  return l;
}

Module random_module(const SimpleIndex& idx, std::mt19937_64& rng) {
  // a random quotient of a random projective
  const Module& p = idx.projective(rng() % idx.size());
  Matrix v = testing_support::random_matrix(p.field(), 1, p.dim, rng);
  Matrix sub = spin(p, v);
  if (sub.rows() == p.dim || sub.rows() == 0) return p;
  return quotient(p, sub);
}

}  // namespace

TEST_SUITE("functors") {
  TEST_CASE("blocks of kC2 over F3 and of the local groups") {
    auto kc2 = Algebra::group_algebra(group::cyclic(2), 3);
    auto idx = SimpleIndex::build(kc2);
    auto bl = functors::blocks(kc2, *idx);
    REQUIRE(bl.size() == 2);
    Module reg = regular_module(kc2);
    Matrix sum(reg.field(), reg.dim, reg.dim);
    for (const auto& b : bl) sum = sum + combination_matrix(reg, b.idempotent);
    CHECK(sum.is_identity());
    Matrix e0 = combination_matrix(reg, bl[0].idempotent), e1 = combination_matrix(reg, bl[1].idempotent);
    CHECK((e0 * e0) == e0);
    CHECK((e0 * e1).is_zero());
    for (const auto& g : reg.gens) CHECK(g * e0 == e0 * g);
    CHECK(bl[0].principal != bl[1].principal);
    for (const auto& b : bl) CHECK(b.simples.size() == 1);
    for (const char* e : {"C4", "D8"}) {
      auto kn = Algebra::group_algebra(local_group(e), 3);
      auto bn = functors::blocks(kn, *SimpleIndex::build(kn));
      REQUIRE(bn.size() == 1);
      CHECK(bn[0].principal);
      Module t = trivial_module(kn);
      CHECK(functors::project_to_block(t, bn[0]).dim == 1);
    }
  }

  TEST_CASE("restriction, induction and Frobenius reciprocity") {
    auto g = local_group("Q8");
    auto kn = Algebra::group_algebra(g, 3);
    auto idx = SimpleIndex::build(kn);
    auto p = group::normal_p_core(g, 3);
    auto pe = group::embed(p, "P");
    auto kp = functors::subgroup_algebra(pe, kn);
    // projectives restrict to free modules of the Sylow subgroup
    Module res = functors::restrict(idx->projective(4), pe, kp);
    auto pidx = SimpleIndex::build(kp);
    CHECK(is_projective(res, *pidx));
    auto e = group::complement_find(g, p);
    auto ee = group::embed(e, "E");
    auto ke = functors::subgroup_algebra(ee, kn);
    auto eidx = SimpleIndex::build(ke);
    Module t5 = functors::restrict(idx->simple(4).module, ee, ke);
    CHECK(is_irreducible(t5, 0));
    CHECK(functors::induce(trivial_module(kn), group::embed(group::whole(g), "N"), kn).dim == 1);
    auto q = group::conjugacy_classes_of_order_ell_subgroups(g, 3).front();
    auto qe = group::embed(q, "Q");
    auto kq = functors::subgroup_algebra(qe, kn);
    Module ind = functors::induce(trivial_module(kq), qe, kn);
    CHECK(ind.dim == 24);
    CHECK(satisfies_relations(ind));
    CHECK(hom(ind, trivial_module(kn)).size() == 1);
    std::mt19937_64 rng(5);
    auto qidx = SimpleIndex::build(kq);
    for (int t = 0; t < 20; ++t) {
      Module n = random_module(*idx, rng);
      Module m = random_module(*qidx, rng);
      Module im = functors::induce(m, qe, kn);
      CHECK(hom(im, n).size() == hom(m, functors::restrict(n, qe, kq)).size());
      CHECK(hom(n, im).size() == hom(functors::restrict(n, qe, kq), m).size());
    }
    // induced maps are homomorphisms
    auto h = hom(qidx->projective(0), qidx->projective(0));
    Module ip = functors::induce(qidx->projective(0), qe, kn);
    for (const auto& f : h) CHECK(is_hom(ip, ip, functors::induce_map(f, qe)));
  }

  TEST_CASE("relative projective catalogue for the D8 local group") {
    auto l = labelled("D8", kD8Proj);
    std::vector<std::pair<std::string, std::string>> disp{
        {"M11", "5/12/5"}, {"M21", "5/34/5"}, {"M31", "12/5/12"}, {"M41", "34/5/34"},
        {"M12", "5/13/5"}, {"M22", "5/24/5"}, {"M32", "13/5/13"}, {"M42", "24/5/24"}};
    auto cat = functors::build_relproj_catalog(l.kn, *l.idx, 3, disp);
    REQUIRE(cat.classes.size() == 2);
    REQUIRE(cat.entries.size() == 8);
    for (const auto& e : cat.entries) {
      CHECK(e.module.dim == 6);
      CHECK_FALSE(is_projective(e.module, *l.idx));
      CHECK(e.subgroup_class == (e.label[2] == '1' ? 0 : 1));
      CHECK(functors::is_relatively_projective(e.module, cat.classes[e.subgroup_class], l.kn));
    }
    CHECK(render(cat.find("M31")->module, *l.idx) == "12/5/12");
    CHECK_FALSE(is_isomorphic(cat.find("M11")->module, cat.find("M21")->module));
    // a simple module is not projective relative to an order-3 subgroup
    CHECK_FALSE(functors::is_relatively_projective(l.idx->simple(0).module, cat.classes[0], l.kn));
  }

  TEST_CASE("relative projective catalogue for the SD16 local group") {
    auto l = labelled("SD16", kSD16Proj);
    std::vector<std::pair<std::string, std::string>> disp{
        {"M11", "135/67/135"},         {"M21", "245/67/245"},         {"M31", "67/135/67"},
        {"M41", "67/245/67"},          {"M12", "135/6677/123455/67"}, {"M22", "245/6677/123455/67"},
        {"M32", "67/123455/6677/135"}, {"M42", "67/123455/6677/245"}};
    auto cat = functors::build_relproj_catalog(l.kn, *l.idx, 3, disp);
    REQUIRE(cat.classes.size() == 1);
    for (const auto& e : cat.entries) {
      CHECK(e.source_dim == (e.label[2] == '1' ? 1 : 2));
      CHECK(functors::is_relatively_projective(e.module, cat.classes[0], l.kn));
    }
    CHECK(cat.find("M12")->module.dim == 24);
  }

  TEST_CASE("Clifford reductions of the characters non-trivial on P") {
    // C4 acts freely on the eight non-trivial characters: two orbits, each inducing the regular kC4
    auto kc4 = Algebra::group_algebra(local_group("C4"), 3);
    auto idx = SimpleIndex::build(kc4);
    auto red = functors::clifford_reductions(kc4, *idx);
    REQUIRE(red.size() == 2);
    for (const auto& r : red) CHECK(r == Multiplicities{1, 1, 1});
    // D8: two orbits of size four with stabiliser C2, each giving two characters of degree 4
    auto l = labelled("D8", kD8Proj);
    auto rd = functors::clifford_reductions(l.kn, *l.idx);
    REQUIRE(rd.size() == 4);
    for (const auto& r : rd) {
      int dim = 0;
      for (std::size_t s = 0; s < r.size(); ++s) dim += r[s] * static_cast<int>(l.idx->simple(s).module.dim);
      CHECK(dim == 4);
    }
  }
}
