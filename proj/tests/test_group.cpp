#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "perverx/group.hpp"

using namespace perverx;
using namespace perverx::group;

namespace {

const std::vector<Automizer>& automizers() {
  static auto a = load_automizers(std::string(PERVERX_DATA_DIR) + "/automizers.txt");
  return a;
}

GroupPtr local_group(const std::string& e) {
  for (const auto& a : automizers())
    if (a.name == e) return semidirect(a.data, "C3^2:" + e);
  throw std::runtime_error("no automizer " + e);
}

// Independent affine-map model: (v, M) acts on row vectors by x -> x M + v.
struct Affine {
  std::vector<int> v;
  gf::Matrix m;
};

int affine_order(const Affine& g, int p) {
  Affine x = g;
  for (int k = 1; k < 200; ++k) {
    bool id = x.m.is_identity() && std::all_of(x.v.begin(), x.v.end(), [](int c) { return c == 0; });
    if (id) return k;
    // x <- x * g as maps: y -> (y M_x + v_x) M_g + v_g
    Affine y{std::vector<int>(x.v.size()), x.m * g.m};
    for (std::size_t j = 0; j < x.v.size(); ++j) {
      int s = g.v[j];
      for (std::size_t i = 0; i < x.v.size(); ++i) s += x.v[i] * g.m(i, j);
      y.v[j] = s % p;
    }
    x = y;
  }
  return -1;
}

}  // namespace

TEST_SUITE("group") {
  TEST_CASE("automizers have the named isomorphism types") {
    REQUIRE(automizers().size() == 6);
    for (const auto& a : automizers()) CHECK_NOTHROW(check_automizer_type(a));
  }

  TEST_CASE("semidirect orders") {
    CHECK(local_group("SD16")->order() == 144);
    CHECK(local_group("D8")->order() == 72);
    CHECK(load_group(std::string(PERVERX_DATA_DIR) + "/groups/c2e3_c7.grp")->order() == 56);
    CHECK(load_group(std::string(PERVERX_DATA_DIR) + "/groups/sd16_c2.grp")->order() == 288);
  }

  TEST_CASE("C3^2 x| C4 element orders agree with the affine model") {
    const gf::Field& f = gf::Field::get(3);
    gf::Matrix c(f, 2, 2);
    c(0, 1) = 2;
    c(1, 0) = 1;
    SemidirectData d{3, 2, {c}, {"c"}};
    auto g = semidirect(d, "C3^2:C4");
    CHECK(g->order() == 36);
    std::multiset<int> ours, oracle;
    for (int x = 0; x < g->order(); ++x) ours.insert(g->element_order(x));
    std::vector<gf::Matrix> e{gf::Matrix::identity(f, 2), c, c * c, c * c * c};
    for (int v = 0; v < 9; ++v)
      for (const auto& m : e) oracle.insert(affine_order({{v / 3, v % 3}, m}, 3));
    CHECK(ours == oracle);
    std::set<int> kinds(ours.begin(), ours.end());
    CHECK(kinds == std::set<int>{1, 2, 3, 4});
  }

  TEST_CASE("conjugacy classes of order-3 subgroups") {
    CHECK(conjugacy_classes_of_order_ell_subgroups(local_group("D8"), 3).size() == 2);
    CHECK(conjugacy_classes_of_order_ell_subgroups(local_group("SD16"), 3).size() == 1);
    CHECK(conjugacy_classes_of_order_ell_subgroups(local_group("Q8"), 3).size() == 1);
  }

  TEST_CASE("class equation") {
    for (const auto& a : automizers()) {
      auto g = semidirect(a.data, a.name);
      int total = 0;
      for (const auto& cls : conjugacy_classes(g)) {
        total += static_cast<int>(cls.size());
        CHECK(g->order() % cls.size() == 0);
      }
      CHECK(total == g->order());
    }
  }

  TEST_CASE("normalizer, centralizer, quotient, complement") {
    auto g = local_group("C4");
    auto p = normal_p_core(g, 3);
    CHECK(p.order() == 9);
    for (const auto& q : conjugacy_classes_of_order_ell_subgroups(g, 3)) {
      auto c = centralizer(g, q), n = normalizer(g, q);
      CHECK(std::includes(c.elements.begin(), c.elements.end(), p.elements.begin(), p.elements.end()));
      CHECK(std::includes(n.elements.begin(), n.elements.end(), c.elements.begin(), c.elements.end()));
      CHECK(std::includes(c.elements.begin(), c.elements.end(), q.elements.begin(), q.elements.end()));
    }
    auto quo = quotient(g, p, "C4");
    CHECK(element_order_multiset(quo) == std::vector<int>{1, 2, 4, 4});
    auto e = complement_find(g, p);
    CHECK(e.order() == 4);
    CHECK(intersect(e, p).order() == 1);
    CHECK_THROWS(quotient(g, conjugacy_classes_of_order_ell_subgroups(g, 3)[0], "bad"));
  }

  TEST_CASE("twist subgroups in the D8 case") {
    auto g = local_group("D8");
    auto p = normal_p_core(g, 3);
    for (const auto& q : conjugacy_classes_of_order_ell_subgroups(g, 3)) {
      auto nq = normalizer(g, q);
      auto np = intersect(nq, p);
      auto ncore = embed(nq, "NQ");
      auto inner = complement_find(ncore.sub, normal_p_core(ncore.sub, 3));
      CHECK(inner.order() == 4);
      std::vector<int> in_parent;
      for (int x : inner.elements) in_parent.push_back(ncore.map[x]);
      std::sort(in_parent.begin(), in_parent.end());
      Subgroup eq{g, in_parent};
      auto cq = centralizer(g, q);
      CHECK(intersect(eq, cq).order() == 2);
      CHECK(cq.order() / centralizer(g, p).order() == 2);
      CHECK(np.order() == 9);
    }
  }

  TEST_CASE("group text errors carry positions") {
    try {
      parse_group("semidirect 3 2\ngen a\n1 0\n0 x\n", "bad");
      FAIL("expected parse error");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("line 4, column 3") != std::string::npos);
    }
    CHECK_THROWS(parse_group("semidirect 5 2\n", "bad"));
  }
}
