#include <algorithm>
#include <chrono>
#include <set>

#include "doctest.h"
#include "perverx/casebook.hpp"

using namespace perverx;
using namespace perverx::casebook;

namespace {

std::string row_cell(const Report& r, const std::string& table, const std::string& key, std::size_t col) {
  for (const auto& t : r.tables)
    if (t.title == table)
      for (const auto& row : t.rows)
        if (!row.empty() && row[0] == key && col < row.size()) return row[col];
  return "";
}

rep::Multiplicities k0_class(const rep::Multiplicities& projectives, const rep::SimpleIndex& idx) {
  rep::Multiplicities out(idx.size(), 0);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto cf = rep::composition_factors(idx.projective(i), idx);
    for (std::size_t j = 0; j < idx.size(); ++j) out[j] += projectives[i] * cf[j];
  }
  return out;
}

rep::Multiplicities term(const std::string& s, const rep::SimpleIndex& idx) {
  rep::Multiplicities m(idx.size(), 0);
  for (std::size_t i = 1; i < s.size(); ++i) ++m[idx.find(std::string(1, s[i]))];
  return m;
}

}  // namespace

TEST_SUITE("casebook") {
  TEST_CASE("every case file parses and its entries are layer strings over its labels") {
    auto ids = case_ids();
    CHECK(ids.size() >= 16);
    for (const auto& id : ids) {
      CAPTURE(id);
      CaseRecord c = load_case(id);
      CHECK(c.id == id);
      auto l = local_for(c.local);
      CHECK(c.pi.size() == l->idx->size());
      for (const auto& [label, degs] : c.cohomology) {
        CHECK(l->idx->find(label) >= 0);
        for (const auto& [d, e] : degs) {
          CHECK(d < 0);
          if (e.find(',') == std::string::npos) CHECK_NOTHROW(rep::parse_layers(e, *l->idx));
        }
      }
    }
  }

  TEST_CASE("malformed case files report line and column") {
    try {
      parse_case("{\n  \"id\": \"X\",\n  \"pi\": [0, 1,\n}");
      FAIL("no error");
    } catch (const std::runtime_error& e) {
      std::string msg = e.what();
      CHECK(msg.find("line 4") != std::string::npos);
      CHECK(msg.find("column") != std::string::npos);
    }
    CHECK_THROWS(parse_case(R"({"id": "X", "local": "C4", "pi": [0, 1], "green": ["1"]})"));
  }

  TEST_CASE("verify A7") {
    Report r = verify_case("A7");
    CHECK(r.ok());
    REQUIRE(r.find("cohomology X2"));
    CHECK(r.find("cohomology X2")->pass);
    CHECK(row_cell(r, "Cohomology", "X2", 2) == "11/3/2");
  }

  TEST_CASE("verify PSU3_2 with the correspondents equal to the simples") {
    Report r = verify_case("PSU3_2");
    CHECK(r.ok());
    auto c = load_case("PSU3_2");
    CHECK(c.pi == std::vector<int>{0, 6, 6, 6, 4});
  }

  TEST_CASE("verify A4_klein") {
    Report r = verify_case("A4_klein");
    CHECK(r.ok());
    CHECK(row_cell(r, "Cohomology", "X2", 2) == "11/2");
  }

  TEST_CASE("verify is deterministic") {
    for (const char* id : {"M11", "S6"}) {
      auto a = emit(verify_case(id, 0), Format::Text);
      auto b = emit(verify_case(id, 0), Format::Text);
      CHECK(a == b);
      auto l = build_local(load_local_spec(load_case(id).local), 0);
      auto fresh = build_local(load_local_spec(load_case(id).local), 0);
      CHECK(l->native == fresh->native);
    }
  }

  TEST_CASE("search recovers the A7 perversity") {
    auto t0 = std::chrono::steady_clock::now();
    auto s = search_case("A7", 2);
    CHECK(s.contains_case_pi);
    CHECK(std::find(s.solutions.begin(), s.solutions.end(), perverse::Perversity{0, 1, 0}) != s.solutions.end());
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(30));
  }

  TEST_CASE("search recovers the M23 perversity") {
    auto t0 = std::chrono::steady_clock::now();
    auto s = search_case("M23", 2);
    CHECK(s.contains_case_pi);
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(30));
  }

  TEST_CASE("search with bound 0 against simple targets") {
    auto s = search_case("PSU3_2", 0);
    REQUIRE(s.solutions.size() == 1);
    CHECK(s.solutions[0] == perverse::Perversity(5, 0));
  }

  TEST_CASE("run on kS3 with pi = (0, 2)") {
    AdhocInput in;
    in.local = "S3";
    in.pi = {0, 2};
    Report r = run_adhoc(in);
    CHECK(r.ok());
    auto t = row_cell(r, "Complexes", "2", 2);
    CHECK(t.rfind("P2 -> P2 -> ", 0) == 0);
    CHECK(row_cell(r, "Complexes", "2", 1) == "-2");
  }

  TEST_CASE("run on a group file") {
    AdhocInput in;
    in.group_file = data_dir() + "/groups/s3.grp";
    in.pi = {0, 1};
    Report r = run_adhoc(in);
    CHECK(r.ok());
    CHECK(row_cell(r, "Simples", "1", 1) == "1");
  }

  TEST_CASE("PSL2(8) local run, pi = (0, 2, 3)") {
    AdhocInput in;
    in.local = "PSL2_8_local";
    in.pi = {0, 2, 3};
    Report r = run_adhoc(in);
    CHECK(r.ok());
    CHECK(row_cell(r, "Complexes", "3", 2).rfind("P3 -> P3 -> P2 -> ", 0) == 0);
    CHECK(row_cell(r, "Complexes", "2", 2).rfind("P2 -> P23 -> ", 0) == 0);
    Report v = verify_case("PSL2_8_local");
    CHECK(v.ok());
    CHECK(row_cell(v, "Green correspondents", "2", 2) == "(not given)");
  }

  TEST_CASE("emitting an empty report gives the header only") {
    Report r;
    r.title = "empty";
    CHECK(emit(r, Format::Text) == "empty\n");
    CHECK(emit(r, Format::Markdown) == "# empty\n");
    CHECK(emit(r, Format::Tsv) == "title\tempty\n");
    CHECK(r.ok());
  }

  TEST_CASE("formats") {
    CHECK(parse_format("md") == Format::Markdown);
    CHECK(parse_format("txt") == Format::Text);
    CHECK(parse_format("tsv") == Format::Tsv);
    CHECK_THROWS(parse_format("html"));
    Report r{"t", {{"T", {"a", "b"}, {{"x|y", "1"}}}}, {{"c", false, "why"}}};
    auto md = emit(r, Format::Markdown);
    CHECK(md.find("x\\|y") != std::string::npos);
    CHECK(md.find("**result: FAIL**") != std::string::npos);
    CHECK(emit(r, Format::Tsv).find("check\tc\tFAIL\twhy\n") != std::string::npos);
  }

  TEST_CASE("realize_green") {
    auto a7 = local_for("C4");
    Module c2 = realize_green("2/3/2", *a7);
    CHECK(rep::render(c2, *a7->idx) == "2/3/2");
    // a quotient of P2
    bool onto = false;
    for (const auto& h : rep::hom(a7->idx->projective(a7->idx->find("2")), c2)) onto = onto || rep::image(h).rows() == c2.dim;
    CHECK(onto);

    auto sd = local_for("SD16");
    Module c5 = realize_green("2/67/45/6", *sd);
    CHECK(rep::render_layers(rep::socle_layers(c5, *sd->idx), *sd->idx) == "2/67/45/6");
    CHECK(rep::decompose(c5, 0).size() == 1);

    for (const auto& id : case_ids()) {
      auto c = load_case(id);
      auto l = local_for(c.local);
      if (c.green[0] != "1") continue;
      Module m = realize_green(c.green[0], *l);
      CHECK(rep::is_isomorphic(m, l->idx->simple(0).module));
    }
    CHECK_THROWS(realize_green("1/1", *a7));
    CHECK_THROWS(realize_green(kUnknownGreen, *a7));
  }

  TEST_CASE("realize_green catalogue and Heller recipes") {
    auto d8 = local_for("D8");
    Module m = realize_green("M41", *d8);
    CHECK(rep::render(m, *d8->idx) == "34/5/34");
    Module w = realize_green("omega(2)", *d8);
    CHECK(rep::is_isomorphic(rep::omega_inv(w, *d8->idx), d8->idx->simple(1).module));
  }

  TEST_CASE("matches_entry") {
    auto q8 = local_for("Q8");
    const auto& idx = *q8->idx;
    Module one = idx.simple(0).module;
    Module p = rep::projective_sum(rep::parse_layers("1", idx)[0], idx);
    auto rs = rep::radical_series(p, idx);
    Module top2 = rep::quotient(p, rs[2]);  // 1/5
    Module sum = rep::direct_sum(one, top2);
    CHECK(matches_entry(top2, "1/5", idx));
    CHECK(matches_entry(sum, "1,1/5", idx));
    CHECK(matches_entry(sum, "1/5,1", idx));
    CHECK_FALSE(matches_entry(sum, "1/5", idx));
    CHECK(matches_entry(rep::direct_sum(one, one), "11", idx));
    CHECK(matches_entry(rep::zero_module(idx.algebra()), "0", idx));
    CHECK_FALSE(matches_entry(one, "0", idx));
  }

  // The printed entry H^-7(X4) = 23/5 cannot come from a complex P4 -> P4 -> P4 with H^-8 = 23/5/4,
  // which is how both the printed complex and ours begin. Brute force over End(P4).
  TEST_CASE("PSp4_4: the printed H^-7(X4) is incompatible with the printed terms") {
    auto d8 = local_for("D8");
    const auto& idx = *d8->idx;
    const Module& p4 = idx.projective(idx.find("4"));
    auto end = rep::hom(p4, p4);
    REQUIRE(end.size() == 3);
    std::vector<rep::Matrix> all;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          all.push_back(gf::scale(end[0], a) + gf::scale(end[1], b) + gf::scale(end[2], c));
    std::set<std::string> seen;
    int firsts = 0;
    for (const auto& x : all) {
      if (!matches_entry(rep::submodule(p4, rep::kernel(x)), "23/5/4", idx)) continue;
      ++firsts;
      for (const auto& y : all) {
        if (!(x * y).is_zero()) continue;
        perverse::BoundedComplex c;
        c.lo = -8;
        c.terms = {p4, p4, p4};
        c.diffs = {x, y};
        c.projective.assign(3, std::nullopt);
        auto h = perverse::cohomology(c);
        if (rep::composition_factors(h[1], idx) != rep::composition_factors(realize_green("5/23", *d8), idx)) continue;
        seen.insert(rep::render(h[1], idx));
        CHECK_FALSE(matches_entry(h[1], "23/5", idx));
      }
    }
    CHECK(firsts > 0);
    CHECK(seen == std::set<std::string>{"5/23"});
    Report r = verify_case("PSp4_4");
    REQUIRE(r.find("cohomology X4"));
    CHECK_FALSE(r.find("cohomology X4")->pass);
    CHECK(row_cell(r, "Complexes", "4", 2).rfind("P4 -> P4 -> P4 -> ", 0) == 0);
  }

  // The printed X2 of PSU3(2) has no P5 term; its class in K0 differs from that of the printed
  // cohomology wherever it is placed, while the computed list agrees.
  TEST_CASE("PSU3_2: printed X2 terms disagree with the printed cohomology in K0") {
    auto q8 = local_for("Q8");
    const auto& idx = *q8->idx;
    auto c = load_case("PSU3_2");
    rep::Multiplicities h(idx.size(), 0);
    for (const auto& [d, e] : c.cohomology.at("2")) {
      std::string flat = e;
      std::replace(flat.begin(), flat.end(), ',', '/');
      for (const auto& layer : rep::parse_layers(flat, idx))
        for (std::size_t j = 0; j < idx.size(); ++j) h[j] += (d % 2 ? -1 : 1) * layer[j];
    }
    auto euler = [&](const std::vector<std::string>& terms, int lo) {
      rep::Multiplicities s(idx.size(), 0);
      for (std::size_t k = 0; k < terms.size(); ++k) {
        auto cl = k0_class(term(terms[k], idx), idx);
        int sign = (lo + static_cast<int>(k)) % 2 ? -1 : 1;
        for (std::size_t j = 0; j < idx.size(); ++j) s[j] += sign * cl[j];
      }
      s[idx.find("2")] += 1;  // C2 = T2 in degree 0
      return s;
    };
    const std::vector<std::string> printed{"P2", "P34", "P234", "P25", "P2"};
    for (int lo = -6; lo <= -5; ++lo) CHECK(euler(printed, lo) != h);
    const std::vector<std::string> computed{"P2", "P34", "P234", "P25", "P5", "P2"};
    CHECK(euler(computed, -6) == h);
    Report r = verify_case("PSU3_2");
    CHECK(row_cell(r, "Complexes", "2", 2).rfind("P2 -> P34 -> P234 -> P25 -> P5 -> P2 -> ", 0) == 0);
  }
}
