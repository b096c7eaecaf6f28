#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "perverx/casebook.hpp"

namespace perverx::casebook {

using perverse::BoundedComplex;
using perverse::Perversity;
using rep::Multiplicities;

namespace {

std::string join(const std::vector<int>& v, const std::string& sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

int label_index(const rep::SimpleIndex& idx, const std::string& label) {
  int i = idx.find(label);
  if (i < 0) throw std::runtime_error("unknown simple label " + label);
  return i;
}

// "P234" -> one copy each of P2, P3, P4
Multiplicities parse_projective_term(const std::string& s, const rep::SimpleIndex& idx) {
  if (s.empty() || s[0] != 'P') throw std::runtime_error("bad projective term " + s);
  Multiplicities m(idx.size(), 0);
  for (std::size_t i = 1; i < s.size(); ++i) ++m[label_index(idx, std::string(1, s[i]))];
  return m;
}

std::string projective_term(const Multiplicities& m, const rep::SimpleIndex& idx) {
  std::string s = "P";
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int k = 0; k < m[i]; ++k) s += idx.simple(i).label;
  return s == "P" ? "0" : s;
}

std::string term_list(const BoundedComplex& x, const rep::SimpleIndex& idx, std::uint64_t seed) {
  std::string s;
  for (std::size_t k = 0; k < x.terms.size(); ++k) {
    if (k) s += " -> ";
    if (k < x.projective.size() && x.projective[k])
      s += projective_term(*x.projective[k], idx);
    else
      s += describe(x.terms[k], idx, seed);
  }
  return s;
}

BoundedComplex stalk(const Module& m) {
  BoundedComplex c;
  c.terms = {m};
  c.projective = {std::nullopt};
  return c;
}

bool any_positive(const std::vector<int>& v) {
  return std::any_of(v.begin(), v.end(), [](int x) { return x > 0; });
}

std::string signed_combination(const std::vector<int>& coeff, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t j = 0; j < coeff.size(); ++j) {
    int c = coeff[j];
    if (!c) continue;
    std::string term = (std::abs(c) == 1 ? "" : std::to_string(std::abs(c))) + "chi_" + names[j];
    if (s.empty())
      s = (c < 0 ? "-" : "") + term;
    else
      s += (c < 0 ? " - " : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

struct Pipeline {
  std::vector<Module> green;
  std::vector<bool> known;  // false where the case gives no correspondent
  std::vector<BoundedComplex> xs, ys;
};

// The images of the Green correspondents under the local twists, or the correspondents themselves.
std::vector<BoundedComplex> twisted_targets(const Local& l, const std::vector<Module>& green, const std::vector<int>& eta,
                                            std::uint64_t seed, Table* table) {
  std::vector<BoundedComplex> ys;
  if (!any_positive(eta)) {
    for (const auto& m : green) ys.push_back(stalk(m));
    return ys;
  }
  if (!l.catalog) throw std::runtime_error(l.spec.name + ": local twists need the relative projective catalogue");
  auto spec = twists::twist_spec(l.algebra, l.catalog->classes, eta);
  for (std::size_t i = 0; i < green.size(); ++i) {
    auto y = twists::twisted_image(green[i], spec, *l.idx, seed);
    if (table) table->rows.push_back({l.idx->simple(i).label, std::to_string(y.complex.lo), term_list(y.complex, *l.idx, seed)});
    ys.push_back(std::move(y.complex));
  }
  return ys;
}

// Rows of the decomposition matrix for the characters non-trivial on the defect group, in native columns.
std::vector<std::vector<int>> lower_rows(const Local& l, const perverse::K0Report& k0, std::string& problem) {
  std::vector<std::vector<int>> out;
  const std::size_t n = l.idx->size();
  for (const auto& red : functors::clifford_reductions(l.algebra, *l.full, l.idx->seed())) {
    std::vector<int> d(n, 0);
    int inside = 0, total = 0;
    for (std::size_t k = 0; k < n; ++k) inside += d[k] = red[l.native[k]];
    for (int v : red) total += v;
    if (!inside) continue;
    if (inside != total) problem = "a reduction meets several blocks";
    std::vector<int> row(n, 0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) row[j] += d[k] * k0.signs[k] * k0.decomposition[k][j];
    bool neg = std::any_of(row.begin(), row.end(), [](int v) { return v < 0; });
    bool pos = std::any_of(row.begin(), row.end(), [](int v) { return v > 0; });
    if (neg && pos) problem = "a lower row has mixed signs";
    if (neg)
      for (auto& v : row) v = -v;
    out.push_back(row);
  }
  return out;
}

}  // namespace

Report verify_case(const std::string& id, std::uint64_t seed, const std::string& dir) {
  CaseRecord c = load_case(id, dir);
  auto lp = local_for(c.local, seed, dir);
  const Local& l = *lp;
  const auto& idx = *l.idx;
  const std::size_t n = idx.size();
  Report r;
  r.title = c.title + " over the local group " + c.local;
  if (c.pi.size() != n) throw std::runtime_error("case " + id + ": pi has the wrong length");
  {
    Table t{"Perversity", {"label"}, {{"pi"}}};
    for (std::size_t i = 0; i < n; ++i) {
      t.header.push_back(idx.simple(i).label);
      t.rows[0].push_back(std::to_string(c.pi[i]));
    }
    if (!c.eta.empty()) t.rows.push_back({"eta", join(c.eta)});
    r.tables.push_back(t);
  }
  // projectives and relative projectives against the displays
  {
    Table t{"Projectives", {"label", "layers", "expected"}, {}};
    std::string bad;
    for (std::size_t i = 0; i < n; ++i) {
      std::string got = rep::render_layers(rep::loewy_layers(idx.projective(i), idx), idx);
      std::string want = i < l.spec.projectives.size() ? l.spec.projectives[i] : "";
      t.rows.push_back({idx.simple(i).label, got, want});
      if (!want.empty() && rep::loewy_layers(idx.projective(i), idx) != rep::parse_layers(want, idx))
        bad += " P" + idx.simple(i).label;
    }
    r.tables.push_back(t);
    r.checks.push_back({"projectives", bad.empty(), bad.empty() ? "" : "mismatch:" + bad});
  }
  if (l.catalog) {
    std::string bad;
    for (const auto& [label, disp] : l.spec.relproj) {
      const auto* e = l.catalog->find(label);
      if (!e || rep::loewy_layers(e->module, idx) != rep::parse_layers(disp, idx)) bad += " " + label;
    }
    r.checks.push_back({"relproj", bad.empty(), bad.empty() ? "" : "mismatch:" + bad});
  }
  // Green correspondents
  Pipeline p;
  {
    Table t{"Green correspondents", {"label", "recipe", "module"}, {}};
    std::string bad;
    for (std::size_t i = 0; i < n; ++i) {
      p.known.push_back(c.green[i] != kUnknownGreen);
      if (!p.known.back()) {
        p.green.push_back(idx.simple(i).module);
        t.rows.push_back({idx.simple(i).label, c.green[i], "(not given)"});
        continue;
      }
      try {
        p.green.push_back(realize_green(c.green[i], l, seed));
        t.rows.push_back({idx.simple(i).label, c.green[i], describe(p.green.back(), idx, seed)});
      } catch (const std::exception& e) {
        bad += " " + idx.simple(i).label + ": " + e.what();
        p.green.push_back(idx.simple(i).module);
      }
    }
    r.tables.push_back(t);
    r.checks.push_back({"green", bad.empty(), bad});
  }
  Table tw{"Twisted images", {"label", "lowest degree", "terms"}, {}};
  try {
    p.ys = twisted_targets(l, p.green, c.eta, seed, &tw);
    r.checks.push_back({"twists", true, ""});
  } catch (const std::exception& e) {
    r.checks.push_back({"twists", false, e.what()});
    for (const auto& m : p.green) p.ys.push_back(stalk(m));
  }
  if (!tw.rows.empty()) r.tables.push_back(tw);
  // the perverse complexes
  {
    Table t{"Complexes", {"label", "lowest degree", "terms"}, {}};
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      p.xs.push_back(perverse::perverse_complex(c.pi, i, idx));
      ok = ok && perverse::is_complex(p.xs.back()) && perverse::euler_identity(p.xs.back(), idx);
      t.rows.push_back({idx.simple(i).label, std::to_string(p.xs.back().lo), term_list(p.xs.back(), idx, seed)});
    }
    r.tables.push_back(t);
    r.checks.push_back({"complexes", ok, ok ? "" : "d^2 or the Euler identity fails"});
  }
  {
    std::vector<BoundedComplex> xs, ys;
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < n; ++i)
      if (p.known[i]) {
        xs.push_back(p.xs[i]);
        ys.push_back(p.ys[i]);
        at.push_back(i);
      }
    auto m = twists::stable_match(xs, ys, idx, seed);
    std::string bad;
    for (std::size_t i = 0; i < at.size(); ++i)
      if (!m.pairs[i]) bad += " " + idx.simple(at[i]).label;
    r.checks.push_back({"stable match", m.all_pairs(), bad.empty() ? "" : "unmatched:" + bad});
    r.checks.push_back({"stable match multiset", m.multiset, ""});
  }
  for (const auto& [label, want] : c.terms) {
    const auto& x = p.xs[label_index(idx, label)];
    std::string bad;
    if (want.size() + 1 != x.terms.size()) {
      bad = "expected " + std::to_string(want.size()) + " projective terms, got " + std::to_string(x.terms.size() - 1);
    } else {
      for (std::size_t k = 0; k < want.size(); ++k)
        if (!x.projective[k] || *x.projective[k] != parse_projective_term(want[k], idx))
          bad += " degree " + std::to_string(x.lo + static_cast<int>(k));
    }
    r.checks.push_back({"terms X" + label, bad.empty(), bad});
  }
  if (!c.cohomology.empty()) {
    Table t{"Cohomology", {"complex", "degree", "module", "expected"}, {}};
    for (const auto& [label, want] : c.cohomology) {
      const auto& x = p.xs[label_index(idx, label)];
      auto h = perverse::cohomology(x);
      std::string bad;
      for (const auto& [d, e] : want)
        if (d < x.lo || d > 0) bad += " H^" + std::to_string(d) + " outside the complex";
      for (std::size_t k = 0; k < h.size(); ++k) {
        int d = x.lo + static_cast<int>(k);
        auto it = want.find(d);
        std::string e = it == want.end() ? "0" : it->second;
        std::string got = describe(h[k], idx, seed);
        if (h[k].dim || e != "0") t.rows.push_back({"X" + label, std::to_string(d), got, e});
        if (!matches_entry(h[k], e, idx, seed)) bad += " H^" + std::to_string(d) + "=" + got + " (want " + e + ")";
      }
      r.checks.push_back({"cohomology X" + label, bad.empty(), bad});
    }
    r.tables.push_back(t);
  }
  if (c.decomposition) {
    const auto& dm = *c.decomposition;
    std::vector<int> order;
    for (const auto& s : dm.order) order.push_back(label_index(idx, s));
    auto k0 = perverse::k0_report(p.xs, c.pi, idx, order);
    std::vector<std::string> names(n);
    for (std::size_t a = 0; a < n; ++a) names[order[a]] = a < dm.characters.size() ? dm.characters[a] : dm.order[a];
    Table t{"K0", {"complex", "total"}, {}};
    for (std::size_t i = 0; i < n; ++i) t.rows.push_back({"X" + idx.simple(i).label, signed_combination(k0.totals[i], names)});
    r.tables.push_back(t);
    bool ok = !k0.decomposition.empty() && dm.rows.size() == n;
    Table dt{"Decomposition matrix", {"character"}, {}};
    for (const auto& s : dm.order) dt.header.push_back(s);
    for (std::size_t a = 0; ok && a < n; ++a) {
      std::vector<std::string> row{names[order[a]]};
      for (std::size_t b = 0; b < n; ++b) {
        int v = k0.decomposition[order[a]][order[b]];
        row.push_back(v ? std::to_string(v) : ".");
        if (b >= dm.rows[a].size() || dm.rows[a][b] != v) ok = false;
      }
      dt.rows.push_back(row);
    }
    r.checks.push_back({"decomposition", ok, ok ? "" : "differs from the expected matrix"});
    r.checks.push_back({"unitriangular", k0.unitriangular, ""});
    if (!dm.lower.empty() && ok) {
      std::string problem;
      auto low = lower_rows(l, k0, problem);
      std::vector<std::vector<int>> got, want = dm.lower;
      for (const auto& row : low) {
        std::vector<int> o;
        for (int j : order) o.push_back(row[j]);
        std::vector<std::string> cells{"(lower)"};
        for (int v : o) cells.push_back(v ? std::to_string(v) : ".");
        dt.rows.push_back(cells);
        got.push_back(o);
      }
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      bool same = problem.empty() && got == want;
      r.checks.push_back({"lower rows", same, same ? "" : (problem.empty() ? "rows differ" : problem)});
    }
    r.tables.push_back(dt);
    if (!c.parity.empty()) {
      auto pc = perverse::parity_check(c.pi, c.parity);
      r.checks.push_back({"parity", pc.ok, pc.ok ? "" : "sign mismatch at " + idx.simple(pc.mismatch).label});
    }
  }
  return r;
}

SearchResult search_case(const std::string& id, int bound, bool use_parity, std::uint64_t seed, const std::string& dir) {
  CaseRecord c = load_case(id, dir);
  auto lp = local_for(c.local, seed, dir);
  const Local& l = *lp;
  const auto& idx = *l.idx;
  std::vector<Module> green;
  for (const auto& g : c.green) green.push_back(realize_green(g, l, seed));
  std::vector<Module> targets;
  for (const auto& y : twisted_targets(l, green, c.eta, seed, nullptr))
    targets.push_back(twists::stable_module(y, idx));
  perverse::SearchOptions opt;
  opt.bound = bound;
  if (use_parity && !c.parity.empty()) opt.signs = c.parity;
  SearchResult out;
  out.solutions = perverse::pi_search(idx, targets, opt);
  out.contains_case_pi = std::find(out.solutions.begin(), out.solutions.end(), c.pi) != out.solutions.end();
  out.report.title = "Perversity search for " + c.title + ", bound " + std::to_string(bound);
  Table t{"Solutions", {"pi"}, {}};
  for (const auto& s : out.solutions) t.rows.push_back({join(s)});
  out.report.tables.push_back(t);
  out.report.checks.push_back({"case perversity found", out.contains_case_pi, join(c.pi)});
  return out;
}

Report run_adhoc(const AdhocInput& in, std::uint64_t seed, const std::string& dir) {
  std::shared_ptr<const Local> lp;
  if (!in.local.empty()) {
    lp = local_for(in.local, seed, dir);
  } else {
    LocalSpec s;
    s.name = in.group_file;
    s.group_file = in.group_file;
    s.q = in.q;
    if (!s.q) {
      std::ifstream f(in.group_file);
      if (!f) throw std::runtime_error("cannot open " + in.group_file);
      std::string line;
      while (std::getline(f, line)) {
        std::istringstream ls(line);
        std::string w;
        if (ls >> w && w == "semidirect") {
          ls >> s.q;
          break;
        }
      }
      if (!s.q) throw std::runtime_error(in.group_file + ": no 'semidirect' line to take the field from");
    }
    s.group_file = std::filesystem::absolute(in.group_file).string();
    lp = build_local(s, seed, dir);
  }
  const Local& l = *lp;
  const auto& idx = *l.idx;
  const std::size_t n = idx.size();
  if (in.pi.size() != n)
    throw std::runtime_error("run: pi has " + std::to_string(in.pi.size()) + " values for " + std::to_string(n) + " simples");
  Report r;
  r.title = "Perverse complexes for " + (in.local.empty() ? in.group_file : in.local) + " with pi = " + join(in.pi);
  {
    Table t{"Simples", {"label", "dim"}, {}};
    for (std::size_t i = 0; i < n; ++i) t.rows.push_back({idx.simple(i).label, std::to_string(idx.simple(i).module.dim)});
    r.tables.push_back(t);
  }
  std::vector<BoundedComplex> xs;
  Table t{"Complexes", {"label", "lowest degree", "terms"}, {}};
  Table h{"Cohomology", {"complex", "degree", "module"}, {}};
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(perverse::perverse_complex(in.pi, i, idx));
    const auto& x = xs.back();
    ok = ok && perverse::is_complex(x) && perverse::euler_identity(x, idx);
    t.rows.push_back({idx.simple(i).label, std::to_string(x.lo), term_list(x, idx, seed)});
    auto hs = perverse::cohomology(x);
    for (std::size_t k = 0; k < hs.size(); ++k)
      if (hs[k].dim) h.rows.push_back({"X" + idx.simple(i).label, std::to_string(x.lo + static_cast<int>(k)), describe(hs[k], idx, seed)});
  }
  r.tables.push_back(t);
  r.tables.push_back(h);
  r.checks.push_back({"complexes", ok, ok ? "" : "d^2 or the Euler identity fails"});
  if (any_positive(in.eta)) {
    auto classes = group::conjugacy_classes_of_order_ell_subgroups(l.group, l.algebra->field().characteristic());
    auto spec = twists::twist_spec(l.algebra, classes, in.eta);
    Table tw{"Twisted images of the simples", {"label", "lowest degree", "terms"}, {}};
    for (std::size_t i = 0; i < n; ++i) {
      auto y = twists::twisted_image(idx.simple(i).module, spec, idx, seed);
      tw.rows.push_back({idx.simple(i).label, std::to_string(y.complex.lo), term_list(y.complex, idx, seed)});
    }
    r.tables.push_back(tw);
  }
  auto k0 = perverse::k0_report(xs, in.pi, idx);
  Table k{"K0", {"complex"}, {}};
  for (std::size_t j = 0; j < n; ++j) k.header.push_back(idx.simple(j).label);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row{"X" + idx.simple(i).label};
    for (int v : k0.totals[i]) row.push_back(std::to_string(v));
    k.rows.push_back(row);
  }
  r.tables.push_back(k);
  r.checks.push_back({"unitriangular", k0.unitriangular, ""});
  return r;
}

Report show_case(const std::string& id, const std::string& what, std::uint64_t seed, const std::string& dir) {
  CaseRecord c = load_case(id, dir);
  auto lp = local_for(c.local, seed, dir);
  const Local& l = *lp;
  const auto& idx = *l.idx;
  Report r;
  r.title = c.title + ": " + what;
  if (what == "simples") {
    Table t{"Simples", {"label", "dim", "End degree"}, {}};
    for (const auto& s : idx.simples())
      t.rows.push_back({s.label, std::to_string(s.module.dim), std::to_string(s.end_degree)});
    r.tables.push_back(t);
  } else if (what == "projectives") {
    Table t{"Projectives", {"label", "dim", "layers"}, {}};
    for (std::size_t i = 0; i < idx.size(); ++i)
      t.rows.push_back({idx.simple(i).label, std::to_string(idx.projective(i).dim),
                        rep::render_layers(rep::loewy_layers(idx.projective(i), idx), idx)});
    r.tables.push_back(t);
  } else if (what == "relproj") {
    Table t{"Relative projectives", {"label", "subgroup class", "dim", "layers"}, {}};
    if (l.catalog)
      for (const auto& e : l.catalog->entries)
        t.rows.push_back({e.label, std::to_string(e.subgroup_class + 1), std::to_string(e.module.dim),
                          rep::render_layers(rep::loewy_layers(e.module, idx), idx)});
    r.tables.push_back(t);
  } else if (what == "green") {
    Table t{"Green correspondents", {"label", "recipe", "dim", "module"}, {}};
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (c.green[i] == kUnknownGreen) {
        t.rows.push_back({idx.simple(i).label, c.green[i], "", "(not given)"});
        continue;
      }
      Module m = realize_green(c.green[i], l, seed);
      t.rows.push_back({idx.simple(i).label, c.green[i], std::to_string(m.dim), describe(m, idx, seed)});
    }
    r.tables.push_back(t);
  } else {
    throw std::invalid_argument("show: expected simples, projectives, relproj or green");
  }
  return r;
}

}  // namespace perverx::casebook
