#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "perverx/casebook.hpp"

namespace perverx::casebook {

using json = nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // the library reports line and column in its message
    throw std::runtime_error(what + ": " + e.what());
  }
}

std::vector<std::vector<int>> int_rows(const json& j) {
  std::vector<std::vector<int>> out;
  for (const auto& r : j) out.push_back(r.get<std::vector<int>>());
  return out;
}

int involutions_fixing(const Module& m) {
  const auto& g = m.algebra->group();
  int n = 0;
  for (int x = 1; x < g->order(); ++x)
    if (g->element_order(x) == 2 && rep::element_matrix(m, x).is_identity()) ++n;
  return n;
}

}  // namespace

std::string data_dir() {
  if (const char* d = std::getenv("PERVERX_DATA_DIR"); d && *d) return d;
  return PERVERX_DATA_DIR;
}

std::vector<std::string> case_ids(const std::string& dir) {
  std::vector<std::string> ids;
  for (const auto& e : std::filesystem::directory_iterator(dir + "/cases")) {
    auto p = e.path();
    if (p.extension() == ".json" && p.stem() != "locals") ids.push_back(p.stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

CaseRecord parse_case(const std::string& text) {
  json j = parse_json(text, "case file");
  CaseRecord c;
  try {
    c.id = j.at("id").get<std::string>();
    c.title = j.value("title", c.id);
    c.local = j.at("local").get<std::string>();
    c.pi = j.at("pi").get<std::vector<int>>();
    c.eta = j.value("eta", std::vector<int>{});
    c.green = j.at("green").get<std::vector<std::string>>();
    c.parity = j.value("parity", std::vector<int>{});
    if (j.contains("cohomology"))
      for (const auto& [label, degs] : j["cohomology"].items())
        for (const auto& [d, entry] : degs.items()) c.cohomology[label][std::stoi(d)] = entry.get<std::string>();
    if (j.contains("terms"))
      for (const auto& [label, t] : j["terms"].items()) c.terms[label] = t.get<std::vector<std::string>>();
    if (j.contains("decomposition")) {
      const auto& d = j["decomposition"];
      Decomposition dm;
      dm.order = d.at("order").get<std::vector<std::string>>();
      dm.characters = d.value("characters", std::vector<std::string>{});
      dm.rows = int_rows(d.at("rows"));
      dm.lower_characters = d.value("lower_characters", std::vector<std::string>{});
      if (d.contains("lower")) dm.lower = int_rows(d["lower"]);
      c.decomposition = dm;
    }
  } catch (const json::exception& e) {
    throw std::runtime_error("case file " + c.id + ": " + e.what());
  }
  if (c.green.size() != c.pi.size()) throw std::runtime_error("case file " + c.id + ": one Green recipe per simple");
  if (!c.parity.empty() && c.parity.size() != c.pi.size())
    throw std::runtime_error("case file " + c.id + ": one parity sign per simple");
  return c;
}

CaseRecord load_case(const std::string& id, const std::string& dir) {
  return parse_case(read_file(dir + "/cases/" + id + ".json"));
}

LocalSpec load_local_spec(const std::string& name, const std::string& dir) {
  json all = parse_json(read_file(dir + "/cases/locals.json"), "locals.json");
  if (!all.contains(name)) throw std::runtime_error("no local group " + name);
  const json& j = all[name];
  LocalSpec s;
  s.name = name;
  s.q = j.value("q", 3);
  s.automizer = j.value("automizer", "");
  s.group_file = j.value("group", "");
  s.labels = j.value("labels", std::vector<std::string>{});
  s.projectives = j.value("projectives", std::vector<std::string>{});
  if (j.contains("relproj"))
    for (const auto& e : j["relproj"]) s.relproj.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  s.anchor_nontrivial_on = j.value("anchor_nontrivial_on", std::vector<std::string>{});
  s.dihedral_kernel_rule = j.value("dihedral_kernel_rule", false);
  return s;
}

std::shared_ptr<const Local> build_local(const LocalSpec& spec, std::uint64_t seed, const std::string& dir) {
  auto l = std::make_shared<Local>();
  l->spec = spec;
  if (!spec.automizer.empty()) {
    for (const auto& a : group::load_automizers(dir + "/automizers.txt"))
      if (a.name == spec.automizer) l->group = group::semidirect(a.data, "C3^2:" + a.name);
    if (!l->group) throw std::runtime_error("no automizer " + spec.automizer);
  } else {
    const auto& f = spec.group_file;
    l->group = group::load_group(!f.empty() && f[0] == '/' ? f : dir + "/" + f);
  }
  l->algebra = rep::Algebra::group_algebra(l->group, spec.q);
  l->full = rep::SimpleIndex::build(l->algebra, seed);
  const auto& g = l->group;
  // the anchor simple
  int anchor = -1;
  for (std::size_t s = 0; s < l->full->size() && anchor < 0; ++s) {
    const Module& m = l->full->simple(s).module;
    if (m.dim != 1) continue;
    bool ok = true;
    for (std::size_t i = 0; i < g->generators().size(); ++i) {
      const auto& nm = g->generator_names()[i];
      bool want = std::find(spec.anchor_nontrivial_on.begin(), spec.anchor_nontrivial_on.end(), nm) ==
                  spec.anchor_nontrivial_on.end();
      if (rep::element_matrix(m, g->generators()[i]).is_identity() != want) ok = false;
    }
    if (ok) anchor = static_cast<int>(s);
  }
  if (anchor < 0) throw std::runtime_error(spec.name + ": no anchor simple");
  std::vector<int> keep;
  for (const auto& b : functors::blocks(l->algebra, *l->full, seed))
    if (std::find(b.simples.begin(), b.simples.end(), anchor) != b.simples.end()) keep = b.simples;
  std::sort(keep.begin(), keep.end());
  auto sub = l->full->restrict_to(keep);
  const int a = static_cast<int>(std::find(keep.begin(), keep.end(), anchor) - keep.begin());
  if (l->spec.labels.empty()) {
    const std::string names = "123456789abcdefghijklmnopqrstuvwxyz";
    if (sub->size() > names.size()) throw std::runtime_error(spec.name + ": too many simples to label");
    for (std::size_t i = 0; i < sub->size(); ++i) l->spec.labels.push_back(std::string(1, names[i]));
  }
  if (l->spec.labels.size() != sub->size())
    throw std::runtime_error(spec.name + ": " + std::to_string(sub->size()) + " simples in the block, " +
                             std::to_string(l->spec.labels.size()) + " labels");
  std::vector<std::vector<int>> orders;
  if (spec.projectives.empty()) {
    std::vector<int> o{a};
    for (int i = 0; i < static_cast<int>(sub->size()); ++i)
      if (i != a) o.push_back(i);
    orders.push_back(o);
  } else {
    orders = rep::match_projective_displays(*sub, l->spec.labels, spec.projectives);
  }
  const Module& anchor_mod = sub->simple(a).module;
  for (const auto& o : orders) {
    if (o[0] != a) continue;
    auto r = sub->relabel(o, l->spec.labels);
    if (spec.dihedral_kernel_rule) {
      Module untwist = rep::dual(anchor_mod);
      if (involutions_fixing(rep::tensor_diagonal(r->simple(2).module, untwist)) <=
          involutions_fixing(rep::tensor_diagonal(r->simple(3).module, untwist)))
        continue;
    }
    l->idx = r;
    for (int i : o) l->native.push_back(keep[i]);
    break;
  }
  if (!l->idx) throw std::runtime_error(spec.name + ": no labelling matches the projective displays");
  if (!spec.relproj.empty())
    l->catalog = functors::build_relproj_catalog(l->algebra, *l->idx, l->algebra->field().characteristic(),
                                                 spec.relproj, seed);
  return l;
}

std::shared_ptr<const Local> local_for(const std::string& name, std::uint64_t seed, const std::string& dir) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, std::string, std::uint64_t>, std::shared_ptr<const Local>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(dir, name, seed);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  return cache[key] = build_local(load_local_spec(name, dir), seed, dir);
}

}  // namespace perverx::casebook
