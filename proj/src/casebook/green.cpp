#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

#include "perverx/casebook.hpp"

namespace perverx::casebook {

using rep::Matrix;
using rep::Multiplicities;

namespace {

constexpr std::size_t kExhaustiveLimit = 20000;
constexpr std::size_t kSamples = 4000;
constexpr std::size_t kIsoChecks = 64;

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

bool wrapped(const std::string& s, const std::string& fn, std::string& inner) {
  if (s.size() <= fn.size() + 2 || s.compare(0, fn.size() + 1, fn + "(") != 0 || s.back() != ')') return false;
  inner = s.substr(fn.size() + 1, s.size() - fn.size() - 2);
  return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool layers_match(const Module& m, const std::vector<Multiplicities>& want, const rep::SimpleIndex& idx) {
  return rep::loewy_layers(m, idx) == want || rep::socle_layers(m, idx) == want;
}

// Modules with the given layers that are images of P(head)/rad^depth -> soc^depth(P(socle)).
std::vector<Module> images_with_layers(const std::vector<Multiplicities>& layers, const Multiplicities& head,
                                       const Multiplicities& socle, std::size_t target, const rep::SimpleIndex& idx,
                                       std::uint64_t seed) {
  const std::size_t depth = layers.size();
  Module p = rep::projective_sum(head, idx);
  auto rs = rep::radical_series(p, idx);
  Module dom = rs.size() > depth && rs[depth].rows() ? rep::quotient(p, rs[depth]) : p;
  Module inj = rep::projective_sum(socle, idx);
  auto ss = rep::socle_series(inj, idx);
  Module cod = depth < ss.size() ? rep::submodule(inj, ss[depth]) : inj;
  auto hs = rep::hom(dom, cod);
  const auto& f = idx.algebra()->field();
  const std::size_t d = hs.size();
  std::vector<Module> found;
  auto consider = [&](const std::vector<rep::Elem>& c) {
    Matrix h(f, dom.dim, cod.dim);
    for (std::size_t i = 0; i < d; ++i)
      if (c[i]) h = h + gf::scale(hs[i], c[i]);
    Matrix im = rep::image(h);
    if (im.rows() != target) return;
    Module m = rep::submodule(cod, im);
    if (layers_match(m, layers, idx)) found.push_back(m);
  };
  double total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= f.q();
  if (d == 0) {
    // nothing to enumerate
  } else if (total <= static_cast<double>(kExhaustiveLimit)) {
    // up to scalars: the first non-zero coefficient is 1
    std::vector<rep::Elem> c(d, 0);
    for (std::size_t lead = 0; lead < d; ++lead) {
      std::fill(c.begin(), c.end(), 0);
      c[lead] = 1;
      for (;;) {
        consider(c);
        std::size_t i = lead + 1;
        while (i < d && ++c[i] == f.q()) c[i++] = 0;
        if (i == d) break;
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(0, f.q() - 1);
    std::vector<rep::Elem> c(d);
    for (std::size_t n = 0; n < kSamples; ++n) {
      for (auto& x : c) x = static_cast<rep::Elem>(u(rng));
      consider(c);
    }
  }
  return found;
}

Module from_layers(const std::string& recipe, const Local& l, std::uint64_t seed) {
  const auto& idx = *l.idx;
  auto layers = rep::parse_layers(recipe, idx);
  if (layers.empty()) throw std::runtime_error("realize_green: empty recipe");
  std::size_t target = 0;
  for (const auto& layer : layers)
    for (std::size_t s = 0; s < idx.size(); ++s) target += layer[s] * idx.simple(s).module.dim;
  if (layers.size() == 1) {
    int count = 0, which = -1;
    for (std::size_t s = 0; s < idx.size(); ++s)
      if (layers[0][s]) count += layers[0][s], which = static_cast<int>(s);
    if (count == 1) return idx.simple(which).module;
  }
  // Read as radical layers the head is the first layer, read as socle layers the socle is the last;
  // the other end may carry one more composition factor.
  std::vector<std::pair<Multiplicities, Multiplicities>> ends{{layers.front(), layers.back()}};
  for (std::size_t k = 1; k < layers.size(); ++k)
    for (std::size_t sidx = 0; sidx < idx.size(); ++sidx)
      if (layers[k][sidx]) {
        auto h = layers.front();
        ++h[sidx];
        if (std::find(ends.begin(), ends.end(), std::make_pair(h, layers.back())) == ends.end())
          ends.push_back({h, layers.back()});
      }
  for (std::size_t k = 0; k + 1 < layers.size(); ++k)
    for (std::size_t sidx = 0; sidx < idx.size(); ++sidx)
      if (layers[k][sidx]) {
        auto so = layers.back();
        ++so[sidx];
        if (std::find(ends.begin(), ends.end(), std::make_pair(layers.front(), so)) == ends.end())
          ends.push_back({layers.front(), so});
      }
  std::vector<Module> found;
  for (const auto& [head, socle] : ends) {
    found = images_with_layers(layers, head, socle, target, idx, seed);
    if (!found.empty()) break;
  }
  if (found.empty()) throw std::runtime_error("realize_green: no module with layers " + recipe + " (" + l.spec.name + ")");
  std::vector<Module> indec;
  for (auto& x : found)
    if (rep::decompose(x, seed).size() == 1) indec.push_back(std::move(x));
  if (indec.empty())
    throw std::runtime_error("realize_green: every module with layers " + recipe + " is decomposable (" + l.spec.name + ")");
  const Module& m = indec.front();
  auto lo = rep::loewy_layers(m, idx), so = rep::socle_layers(m, idx);
  const std::size_t step = std::max<std::size_t>(1, indec.size() / kIsoChecks);
  for (std::size_t i = 1; i < indec.size(); ++i) {
    const Module& x = indec[i];
    bool same = rep::loewy_layers(x, idx) == lo && rep::socle_layers(x, idx) == so;
    if (same && i % step == 0) same = rep::is_isomorphic(m, x, seed);
    if (!same)
      throw std::runtime_error("realize_green: non-isomorphic modules with layers " + recipe + " (" + l.spec.name + ")");
  }
  return m;
}

}  // namespace

Module realize_green(const std::string& recipe_in, const Local& l, std::uint64_t seed) {
  std::string recipe = trim(recipe_in), inner;
  if (recipe == kUnknownGreen) throw std::runtime_error("realize_green: the case gives no correspondent here");
  if (wrapped(recipe, "omega_inv", inner)) return rep::omega_inv(realize_green(inner, l, seed), *l.idx);
  if (wrapped(recipe, "omega", inner)) return rep::omega(realize_green(inner, l, seed), *l.idx);
  if (l.catalog)
    if (const auto* e = l.catalog->find(recipe)) return e->module;
  return from_layers(recipe, l, seed);
}

std::string describe(const Module& m, const rep::SimpleIndex& idx, std::uint64_t) {
  return m.dim ? rep::render(m, idx) : "0";
}

bool matches_entry(const Module& m, const std::string& entry_in, const rep::SimpleIndex& idx, std::uint64_t seed) {
  std::string entry = trim(entry_in);
  if (entry == "0") return m.dim == 0;
  if (m.dim == 0) return false;
  if (entry.find(',') == std::string::npos && layers_match(m, rep::parse_layers(entry, idx), idx)) return true;
  auto want = split(entry, ',');
  auto parts = rep::decompose(m, seed);
  if (parts.size() != want.size()) return false;
  std::vector<std::vector<Multiplicities>> wl;
  for (const auto& w : want) wl.push_back(rep::parse_layers(w, idx));
  const std::size_t n = parts.size();
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ok[i][j] = layers_match(parts[j].module, wl[i], idx);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> assign = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j)
      if (ok[i][j] && !used[j]) {
        used[j] = true;
        if (assign(i + 1)) return true;
        used[j] = false;
      }
    return false;
  };
  return assign(0);
}

}  // namespace perverx::casebook
