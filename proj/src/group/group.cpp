#include "perverx/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace perverx::group {

FiniteGroup::FiniteGroup(std::string name, std::vector<int> table, std::size_t order, std::vector<int> generators,
                         std::vector<std::string> generator_names)
    : name_(std::move(name)), n_(order), table_(std::move(table)), gens_(std::move(generators)),
      gen_names_(std::move(generator_names)) {
  if (n_ == 0 || n_ > static_cast<std::size_t>(kMaxOrder)) throw std::invalid_argument("group order out of range");
  if (table_.size() != n_ * n_) throw std::invalid_argument("multiplication table has wrong size");
  for (int x : table_)
    if (x < 0 || static_cast<std::size_t>(x) >= n_) throw std::invalid_argument("table not closed");
  for (std::size_t a = 0; a < n_; ++a)
    if (mul(0, a) != static_cast<int>(a) || mul(a, 0) != static_cast<int>(a))
      throw std::invalid_argument("element 0 is not the identity");
  inv_.assign(n_, -1);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      if (mul(a, b) == 0) {
        inv_[a] = static_cast<int>(b);
        break;
      }
  for (std::size_t a = 0; a < n_; ++a)
    if (inv_[a] < 0 || mul(inv_[a], a) != 0) throw std::invalid_argument("missing inverse");
  // Exhaustive associativity below 300 elements, a fixed stride sample above.
  std::size_t step = n_ <= 300 ? 1 : 7;
  for (std::size_t a = 0; a < n_; a += step)
    for (std::size_t b = 0; b < n_; b += step)
      for (std::size_t c = 0; c < n_; c += step)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::invalid_argument("table not associative");
  orders_.assign(n_, 0);
  for (std::size_t a = 0; a < n_; ++a) {
    int k = 1, x = static_cast<int>(a);
    while (x != 0) {
      x = mul(x, a);
      ++k;
    }
    orders_[a] = k;
  }
  word_parent_.assign(n_, -1);
  word_gen_.assign(n_, -1);
  std::vector<bool> seen(n_, false);
  seen[0] = true;
  bfs_.push_back(0);
  for (std::size_t i = 0; i < bfs_.size(); ++i) {
    int x = bfs_[i];
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      int y = mul(x, gens_[k]);
      if (!seen[y]) {
        seen[y] = true;
        word_parent_[y] = x;
        word_gen_[y] = static_cast<int>(k);
        bfs_.push_back(y);
      }
    }
  }
  if (bfs_.size() != n_) throw std::invalid_argument("generators do not generate " + name_);
}

bool Subgroup::contains(int g) const { return std::binary_search(elements.begin(), elements.end(), g); }

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<int> decode(int code, int p, int n) {
  std::vector<int> v(n);
  for (int i = n - 1; i >= 0; --i) {
    v[i] = code % p;
    code /= p;
  }
  return v;
}

int encode(const std::vector<int>& v, int p) {
  int c = 0;
  for (int x : v) c = c * p + x;
  return c;
}

std::vector<int> closure(const GroupPtr& g, std::vector<int> elems) {
  std::vector<bool> in(g->order(), false);
  in[0] = true;
  std::vector<int> out{0};
  std::vector<int> gens;
  for (int x : elems)
    if (x != 0) gens.push_back(x);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int s : gens) {
      int y = g->mul(out[i], s);
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

GroupPtr semidirect(const SemidirectData& d, const std::string& name) {
  const gf::Field& f = gf::Field::get(d.p);
  if (d.p != 2 && d.p != 3) throw std::invalid_argument("semidirect: p must be 2 or 3");
  for (const auto& m : d.action)
    if (m.rows() != static_cast<std::size_t>(d.n) || m.cols() != static_cast<std::size_t>(d.n) || !gf::inverse(m))
      throw std::invalid_argument("semidirect: action matrices must be invertible n x n");
  // Enumerate E as a matrix group, BFS from the identity.
  std::vector<gf::Matrix> elems{gf::Matrix::identity(f, d.n)};
  std::map<gf::Matrix, int> index{{elems[0], 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : d.action) {
      gf::Matrix y = elems[i] * g;
      if (!index.count(y)) {
        index[y] = static_cast<int>(elems.size());
        elems.push_back(y);
        if (elems.size() > static_cast<std::size_t>(FiniteGroup::kMaxOrder))
          throw std::invalid_argument("semidirect: E too large");
      }
    }
  const int ne = static_cast<int>(elems.size());
  const int np = ipow(d.p, d.n);
  const std::size_t n = static_cast<std::size_t>(np) * ne;
  if (n > static_cast<std::size_t>(FiniteGroup::kMaxOrder)) throw std::invalid_argument("semidirect: order too large");
  std::vector<int> emul(ne * ne);
  for (int a = 0; a < ne; ++a)
    for (int b = 0; b < ne; ++b) emul[a * ne + b] = index.at(elems[a] * elems[b]);
  // twist[e][w] = w M_e^{-1}
  std::vector<int> twist(static_cast<std::size_t>(ne) * np);
  for (int e = 0; e < ne; ++e) {
    gf::Matrix minv = *gf::inverse(elems[e]);
    for (int w = 0; w < np; ++w) {
      auto wv = decode(w, d.p, d.n);
      std::vector<int> r(d.n, 0);
      for (int j = 0; j < d.n; ++j) {
        int s = 0;
        for (int k = 0; k < d.n; ++k) s += wv[k] * minv(k, j);
        r[j] = s % d.p;
      }
      twist[static_cast<std::size_t>(e) * np + w] = encode(r, d.p);
    }
  }
  auto vadd = [&](int a, int b) {
    auto x = decode(a, d.p, d.n), y = decode(b, d.p, d.n);
    for (int i = 0; i < d.n; ++i) x[i] = (x[i] + y[i]) % d.p;
    return encode(x, d.p);
  };
  std::vector<int> padd(static_cast<std::size_t>(np) * np);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) padd[a * np + b] = vadd(a, b);
  std::vector<int> table(n * n);
  for (int v = 0; v < np; ++v)
    for (int e = 0; e < ne; ++e)
      for (int w = 0; w < np; ++w)
        for (int g = 0; g < ne; ++g) {
          int nv = padd[v * np + twist[static_cast<std::size_t>(e) * np + w]];
          table[static_cast<std::size_t>(v * ne + e) * n + (w * ne + g)] = nv * ne + emul[e * ne + g];
        }
  // Generators: E generators, then basis vectors not already in the E-span of earlier ones.
  std::vector<int> gens;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d.action.size(); ++i) {
    gens.push_back(index.at(d.action[i]));
    names.push_back(i < d.names.size() ? d.names[i] : "e" + std::to_string(i + 1));
  }
  gf::Matrix span(f, 0, d.n);
  for (int i = 0; i < d.n; ++i) {
    gf::Matrix v(f, 1, d.n);
    v(0, i) = 1;
    if (gf::subspace_contains(span, v)) continue;
    std::vector<int> code(d.n, 0);
    code[i] = 1;
    gens.push_back(encode(code, d.p) * ne);
    names.push_back("p" + std::to_string(i + 1));
    gf::Matrix orbit = v;
    for (const auto& m : elems) orbit = gf::vstack(orbit, v * m);
    span = gf::subspace_sum(span, orbit);
  }
  return std::make_shared<FiniteGroup>(name, std::move(table), n, std::move(gens), std::move(names));
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, const std::string& name) {
  const int na = a->order(), nb = b->order();
  const std::size_t n = static_cast<std::size_t>(na) * nb;
  if (n > static_cast<std::size_t>(FiniteGroup::kMaxOrder)) throw std::invalid_argument("direct product too large");
  std::vector<int> table(n * n);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y)
      for (int u = 0; u < na; ++u)
        for (int v = 0; v < nb; ++v)
          table[static_cast<std::size_t>(x * nb + y) * n + (u * nb + v)] = a->mul(x, u) * nb + b->mul(y, v);
  std::vector<int> gens;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a->generators().size(); ++i) {
    gens.push_back(a->generators()[i] * nb);
    names.push_back(a->generator_names()[i]);
  }
  for (std::size_t i = 0; i < b->generators().size(); ++i) {
    gens.push_back(b->generators()[i]);
    names.push_back("z" + std::to_string(i + 1));
  }
  return std::make_shared<FiniteGroup>(name, std::move(table), n, std::move(gens), std::move(names));
}

GroupPtr cyclic(int n) {
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  std::vector<int> gens;
  if (n > 1) gens.push_back(1);
  return std::make_shared<FiniteGroup>("C" + std::to_string(n), std::move(table), n, gens,
                                       std::vector<std::string>(gens.size(), "c"));
}

Subgroup whole(const GroupPtr& g) {
  Subgroup s{g, std::vector<int>(g->order())};
  std::iota(s.elements.begin(), s.elements.end(), 0);
  return s;
}

Subgroup generated(const GroupPtr& g, const std::vector<int>& gens) { return {g, closure(g, gens)}; }

Subgroup normalizer(const GroupPtr& g, const Subgroup& h) {
  Subgroup out{g, {}};
  for (int x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (int y : h.elements)
      if (!h.contains(g->conj(y, x))) {
        ok = false;
        break;
      }
    if (ok) out.elements.push_back(x);
  }
  return out;
}

Subgroup centralizer(const GroupPtr& g, const Subgroup& h) {
  Subgroup out{g, {}};
  for (int x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (int y : h.elements)
      if (g->mul(x, y) != g->mul(y, x)) {
        ok = false;
        break;
      }
    if (ok) out.elements.push_back(x);
  }
  return out;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  Subgroup out{a.parent, {}};
  std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
                        std::back_inserter(out.elements));
  return out;
}

Subgroup product(const Subgroup& a, const Subgroup& b) {
  std::set<int> s;
  for (int x : a.elements)
    for (int y : b.elements) s.insert(a.parent->mul(x, y));
  Subgroup out{a.parent, std::vector<int>(s.begin(), s.end())};
  if (closure(a.parent, out.elements) != out.elements) throw std::invalid_argument("product is not a subgroup");
  return out;
}

bool is_normal(const Subgroup& h) {
  const auto& g = h.parent;
  for (int x : g->generators())
    for (int y : h.elements)
      if (!h.contains(g->conj(y, x))) return false;
  return true;
}

Subgroup normal_p_core(const GroupPtr& g, int p) {
  std::vector<int> pel;
  for (int x = 0; x < g->order(); ++x) {
    int o = g->element_order(x);
    while (o % p == 0) o /= p;
    if (o == 1) pel.push_back(x);
  }
  Subgroup s{g, pel};
  if (closure(g, pel) == pel && is_normal(s)) return s;
  return {g, {0}};
}

std::vector<std::vector<int>> conjugacy_classes(const GroupPtr& g) {
  std::vector<bool> seen(g->order(), false);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < g->order(); ++x) {
    if (seen[x]) continue;
    std::set<int> cls;
    for (int y = 0; y < g->order(); ++y) cls.insert(g->conj(x, y));
    for (int c : cls) seen[c] = true;
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

std::vector<Subgroup> conjugacy_classes_of_order_ell_subgroups(const GroupPtr& g, int ell) {
  std::vector<bool> covered(g->order(), false);
  std::vector<Subgroup> reps;
  for (int x = 0; x < g->order(); ++x) {
    if (g->element_order(x) != ell || covered[x]) continue;
    Subgroup s = generated(g, {x});
    reps.push_back(s);
    for (int y = 0; y < g->order(); ++y)
      for (int z : s.elements) covered[g->conj(z, y)] = true;
  }
  return reps;
}

Subgroup complement_find(const GroupPtr& g, const Subgroup& k) {
  if (!is_normal(k)) throw std::invalid_argument("complement_find: subgroup not normal");
  const int target = g->order() / k.order();
  if (std::gcd(target, k.order()) != 1) throw std::invalid_argument("complement_find: orders not coprime");
  std::vector<int> h{0};
  for (int x = 0; x < g->order() && static_cast<int>(h.size()) < target; ++x) {
    if (std::binary_search(h.begin(), h.end(), x)) continue;
    auto gens = h;
    gens.push_back(x);
    auto c = closure(g, gens);
    if (std::gcd(static_cast<int>(c.size()), k.order()) == 1) h = c;
  }
  if (static_cast<int>(h.size()) != target) throw std::runtime_error("complement_find: no complement");
  return {g, h};
}

Embedding embed(const Subgroup& h, const std::string& name) {
  const auto& g = h.parent;
  const std::size_t n = h.elements.size();
  std::map<int, int> pos;
  for (std::size_t i = 0; i < n; ++i) pos[h.elements[i]] = static_cast<int>(i);
  std::vector<int> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto it = pos.find(g->mul(h.elements[i], h.elements[j]));
      if (it == pos.end()) throw std::invalid_argument("embed: subset is not a subgroup");
      table[i * n + j] = it->second;
    }
  std::vector<int> gens;
  std::vector<int> parent_gens;
  for (int x : h.elements) {
    if (x == 0) continue;
    auto c = closure(g, parent_gens);
    if (std::binary_search(c.begin(), c.end(), x)) continue;
    parent_gens.push_back(x);
    gens.push_back(pos[x]);
    if (static_cast<std::size_t>(closure(g, parent_gens).size()) == n) break;
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < gens.size(); ++i) names.push_back("h" + std::to_string(i + 1));
  Embedding e;
  e.sub = std::make_shared<FiniteGroup>(name, std::move(table), n, gens, names);
  e.parent = g;
  e.map = h.elements;
  return e;
}

std::vector<int> right_coset_reps(const Subgroup& h) {
  const auto& g = h.parent;
  std::vector<bool> seen(g->order(), false);
  std::vector<int> reps;
  for (int x = 0; x < g->order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (int y : h.elements) seen[g->mul(y, x)] = true;
  }
  return reps;
}

GroupPtr quotient(const GroupPtr& g, const Subgroup& n, const std::string& name) {
  if (!is_normal(n)) throw std::invalid_argument("quotient: subgroup not normal");
  auto reps = right_coset_reps(n);
  std::vector<int> coset(g->order());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (int y : n.elements) coset[g->mul(y, reps[i])] = static_cast<int>(i);
  const std::size_t m = reps.size();
  std::vector<int> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = coset[g->mul(reps[i], reps[j])];
  std::vector<int> gens;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < g->generators().size(); ++i) {
    int c = coset[g->generators()[i]];
    if (c == 0 || std::find(gens.begin(), gens.end(), c) != gens.end()) continue;
    gens.push_back(c);
    names.push_back(g->generator_names()[i]);
  }
  return std::make_shared<FiniteGroup>(name, std::move(table), m, gens, names);
}

std::vector<int> element_order_multiset(const GroupPtr& g) {
  std::vector<int> o;
  for (int x = 0; x < g->order(); ++x) o.push_back(g->element_order(x));
  std::sort(o.begin(), o.end());
  return o;
}

int center_order(const GroupPtr& g) { return centralizer(g, whole(g)).order(); }

}  // namespace perverx::group
