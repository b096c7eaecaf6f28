#include <algorithm>
#include <random>
#include <stdexcept>

#include "perverx/rep.hpp"
#include "rep_internal.hpp"

namespace perverx::rep {

namespace {

bool fast(const SimpleIndex& idx) { return idx.has_p_core(); }

Multiplicities minus(Multiplicities a, const Multiplicities& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

bool all_zero(const Multiplicities& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

}  // namespace

Matrix lift_from_quotient(const Module& m, const Matrix& sub, const Matrix& in_quotient) {
  Matrix basis = gf::row_basis(sub);
  std::vector<bool> is_piv(m.dim, false);
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < m.dim; ++j)
      if (basis(i, j)) {
        is_piv[j] = true;
        break;
      }
  std::vector<std::size_t> comp;
  for (std::size_t j = 0; j < m.dim; ++j)
    if (!is_piv[j]) comp.push_back(j);
  Matrix up(m.field(), in_quotient.rows(), m.dim);
  for (std::size_t r = 0; r < in_quotient.rows(); ++r)
    for (std::size_t c = 0; c < comp.size(); ++c) up(r, comp[c]) = in_quotient(r, c);
  return gf::subspace_sum(basis, up);
}

namespace {

Multiplicities identify(const std::vector<Module>& raw, const SimpleIndex& idx) {
  Multiplicities out(idx.size(), 0);
  for (const auto& s : raw) {
    bool found = false;
    for (std::size_t i = 0; i < idx.size() && !found; ++i) {
      const auto& t = idx.simple(i).module;
      if (t.dim == s.dim && !hom(s, t).empty()) {
        ++out[i];
        found = true;
      }
    }
    if (!found) throw std::runtime_error("composition factor not in the simple index");
  }
  return out;
}

// Composition factors of a semisimple module.
Multiplicities semisimple_factors(const Module& m, const SimpleIndex& idx) {
  Multiplicities out(idx.size(), 0);
  if (m.dim == 0) return out;
  for (std::size_t i = 0; i < idx.size(); ++i)
    out[i] = static_cast<int>(hom(m, idx.simple(i).module).size()) / idx.simple(i).end_degree;
  return out;
}

// A nonzero vector in the socle of each projective indecomposable.
Matrix socle_vector(const SimpleIndex& idx, std::size_t s) {
  Matrix soc = socle(idx.projective(s), idx);
  if (soc.rows() == 0) throw std::logic_error("projective with zero socle");
  return soc.row_block(0, 1);
}

}  // namespace

Multiplicities chop(const Module& m, const SimpleIndex& idx, std::uint64_t seed) {
  return identify(chop_raw(m, seed), idx);
}

Multiplicities composition_factors(const Module& m, const SimpleIndex& idx) {
  if (m.dim == 0) return Multiplicities(idx.size(), 0);
  if (!fast(idx)) return chop(m, idx, idx.seed());
  ModuleView v(m, idx);
  return v.factors_of(Matrix::identity(m.field(), m.dim));
}

Matrix radical(const Module& m, const SimpleIndex& idx) {
  const Field& f = m.field();
  if (m.dim == 0) return Matrix(f, 0, 0);
  if (fast(idx)) {
    if (idx.core_generators().empty()) return Matrix(f, 0, m.dim);
    Matrix rows(f, 0, m.dim);
    auto mats = element_matrices(m, idx.core_generators());
    for (const auto& x : mats) rows = gf::vstack(rows, x - Matrix::identity(f, m.dim));
    return spin(m, rows);
  }
  Matrix r = Matrix::identity(f, m.dim);
  for (std::size_t s = 0; s < idx.size() && r.rows(); ++s)
    for (const auto& h : hom(m, idx.simple(s).module)) {
      Matrix keep = gf::left_nullspace(r * h);
      r = gf::row_basis(keep * r);
      if (!r.rows()) break;
    }
  return gf::row_basis(r);
}

Matrix socle(const Module& m, const SimpleIndex& idx) {
  const Field& f = m.field();
  if (m.dim == 0) return Matrix(f, 0, 0);
  if (fast(idx)) {
    Matrix s = Matrix::identity(f, m.dim);
    for (const auto& x : element_matrices(m, idx.core_generators())) {
      Matrix keep = gf::left_nullspace(s * (x - Matrix::identity(f, m.dim)));
      s = keep * s;
      if (!s.rows()) break;
    }
    return gf::row_basis(s);
  }
  Matrix s(f, 0, m.dim);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (const auto& h : hom(idx.simple(i).module, m)) s = gf::subspace_sum(s, h);
  return s;
}

std::vector<Matrix> radical_series(const Module& m, const SimpleIndex& idx) {
  std::vector<Matrix> out{Matrix::identity(m.field(), m.dim)};
  while (out.back().rows()) {
    const Matrix& cur = out.back();
    Module sub = submodule(m, cur);
    Matrix r = radical(sub, idx);
    if (r.rows() == cur.rows()) throw std::logic_error("radical series does not descend");
    out.push_back(r.rows() ? gf::row_basis(r * gf::row_basis(cur)) : Matrix(m.field(), 0, m.dim));
  }
  return out;
}

std::vector<Matrix> socle_series(const Module& m, const SimpleIndex& idx) {
  std::vector<Matrix> out{Matrix(m.field(), 0, m.dim)};
  while (out.back().rows() < m.dim) {
    const Matrix& cur = out.back();
    Module q = cur.rows() ? quotient(m, cur) : m;
    Matrix s = socle(q, idx);
    if (!s.rows()) throw std::logic_error("socle series does not ascend");
    out.push_back(cur.rows() ? lift_from_quotient(m, cur, s) : s);
  }
  return out;
}

std::vector<Multiplicities> loewy_layers(const Module& m, const SimpleIndex& idx) {
  auto series = radical_series(m, idx);
  std::vector<Multiplicities> out;
  if (fast(idx)) {
    ModuleView v(m, idx);
    std::vector<Multiplicities> f;
    for (const auto& r : series) f.push_back(v.factors_of(r));
    for (std::size_t i = 0; i + 1 < f.size(); ++i) out.push_back(minus(f[i], f[i + 1]));
    return out;
  }
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    Module sub = submodule(m, series[i]);
    Matrix below = gf::row_basis(series[i]);
    Matrix coords = series[i + 1].rows() ? *gf::solve_left(below, series[i + 1]) : Matrix(m.field(), 0, sub.dim);
    out.push_back(semisimple_factors(coords.rows() ? quotient(sub, coords) : sub, idx));
  }
  return out;
}

std::vector<Multiplicities> socle_layers(const Module& m, const SimpleIndex& idx) {
  auto series = socle_series(m, idx);
  std::vector<Multiplicities> out;
  if (fast(idx)) {
    ModuleView v(m, idx);
    for (std::size_t i = series.size() - 1; i > 0; --i) out.push_back(minus(v.factors_of(series[i]), v.factors_of(series[i - 1])));
    return out;
  }
  for (std::size_t i = series.size() - 1; i > 0; --i) {
    Module sub = submodule(m, series[i]);
    Matrix below = gf::row_basis(series[i]);
    Matrix coords = series[i - 1].rows() ? *gf::solve_left(below, series[i - 1]) : Matrix(m.field(), 0, sub.dim);
    out.push_back(semisimple_factors(coords.rows() ? quotient(sub, coords) : sub, idx));
  }
  return out;
}

Multiplicities head(const Module& m, const SimpleIndex& idx) {
  if (m.dim == 0) return Multiplicities(idx.size(), 0);
  Matrix r = radical(m, idx);
  if (fast(idx)) {
    ModuleView v(m, idx);
    return minus(v.factors_of(Matrix::identity(m.field(), m.dim)), v.factors_of(r));
  }
  return semisimple_factors(r.rows() ? quotient(m, r) : m, idx);
}

Matrix socle_part(const Module& m, const SimpleIndex& idx, const std::vector<int>& which) {
  const Field& f = m.field();
  if (m.dim == 0 || which.empty()) return Matrix(f, 0, m.dim);
  if (fast(idx)) {
    Matrix soc = socle(m, idx);
    if (!soc.rows()) return soc;
    ModuleView v(m, idx);
    Matrix rows(f, 0, m.dim);
    for (int s : which) rows = gf::vstack(rows, soc * v.idempotent(s));
    return spin(m, rows);
  }
  Matrix out(f, 0, m.dim);
  for (int s : which)
    for (const auto& h : hom(idx.simple(s).module, m)) out = gf::subspace_sum(out, h);
  return out;
}

Multiplicities socle_factors(const Module& m, const SimpleIndex& idx) {
  if (m.dim == 0) return Multiplicities(idx.size(), 0);
  Matrix s = socle(m, idx);
  if (fast(idx)) return ModuleView(m, idx).factors_of(s);
  return semisimple_factors(submodule(m, s), idx);
}

std::string render_layers(const std::vector<Multiplicities>& layers, const SimpleIndex& idx) {
  if (layers.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i) out += '/';
    for (std::size_t s = 0; s < idx.size(); ++s)
      for (int c = 0; c < layers[i][s]; ++c) out += idx.simple(s).label;
  }
  return out;
}

std::string render(const Module& m, const SimpleIndex& idx) {
  if (m.dim == 0) return "0";
  std::string out;
  for (const auto& part : decompose(m, idx.seed())) {
    if (!out.empty()) out += ',';
    out += render_layers(loewy_layers(part.module, idx), idx);
  }
  return out;
}

std::vector<Multiplicities> parse_layers(const std::string& s, const SimpleIndex& idx) {
  std::vector<Multiplicities> out;
  if (s == "0") return out;
  out.emplace_back(idx.size(), 0);
  for (char c : s) {
    if (c == '/') {
      out.emplace_back(idx.size(), 0);
      continue;
    }
    if (c == ' ') continue;
    int i = idx.find(std::string(1, c));
    if (i < 0) throw std::invalid_argument(std::string("unknown simple label '") + c + "' in " + s);
    ++out.back()[i];
  }
  for (const auto& l : out)
    if (all_zero(l)) throw std::invalid_argument("empty layer in " + s);
  return out;
}

Module projective_sum(const Multiplicities& counts, const SimpleIndex& idx) {
  std::vector<Module> parts;
  for (std::size_t s = 0; s < idx.size(); ++s)
    for (int c = 0; c < counts[s]; ++c) parts.push_back(idx.projective(s));
  if (parts.empty()) return zero_module(idx.algebra());
  return direct_sum(parts);
}

Cover projective_cover(const Module& m, const SimpleIndex& idx) {
  const Field& f = m.field();
  Cover c{zero_module(idx.algebra()), Matrix(f, 0, m.dim), Multiplicities(idx.size(), 0)};
  if (m.dim == 0) return c;
  Matrix sum = radical(m, idx);
  std::vector<Module> parts;
  for (std::size_t s = 0; s < idx.size() && sum.rows() < m.dim; ++s) {
    const Matrix& x = idx.projective_generator(s);
    for (const auto& h : hom(idx.projective(s), m)) {
      Matrix img = x * h;
      if (gf::subspace_contains(sum, img)) continue;
      sum = gf::subspace_sum(sum, spin(m, img));
      c.map = gf::vstack(c.map, h);
      ++c.counts[s];
      parts.push_back(idx.projective(s));
      if (sum.rows() == m.dim) break;
    }
  }
  if (sum.rows() != m.dim) throw std::logic_error("projective cover: head not covered");
  c.module = direct_sum(parts);
  return c;
}

Cover injective_hull(const Module& m, const SimpleIndex& idx) {
  const Field& f = m.field();
  Cover c{zero_module(idx.algebra()), Matrix(f, m.dim, 0), Multiplicities(idx.size(), 0)};
  if (m.dim == 0) return c;
  Matrix k = socle(m, idx);
  std::vector<Module> parts;
  for (std::size_t s = 0; s < idx.size() && k.rows(); ++s)
    for (const auto& h : hom(m, idx.projective(s))) {
      Matrix keep = gf::left_nullspace(k * h);
      if (keep.rows() == k.rows()) continue;
      k = keep.rows() ? gf::row_basis(keep * k) : Matrix(f, 0, m.dim);
      c.map = gf::hstack(c.map, h);
      ++c.counts[s];
      parts.push_back(idx.projective(s));
      if (!k.rows()) break;
    }
  if (k.rows()) throw std::logic_error("injective hull: socle not embedded");
  c.module = direct_sum(parts);
  return c;
}

Module omega(const Module& m, const SimpleIndex& idx) {
  if (m.dim == 0) return m;
  Cover c = projective_cover(m, idx);
  Matrix ker = kernel(c.map);
  if (!ker.rows()) return zero_module(idx.algebra());
  return strip_projectives(submodule(c.module, ker), idx).core;
}

Module omega_inv(const Module& m, const SimpleIndex& idx) {
  if (m.dim == 0) return m;
  Cover c = injective_hull(m, idx);
  Matrix img = image(c.map);
  if (img.rows() == c.module.dim) return zero_module(idx.algebra());
  return strip_projectives(quotient(c.module, img), idx).core;
}

Stripped strip_projectives(const Module& m, const SimpleIndex& idx) {
  const Field& f = m.field();
  Stripped out{m, Multiplicities(idx.size(), 0), Matrix::identity(f, m.dim)};
  if (m.dim == 0) return out;
  Matrix socs(f, 0, m.dim), proj(f, 0, m.dim);
  for (std::size_t s = 0; s < idx.size(); ++s) {
    if (idx.projective(s).dim > m.dim - proj.rows()) continue;
    Matrix s0 = socle_vector(idx, s);
    for (const auto& h : hom(idx.projective(s), m)) {
      Matrix v = s0 * h;
      if (v.is_zero() || gf::subspace_contains(socs, v)) continue;
      socs = gf::subspace_sum(socs, spin(m, v));
      proj = gf::subspace_sum(proj, h);
      ++out.projective[s];
    }
  }
  if (!proj.rows()) return out;
  if (proj.rows() == m.dim) {
    out.core = zero_module(idx.algebra());
    out.core_map = Matrix(f, m.dim, 0);
    return out;
  }
  out.core = quotient(m, proj);
  out.core_map = quotient_map(m, proj);
  return out;
}

bool is_projective(const Module& m, const SimpleIndex& idx) {
  if (m.dim == 0) return true;
  auto h = head(m, idx);
  std::size_t d = 0;
  for (std::size_t s = 0; s < idx.size(); ++s) d += h[s] * idx.projective(s).dim;
  return d == m.dim;
}

namespace {

constexpr int kRandomEndomorphisms = 40;

Matrix nil_power(const Matrix& a) {
  Matrix p = a;
  for (std::size_t n = 1; n < a.rows(); n *= 2) p = p * p;
  return p;
}

// Fitting split of x by an endomorphism that is neither nilpotent nor invertible.
std::optional<std::pair<Matrix, Matrix>> fitting_split(const Module& x, std::mt19937_64& rng) {
  auto end = hom(x, x);
  if (end.size() <= 1) return std::nullopt;
  auto try_one = [&](const Matrix& a) -> std::optional<std::pair<Matrix, Matrix>> {
    Matrix p = nil_power(a);
    std::size_t r = gf::rank(p);
    if (r == 0 || r == x.dim) return std::nullopt;
    return std::make_pair(gf::row_basis(gf::left_nullspace(p)), gf::row_basis(p));
  };
  for (const auto& a : end)
    if (auto s = try_one(a)) return s;
  for (int t = 0; t < kRandomEndomorphisms; ++t)
    if (auto s = try_one(random_combination(end, rng))) return s;
  return std::nullopt;
}

}  // namespace

std::vector<Summand> decompose(const Module& m, std::uint64_t seed) {
  const Field& f = m.field();
  std::vector<Summand> done;
  if (m.dim == 0) return done;
  std::mt19937_64 rng(seed ^ 0x5eedULL);
  std::vector<Summand> work{{m, Matrix::identity(f, m.dim), Matrix::identity(f, m.dim)}};
  while (!work.empty()) {
    Summand cur = std::move(work.back());
    work.pop_back();
    auto split = fitting_split(cur.module, rng);
    if (!split) {
      done.push_back(std::move(cur));
      continue;
    }
    const auto& [ker, im] = *split;
    Matrix t = gf::vstack(ker, im);
    Matrix tinv = *gf::inverse(t);
    Summand a{submodule(cur.module, ker), ker * cur.embedding, cur.projection * tinv.col_block(0, ker.rows())};
    Summand b{submodule(cur.module, im), im * cur.embedding, cur.projection * tinv.col_block(ker.rows(), im.rows())};
    work.push_back(std::move(b));
    work.push_back(std::move(a));
  }
  std::stable_sort(done.begin(), done.end(), [](const Summand& a, const Summand& b) { return a.module.dim < b.module.dim; });
  return done;
}

std::optional<Matrix> isomorphism(const Module& m, const Module& n, std::uint64_t seed) {
  if (m.dim != n.dim) return std::nullopt;
  if (m.dim == 0) return Matrix(m.field(), 0, 0);
  auto mn = hom(m, n);
  if (mn.empty()) return std::nullopt;
  auto nm = hom(n, m);
  if (nm.size() != mn.size()) return std::nullopt;
  std::mt19937_64 rng(seed ^ 0x150ULL);
  for (const auto& h : mn)
    if (gf::rank(h) == m.dim) return h;
  for (int t = 0; t < 20; ++t) {
    Matrix h = random_combination(mn, rng);
    if (gf::rank(h) == m.dim) return h;
  }
  auto dm = decompose(m, seed);
  if (dm.size() == 1) {
    // End(m) is local: some composite m -> n -> m is invertible iff m and n are isomorphic.
    for (const auto& a : mn)
      for (const auto& b : nm)
        if (gf::rank(a * b) == m.dim) return a;
    return std::nullopt;
  }
  auto dn = decompose(n, seed);
  if (dn.size() != dm.size()) return std::nullopt;
  std::vector<bool> used(dn.size(), false);
  Matrix iso(m.field(), m.dim, n.dim);
  for (const auto& a : dm) {
    bool matched = false;
    for (std::size_t j = 0; j < dn.size() && !matched; ++j) {
      if (used[j] || dn[j].module.dim != a.module.dim) continue;
      if (auto t = isomorphism(a.module, dn[j].module, seed)) {
        iso = iso + a.projection * *t * dn[j].embedding;
        used[j] = matched = true;
      }
    }
    if (!matched) return std::nullopt;
  }
  return iso;
}

bool is_isomorphic(const Module& m, const Module& n, std::uint64_t seed) { return isomorphism(m, n, seed).has_value(); }

}  // namespace perverx::rep
