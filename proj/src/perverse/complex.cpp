#include <stdexcept>

#include "perverx/perverse.hpp"

namespace perverx::perverse {

using rep::Field;

BoundedComplex concentrated(const Module& m, int degree) {
  BoundedComplex c;
  c.lo = degree;
  c.terms = {m};
  c.projective = {std::nullopt};
  return c;
}

bool is_complex(const BoundedComplex& c) {
  if (c.diffs.size() + 1 != c.terms.size() || c.projective.size() != c.terms.size()) return false;
  for (std::size_t i = 0; i < c.diffs.size(); ++i) {
    if (!rep::is_hom(c.terms[i], c.terms[i + 1], c.diffs[i])) return false;
    if (i + 1 < c.diffs.size() && !(c.diffs[i] * c.diffs[i + 1]).is_zero()) return false;
  }
  return true;
}

std::vector<Module> cohomology(const BoundedComplex& c) {
  std::vector<Module> out;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    const Module& t = c.terms[i];
    const Field& f = t.field();
    if (t.dim == 0) {
      out.push_back(t);
      continue;
    }
    Matrix ker = i < c.diffs.size() ? rep::kernel(c.diffs[i]) : Matrix::identity(f, t.dim);
    Matrix im = i > 0 ? rep::image(c.diffs[i - 1]) : Matrix(f, 0, t.dim);
    if (ker.rows() == im.rows()) {
      out.push_back(rep::zero_module(t.algebra));
      continue;
    }
    ker = gf::row_basis(ker);
    Module k = rep::submodule(t, ker);
    if (!im.rows()) {
      out.push_back(k);
      continue;
    }
    auto coords = gf::solve_left(ker, im);
    if (!coords) throw std::logic_error("cohomology: image not inside kernel");
    out.push_back(rep::quotient(k, *coords));
  }
  return out;
}

BoundedComplex trim(const BoundedComplex& c) {
  BoundedComplex out = c;
  while (out.terms.size() > 1 && out.lo < 0 && out.terms.front().dim == 0) {
    out.terms.erase(out.terms.begin());
    out.projective.erase(out.projective.begin());
    out.diffs.erase(out.diffs.begin());
    ++out.lo;
  }
  while (out.terms.size() > 1 && out.hi() > 0 && out.terms.back().dim == 0) {
    out.terms.pop_back();
    out.projective.pop_back();
    out.diffs.pop_back();
  }
  return out;
}

Matrix e_closure_in(const Module& ambient, const Matrix& sub, const std::vector<int>& e, const SimpleIndex& idx) {
  Matrix n = gf::row_basis(sub);
  if (e.empty()) return n;
  while (n.rows() < ambient.dim) {
    Module q = n.rows() ? rep::quotient(ambient, n) : ambient;
    Matrix s = rep::socle_part(q, idx, e);
    if (!s.rows()) break;
    n = n.rows() ? rep::lift_from_quotient(ambient, n, s) : gf::row_basis(s);
  }
  return n;
}

Closure e_closure(const Module& m, const std::vector<int>& e, const SimpleIndex& idx) {
  if (m.dim == 0) return {m, Matrix(m.field(), 0, 0)};
  rep::Cover hull = rep::injective_hull(m, idx);
  Matrix img = rep::image(hull.map);
  Matrix n = e_closure_in(hull.module, img, e, idx);
  // coordinates of m inside the submodule spanned by n
  Matrix coords = *gf::solve_left(n, hull.map);
  return {rep::submodule(hull.module, n), coords};
}

namespace {

std::vector<int> below(const Perversity& pi, int bound) {
  std::vector<int> e;
  for (std::size_t t = 0; t < pi.size(); ++t)
    if (pi[t] <= bound) e.push_back(static_cast<int>(t));
  return e;
}

}  // namespace

BoundedComplex perverse_complex(const Perversity& pi, std::size_t s, const SimpleIndex& idx) {
  if (pi.size() != idx.size()) throw std::invalid_argument("perversity function has the wrong length");
  const Module& simple = idx.simple(s).module;
  const int n = pi[s];
  if (n == 0) return concentrated(simple);
  BoundedComplex c;
  c.lo = -n;
  rep::Cover hull = rep::injective_hull(simple, idx);
  Module cur = hull.module;
  Matrix t = rep::image(hull.map);
  c.terms.push_back(cur);
  c.projective.push_back(hull.counts);
  for (int i = 0; i < n; ++i) {
    auto e = below(pi, n - i - 1);
    Matrix te = e_closure_in(cur, t, e, idx);
    // I_{T^E} = I_T: the closure does not enlarge the socle
    if (t.rows() && rep::socle(rep::submodule(cur, te), idx).rows() != rep::socle(rep::submodule(cur, t), idx).rows())
      throw std::logic_error("perverse_complex: closure changed the socle");
    Module q = te.rows() ? rep::quotient(cur, te) : cur;
    Matrix qmap = te.rows() ? rep::quotient_map(cur, te) : Matrix::identity(cur.field(), cur.dim);
    if (i == n - 1) {
      c.terms.push_back(q);
      c.projective.push_back(std::nullopt);
      c.diffs.push_back(qmap);
      break;
    }
    rep::Cover next = rep::injective_hull(q, idx);
    Matrix d = qmap * next.map;
    c.terms.push_back(next.module);
    c.projective.push_back(next.counts);
    c.diffs.push_back(d);
    t = rep::image(d);
    cur = next.module;
  }
  return c;
}

BoundedComplex elementary_tilting(const std::vector<int>& ones, const SimpleIndex& idx) {
  if (ones.empty() || ones.size() >= idx.size()) throw std::invalid_argument("elementary_tilting: ones must be a proper nonempty subset");
  std::vector<bool> is_one(idx.size(), false);
  for (int o : ones) is_one.at(o) = true;
  std::vector<int> zeros;
  for (std::size_t s = 0; s < idx.size(); ++s)
    if (!is_one[s]) zeros.push_back(static_cast<int>(s));
  Module a = rep::regular_module(idx.algebra());
  const Field& f = a.field();
  // U: iterate the zeros-radical downward from A
  Matrix u = Matrix::identity(f, a.dim);
  while (u.rows()) {
    Module x = rep::submodule(a, u);
    Matrix w = rep::radical(x, idx);
    if (idx.has_p_core()) {
      rep::ModuleView v(x, idx);
      Matrix rows = w;
      for (int o : ones) rows = gf::vstack(rows, v.idempotent(o));
      w = rep::spin(x, rows);
    } else {
      Matrix k = Matrix::identity(f, x.dim);
      for (int z : zeros)
        for (const auto& h : rep::hom(x, idx.simple(z).module)) {
          k = gf::row_basis(gf::left_nullspace(k * h) * k);
          if (!k.rows()) break;
        }
      w = k;
    }
    if (w.rows() == u.rows()) break;
    u = w.rows() ? gf::row_basis(w * u) : Matrix(f, 0, a.dim);
  }
  Multiplicities v_counts(idx.size(), 0);
  auto hd = rep::head(a, idx);
  for (int o : ones) v_counts[o] = hd[o];
  Module pv = rep::projective_sum(v_counts, idx);
  BoundedComplex c;
  c.lo = -1;
  Multiplicities counts = v_counts;
  Matrix d(f, pv.dim, a.dim);
  Module minus1 = pv;
  if (u.rows()) {
    Module um = rep::submodule(a, u);
    rep::Cover cov = rep::projective_cover(um, idx);
    for (std::size_t s = 0; s < idx.size(); ++s) counts[s] += cov.counts[s];
    minus1 = pv.dim ? rep::direct_sum(pv, cov.module) : cov.module;
    d = gf::vstack(d, cov.map * gf::row_basis(u));
  }
  c.terms = {minus1, a};
  c.projective = {counts, Multiplicities(idx.size(), 0)};
  auto reg_counts = rep::head(a, idx);
  c.projective[1] = reg_counts;
  c.diffs = {d};
  return c;
}

Module degree_zero_core(const BoundedComplex& c, const SimpleIndex& idx) {
  if (c.hi() < 0 || c.lo > 0) return rep::zero_module(idx.algebra());
  return rep::strip_projectives(c.at(0), idx).core;
}

}  // namespace perverx::perverse
