#include <algorithm>
#include <stdexcept>

#include "perverx/perverse.hpp"

namespace perverx::perverse {

using rep::Field;

namespace {

Matrix flatten(const Matrix& m) {
  Matrix out(m.field(), 1, m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) std::copy(m.row(r), m.row(r) + m.cols(), out.row(0) + r * m.cols());
  return out;
}

Matrix stack_flat(const std::vector<Matrix>& ms, const Field& f, std::size_t width) {
  Matrix out(f, ms.size(), width);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    Matrix fl = flatten(ms[i]);
    std::copy(fl.row(0), fl.row(0) + width, out.row(i));
  }
  return out;
}

}  // namespace

HomotopyEnd homotopy_end(const BoundedComplex& x) {
  const std::size_t n = x.terms.size();
  const Field& f = x.terms.front().field();
  std::vector<std::vector<Matrix>> hb(n);  // bases of End(X^k)
  std::vector<std::size_t> off(n + 1, 0);
  std::vector<Matrix> flat(n);  // flattened bases, for coordinates
  for (std::size_t k = 0; k < n; ++k) {
    hb[k] = rep::hom(x.terms[k], x.terms[k]);
    off[k + 1] = off[k] + hb[k].size();
    flat[k] = stack_flat(hb[k], f, x.terms[k].dim * x.terms[k].dim);
  }
  const std::size_t nu = off[n];
  HomotopyEnd out;
  if (nu == 0) return out;
  // chain condition F^k d^k = d^k F^{k+1}, one block of columns per k
  std::size_t width = 0;
  std::vector<std::size_t> coff(n, 0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    coff[k] = width;
    width += x.terms[k].dim * x.terms[k + 1].dim;
  }
  Matrix cons(f, nu, width);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Matrix& d = x.diffs[k];
    for (std::size_t i = 0; i < hb[k].size(); ++i) {
      Matrix v = flatten(hb[k][i] * d);
      std::copy(v.row(0), v.row(0) + v.cols(), cons.row(off[k] + i) + coff[k]);
    }
    for (std::size_t j = 0; j < hb[k + 1].size(); ++j) {
      Matrix v = flatten(gf::scale(d * hb[k + 1][j], f.neg(1)));
      std::copy(v.row(0), v.row(0) + v.cols(), cons.row(off[k + 1] + j) + coff[k]);
    }
  }
  Matrix chain = width ? gf::left_nullspace(cons) : Matrix::identity(f, nu);
  chain = gf::row_basis(chain);
  out.chain_dim = chain.rows();
  auto coords_in = [&](std::size_t k, const Matrix& m) {
    auto c = gf::solve_left(flat[k], flatten(m));
    if (!c) throw std::logic_error("homotopy_end: map outside the endomorphism basis");
    return *c;
  };
  // null-homotopic maps h d + d h
  Matrix null(f, 0, nu);
  for (std::size_t k = 1; k < n; ++k) {
    const Matrix& d = x.diffs[k - 1];
    for (const auto& h : rep::hom(x.terms[k], x.terms[k - 1])) {
      Matrix v(f, 1, nu);
      Matrix a = coords_in(k, h * d), b = coords_in(k - 1, d * h);
      std::copy(a.row(0), a.row(0) + a.cols(), v.row(0) + off[k]);
      std::copy(b.row(0), b.row(0) + b.cols(), v.row(0) + off[k - 1]);
      null = gf::vstack(null, v);
    }
  }
  null = gf::row_basis(null);
  out.null_dim = null.rows();
  if (!gf::subspace_contains(chain, null) && null.rows()) throw std::logic_error("homotopy_end: null-homotopic map is not a chain map");
  const std::size_t dim = out.dim();
  if (dim == 0) return out;
  // complement of the null-homotopic maps inside the chain maps
  std::vector<std::size_t> pick;
  Matrix span = null;
  for (std::size_t r = 0; r < chain.rows() && pick.size() < dim; ++r) {
    Matrix v = chain.row_block(r, 1);
    if (span.rows() && gf::subspace_contains(span, v)) continue;
    span = gf::subspace_sum(span, v);
    pick.push_back(r);
  }
  Matrix basis = chain.select_rows(pick);
  Matrix full = gf::vstack(basis, null);
  auto maps_of = [&](const Matrix& v) {
    std::vector<Matrix> fk(n);
    for (std::size_t k = 0; k < n; ++k) {
      fk[k] = Matrix(f, x.terms[k].dim, x.terms[k].dim);
      for (std::size_t i = 0; i < hb[k].size(); ++i)
        if (auto c = v(0, off[k] + i)) fk[k] = fk[k] + gf::scale(hb[k][i], c);
    }
    return fk;
  };
  auto class_of = [&](const std::vector<Matrix>& fk) {
    Matrix v(f, 1, nu);
    for (std::size_t k = 0; k < n; ++k) {
      if (!hb[k].size()) continue;
      Matrix c = coords_in(k, fk[k]);
      std::copy(c.row(0), c.row(0) + c.cols(), v.row(0) + off[k]);
    }
    auto c = gf::solve_left(full, v);
    if (!c) throw std::logic_error("homotopy_end: product is not a chain map");
    return c->col_block(0, dim);
  };
  std::vector<std::vector<Matrix>> maps(dim);
  for (std::size_t i = 0; i < dim; ++i) maps[i] = maps_of(basis.row_block(i, 1));
  std::vector<Matrix> right_mult(dim, Matrix(f, dim, dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      std::vector<Matrix> prod(n);
      for (std::size_t k = 0; k < n; ++k) prod[k] = maps[i][k] * maps[j][k];
      Matrix c = class_of(prod);
      std::copy(c.row(0), c.row(0) + dim, right_mult[j].row(i));
    }
  std::vector<Matrix> id(n);
  for (std::size_t k = 0; k < n; ++k) id[k] = Matrix::identity(f, x.terms[k].dim);
  out.algebra = rep::Algebra::structure(f, right_mult, class_of(id), "End_Ho");
  return out;
}

namespace {

// Rewrites every term as a block-diagonal sum of indecomposables and transports the differentials.
BoundedComplex block_form(const BoundedComplex& c, std::vector<std::vector<std::size_t>>& sizes, std::uint64_t seed) {
  BoundedComplex out = c;
  std::vector<Matrix> to(c.terms.size()), from(c.terms.size());
  sizes.assign(c.terms.size(), {});
  for (std::size_t k = 0; k < c.terms.size(); ++k) {
    const Module& t = c.terms[k];
    if (t.dim == 0) {
      to[k] = from[k] = Matrix(t.field(), 0, 0);
      continue;
    }
    auto parts = rep::decompose(t, seed);
    std::vector<Module> mods;
    Matrix emb(t.field(), 0, t.dim), proj(t.field(), t.dim, 0);
    for (const auto& p : parts) {
      mods.push_back(p.module);
      sizes[k].push_back(p.module.dim);
      emb = gf::vstack(emb, p.embedding);
      proj = gf::hstack(proj, p.projection);
    }
    out.terms[k] = rep::direct_sum(mods);
    to[k] = emb;     // new basis -> old coordinates
    from[k] = proj;  // old -> new
  }
  for (std::size_t k = 0; k < c.diffs.size(); ++k) out.diffs[k] = to[k] * c.diffs[k] * from[k + 1];
  return out;
}

std::vector<std::size_t> range(std::size_t a, std::size_t n) {
  std::vector<std::size_t> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = a + i;
  return r;
}

}  // namespace

BoundedComplex minimize(const BoundedComplex& c, std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> sizes;
  BoundedComplex b = block_form(c, sizes, seed);
  struct Hit {
    std::size_t k, ia, ib, ra, cb, n;
    Matrix inv;
  };
  auto find = [&]() -> std::optional<Hit> {
    for (std::size_t k = 0; k < b.diffs.size(); ++k) {
      std::size_t ra = 0;
      for (std::size_t ia = 0; ia < sizes[k].size(); ++ia) {
        std::size_t cb = 0;
        for (std::size_t ib = 0; ib < sizes[k + 1].size(); ++ib) {
          std::size_t n = sizes[k][ia];
          if (n == sizes[k + 1][ib])
            if (auto inv = gf::inverse(b.diffs[k].row_block(ra, n).col_block(cb, n))) return Hit{k, ia, ib, ra, cb, n, *inv};
          cb += sizes[k + 1][ib];
        }
        ra += sizes[k][ia];
      }
    }
    return std::nullopt;
  };
  while (auto hit = find()) {
    // cancel block a of term k against block b of term k+1
    const std::size_t k = hit->k, n = hit->n;
    const Matrix& d = b.diffs[k];
    std::vector<std::size_t> keep_rows, keep_cols;
    for (std::size_t r = 0; r < d.rows(); ++r)
      if (r < hit->ra || r >= hit->ra + n) keep_rows.push_back(r);
    for (std::size_t col = 0; col < d.cols(); ++col)
      if (col < hit->cb || col >= hit->cb + n) keep_cols.push_back(col);
    Matrix dxy = d.select_rows(keep_rows).select_cols(keep_cols);
    Matrix dxb = d.select_rows(keep_rows).select_cols(range(hit->cb, n));
    Matrix day = d.select_rows(range(hit->ra, n)).select_cols(keep_cols);
    b.diffs[k] = dxy - dxb * hit->inv * day;
    if (k > 0) b.diffs[k - 1] = b.diffs[k - 1].select_cols(keep_rows);
    if (k + 1 < b.diffs.size()) b.diffs[k + 1] = b.diffs[k + 1].select_rows(keep_cols);
    const Field& f = b.terms[k].field();
    b.terms[k] = rep::submodule(b.terms[k], Matrix::identity(f, b.terms[k].dim).select_rows(keep_rows));
    b.terms[k + 1] = rep::submodule(b.terms[k + 1], Matrix::identity(f, b.terms[k + 1].dim).select_rows(keep_cols));
    sizes[k].erase(sizes[k].begin() + hit->ia);
    sizes[k + 1].erase(sizes[k + 1].begin() + hit->ib);
    b.projective[k] = b.projective[k + 1] = std::nullopt;
  }
  return b;
}

}  // namespace perverx::perverse
