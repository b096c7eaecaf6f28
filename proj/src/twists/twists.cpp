#include "perverx/twists.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace perverx::twists {

using rep::Elem;
using rep::Field;
using rep::Matrix;

namespace {

int position(const group::Subgroup& s, int g) {
  auto it = std::lower_bound(s.elements.begin(), s.elements.end(), g);
  if (it == s.elements.end() || *it != g) throw std::logic_error("element outside the subgroup");
  return static_cast<int>(it - s.elements.begin());
}

// s as a subgroup of the group realised by `outer`.
group::Subgroup inside(const group::Subgroup& s, const group::Subgroup& outer, const group::GroupPtr& realised) {
  group::Subgroup r{realised, {}};
  for (int g : s.elements) r.elements.push_back(position(outer, g));
  std::sort(r.elements.begin(), r.elements.end());
  return r;
}

}  // namespace

TwistSpec twist_spec(const rep::AlgebraPtr& kh, const std::vector<group::Subgroup>& subgroup_classes,
                     const std::vector<int>& eta) {
  if (eta.size() != subgroup_classes.size()) throw std::invalid_argument("twist_spec: one eta value per subgroup class");
  TwistSpec spec{kh, {}};
  const auto& g = kh->group();
  for (std::size_t c = 0; c < subgroup_classes.size(); ++c) {
    const auto& q = subgroup_classes[c];
    const int ell = q.order();
    auto p = group::normal_p_core(g, ell);
    if (group::centralizer(g, q).order() != 2 * group::centralizer(g, p).order()) {
      if (eta[c] != 0) throw std::invalid_argument("twist_spec: eta is only defined when |C_H(Q)/C_H(P)| = 2");
      continue;
    }
    TwistClass t;
    t.catalog_class = static_cast<int>(c);
    t.q = q;
    t.eta = eta[c];
    t.normalizer = group::normalizer(g, q);
    auto en = group::embed(t.normalizer, g->name() + "_NQ");
    auto comp = group::complement_find(en.sub, inside(p, t.normalizer, en.sub));
    t.e_prime = {g, {}};
    for (int x : comp.elements) t.e_prime.elements.push_back(t.normalizer.elements[x]);
    std::sort(t.e_prime.elements.begin(), t.e_prime.elements.end());
    t.e_q = group::intersect(t.e_prime, group::centralizer(g, q));
    t.qe = group::product(q, t.e_prime);
    // V_Q: trivial on the kernel of the action on P/Q, non-trivial on E_Q
    auto ee = group::embed(t.e_prime, g->name() + "_EQ");
    auto ke = functors::subgroup_algebra(ee, kh);
    auto eidx = rep::SimpleIndex::build(ke);
    auto acts_trivially_mod_q = [&](int e) {
      for (int x : p.elements)
        if (!q.contains(g->mul(g->conj(x, e), g->inv(x)))) return false;
      return true;
    };
    std::vector<int> chosen;
    for (std::size_t s = 0; s < eidx->size(); ++s) {
      const Module& v = eidx->simple(s).module;
      bool ok = true, moves = false;
      for (std::size_t i = 0; i < t.e_prime.elements.size(); ++i) {
        int e = t.e_prime.elements[i];
        bool trivial = rep::element_matrix(v, static_cast<int>(i)) == Matrix::identity(v.field(), v.dim);
        if (acts_trivially_mod_q(e) && !trivial) ok = false;
        if (t.e_q.contains(e) && !trivial) moves = true;
      }
      if (ok && moves) chosen.push_back(static_cast<int>(s));
    }
    if (chosen.size() != 1) throw std::runtime_error("twist_spec: V_Q is not unique");
    const Module& v = eidx->simple(chosen[0]).module;
    if (v.dim != 1) throw std::runtime_error("twist_spec: only one-dimensional V_Q is supported");
    for (std::size_t i = 0; i < t.e_prime.elements.size(); ++i)
      t.chi.push_back(rep::element_matrix(v, static_cast<int>(i))(0, 0));
    spec.classes.push_back(std::move(t));
  }
  return spec;
}

TwistedImage twisted_image(const Module& lprime, const TwistSpec& spec, const SimpleIndex& idx, std::uint64_t seed) {
  const auto& kh = spec.algebra;
  const auto& g = kh->group();
  const Field& f = lprime.field();
  TwistedImage out;
  std::vector<functors::Block> blocks;
  const functors::Block* block = nullptr;
  int depth = 0;
  for (const auto& t : spec.classes) {
    if (t.eta == 0) continue;
    if (!block) {
      blocks = functors::blocks(kh, idx, seed);
      auto cf = rep::composition_factors(lprime, idx);
      for (const auto& b : blocks)
        for (int s : b.simples)
          if (cf[s]) block = &b;
      if (!block) throw std::invalid_argument("twisted_image: zero module");
    }
    auto eqe = group::embed(t.qe, g->name() + "_QE");
    auto kqe = functors::subgroup_algebra(eqe, kh);
    Module res = functors::restrict(lprime, eqe, kqe);
    // L'_Q: the chi-eigenspace of E_Q
    Matrix w = Matrix::identity(f, res.dim);
    for (int e : t.e_q.elements) {
      if (!w.rows()) break;
      Elem c = t.chi[position(t.e_prime, e)];
      Matrix a = rep::element_matrix(res, position(t.qe, e)) - gf::scale(Matrix::identity(f, res.dim), c);
      Matrix k = rep::kernel(w * a);
      w = k.rows() ? gf::row_basis(k * w) : Matrix(f, 0, res.dim);
    }
    if (!w.rows()) continue;
    if (!rep::is_invariant(res, w)) throw std::logic_error("twisted_image: eigenspace is not a submodule");
    auto qidx = rep::SimpleIndex::build(kqe, seed);
    Module ldd = rep::strip_projectives(rep::submodule(res, w), *qidx).core;
    if (ldd.dim == 0) continue;
    // induce in two stages so that Ind(s_Q) is block diagonal
    auto en = group::embed(t.normalizer, g->name() + "_NQ");
    auto kn = functors::subgroup_algebra(en, kh);
    group::Embedding qe_in_n{eqe.sub, en.sub, {}};
    for (int x : t.qe.elements) qe_in_n.map.push_back(position(t.normalizer, x));
    Module w1 = functors::induce(ldd, qe_in_n, kn);
    Module full = functors::induce(w1, en, kh);
    Matrix img = rep::image(rep::combination_matrix(full, block->idempotent));
    if (!img.rows()) continue;
    Module lq = rep::submodule(full, img);
    auto on_block = [&](const Matrix& m) { return gf::coordinates(img, img * m); };
    TwistPart part;
    part.catalog_class = t.catalog_class;
    part.l_double = ldd;
    part.l_q = lq;
    auto hs = rep::hom(lq, lprime);
    if (hs.size() != 1) throw std::runtime_error("twisted_image: dim Hom(L_Q, L') is not 1");
    part.h = hs[0];
    if (t.eta > 1) {
      // s_Q: nonzero, square zero, killed by h_Q after induction
      auto ends = rep::hom(w1, w1);
      Matrix cons(f, ends.size(), lq.dim * lprime.dim);
      std::vector<Matrix> induced;
      for (std::size_t i = 0; i < ends.size(); ++i) {
        induced.push_back(on_block(functors::induce_map(ends[i], en)));
        Matrix v = induced.back() * part.h;
        for (std::size_t r = 0; r < v.rows(); ++r)
          for (std::size_t c = 0; c < v.cols(); ++c) cons(i, r * v.cols() + c) = v(r, c);
      }
      Matrix lin = gf::row_basis(rep::kernel(cons));
      Matrix s;
      for (std::size_t r = 0; r < lin.rows() && s.rows() == 0; ++r) {
        Matrix cand(f, w1.dim, w1.dim);
        for (std::size_t i = 0; i < ends.size(); ++i)
          if (Elem c = lin(r, i)) cand = cand + gf::scale(ends[i], c);
        if (!cand.is_zero() && (cand * cand).is_zero()) s = cand;
      }
      if (!s.rows()) throw std::runtime_error("twisted_image: no admissible s_Q");
      part.s = on_block(functors::induce_map(s, en));
    }
    depth = std::max(depth, t.eta);
    out.parts.push_back(std::move(part));
  }
  BoundedComplex& c = out.complex;
  auto eta_of = [&](const TwistPart& p) {
    for (const auto& t : spec.classes)
      if (t.catalog_class == p.catalog_class) return t.eta;
    return 0;
  };
  c.lo = -depth;
  for (int k = depth; k >= 1; --k) {
    std::vector<Module> mods;
    for (const auto& p : out.parts)
      if (eta_of(p) >= k) mods.push_back(p.l_q);
    c.terms.push_back(rep::direct_sum(mods));
    c.projective.push_back(std::nullopt);
  }
  c.terms.push_back(lprime);
  c.projective.push_back(std::nullopt);
  for (int k = depth; k >= 1; --k) {
    // from degree -k to degree -k+1
    std::size_t rows = c.terms[depth - k].dim, cols = c.terms[depth - k + 1].dim;
    Matrix d(f, rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& p : out.parts) {
      if (eta_of(p) < k) continue;
      if (k == 1) {
        d.set_block(r0, 0, p.h);
      } else {
        d.set_block(r0, c0, p.s);
        c0 += p.l_q.dim;
      }
      r0 += p.l_q.dim;
    }
    c.diffs.push_back(d);
  }
  if (!perverse::is_complex(c)) throw std::logic_error("twisted_image: differentials do not square to zero");
  return out;
}

Module stable_module(const BoundedComplex& c, const SimpleIndex& idx) {
  // pushout along injective hulls, one degree at a time
  Module m = c.terms.front();
  Matrix d = c.diffs.empty() ? Matrix() : c.diffs.front();
  for (std::size_t k = 0; k + 1 < c.terms.size(); ++k) {
    const Module& next = c.terms[k + 1];
    const Field& f = next.field();
    if (m.dim == 0) {
      m = next;
      if (k + 1 < c.diffs.size()) d = c.diffs[k + 1];
      continue;
    }
    rep::Cover hull = rep::injective_hull(m, idx);
    Module x = rep::direct_sum(hull.module, next);
    Matrix u = gf::hstack(hull.map, gf::scale(d, f.neg(1)));
    Matrix qm = rep::quotient_map(x, u);
    Module p = rep::quotient(x, u);
    if (k + 1 < c.diffs.size()) {
      Matrix fmap = gf::vstack(Matrix(f, hull.module.dim, c.diffs[k + 1].cols()), c.diffs[k + 1]);
      auto section = gf::solve_left(qm, Matrix::identity(f, p.dim));
      if (!section) throw std::logic_error("stable_module: quotient map is not surjective");
      d = *section * fmap;
    }
    m = p;
  }
  return m;
}

bool StableMatch::all_pairs() const {
  return std::all_of(pairs.begin(), pairs.end(), [](bool b) { return b; });
}

StableMatch stable_match(const std::vector<BoundedComplex>& xs, const std::vector<BoundedComplex>& ys,
                         const SimpleIndex& idx, std::uint64_t seed) {
  if (xs.size() != ys.size()) throw std::invalid_argument("stable_match: lists differ in length");
  const std::size_t n = xs.size();
  std::vector<Module> a, b;
  for (const auto& x : xs) a.push_back(rep::strip_projectives(stable_module(x, idx), idx).core);
  for (const auto& y : ys) b.push_back(rep::strip_projectives(stable_module(y, idx), idx).core);
  std::vector<std::vector<bool>> iso(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      iso[i][j] = a[i].dim == b[j].dim && rep::composition_factors(a[i], idx) == rep::composition_factors(b[j], idx) &&
                  rep::is_isomorphic(a[i], b[j], seed);
  StableMatch r;
  for (std::size_t i = 0; i < n; ++i) r.pairs.push_back(iso[i][i]);
  // bipartite matching by augmenting paths
  std::vector<int> owner(n, -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t i, std::vector<bool>& seen) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!iso[i][j] || seen[j]) continue;
      seen[j] = true;
      if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]), seen)) {
        owner[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  std::size_t matched = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    if (augment(i, seen)) ++matched;
  }
  r.bijection.assign(n, -1);
  for (std::size_t j = 0; j < n; ++j)
    if (owner[j] >= 0) r.bijection[owner[j]] = static_cast<int>(j);
  r.multiset = matched == n;
  return r;
}

}  // namespace perverx::twists
