#include <map>
#include <sstream>
#include <stdexcept>

#include "perverx/rep.hpp"
#include "rep_internal.hpp"

namespace perverx::rep {

AlgebraPtr Algebra::group_algebra(group::GroupPtr g, int q) {
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->field_ = &Field::get(q);
  a->group_ = std::move(g);
  a->dim_ = static_cast<std::size_t>(a->group_->order());
  a->id_ = a->group_->name() + "/GF" + std::to_string(q);
  return a;
}

AlgebraPtr Algebra::structure(const Field& f, std::vector<Matrix> right_mult, Matrix unit, std::string id) {
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->field_ = &f;
  a->dim_ = right_mult.size();
  a->right_mult_ = std::move(right_mult);
  a->unit_ = std::move(unit);
  a->id_ = std::move(id);
  for (const auto& r : a->right_mult_)
    if (r.rows() != a->dim_ || r.cols() != a->dim_) throw std::invalid_argument("structure constants: bad shape");
  // e_i (e_j e_k) = (e_i e_j) e_k: R_j R_k = sum_l (e_j e_k)_l R_l
  std::size_t step = a->dim_ <= 60 ? 1 : 7;
  for (std::size_t j = 0; j < a->dim_; j += step)
    for (std::size_t k = 0; k < a->dim_; k += step) {
      Matrix lhs = a->right_mult_[j] * a->right_mult_[k];
      Matrix rhs(f, a->dim_, a->dim_);
      for (std::size_t l = 0; l < a->dim_; ++l) {
        Elem c = a->right_mult_[k](j, l);
        if (c) rhs = rhs + gf::scale(a->right_mult_[l], c);
      }
      if (lhs != rhs) throw std::invalid_argument("structure constants are not associative");
    }
  Matrix one(f, a->dim_, a->dim_);
  for (std::size_t l = 0; l < a->dim_; ++l)
    if (a->unit_(0, l)) one = one + gf::scale(a->right_mult_[l], a->unit_(0, l));
  if (!one.is_identity()) throw std::invalid_argument("structure constants: unit does not act as identity");
  return a;
}

std::size_t Algebra::num_generators() const {
  return is_group() ? group_->generators().size() : dim_;
}

Module zero_module(const AlgebraPtr& a) {
  Module m{a, 0, {}};
  for (std::size_t k = 0; k < a->num_generators(); ++k) m.gens.emplace_back(a->field(), 0, 0);
  return m;
}

Module regular_module(const AlgebraPtr& a) {
  Module m{a, a->dimension(), {}};
  if (a->is_group()) {
    const auto& g = a->group();
    for (int s : g->generators()) {
      Matrix p(a->field(), m.dim, m.dim);
      for (int x = 0; x < g->order(); ++x) p(x, g->mul(x, s)) = 1;
      m.gens.push_back(p);
    }
  } else {
    m.gens = a->right_mult();
  }
  return m;
}

Module trivial_module(const AlgebraPtr& a) {
  if (!a->is_group()) throw std::invalid_argument("trivial module needs a group algebra");
  Module m{a, 1, {}};
  for (std::size_t k = 0; k < a->num_generators(); ++k) m.gens.push_back(Matrix::identity(a->field(), 1));
  return m;
}

Matrix element_matrix(const Module& m, int g) {
  const auto& grp = m.algebra->group();
  std::vector<int> word;
  for (int x = g; x != 0; x = grp->word_parent(x)) word.push_back(grp->word_generator(x));
  Matrix r = Matrix::identity(m.field(), m.dim);
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = r * m.gens[*it];
  return r;
}

std::vector<Matrix> element_matrices(const Module& m, const std::vector<int>& elems) {
  const auto& grp = m.algebra->group();
  std::map<int, Matrix> memo;
  memo.emplace(0, Matrix::identity(m.field(), m.dim));
  std::vector<Matrix> out;
  for (int g : elems) {
    std::vector<int> chain;
    int x = g;
    while (!memo.count(x)) {
      chain.push_back(x);
      x = grp->word_parent(x);
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      memo.emplace(*it, memo.at(grp->word_parent(*it)) * m.gens[grp->word_generator(*it)]);
    out.push_back(memo.at(g));
  }
  return out;
}

Matrix combination_matrix(const Module& m, const std::vector<std::pair<int, Elem>>& combo) {
  std::vector<int> elems;
  for (const auto& [g, c] : combo) elems.push_back(g);
  auto mats = element_matrices(m, elems);
  Matrix r(m.field(), m.dim, m.dim);
  for (std::size_t i = 0; i < combo.size(); ++i) r = r + gf::scale(mats[i], combo[i].second);
  return r;
}

bool satisfies_relations(const Module& m) {
  const auto& a = *m.algebra;
  if (m.gens.size() != a.num_generators()) return false;
  for (const auto& g : m.gens)
    if (g.rows() != m.dim || g.cols() != m.dim) return false;
  if (a.is_group()) {
    const auto& grp = a.group();
    std::vector<int> all(grp->order());
    for (int x = 0; x < grp->order(); ++x) all[x] = x;
    auto mats = element_matrices(m, all);
    for (int x = 0; x < grp->order(); ++x)
      for (std::size_t k = 0; k < grp->generators().size(); ++k)
        if (mats[x] * m.gens[k] != mats[grp->mul(x, grp->generators()[k])]) return false;
    return true;
  }
  const Field& f = a.field();
  for (std::size_t j = 0; j < a.dimension(); ++j)
    for (std::size_t k = 0; k < a.dimension(); ++k) {
      Matrix rhs(f, m.dim, m.dim);
      for (std::size_t l = 0; l < a.dimension(); ++l)
        if (Elem c = a.right_mult()[k](j, l)) rhs = rhs + gf::scale(m.gens[l], c);
      if (m.gens[j] * m.gens[k] != rhs) return false;
    }
  Matrix one(f, m.dim, m.dim);
  for (std::size_t l = 0; l < a.dimension(); ++l)
    if (Elem c = a.unit()(0, l)) one = one + gf::scale(m.gens[l], c);
  return one.is_identity();
}

// ---- incremental echelon form ----

Echelonizer::Echelonizer(const Field& f, std::size_t n) : f_(&f), n_(n), rows_(f, 0, n) {}

bool Echelonizer::reduce(std::vector<Elem>& v) const {
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    Elem c = v[pivots_[i]];
    if (c) gf::axpy(*f_, v.data(), rows_.row(i), f_->neg(c), 0, n_);
  }
  for (Elem x : v)
    if (x) return true;
  return false;
}

bool Echelonizer::add(std::vector<Elem> v) {
  if (!reduce(v)) return false;
  std::size_t p = 0;
  while (v[p] == 0) ++p;
  Elem inv = f_->inv(v[p]);
  for (auto& x : v) x = f_->mul(x, inv);
  // keep earlier rows reduced at the new pivot
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    Elem c = rows_(i, p);
    if (c) gf::axpy(*f_, rows_.row(i), v.data(), f_->neg(c), 0, n_);
  }
  rows_.append_row(v.data());
  pivots_.push_back(p);
  return true;
}

bool Echelonizer::contains(const Elem* v) const {
  std::vector<Elem> w(v, v + n_);
  return !reduce(w);
}

Matrix Echelonizer::basis() const { return gf::row_basis(rows_); }

std::vector<Elem> row_times(const Elem* v, const Matrix& a) {
  const Field& f = a.field();
  std::vector<Elem> out(a.cols(), 0);
  for (std::size_t k = 0; k < a.rows(); ++k)
    if (v[k]) gf::axpy(f, out.data(), a.row(k), v[k], 0, a.cols());
  return out;
}

Matrix spin(const Module& m, const Matrix& vectors) {
  Echelonizer e(m.field(), m.dim);
  std::vector<std::vector<Elem>> queue;
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    std::vector<Elem> v(vectors.row(i), vectors.row(i) + m.dim);
    if (e.add(v)) queue.push_back(v);
  }
  for (std::size_t q = 0; q < queue.size() && e.rank() < m.dim; ++q)
    for (const auto& g : m.gens) {
      auto w = row_times(queue[q].data(), g);
      if (e.add(w)) queue.push_back(std::move(w));
    }
  return e.basis();
}

SpinBasis spin_basis(const Module& m, const Matrix& seeds) {
  SpinBasis sb{Matrix(m.field(), 0, m.dim), {}, {}, {}};
  Echelonizer e(m.field(), m.dim);
  int seed_no = -1;
  for (std::size_t i = 0; i < seeds.rows() && e.rank() < m.dim; ++i) {
    std::vector<Elem> v(seeds.row(i), seeds.row(i) + m.dim);
    if (!e.add(v)) continue;
    ++seed_no;
    std::size_t start = sb.basis.rows();
    sb.basis.append_row(v.data());
    sb.parent.push_back(-1);
    sb.gen.push_back(-1);
    sb.seed.push_back(seed_no);
    for (std::size_t q = start; q < sb.basis.rows() && e.rank() < m.dim; ++q)
      for (std::size_t k = 0; k < m.gens.size(); ++k) {
        auto w = row_times(sb.basis.row(q), m.gens[k]);
        if (!e.add(w)) continue;
        sb.basis.append_row(w.data());
        sb.parent.push_back(static_cast<int>(q));
        sb.gen.push_back(static_cast<int>(k));
        sb.seed.push_back(seed_no);
      }
  }
  return sb;
}

bool is_invariant(const Module& m, const Matrix& basis) {
  for (const auto& g : m.gens)
    if (!gf::subspace_contains(basis, basis * g)) return false;
  return true;
}

namespace {

// Coordinates of rows lying in the span of an RREF basis: read off the pivot columns.
Matrix pivot_coords(const Matrix& basis, const std::vector<std::size_t>& pivots, const Matrix& v) {
  Matrix c = v.select_cols(pivots);
  if (c * basis != v) throw std::invalid_argument("subspace is not invariant");
  return c;
}

std::vector<std::size_t> rref_pivots(const Matrix& basis) {
  std::vector<std::size_t> p;
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    std::size_t j = 0;
    while (j < basis.cols() && basis(i, j) == 0) ++j;
    p.push_back(j);
  }
  return p;
}

}  // namespace

Module submodule(const Module& m, const Matrix& basis_in) {
  Matrix basis = gf::row_basis(basis_in);
  auto piv = rref_pivots(basis);
  Module s{m.algebra, basis.rows(), {}};
  for (const auto& g : m.gens) s.gens.push_back(pivot_coords(basis, piv, basis * g));
  return s;
}

Module submodule_spin(const Module& m, const Matrix& vectors) { return submodule(m, spin(m, vectors)); }

Matrix quotient_map(const Module& m, const Matrix& basis_in) {
  Matrix basis = gf::row_basis(basis_in);
  auto piv = rref_pivots(basis);
  std::vector<bool> is_piv(m.dim, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::size_t> comp;
  for (std::size_t j = 0; j < m.dim; ++j)
    if (!is_piv[j]) comp.push_back(j);
  const Field& f = m.field();
  Matrix q(f, m.dim, comp.size());
  for (std::size_t c = 0; c < comp.size(); ++c) q(comp[c], c) = 1;
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t c = 0; c < comp.size(); ++c) q(piv[i], c) = f.neg(basis(i, comp[c]));
  return q;
}

Module quotient(const Module& m, const Matrix& basis_in) {
  Matrix basis = gf::row_basis(basis_in);
  if (!is_invariant(m, basis)) throw std::invalid_argument("quotient by a non-invariant subspace");
  Matrix q = quotient_map(m, basis);
  auto piv = rref_pivots(basis);
  std::vector<bool> is_piv(m.dim, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::size_t> comp;
  for (std::size_t j = 0; j < m.dim; ++j)
    if (!is_piv[j]) comp.push_back(j);
  Module out{m.algebra, comp.size(), {}};
  for (const auto& g : m.gens) out.gens.push_back(g.select_rows(comp) * q);
  return out;
}

Module direct_sum(const Module& a, const Module& b) {
  Module s{a.algebra, a.dim + b.dim, {}};
  for (std::size_t k = 0; k < a.gens.size(); ++k) s.gens.push_back(gf::block_diag(a.gens[k], b.gens[k]));
  return s;
}

Module direct_sum(const std::vector<Module>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum of nothing");
  Module s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s = direct_sum(s, parts[i]);
  return s;
}

Module dual(const Module& m) {
  if (!m.algebra->is_group()) throw std::invalid_argument("dual needs a group algebra");
  Module d{m.algebra, m.dim, {}};
  for (const auto& g : m.gens) d.gens.push_back(gf::transpose(*gf::inverse(g)));
  return d;
}

Module tensor_diagonal(const Module& a, const Module& b) {
  if (!a.algebra->is_group()) throw std::invalid_argument("tensor_diagonal needs a group algebra");
  Module t{a.algebra, a.dim * b.dim, {}};
  for (std::size_t k = 0; k < a.gens.size(); ++k) t.gens.push_back(gf::kronecker(a.gens[k], b.gens[k]));
  return t;
}

Module change_basis(const Module& m, const Matrix& t) {
  auto ti = gf::inverse(t);
  if (!ti) throw std::invalid_argument("change_basis: singular matrix");
  Module out{m.algebra, m.dim, {}};
  for (const auto& g : m.gens) out.gens.push_back(t * g * *ti);
  return out;
}

std::string to_text(const Module& m) {
  std::ostringstream os;
  os << "module " << m.algebra->id() << ' ' << m.dim << ' ' << m.gens.size() << '\n';
  for (const auto& g : m.gens) gf::write(os, g);
  return os.str();
}

Module module_from_text(const std::string& s, const AlgebraPtr& a) {
  std::istringstream is(s);
  std::string tag, id;
  std::size_t dim, ng;
  if (!(is >> tag >> id >> dim >> ng) || tag != "module") throw std::invalid_argument("module header expected");
  if (id != a->id()) throw std::invalid_argument("module is over " + id + ", not " + a->id());
  Module m{a, dim, {}};
  for (std::size_t k = 0; k < ng; ++k) m.gens.push_back(gf::read(is));
  if (!satisfies_relations(m)) throw std::invalid_argument("module matrices violate the algebra relations");
  return m;
}

}  // namespace perverx::rep
