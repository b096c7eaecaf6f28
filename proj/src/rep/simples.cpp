#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "perverx/functors.hpp"
#include "perverx/rep.hpp"
#include "rep_internal.hpp"

namespace perverx::rep {

namespace {

struct Found {
  Module module;       // simple over the algebra
  Module over_e;       // simple over the complement algebra (group case)
  Matrix idempotent;   // component of 1 in the regular module of the complement (or algebra)
  Matrix generator;    // that component in the summand's own coordinates
  Module summand;      // the projective summand of the regular module (generic case)
  int end_degree = 1;
};

int end_degree(const Module& s) { return static_cast<int>(hom(s, s).size()); }

// Simples from the MeatAxe, paired with primitive idempotents from a decomposition of the regular module.
std::vector<Found> simples_of_regular(const Module& reg, std::uint64_t seed) {
  std::vector<Module> irr;
  for (auto& s : chop_raw(reg, seed)) {
    bool known = std::any_of(irr.begin(), irr.end(), [&](const Module& t) { return !hom(s, t).empty(); });
    if (!known) irr.push_back(std::move(s));
  }
  auto parts = decompose(reg, seed);
  const Field& f = reg.field();
  Matrix one(f, 1, reg.dim);
  if (reg.algebra->is_group()) {
    one(0, 0) = 1;
  } else {
    one = reg.algebra->unit();
  }
  std::vector<Found> out;
  for (auto& s : irr) {
    Found fd;
    fd.module = s;
    fd.end_degree = end_degree(s);
    bool matched = false;
    for (const auto& p : parts) {
      if (hom(p.module, s).empty()) continue;  // head of the summand is s
      fd.generator = one * p.projection;
      fd.idempotent = fd.generator * p.embedding;
      fd.summand = p.module;
      matched = true;
      break;
    }
    if (!matched) throw std::runtime_error("simple module without a projective cover in the regular module");
    out.push_back(std::move(fd));
  }
  std::stable_sort(out.begin(), out.end(), [](const Found& a, const Found& b) {
    if (a.module.dim != b.module.dim) return a.module.dim < b.module.dim;
    return a.end_degree < b.end_degree;
  });
  return out;
}

}  // namespace

std::shared_ptr<const SimpleIndex> SimpleIndex::build(const AlgebraPtr& a, std::uint64_t seed) {
  auto idx = std::make_shared<SimpleIndex>();
  idx->algebra_ = a;
  idx->seed_ = seed;
  const int p = a->field().characteristic();
  bool fast = false;
  if (a->is_group()) {
    const auto& g = a->group();
    auto k = group::normal_p_core(g, p);
    int rest = g->order() / k.order();
    fast = (rest % p != 0);
    if (fast) {
      auto e = group::complement_find(g, k);
      auto emb = group::embed(e, g->name() + "_E");
      auto ke = Algebra::group_algebra(emb.sub, a->field().q());
      auto found = simples_of_regular(regular_module(ke), seed);
      // g -> the element of E in the coset K g
      std::vector<int> to_e(g->order(), -1);
      for (int x = 0; x < g->order(); ++x)
        for (std::size_t i = 0; i < emb.map.size(); ++i)
          if (k.contains(g->mul(x, g->inv(emb.map[i])))) {
            to_e[x] = static_cast<int>(i);
            break;
          }
      for (auto& fd : found) {
        SimpleData sd;
        sd.module = functors::inflate(fd.module, to_e, a);
        sd.end_degree = fd.end_degree;
        idx->simples_.push_back(sd);
        Module pe = functors::induce(fd.summand, emb, a);
        idx->projectives_.push_back(pe);
        Matrix x(a->field(), 1, pe.dim);
        x.set_block(0, 0, fd.generator);
        idx->proj_gen_.push_back(x);
        std::vector<std::pair<int, Elem>> combo;
        for (std::size_t i = 0; i < fd.idempotent.cols(); ++i)
          if (fd.idempotent(0, i)) combo.emplace_back(emb.map[i], fd.idempotent(0, i));
        idx->idem_.push_back(combo);
      }
      idx->core_elems_ = k.elements;
      std::vector<int> gens;
      for (int x : k.elements) {
        if (x == 0) continue;
        auto c = group::generated(g, gens);
        if (c.contains(x)) continue;
        gens.push_back(x);
      }
      idx->core_gens_ = gens;
      idx->core_trivial_ = gens.empty();
    }
  }
  if (!fast) {
    auto found = simples_of_regular(regular_module(a), seed);
    for (auto& fd : found) {
      idx->simples_.push_back({"", fd.module, fd.end_degree});
      idx->projectives_.push_back(fd.summand);
      idx->proj_gen_.push_back(fd.generator);
    }
  }
  for (std::size_t i = 0; i < idx->simples_.size(); ++i) idx->simples_[i].label = std::to_string(i + 1);
  return idx;
}

std::shared_ptr<const SimpleIndex> SimpleIndex::relabel(const std::vector<int>& order,
                                                        const std::vector<std::string>& labels) const {
  if (order.size() != size() || labels.size() != size()) throw std::invalid_argument("relabel: wrong length");
  auto idx = std::make_shared<SimpleIndex>(*this);
  for (std::size_t i = 0; i < order.size(); ++i) {
    idx->simples_[i] = simples_[order[i]];
    idx->simples_[i].label = labels[i];
    idx->projectives_[i] = projectives_[order[i]];
    idx->proj_gen_[i] = proj_gen_[order[i]];
    if (!idem_.empty()) idx->idem_[i] = idem_[order[i]];
  }
  return idx;
}

std::shared_ptr<const SimpleIndex> SimpleIndex::restrict_to(const std::vector<int>& keep) const {
  auto idx = std::make_shared<SimpleIndex>(*this);
  idx->simples_.clear();
  idx->projectives_.clear();
  idx->proj_gen_.clear();
  idx->idem_.clear();
  for (int i : keep) {
    idx->simples_.push_back(simples_[i]);
    idx->projectives_.push_back(projectives_[i]);
    idx->proj_gen_.push_back(proj_gen_[i]);
    if (!idem_.empty()) idx->idem_.push_back(idem_[i]);
  }
  return idx;
}

int SimpleIndex::find(const std::string& label) const {
  for (std::size_t i = 0; i < simples_.size(); ++i)
    if (simples_[i].label == label) return static_cast<int>(i);
  return -1;
}

ModuleView::ModuleView(const Module& m, const SimpleIndex& idx) : m_(m), idx_(&idx) {
  if (!idx.has_p_core()) return;
  std::vector<int> elems;
  for (std::size_t s = 0; s < idx.size(); ++s)
    for (const auto& [g, c] : idx.idempotent(s)) elems.push_back(g);
  elems.insert(elems.end(), idx.core_elements().begin(), idx.core_elements().end());
  auto mats = element_matrices(m, elems);
  std::size_t pos = 0;
  for (std::size_t s = 0; s < idx.size(); ++s) {
    Matrix r(m.field(), m.dim, m.dim);
    for (const auto& [g, c] : idx.idempotent(s)) r = r + gf::scale(mats[pos++], c);
    idem_.push_back(std::move(r));
  }
  norm_ = Matrix(m.field(), m.dim, m.dim);
  for (; pos < mats.size(); ++pos) norm_ = norm_ + mats[pos];
}

std::vector<int> ModuleView::factors_of(const Matrix& sub) const {
  std::vector<int> out(idx_->size(), 0);
  for (std::size_t s = 0; s < idx_->size(); ++s) {
    std::size_t r = sub.rows() ? gf::rank(sub * idem_[s]) : 0;
    out[s] = static_cast<int>(r) / idx_->simple(s).end_degree;
  }
  return out;
}

}  // namespace perverx::rep
