#include <stdexcept>

#include "perverx/rep.hpp"
#include "rep_internal.hpp"

namespace perverx::rep {

bool is_hom(const Module& m, const Module& n, const Matrix& f) {
  if (f.rows() != m.dim || f.cols() != n.dim) return false;
  for (std::size_t k = 0; k < m.gens.size(); ++k)
    if (m.gens[k] * f != f * n.gens[k]) return false;
  return true;
}

Matrix kernel(const Matrix& f) { return gf::left_nullspace(f); }
Matrix image(const Matrix& f) { return gf::row_basis(f); }

namespace {

constexpr std::size_t kSmallCandidates = 16;

// Images of the spin basis under the hom determined by a candidate seed-image vector.
Matrix images_of_basis(const SpinBasis& sb, const std::vector<Matrix>& w, const Elem* kappa, std::size_t n) {
  const Field& f = w.front().field();
  Matrix phi(f, sb.basis.rows(), n);
  for (std::size_t l = 0; l < sb.basis.rows(); ++l) {
    auto r = row_times(kappa + static_cast<std::size_t>(sb.seed[l]) * n, w[l]);
    std::copy(r.begin(), r.end(), phi.row(l));
  }
  return phi;
}

}  // namespace

std::vector<Matrix> hom(const Module& m, const Module& n) {
  if (m.dim == 0 || n.dim == 0) return {};
  const Field& f = m.field();
  const std::size_t md = m.dim, nd = n.dim, ng = m.gens.size();
  SpinBasis sb = spin_basis(m, Matrix::identity(f, md));
  Matrix binv = *gf::inverse(sb.basis);
  const std::size_t ns = static_cast<std::size_t>(sb.seed.back()) + 1;
  // W[l]: product of n's generators along the path from the seed to basis vector l.
  std::vector<Matrix> w(md);
  std::vector<std::vector<bool>> has_child(md, std::vector<bool>(ng, false));
  for (std::size_t l = 0; l < md; ++l) {
    if (sb.parent[l] < 0) {
      w[l] = Matrix::identity(f, nd);
    } else {
      w[l] = w[sb.parent[l]] * n.gens[sb.gen[l]];
      has_child[sb.parent[l]][sb.gen[l]] = true;
    }
  }
  Matrix cand = Matrix::identity(f, ns * nd);  // rows: candidate seed-image vectors
  // In the small regime phi[l] holds cand-specific images (rows indexed like cand).
  std::vector<Matrix> phi;
  bool small = false;
  auto enter_small = [&]() {
    phi.assign(md, Matrix(f, cand.rows(), nd));
    for (std::size_t l = 0; l < md; ++l) phi[l] = cand.col_block(static_cast<std::size_t>(sb.seed[l]) * nd, nd) * w[l];
    small = true;
  };
  if (cand.rows() <= kSmallCandidates) enter_small();
  for (std::size_t l = 0; l < md; ++l) {
    for (std::size_t k = 0; k < ng; ++k) {
      if (has_child[l][k]) continue;
      Matrix c = Matrix(f, 1, md);
      {
        auto r = row_times(sb.basis.row(l), m.gens[k]);
        c = Matrix(f, 1, md);
        auto cc = row_times(r.data(), binv);
        std::copy(cc.begin(), cc.end(), c.row(0));
      }
      Matrix resid;
      if (small) {
        resid = phi[l] * n.gens[k];
        for (std::size_t j = 0; j < md; ++j)
          if (Elem cj = c(0, j)) resid = resid - gf::scale(phi[j], cj);
      } else {
        Matrix full(f, ns * nd, nd);
        for (std::size_t j = 0; j < md; ++j) {
          Elem cj = c(0, j);
          if (!cj) continue;
          Elem neg = f.neg(cj);
          std::size_t off = static_cast<std::size_t>(sb.seed[j]) * nd;
          for (std::size_t r = 0; r < nd; ++r) gf::axpy(f, full.row(off + r), w[j].row(r), neg, 0, nd);
        }
        Matrix own = w[l] * n.gens[k];
        std::size_t off = static_cast<std::size_t>(sb.seed[l]) * nd;
        for (std::size_t r = 0; r < nd; ++r) gf::axpy(f, full.row(off + r), own.row(r), 1, 0, nd);
        resid = cand * full;
      }
      if (resid.is_zero()) continue;
      Matrix keep = gf::left_nullspace(resid);
      if (keep.rows() == 0) return {};
      cand = keep * cand;
      if (small) {
        for (auto& p : phi) p = keep * p;
      } else if (cand.rows() <= kSmallCandidates) {
        enter_small();
      }
    }
  }
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < cand.rows(); ++i) out.push_back(binv * images_of_basis(sb, w, cand.row(i), nd));
  return out;
}

Matrix extend_from_generator(const Module& m, const Matrix& x, const Module& n, const Matrix& y) {
  SpinBasis sb = spin_basis(m, x);
  if (sb.basis.rows() != m.dim) throw std::invalid_argument("extend_from_generator: vector does not generate");
  const Field& f = m.field();
  Matrix phi(f, m.dim, n.dim);
  std::copy(y.row(0), y.row(0) + n.dim, phi.row(0));
  for (std::size_t l = 1; l < m.dim; ++l) {
    auto r = row_times(phi.row(sb.parent[l]), n.gens[sb.gen[l]]);
    std::copy(r.begin(), r.end(), phi.row(l));
  }
  Matrix h = *gf::inverse(sb.basis) * phi;
  if (!is_hom(m, n, h)) throw std::invalid_argument("extend_from_generator: assignment is not a homomorphism");
  return h;
}

}  // namespace perverx::rep
