#include <map>
#include <optional>
#include <random>
#include <stdexcept>

#include "perverx/rep.hpp"
#include "rep_internal.hpp"

namespace perverx::rep {

namespace {

using Poly = std::vector<Elem>;  // coefficients, constant term first, monic

constexpr int kMaxDegree = 4;
constexpr int kTries = 300;

bool divides(const Field& f, const Poly& d, Poly p) {
  while (p.size() >= d.size()) {
    Elem lead = p.back();
    std::size_t shift = p.size() - d.size();
    if (lead)
      for (std::size_t i = 0; i < d.size(); ++i) p[shift + i] = f.sub(p[shift + i], f.mul(lead, d[i]));
    p.pop_back();
  }
  for (Elem c : p)
    if (c) return false;
  return true;
}

const std::vector<Poly>& irreducibles(const Field& f) {
  static std::map<int, std::vector<Poly>> cache;
  auto it = cache.find(f.q());
  if (it != cache.end()) return it->second;
  std::vector<Poly> out;
  for (int deg = 1; deg <= kMaxDegree; ++deg) {
    long count = 1;
    for (int i = 0; i < deg; ++i) count *= f.q();
    for (long code = 0; code < count; ++code) {
      Poly p(deg + 1);
      long c = code;
      for (int i = 0; i < deg; ++i) {
        p[i] = static_cast<Elem>(c % f.q());
        c /= f.q();
      }
      p[deg] = 1;
      bool irr = true;
      for (const auto& d : out)
        if (2 * (static_cast<int>(d.size()) - 1) <= deg && divides(f, d, p)) {
          irr = false;
          break;
        }
      if (irr) out.push_back(p);
    }
  }
  return cache[f.q()] = out;
}

Module transposed(const Module& m) {
  Module t{m.algebra, m.dim, {}};
  for (const auto& g : m.gens) t.gens.push_back(gf::transpose(g));
  return t;
}

// A proper nonzero invariant subspace, or nullopt when m is certified irreducible.
std::optional<Matrix> split(const Module& m, std::mt19937_64& rng) {
  const Field& f = m.field();
  const std::size_t n = m.dim;
  if (n <= 1) return std::nullopt;
  Module mt = transposed(m);
  std::vector<Matrix> words = m.gens;
  for (int t = 0; t < 6 && !words.empty(); ++t)
    words.push_back(words[rng() % words.size()] * words[rng() % words.size()]);
  const auto& polys = irreducibles(f);
  for (int attempt = 0; attempt < kTries; ++attempt) {
    if (attempt % 20 == 19) words.push_back(words[rng() % words.size()] * words[rng() % words.size()]);
    Matrix a = random_combination(words, rng);
    std::vector<Matrix> pw{Matrix::identity(f, n), a};
    for (int d = 2; d <= kMaxDegree; ++d) pw.push_back(pw.back() * a);
    for (const auto& p : polys) {
      std::size_t deg = p.size() - 1;
      if (deg > n) break;
      Matrix pa(f, n, n);
      for (std::size_t i = 0; i <= deg; ++i)
        if (p[i]) pa = pa + gf::scale(pw[i], p[i]);
      Matrix ker = gf::left_nullspace(pa);
      if (ker.rows() == 0) continue;
      Matrix s = spin(m, ker.row_block(0, 1));
      if (s.rows() < n) return s;
      Matrix kert = gf::left_nullspace(gf::transpose(pa));
      Matrix st = spin(mt, kert.row_block(0, 1));
      if (st.rows() < n) return gf::nullspace(st);
      if (ker.rows() == deg) return std::nullopt;
    }
  }
  throw std::runtime_error("MeatAxe: no decision after " + std::to_string(kTries) + " random elements (dim " +
                           std::to_string(n) + ")");
}

}  // namespace

bool is_irreducible(const Module& m, std::uint64_t seed) {
  if (m.dim == 0) return false;
  std::mt19937_64 rng(seed);
  return !split(m, rng).has_value();
}

std::vector<Module> chop_raw(const Module& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Module> out, stack{m};
  while (!stack.empty()) {
    Module x = std::move(stack.back());
    stack.pop_back();
    if (x.dim == 0) continue;
    auto sub = split(x, rng);
    if (!sub) {
      out.push_back(std::move(x));
      continue;
    }
    // quotient first on the stack so the submodule is processed first
    stack.push_back(quotient(x, *sub));
    stack.push_back(submodule(x, *sub));
  }
  return out;
}

}  // namespace perverx::rep
