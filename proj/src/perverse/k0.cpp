#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "perverx/perverse.hpp"

namespace perverx::perverse {

namespace {

struct Rational {
  long long p = 0, q = 1;
  void norm() {
    if (q < 0) p = -p, q = -q;
    long long g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) p /= g, q /= g;
  }
};
Rational operator-(Rational a, Rational b) {
  Rational r{a.p * b.q - b.p * a.q, a.q * b.q};
  r.norm();
  return r;
}
Rational operator*(Rational a, Rational b) {
  Rational r{a.p * b.p, a.q * b.q};
  r.norm();
  return r;
}
Rational operator/(Rational a, Rational b) {
  Rational r{a.p * b.q, a.q * b.p};
  r.norm();
  return r;
}

// Exact inverse of an integer matrix; empty if singular or not integral.
std::vector<std::vector<int>> integer_inverse(const std::vector<std::vector<int>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = {m[i][j], 1};
    a[i][n + i] = {1, 1};
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].p == 0) ++piv;
    if (piv == n) return {};
    std::swap(a[c], a[piv]);
    Rational d = a[c][c];
    for (auto& x : a[c]) x = x / d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].p == 0) continue;
      Rational k = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] = a[r][j] - k * a[c][j];
    }
  }
  std::vector<std::vector<int>> out(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][n + j].q != 1) return {};
      out[i][j] = static_cast<int>(a[i][n + j].p);
    }
  return out;
}

Multiplicities alternating(const std::vector<Module>& ms, int lo, const SimpleIndex& idx) {
  Multiplicities out(idx.size(), 0);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    int sign = ((lo + static_cast<int>(i)) % 2 == 0) ? 1 : -1;
    auto cf = rep::composition_factors(ms[i], idx);
    for (std::size_t j = 0; j < idx.size(); ++j) out[j] += sign * cf[j];
  }
  return out;
}

}  // namespace

bool euler_identity(const BoundedComplex& c, const SimpleIndex& idx) {
  return alternating(c.terms, c.lo, idx) == alternating(cohomology(c), c.lo, idx);
}

K0Report k0_report(const std::vector<BoundedComplex>& xs, const Perversity& pi, const SimpleIndex& idx,
                   std::vector<int> order) {
  const std::size_t n = idx.size();
  if (xs.size() != n || pi.size() != n) throw std::invalid_argument("k0_report: one complex per simple required");
  K0Report r;
  for (const auto& x : xs) r.a.push_back(alternating(x.terms, x.lo, idx));
  for (std::size_t j = 0; j < n; ++j) r.signs.push_back(pi[j] % 2 == 0 ? 1 : -1);
  r.totals = r.a;
  for (auto& row : r.totals)
    for (std::size_t j = 0; j < n; ++j) row[j] *= r.signs[j];
  // [S_i] = sum_j totals_ij d(chi_j), so the decomposition matrix is the inverse
  r.decomposition = integer_inverse(r.totals);
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return pi[a] < pi[b]; });
  }
  r.order = order;
  r.unitriangular = !r.decomposition.empty();
  for (std::size_t a = 0; a < n && r.unitriangular; ++a)
    for (std::size_t b = a; b < n; ++b) {
      int v = r.decomposition[order[a]][order[b]];
      if (v != (a == b ? 1 : 0)) {
        r.unitriangular = false;
        break;
      }
    }
  return r;
}

ParityResult parity_check(const Perversity& pi, const std::vector<int>& signs) {
  if (pi.size() != signs.size()) throw std::invalid_argument("parity_check: length mismatch");
  for (std::size_t j = 0; j < pi.size(); ++j)
    if ((pi[j] % 2 == 0) != (signs[j] > 0)) return {false, static_cast<int>(j)};
  return {};
}

std::vector<Perversity> pi_search(const SimpleIndex& idx, const std::vector<Module>& targets, const SearchOptions& opt) {
  const std::size_t n = idx.size();
  if (targets.size() != n) throw std::invalid_argument("pi_search: one target per simple required");
  std::vector<std::vector<int>> choices(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (int v = 0; v <= opt.bound; ++v) {
      if (s < opt.fixed.size() && opt.fixed[s] && *opt.fixed[s] != v) continue;
      if (opt.signs && ((v % 2 == 0) != ((*opt.signs)[s] > 0))) continue;
      choices[s].push_back(v);
    }
    if (choices[s].empty()) return {};
  }
  std::vector<Perversity> all;
  Perversity cur(n, 0);
  auto rec = [&](auto&& self, std::size_t s) -> void {
    if (s == n) {
      all.push_back(cur);
      return;
    }
    for (int v : choices[s]) {
      cur[s] = v;
      self(self, s + 1);
    }
  };
  rec(rec, 0);
  std::stable_sort(all.begin(), all.end(), [](const Perversity& a, const Perversity& b) {
    int sa = std::accumulate(a.begin(), a.end(), 0), sb = std::accumulate(b.begin(), b.end(), 0);
    if (sa != sb) return sa < sb;
    return a < b;
  });
  // target iso classes, with composition factors as a cheap filter
  std::vector<int> target_class(n, -1);
  std::vector<Module> reps;
  std::vector<Multiplicities> rep_cf;
  for (std::size_t i = 0; i < n; ++i) {
    Module t = rep::strip_projectives(targets[i], idx).core;
    auto cf = rep::composition_factors(t, idx);
    for (std::size_t k = 0; k < reps.size() && target_class[i] < 0; ++k)
      if (rep_cf[k] == cf && rep::is_isomorphic(reps[k], t, idx.seed())) target_class[i] = static_cast<int>(k);
    if (target_class[i] < 0) {
      target_class[i] = static_cast<int>(reps.size());
      reps.push_back(t);
      rep_cf.push_back(cf);
    }
  }
  std::vector<int> want(reps.size(), 0);
  for (int c : target_class) ++want[c];
  // C_S depends on pi(S) and on which simples lie below each threshold
  std::map<std::pair<std::size_t, std::vector<int>>, int> memo;
  auto class_of = [&](std::size_t s, const Perversity& pi) {
    std::vector<int> key(n);
    for (std::size_t t = 0; t < n; ++t) key[t] = std::min(pi[t], pi[s]);
    auto it = memo.find({s, key});
    if (it != memo.end()) return it->second;
    Module core = degree_zero_core(perverse_complex(pi, s, idx), idx);
    auto cf = rep::composition_factors(core, idx);
    int cls = -1;
    for (std::size_t k = 0; k < reps.size() && cls < 0; ++k)
      if (rep_cf[k] == cf && rep::is_isomorphic(reps[k], core, idx.seed())) cls = static_cast<int>(k);
    memo[{s, key}] = cls;
    return cls;
  };
  std::vector<Perversity> out;
  for (const auto& pi : all) {
    std::vector<int> have(reps.size(), 0);
    bool ok = true;
    for (std::size_t s = 0; s < n && ok; ++s) {
      int c = class_of(s, pi);
      if (c < 0 || ++have[c] > want[c]) ok = false;
    }
    if (ok) out.push_back(pi);
  }
  return out;
}

}  // namespace perverx::perverse
