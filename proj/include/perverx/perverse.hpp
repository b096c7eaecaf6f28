#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perverx/rep.hpp"

namespace perverx::perverse {

using rep::Matrix;
using rep::Module;
using rep::Multiplicities;
using rep::SimpleIndex;

using Perversity = std::vector<int>;  // indexed like the SimpleIndex

// Terms in degrees lo..0 (or lo..hi); diffs[i] maps terms[i] to terms[i+1].
struct BoundedComplex {
  int lo = 0;
  std::vector<Module> terms;
  std::vector<Matrix> diffs;
  // Copies of each P_S when a term is known to be a sum of projective indecomposables.
  std::vector<std::optional<Multiplicities>> projective;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  const Module& at(int d) const { return terms.at(d - lo); }
};

BoundedComplex concentrated(const Module& m, int degree = 0);
// Differentials are homomorphisms and compose to zero.
bool is_complex(const BoundedComplex& c);
// H^d for d = lo..hi, indexed like terms.
std::vector<Module> cohomology(const BoundedComplex& c);
// Drops zero terms at both ends, keeping degree 0.
BoundedComplex trim(const BoundedComplex& c);

// The largest submodule of the ambient (an injective hull of sub) containing sub with all added
// composition factors in e; by iterated e-socle pullback.
Matrix e_closure_in(const Module& ambient, const Matrix& sub, const std::vector<int>& e, const SimpleIndex& idx);
struct Closure {
  Module module;     // M^E
  Matrix embedding;  // M -> M^E
};
Closure e_closure(const Module& m, const std::vector<int>& e, const SimpleIndex& idx);

// The complex C_S attached to a perversity function.
BoundedComplex perverse_complex(const Perversity& pi, std::size_t s, const SimpleIndex& idx);

// 0 -> P_V + P_U -> A -> 0 for pi with values in {0, 1}; `ones` lists the simples with value 1.
BoundedComplex elementary_tilting(const std::vector<int>& ones, const SimpleIndex& idx);

struct HomotopyEnd {
  std::size_t chain_dim = 0;  // chain endomorphisms
  std::size_t null_dim = 0;   // null-homotopic ones
  rep::AlgebraPtr algebra;    // null for the zero algebra
  std::size_t dim() const { return chain_dim - null_dim; }
};
HomotopyEnd homotopy_end(const BoundedComplex& x);

// Cancels isomorphism components of the differential between indecomposable summands.
BoundedComplex minimize(const BoundedComplex& c, std::uint64_t seed = 0);

struct K0Report {
  std::vector<std::vector<int>> a;          // [X_i] = sum_j a_ij [T_j]
  std::vector<int> signs;                   // (-1)^pi(j)
  std::vector<std::vector<int>> decomposition;  // rows: basic set characters chi_j, columns: S_i
  std::vector<int> order;                   // row/column order used for the triangularity check
  bool unitriangular = false;
  // The signed combination sum_j (-1)^pi(j) a_ij chi_j, per i.
  std::vector<std::vector<int>> totals;
};
// order: simple indices in the intended row order; empty means by increasing pi, then index.
K0Report k0_report(const std::vector<BoundedComplex>& xs, const Perversity& pi, const SimpleIndex& idx,
                   std::vector<int> order = {});
// Multiplicities of the alternating sums of terms and of cohomology agree.
bool euler_identity(const BoundedComplex& c, const SimpleIndex& idx);

struct ParityResult {
  bool ok = true;
  int mismatch = -1;  // first index with pi(j) not matching its sign
};
ParityResult parity_check(const Perversity& pi, const std::vector<int>& signs);

struct SearchOptions {
  int bound = 0;
  std::optional<std::vector<int>> signs;  // parity constraint
  std::vector<std::optional<int>> fixed;  // pinned values
};
// All pi with values <= bound whose degree-0 cores match the targets as a multiset up to isomorphism,
// in order of total weight, then lexicographically.
std::vector<Perversity> pi_search(const SimpleIndex& idx, const std::vector<Module>& targets, const SearchOptions& opt);

// Degree-0 core of C_S: C^0 with projective summands removed.
Module degree_zero_core(const BoundedComplex& c, const SimpleIndex& idx);

}  // namespace perverx::perverse
