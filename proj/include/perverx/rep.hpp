#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "perverx/gf.hpp"
#include "perverx/group.hpp"

namespace perverx::rep {

using gf::Elem;
using gf::Field;
using gf::Matrix;

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Either a group algebra kG (generators = group generators) or an algebra given by
// structure constants (generators = all basis elements).
class Algebra {
 public:
  static AlgebraPtr group_algebra(group::GroupPtr g, int q);
  // right_mult[j] is the matrix of x -> x * b_j on the basis; unit holds the coordinates of 1.
  static AlgebraPtr structure(const Field& f, std::vector<Matrix> right_mult, Matrix unit, std::string id);

  const Field& field() const { return *field_; }
  bool is_group() const { return group_ != nullptr; }
  const group::GroupPtr& group() const { return group_; }
  std::size_t dimension() const { return dim_; }
  std::size_t num_generators() const;
  const std::string& id() const { return id_; }
  const std::vector<Matrix>& right_mult() const { return right_mult_; }
  const Matrix& unit() const { return unit_; }

 private:
  Algebra() = default;
  const Field* field_ = nullptr;
  group::GroupPtr group_;
  std::size_t dim_ = 0;
  std::string id_;
  std::vector<Matrix> right_mult_;
  Matrix unit_;
};

// Right module on row vectors: v . g = v * gens[i].
struct Module {
  AlgebraPtr algebra;
  std::size_t dim = 0;
  std::vector<Matrix> gens;

  const Field& field() const { return algebra->field(); }
};

Module zero_module(const AlgebraPtr& a);
Module regular_module(const AlgebraPtr& a);
Module trivial_module(const AlgebraPtr& a);
// Checks the defining relations (group multiplication table or structure constants).
bool satisfies_relations(const Module& m);

// Group algebras: action of a group element, and of a linear combination of elements.
Matrix element_matrix(const Module& m, int g);
Matrix combination_matrix(const Module& m, const std::vector<std::pair<int, Elem>>& combo);

// Subspaces of modules are echelon bases (rows).
Matrix spin(const Module& m, const Matrix& vectors);
bool is_invariant(const Module& m, const Matrix& basis);
Module submodule(const Module& m, const Matrix& basis);
// Quotient by an invariant subspace; complement = standard vectors off the echelon pivots.
Module quotient(const Module& m, const Matrix& basis);
// Matrix of the projection m -> m/basis in the coordinates used by quotient().
Matrix quotient_map(const Module& m, const Matrix& basis);
Module direct_sum(const Module& a, const Module& b);
Module direct_sum(const std::vector<Module>& parts);
Module dual(const Module& m);
Module tensor_diagonal(const Module& a, const Module& b);
// Transport of structure along an invertible change of basis (rows of t are the new basis).
Module change_basis(const Module& m, const Matrix& t);
Module submodule_spin(const Module& m, const Matrix& vectors);

// Homomorphisms are matrices f with v -> v f, so A_k f = f B_k for all generators.
bool is_hom(const Module& m, const Module& n, const Matrix& f);
std::vector<Matrix> hom(const Module& m, const Module& n);
Matrix kernel(const Matrix& f);  // echelon basis of {v : v f = 0}
Matrix image(const Matrix& f);   // echelon basis of the row space

// Spin basis of a module from seed vectors, remembering how each vector arose.
struct SpinBasis {
  Matrix basis;
  std::vector<int> parent;  // -1 for seeds
  std::vector<int> gen;
  std::vector<int> seed;  // index of the seed each vector descends from
};
SpinBasis spin_basis(const Module& m, const Matrix& seeds);
// The unique hom with x -> y, where x generates m; throws if not well defined.
Matrix extend_from_generator(const Module& m, const Matrix& x, const Module& n, const Matrix& y);

// MeatAxe: irreducible composition factors of m (not yet identified up to isomorphism).
std::vector<Module> chop_raw(const Module& m, std::uint64_t seed);
// Norton irreducibility; throws if inconclusive after the try budget.
bool is_irreducible(const Module& m, std::uint64_t seed);

struct SimpleData {
  std::string label;
  Module module;
  int end_degree = 1;  // dim End(S) over the base field
};

// Isomorphism classes of simple modules, their projective covers and the data used to
// compute radicals and composition factors.
class SimpleIndex {
 public:
  static std::shared_ptr<const SimpleIndex> build(const AlgebraPtr& a, std::uint64_t seed = 0);
  // Reorders and relabels: new simple i is old simple order[i].
  std::shared_ptr<const SimpleIndex> relabel(const std::vector<int>& order, const std::vector<std::string>& labels) const;

  const AlgebraPtr& algebra() const { return algebra_; }
  std::size_t size() const { return simples_.size(); }
  const SimpleData& simple(std::size_t i) const { return simples_[i]; }
  const std::vector<SimpleData>& simples() const { return simples_; }
  int find(const std::string& label) const;
  const Module& projective(std::size_t i) const { return projectives_[i]; }
  const Matrix& projective_generator(std::size_t i) const { return proj_gen_[i]; }
  std::uint64_t seed() const { return seed_; }
  // Restrict to the simples of one block, keeping labels.
  std::shared_ptr<const SimpleIndex> restrict_to(const std::vector<int>& keep) const;

  // Whether the radical is generated by x - 1 for x in a normal p-subgroup K.
  bool has_p_core() const { return !core_gens_.empty() || core_trivial_; }
  const std::vector<int>& core_generators() const { return core_gens_; }
  const std::vector<int>& core_elements() const { return core_elems_; }
  const std::vector<std::pair<int, Elem>>& idempotent(std::size_t i) const { return idem_[i]; }

 private:
  AlgebraPtr algebra_;
  std::uint64_t seed_ = 0;
  std::vector<SimpleData> simples_;
  std::vector<Module> projectives_;
  std::vector<Matrix> proj_gen_;
  std::vector<std::vector<std::pair<int, Elem>>> idem_;
  std::vector<int> core_gens_, core_elems_;
  bool core_trivial_ = false;
};
using IndexPtr = std::shared_ptr<const SimpleIndex>;

// Per-module cache of the actions needed for structural questions.
class ModuleView {
 public:
  ModuleView(const Module& m, const SimpleIndex& idx);
  const Module& module() const { return m_; }
  // rho(f_S): its row space is m f_S, of dimension [m:S] * end_degree(S).
  const Matrix& idempotent(std::size_t s) const { return idem_[s]; }
  // rho(sum of K): image is m sigma_K.
  const Matrix& norm() const { return norm_; }
  std::vector<int> factors_of(const Matrix& sub) const;  // composition factors of a subspace's span
 private:
  Module m_;
  const SimpleIndex* idx_;
  std::vector<Matrix> idem_;
  Matrix norm_;
};

using Multiplicities = std::vector<int>;  // indexed like the SimpleIndex

Multiplicities composition_factors(const Module& m, const SimpleIndex& idx);
Multiplicities chop(const Module& m, const SimpleIndex& idx, std::uint64_t seed);
Matrix radical(const Module& m, const SimpleIndex& idx);
Matrix socle(const Module& m, const SimpleIndex& idx);
std::vector<Matrix> radical_series(const Module& m, const SimpleIndex& idx);  // m = R0 > R1 > ... > 0
std::vector<Matrix> socle_series(const Module& m, const SimpleIndex& idx);    // 0 < S1 < ... < m
std::vector<Multiplicities> loewy_layers(const Module& m, const SimpleIndex& idx);
std::vector<Multiplicities> socle_layers(const Module& m, const SimpleIndex& idx);  // head first, like loewy
Multiplicities head(const Module& m, const SimpleIndex& idx);
// Sum of the simple submodules isomorphic to members of `which`.
Matrix socle_part(const Module& m, const SimpleIndex& idx, const std::vector<int>& which);
// Preimage in m of an invariant subspace of quotient(m, sub), given in quotient() coordinates.
Matrix lift_from_quotient(const Module& m, const Matrix& sub, const Matrix& in_quotient);
Multiplicities socle_factors(const Module& m, const SimpleIndex& idx);

std::string render_layers(const std::vector<Multiplicities>& layers, const SimpleIndex& idx);
std::string render(const Module& m, const SimpleIndex& idx);  // summands joined by ','
std::vector<Multiplicities> parse_layers(const std::string& s, const SimpleIndex& idx);

struct Cover {
  Module module;
  Matrix map;               // cover -> m (surjective) or m -> hull (injective)
  Multiplicities counts;    // copies of each P_S
};
Cover projective_cover(const Module& m, const SimpleIndex& idx);
Cover injective_hull(const Module& m, const SimpleIndex& idx);
Module omega(const Module& m, const SimpleIndex& idx);
Module omega_inv(const Module& m, const SimpleIndex& idx);

// Direct sum of copies of projectives, laid out in order of counts.
Module projective_sum(const Multiplicities& counts, const SimpleIndex& idx);

struct Stripped {
  Module core;
  Multiplicities projective;  // copies of each P_S split off
  Matrix core_map;            // m -> core
};
Stripped strip_projectives(const Module& m, const SimpleIndex& idx);

struct Summand {
  Module module;
  Matrix embedding;   // rows: basis of the summand inside the input
  Matrix projection;  // input -> summand, zero on the other summands
};
std::vector<Summand> decompose(const Module& m, std::uint64_t seed);
std::optional<Matrix> isomorphism(const Module& m, const Module& n, std::uint64_t seed = 0);
bool is_isomorphic(const Module& m, const Module& n, std::uint64_t seed = 0);
bool is_projective(const Module& m, const SimpleIndex& idx);

// Orders (new label i <- old simple order[i]) under which projective i has the given layers.
std::vector<std::vector<int>> match_projective_displays(const SimpleIndex& idx, const std::vector<std::string>& labels,
                                                        const std::vector<std::string>& displays);

// Module serialization: algebra id, dimension, generator matrices in the gf text format.
std::string to_text(const Module& m);
Module module_from_text(const std::string& s, const AlgebraPtr& a);

}  // namespace perverx::rep
