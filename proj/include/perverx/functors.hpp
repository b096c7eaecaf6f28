#pragma once

#include <string>
#include <vector>

#include "perverx/group.hpp"
#include "perverx/rep.hpp"

namespace perverx::functors {

using rep::AlgebraPtr;
using rep::Module;

// kH for an embedded subgroup, over the field of the ambient algebra.
AlgebraPtr subgroup_algebra(const group::Embedding& h, const AlgebraPtr& kg);

Module restrict(const Module& m, const group::Embedding& h, const AlgebraPtr& kh);
// Coset basis u (x) t_i with t_i the lexicographically least right coset representatives.
Module induce(const Module& m, const group::Embedding& h, const AlgebraPtr& kg);
// Ind of a morphism: block diagonal over the cosets.
rep::Matrix induce_map(const rep::Matrix& f, const group::Embedding& h);

// Inflation along a surjection G -> H given on elements (image[g] is an element of H).
Module inflate(const Module& m, const std::vector<int>& image, const AlgebraPtr& kg);

struct Block {
  std::vector<std::pair<int, rep::Elem>> idempotent;  // central primitive idempotent as a combination of elements
  std::vector<int> simples;                         // SimpleIndex positions in the block
  bool principal = false;
};
// Central primitive idempotents of kG from the class-sum basis of the centre.
std::vector<Block> blocks(const AlgebraPtr& kg, const rep::SimpleIndex& idx, std::uint64_t seed = 0);
Module project_to_block(const Module& m, const Block& b);

struct CatalogEntry {
  std::string label;  // e.g. M11, M32
  Module module;
  int subgroup_class = 0;  // index of the order-ell subgroup class (0-based)
  int source_dim = 1;
};
struct RelProjCatalog {
  std::vector<group::Subgroup> classes;
  std::vector<CatalogEntry> entries;
  const CatalogEntry* find(const std::string& label) const;
};

// Displays keyed by label ("M11" -> "5/12/5"); entries are matched to displays by layers,
// and the subgroup classes are ordered so that class i carries the entries M?i... of the first
// source family.
RelProjCatalog build_relproj_catalog(const AlgebraPtr& kn, const rep::SimpleIndex& idx, int ell,
                                     const std::vector<std::pair<std::string, std::string>>& displays,
                                     std::uint64_t seed = 0);

// Higman's criterion as stated: m is a summand of Ind_Q Res_Q m.
bool is_relatively_projective(const Module& m, const group::Subgroup& q, const AlgebraPtr& kn, std::uint64_t seed = 0);

// Reductions of the irreducible characters of H that are non-trivial on P = O_ell(H), with P elementary
// abelian: one entry per E'-orbit of non-trivial characters lambda of P and simple module of the
// stabiliser E_lambda, namely the composition factors of Ind_{P E_lambda}^H of the inflated simple.
std::vector<rep::Multiplicities> clifford_reductions(const AlgebraPtr& kh, const rep::SimpleIndex& idx,
                                                     std::uint64_t seed = 0);

}  // namespace perverx::functors
