#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "perverx/gf.hpp"

namespace perverx::group {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Elements are indices 0..order-1 with 0 the identity.
class FiniteGroup {
 public:
  static constexpr int kMaxOrder = 1000;

  FiniteGroup(std::string name, std::vector<int> table, std::size_t order, std::vector<int> generators,
              std::vector<std::string> generator_names);

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(n_); }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int x, int g) const { return mul(mul(inv(g), x), g); }  // x^g
  int element_order(int a) const { return orders_[a]; }

  const std::vector<int>& generators() const { return gens_; }
  const std::vector<std::string>& generator_names() const { return gen_names_; }

  // Every element is parent * generator; BFS from the identity over the generators in order.
  int word_parent(int a) const { return word_parent_[a]; }
  int word_generator(int a) const { return word_gen_[a]; }
  // Elements in BFS order (parents first).
  const std::vector<int>& bfs_order() const { return bfs_; }

 private:
  std::string name_;
  std::size_t n_;
  std::vector<int> table_, inv_, orders_, gens_;
  std::vector<std::string> gen_names_;
  std::vector<int> word_parent_, word_gen_, bfs_;
};

// Sorted element subset of a parent group.
struct Subgroup {
  GroupPtr parent;
  std::vector<int> elements;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const;
};

// A subgroup realised as a group in its own right.
struct Embedding {
  GroupPtr sub;
  GroupPtr parent;
  std::vector<int> map;  // sub element -> parent element
};

struct SemidirectData {
  int p = 0, n = 0;
  std::vector<gf::Matrix> action;  // generator matrices of E acting on row vectors
  std::vector<std::string> names;
};

// F_p^n x| E where E is the matrix group generated by the action matrices; (v,e)(w,f) = (v + w M_e^{-1}, ef).
// Canonical element order: lexicographic on (vector code, E index); E indexed in BFS order.
GroupPtr semidirect(const SemidirectData& d, const std::string& name);
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, const std::string& name);
GroupPtr cyclic(int n);

Subgroup whole(const GroupPtr& g);
Subgroup generated(const GroupPtr& g, const std::vector<int>& gens);
Subgroup normalizer(const GroupPtr& g, const Subgroup& h);
Subgroup centralizer(const GroupPtr& g, const Subgroup& h);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup product(const Subgroup& a, const Subgroup& b);  // requires one of them normalised by the other
bool is_normal(const Subgroup& h);
// Largest normal p-subgroup when the p-elements form a subgroup, otherwise the trivial subgroup.
Subgroup normal_p_core(const GroupPtr& g, int p);
std::vector<std::vector<int>> conjugacy_classes(const GroupPtr& g);
std::vector<Subgroup> conjugacy_classes_of_order_ell_subgroups(const GroupPtr& g, int ell);
// An ell'-complement of a normal subgroup k of coprime index, lexicographically greedy.
Subgroup complement_find(const GroupPtr& g, const Subgroup& k);
Embedding embed(const Subgroup& h, const std::string& name);
GroupPtr quotient(const GroupPtr& g, const Subgroup& n, const std::string& name);
// Right coset representatives of h in its parent, lexicographically least in each coset.
std::vector<int> right_coset_reps(const Subgroup& h);

std::vector<int> element_order_multiset(const GroupPtr& g);
int center_order(const GroupPtr& g);

// Group description files. Grammar (one item per line, '#' comments):
//   semidirect <p> <n>
//   gen <name>            followed by n rows of n integers (the action matrix)
//   central <k>           optional; direct product with a cyclic group of order k
// An automizer file repeats blocks headed by 'automizer <name>' with gen entries; they act on F_3^2.
GroupPtr parse_group(const std::string& text, const std::string& name);
GroupPtr load_group(const std::string& path);

struct Automizer {
  std::string name;
  SemidirectData data;
};
std::vector<Automizer> parse_automizers(const std::string& text);
std::vector<Automizer> load_automizers(const std::string& path);
// Element orders of the named isomorphism type (C4, C8, Q8, D8, SD16, C2xC2); throws on mismatch.
void check_automizer_type(const Automizer& a);

}  // namespace perverx::group
