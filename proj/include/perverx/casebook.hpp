#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "perverx/functors.hpp"
#include "perverx/perverse.hpp"
#include "perverx/twists.hpp"

namespace perverx::casebook {

using rep::Module;

// A local group algebra with its label conventions, as described in locals.json.
struct LocalSpec {
  std::string name;
  int q = 3;
  std::string automizer;   // F_3^2 x| E with E from the automizer file, or
  std::string group_file;  // a group description relative to the data directory
  std::vector<std::string> labels;
  std::vector<std::string> projectives;  // one display per label
  std::vector<std::pair<std::string, std::string>> relproj;
  // The simple labelled first is the one-dimensional module on which exactly these generators act
  // non-trivially (the trivial module when empty); its block is the one studied.
  std::vector<std::string> anchor_nontrivial_on;
  bool dihedral_kernel_rule = false;  // ker of label 3 has more involutions than ker of label 4
};

struct Local {
  LocalSpec spec;
  group::GroupPtr group;
  rep::AlgebraPtr algebra;
  rep::IndexPtr full;       // every simple of the group algebra
  rep::IndexPtr idx;        // the simples of the block, labelled
  std::vector<int> native;  // idx position -> full position
  std::optional<functors::RelProjCatalog> catalog;
};

struct Decomposition {
  std::vector<std::string> order;       // simple labels, in the table's row and column order
  std::vector<std::string> characters;  // one per row
  std::vector<std::vector<int>> rows;   // square, in that order
  std::vector<std::string> lower_characters;
  std::vector<std::vector<int>> lower;  // extra rows, same column order
};

struct CaseRecord {
  std::string id, title, local;
  std::vector<int> pi;             // per label
  std::vector<int> eta;            // per order-ell subgroup class, empty when untwisted
  std::vector<std::string> green;  // recipe per label
  std::vector<int> parity;         // optional signs per label
  std::map<std::string, std::map<int, std::string>> cohomology;  // label -> degree -> entry
  std::map<std::string, std::vector<std::string>> terms;         // label -> projective terms, lowest degree first
  std::optional<Decomposition> decomposition;
};

std::string data_dir();  // PERVERX_DATA_DIR in the environment, else the build-time default
std::vector<std::string> case_ids(const std::string& dir = data_dir());
CaseRecord parse_case(const std::string& json_text);
CaseRecord load_case(const std::string& id, const std::string& dir = data_dir());
LocalSpec load_local_spec(const std::string& name, const std::string& dir = data_dir());
// Cached per (directory, name, seed).
std::shared_ptr<const Local> local_for(const std::string& name, std::uint64_t seed = 0,
                                       const std::string& dir = data_dir());
std::shared_ptr<const Local> build_local(const LocalSpec& spec, std::uint64_t seed = 0,
                                         const std::string& dir = data_dir());

// A Green recipe of "?" marks a correspondent the case does not give; it is left out of the stable match.
inline constexpr const char* kUnknownGreen = "?";

// Recipes: a layer display ("2/3/2", "1" for a simple), a catalogue label ("M32"), or
// omega(<recipe>) / omega_inv(<recipe>).
Module realize_green(const std::string& recipe, const Local& l, std::uint64_t seed = 0);

// Whether m matches a table entry: "0", a layer display of the whole module, or a ','-separated
// list of its indecomposable summands. Displays are read as radical or as socle layers.
bool matches_entry(const Module& m, const std::string& entry, const rep::SimpleIndex& idx, std::uint64_t seed = 0);
std::string describe(const Module& m, const rep::SimpleIndex& idx, std::uint64_t seed = 0);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};
struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
struct Report {
  std::string title;
  std::vector<Table> tables;
  std::vector<Check> checks;
  bool ok() const;
  const Check* find(const std::string& name) const;
};

enum class Format { Text, Markdown, Tsv };
Format parse_format(const std::string& s);
std::string emit(const Report& r, Format f);

Report verify_case(const std::string& id, std::uint64_t seed = 0, const std::string& dir = data_dir());

struct SearchResult {
  std::vector<perverse::Perversity> solutions;
  bool contains_case_pi = false;
  Report report;
};
SearchResult search_case(const std::string& id, int bound, bool use_parity = false, std::uint64_t seed = 0,
                         const std::string& dir = data_dir());

struct AdhocInput {
  std::string group_file;  // or
  std::string local;       // a named local group from locals.json
  int q = 0;               // 0: the characteristic of the group file
  perverse::Perversity pi;
  std::vector<int> eta;
};
Report run_adhoc(const AdhocInput& in, std::uint64_t seed = 0, const std::string& dir = data_dir());

// what: simples, projectives, relproj or green.
Report show_case(const std::string& id, const std::string& what, std::uint64_t seed = 0,
                 const std::string& dir = data_dir());

}  // namespace perverx::casebook
