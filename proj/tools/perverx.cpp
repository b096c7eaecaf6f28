#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "perverx/casebook.hpp"

namespace cb = perverx::casebook;

namespace {

std::vector<int> parse_csv(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  std::size_t col = 1;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::runtime_error(what + ": line 1, column " + std::to_string(col) + ": expected an integer, got '" + item + "'");
    }
    col += item.size() + 1;
  }
  return out;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("PERVERX_SEED"); s && *s) return std::stoull(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"perverse equivalences between local group algebras"};
  app.require_subcommand(1);
  std::uint64_t seed = default_seed();
  std::string format = "txt", data = cb::data_dir();
  app.add_option("--seed", seed, "random seed (PERVERX_SEED, default 0)");
  app.add_option("--format", format, "txt, md or tsv");
  app.add_option("--data", data, "data directory");

  auto* verify = app.add_subcommand("verify", "verify a shipped case against its tables");
  std::string case_id;
  verify->add_option("case", case_id, "case id, or all")->required();

  auto* search = app.add_subcommand("search", "search perversity functions for a case");
  int bound = 0;
  bool parity = false;
  search->add_option("case", case_id, "case id")->required();
  search->add_option("--bound", bound, "largest value of pi")->required();
  search->add_flag("--parity", parity, "restrict to the case's parity vector");

  auto* run = app.add_subcommand("run", "run the perverse construction on a local group");
  std::string group_file, local, pi_csv, eta_csv;
  int field = 0;
  auto* g = run->add_option("--group", group_file, "group description file");
  auto* lo = run->add_option("--local", local, "a local group named in locals.json");
  g->excludes(lo);
  run->add_option("--pi", pi_csv, "perversity, comma separated")->required();
  run->add_option("--eta", eta_csv, "local twist per class, comma separated");
  run->add_option("--field", field, "field size (default: from the group file)");

  auto* show = app.add_subcommand("show", "show local data for a case");
  std::string what;
  show->add_option("case", case_id, "case id")->required();
  show->add_option("what", what, "simples, projectives, relproj or green")
      ->required()
      ->check(CLI::IsMember({"simples", "projectives", "relproj", "green"}));

  for (auto* sub : {verify, search, run, show}) {
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--format", format, "txt, md or tsv");
    sub->add_option("--data", data, "data directory");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const cb::Format f = cb::parse_format(format);
    bool ok = true;
    auto out = [&](const cb::Report& r) {
      std::cout << cb::emit(r, f);
      ok = ok && r.ok();
    };
    if (*verify) {
      auto ids = case_id == "all" ? cb::case_ids(data) : std::vector<std::string>{case_id};
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) std::cout << "\n";
        out(cb::verify_case(ids[i], seed, data));
      }
    } else if (*search) {
      out(cb::search_case(case_id, bound, parity, seed, data).report);
    } else if (*run) {
      if (group_file.empty() && local.empty()) throw std::runtime_error("run: give --group or --local");
      cb::AdhocInput in;
      in.group_file = group_file;
      in.local = local;
      in.q = field;
      in.pi = parse_csv(pi_csv, "--pi");
      if (!eta_csv.empty()) in.eta = parse_csv(eta_csv, "--eta");
      out(cb::run_adhoc(in, seed, data));
    } else if (*show) {
      out(cb::show_case(case_id, what, seed, data));
    }
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "perverx: " << e.what() << "\n";
    return 2;
  }
}
