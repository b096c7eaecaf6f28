#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "perverx/group.hpp"

namespace perverx::group {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
  std::vector<int> columns;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream is(text);
  std::string raw;
  int n = 0;
  while (std::getline(is, raw)) {
    ++n;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    Line l{n, {}, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i == raw.size()) break;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      l.tokens.push_back(raw.substr(i, j - i));
      l.columns.push_back(static_cast<int>(i) + 1);
      i = j;
    }
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

[[noreturn]] void fail(const Line& l, std::size_t tok, const std::string& msg) {
  int col = tok < l.columns.size() ? l.columns[tok] : 1;
  throw std::invalid_argument("line " + std::to_string(l.number) + ", column " + std::to_string(col) + ": " + msg);
}

int to_int(const Line& l, std::size_t tok) {
  if (tok >= l.tokens.size()) fail(l, tok, "missing integer");
  try {
    std::size_t used = 0;
    int v = std::stoi(l.tokens[tok], &used);
    if (used != l.tokens[tok].size()) fail(l, tok, "bad integer '" + l.tokens[tok] + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(l, tok, "bad integer '" + l.tokens[tok] + "'");
  }
}

// Reads a "gen <name>" entry followed by n matrix rows starting at lines[i].
std::size_t read_gen(const std::vector<Line>& lines, std::size_t i, int p, int n, SemidirectData& d) {
  const Line& h = lines[i];
  if (h.tokens.size() != 2) fail(h, 0, "expected 'gen <name>'");
  const gf::Field& f = gf::Field::get(p);
  gf::Matrix m(f, n, n);
  for (int r = 0; r < n; ++r) {
    if (i + 1 + r >= lines.size()) fail(h, 1, "matrix for generator '" + h.tokens[1] + "' truncated");
    const Line& row = lines[i + 1 + r];
    if (static_cast<int>(row.tokens.size()) != n) fail(row, 0, "expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) {
      int v = to_int(row, c);
      if (v < 0 || v >= p) fail(row, c, "entry out of range for F_" + std::to_string(p));
      m(r, c) = static_cast<gf::Elem>(v);
    }
  }
  if (!gf::inverse(m)) fail(h, 1, "generator '" + h.tokens[1] + "' is singular");
  d.action.push_back(m);
  d.names.push_back(h.tokens[1]);
  return i + 1 + n;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

GroupPtr parse_group(const std::string& text, const std::string& name) {
  auto lines = tokenize(text);
  if (lines.empty()) throw std::invalid_argument("line 1, column 1: empty group description");
  const Line& h = lines[0];
  if (h.tokens[0] != "semidirect" || h.tokens.size() != 3) fail(h, 0, "expected 'semidirect <p> <n>'");
  SemidirectData d;
  d.p = to_int(h, 1);
  d.n = to_int(h, 2);
  if (d.p != 2 && d.p != 3) fail(h, 1, "p must be 2 or 3");
  if (d.n < 1 || d.n > 6) fail(h, 2, "n must be between 1 and 6");
  int central = 1;
  std::size_t i = 1;
  while (i < lines.size()) {
    const Line& l = lines[i];
    if (l.tokens[0] == "gen") {
      i = read_gen(lines, i, d.p, d.n, d);
    } else if (l.tokens[0] == "central") {
      if (l.tokens.size() != 2) fail(l, 0, "expected 'central <k>'");
      central = to_int(l, 1);
      if (central < 1) fail(l, 1, "central order must be positive");
      ++i;
    } else {
      fail(l, 0, "unknown keyword '" + l.tokens[0] + "'");
    }
  }
  if (d.action.empty()) fail(h, 0, "no generators given");
  auto g = semidirect(d, central == 1 ? name : name + "_core");
  if (central > 1) g = direct_product(g, cyclic(central), name);
  return g;
}

GroupPtr load_group(const std::string& path) {
  auto base = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
  return parse_group(slurp(path), base.substr(0, base.find('.')));
}

std::vector<Automizer> parse_automizers(const std::string& text) {
  auto lines = tokenize(text);
  std::vector<Automizer> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    const Line& l = lines[i];
    if (l.tokens[0] == "automizer") {
      if (l.tokens.size() != 2) fail(l, 0, "expected 'automizer <name>'");
      out.push_back({l.tokens[1], {3, 2, {}, {}}});
      ++i;
    } else if (l.tokens[0] == "gen") {
      if (out.empty()) fail(l, 0, "generator before any automizer heading");
      i = read_gen(lines, i, 3, 2, out.back().data);
    } else {
      fail(l, 0, "unknown keyword '" + l.tokens[0] + "'");
    }
  }
  return out;
}

std::vector<Automizer> load_automizers(const std::string& path) { return parse_automizers(slurp(path)); }

void check_automizer_type(const Automizer& a) {
  static const std::map<std::string, std::pair<std::vector<int>, int>> expected{
      {"C4", {{1, 2, 4, 4}, 4}},
      {"C8", {{1, 2, 4, 4, 8, 8, 8, 8}, 8}},
      {"Q8", {{1, 2, 4, 4, 4, 4, 4, 4}, 2}},
      {"D8", {{1, 2, 2, 2, 2, 2, 4, 4}, 2}},
      {"SD16", {{1, 2, 2, 2, 2, 2, 4, 4, 4, 4, 4, 4, 8, 8, 8, 8}, 2}},
      {"C2xC2", {{1, 2, 2, 2}, 4}},
  };
  auto it = expected.find(a.name);
  if (it == expected.end()) throw std::invalid_argument("unknown automizer type " + a.name);
  const gf::Field& f = gf::Field::get(3);
  std::vector<gf::Matrix> elems{gf::Matrix::identity(f, 2)};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : a.data.action) {
      auto y = elems[i] * g;
      if (std::find(elems.begin(), elems.end(), y) == elems.end()) elems.push_back(y);
    }
  std::vector<int> orders;
  int center = 0;
  for (const auto& m : elems) {
    int k = 1;
    auto x = m;
    while (!x.is_identity()) {
      x = x * m;
      ++k;
    }
    orders.push_back(k);
    bool central = std::all_of(elems.begin(), elems.end(), [&](const gf::Matrix& y) { return m * y == y * m; });
    center += central;
  }
  std::sort(orders.begin(), orders.end());
  if (orders != it->second.first || center != it->second.second)
    throw std::runtime_error("automizer " + a.name + " does not have the expected isomorphism type");
}

}  // namespace perverx::group
