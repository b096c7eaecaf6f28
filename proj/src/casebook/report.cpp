#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "perverx/casebook.hpp"

namespace perverx::casebook {

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Format parse_format(const std::string& s) {
  if (s == "txt" || s == "text") return Format::Text;
  if (s == "md" || s == "markdown") return Format::Markdown;
  if (s == "tsv") return Format::Tsv;
  throw std::invalid_argument("unknown format " + s);
}

namespace {

std::string pad(const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); }

void text_table(std::ostream& os, const Table& t) {
  os << "\n== " << t.title << " ==\n";
  std::vector<std::size_t> w(t.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    if (row.size() > w.size()) w.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], row[i].size());
  };
  widen(t.header);
  for (const auto& r : t.rows) widen(r);
  auto line = [&](const std::vector<std::string>& row) {
    std::string s;
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "  " : "") + (i + 1 < row.size() ? pad(row[i], w[i]) : row[i]);
    os << s << "\n";
  };
  if (!t.header.empty()) line(t.header);
  for (const auto& r : t.rows) line(r);
}

std::string md_cell(std::string s) {
  std::string out;
  for (char c : s) out += c == '|' ? std::string("\\|") : std::string(1, c);
  return out.empty() ? " " : out;
}

void md_table(std::ostream& os, const Table& t) {
  os << "\n## " << t.title << "\n\n";
  std::size_t n = t.header.size();
  for (const auto& r : t.rows) n = std::max(n, r.size());
  auto line = [&](const std::vector<std::string>& row) {
    os << "|";
    for (std::size_t i = 0; i < n; ++i) os << " " << md_cell(i < row.size() ? row[i] : "") << " |";
    os << "\n";
  };
  line(t.header);
  os << "|";
  for (std::size_t i = 0; i < n; ++i) os << " --- |";
  os << "\n";
  for (const auto& r : t.rows) line(r);
}

}  // namespace

std::string emit(const Report& r, Format f) {
  std::ostringstream os;
  switch (f) {
    case Format::Text:
      os << r.title << "\n";
      for (const auto& t : r.tables) text_table(os, t);
      if (!r.checks.empty()) {
        os << "\n== checks ==\n";
        for (const auto& c : r.checks)
          os << (c.pass ? "PASS  " : "FAIL  ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
        os << "\nresult: " << (r.ok() ? "PASS" : "FAIL") << "\n";
      }
      break;
    case Format::Markdown:
      os << "# " << r.title << "\n";
      for (const auto& t : r.tables) md_table(os, t);
      if (!r.checks.empty()) {
        Table t{"Checks", {"check", "result", "detail"}, {}};
        for (const auto& c : r.checks) t.rows.push_back({c.name, c.pass ? "PASS" : "FAIL", c.detail});
        md_table(os, t);
        os << "\n**result: " << (r.ok() ? "PASS" : "FAIL") << "**\n";
      }
      break;
    case Format::Tsv:
      os << "title\t" << r.title << "\n";
      for (const auto& t : r.tables) {
        os << t.title;
        for (const auto& h : t.header) os << "\t" << h;
        os << "\n";
        for (const auto& row : t.rows) {
          os << t.title;
          for (const auto& c : row) os << "\t" << c;
          os << "\n";
        }
      }
      for (const auto& c : r.checks) os << "check\t" << c.name << "\t" << (c.pass ? "PASS" : "FAIL") << "\t" << c.detail << "\n";
      if (!r.checks.empty()) os << "result\t" << (r.ok() ? "PASS" : "FAIL") << "\n";
      break;
  }
  return os.str();
}

}  // namespace perverx::casebook
