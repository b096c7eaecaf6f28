#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "perverx/rep.hpp"

namespace perverx::rep {

std::vector<std::vector<int>> match_projective_displays(const SimpleIndex& idx, const std::vector<std::string>& labels,
                                                        const std::vector<std::string>& displays) {
  const std::size_t n = idx.size();
  if (labels.size() != n || displays.size() != n) throw std::invalid_argument("match_projective_displays: wrong length");
  std::vector<std::vector<Multiplicities>> layers(n);
  for (std::size_t s = 0; s < n; ++s) layers[s] = loewy_layers(idx.projective(s), idx);
  // displays as label-index layers
  std::vector<std::vector<std::vector<int>>> want(n);
  for (std::size_t i = 0; i < n; ++i) {
    want[i].emplace_back(n, 0);
    for (char c : displays[i]) {
      if (c == '/') {
        want[i].emplace_back(n, 0);
        continue;
      }
      auto it = std::find(labels.begin(), labels.end(), std::string(1, c));
      if (it == labels.end()) throw std::invalid_argument("unknown label in display " + displays[i]);
      ++want[i].back()[it - labels.begin()];
    }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto dims_ok = [&](const std::vector<int>& o) {
    for (std::size_t i = 0; i < n; ++i)
      if (idx.simple(o[i]).module.dim != idx.simple(i).module.dim) return false;
    return true;
  };
  do {
    if (!dims_ok(order)) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const auto& have = layers[order[i]];
      if (have.size() != want[i].size()) {
        ok = false;
        break;
      }
      for (std::size_t l = 0; l < have.size() && ok; ++l)
        for (std::size_t j = 0; j < n; ++j)
          if (have[l][order[j]] != want[i][l][j]) {
            ok = false;
            break;
          }
    }
    if (ok) out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace perverx::rep
