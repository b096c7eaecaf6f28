#pragma once

#include <map>
#include <random>

#include "perverx/gf.hpp"

namespace testing_support {

inline perverx::gf::Matrix random_matrix(const perverx::gf::Field& f, std::size_t r, std::size_t c,
                                         std::mt19937_64& rng) {
  perverx::gf::Matrix m(f, r, c);
  std::uniform_int_distribution<int> d(0, f.q() - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<perverx::gf::Elem>(d(rng));
  return m;
}

// Low-rank matrices exercise the degenerate branches.
inline perverx::gf::Matrix random_low_rank(const perverx::gf::Field& f, std::size_t r, std::size_t c, std::size_t k,
                                           std::mt19937_64& rng) {
  return random_matrix(f, r, k, rng) * random_matrix(f, k, c, rng);
}

}  // namespace testing_support

#include <stdexcept>
#include <string>

#include "perverx/group.hpp"

namespace testing_support {

inline const std::vector<perverx::group::Automizer>& automizers() {
  static auto a = perverx::group::load_automizers(std::string(PERVERX_DATA_DIR) + "/automizers.txt");
  return a;
}

// F3^2 x| E for a named automizer, cached so algebras built on it are shared.
inline perverx::group::GroupPtr local_group(const std::string& e) {
  static std::map<std::string, perverx::group::GroupPtr> cache;
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;
  for (const auto& a : automizers())
    if (a.name == e) return cache[e] = perverx::group::semidirect(a.data, "C3^2:" + e);
  throw std::runtime_error("no automizer " + e);
}

}  // namespace testing_support
