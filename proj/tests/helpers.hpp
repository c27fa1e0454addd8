#pragma once

#include <toricox/toricox.hpp>

#include <initializer_list>
#include <vector>

namespace toricox::testing {

inline Fan fan(std::size_t rank, std::initializer_list<std::initializer_list<long>> rays, std::vector<RayIndices> cones) {
  std::vector<IntVec> rs;
  for (const auto& r : rays) rs.push_back(int_vec(r));
  return Fan(rank, rs, std::move(cones), true);
}

inline IntVec iv(std::initializer_list<long> xs) { return int_vec(xs); }
inline RatVec rv(std::initializer_list<long> xs) { return rat_vec(xs); }

inline Rational q(long a, long b = 1) { return make_rational(a, b); }

inline TorusDivisor div(std::initializer_list<long> xs) { return TorusDivisor(rat_vec(xs)); }

/// Rank-2 fan whose maximal cones join consecutive rays.
inline Fan cyclic_fan(std::initializer_list<std::initializer_list<long>> rays) {
  std::vector<RayIndices> cones;
  for (std::size_t i = 0; i < rays.size(); ++i) cones.push_back({i, (i + 1) % rays.size()});
  return fan(2, rays, cones);
}

} // namespace toricox::testing
