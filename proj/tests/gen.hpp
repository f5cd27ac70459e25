#pragma once

#include <random>
#include <vector>

#include "nexang/algebra.hpp"

namespace gen {

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(20240611);
  return r;
}

inline nexang::Int uniform(nexang::Int lo, nexang::Int hi) {
  return std::uniform_int_distribution<nexang::Int>(lo, hi)(rng());
}

// Orders drawn from divisors of `exponent`; up to `max_rank` cyclic summands.
inline nexang::FinAbGroup group(nexang::Int exponent, std::size_t max_rank) {
  std::vector<nexang::Int> divs;
  for (nexang::Int d = 1; d <= exponent; ++d)
    if (exponent % d == 0) divs.push_back(d);
  std::vector<nexang::Int> orders(static_cast<std::size_t>(uniform(0, static_cast<nexang::Int>(max_rank))));
  for (auto& o : orders) o = divs[static_cast<std::size_t>(uniform(0, static_cast<nexang::Int>(divs.size()) - 1))];
  return nexang::FinAbGroup::sum_of_cyclic(orders);
}

inline nexang::GroupHom hom(const nexang::FinAbGroup& g, const nexang::FinAbGroup& h) {
  nexang::Matrix m(h.rank(), g.rank());
  for (std::size_t i = 0; i < h.rank(); ++i)
    for (std::size_t j = 0; j < g.rank(); ++j) {
      nexang::Int b = h.factors()[i];
      nexang::Int step = b / nexang::gcd(b, g.factors()[j]);
      m(i, j) = step * uniform(0, b);
    }
  return {g, h, m};
}

inline nexang::GroupElement element(const nexang::FinAbGroup& g) {
  std::vector<nexang::Int> c;
  for (auto f : g.factors()) c.push_back(uniform(0, f - 1));
  return {g, c};
}

inline nexang::Matrix matrix(std::size_t r, std::size_t c, nexang::Int lo, nexang::Int hi) {
  nexang::Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(lo, hi);
  return m;
}

}  // namespace gen
