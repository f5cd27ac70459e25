#pragma once

#include <random>
#include <tuple>
#include <vector>

#include "nexang/twocat.hpp"

namespace nexang::testing {

// Endofunctors of one structure and cells between them; ends[i] indexes functors.
struct CellPool {
  std::vector<ExFunctorPtr> functors;
  std::vector<ExNatTrans> cells;
  std::vector<std::pair<std::size_t, std::size_t>> ends;

  void add(ExNatTrans b, std::size_t from, std::size_t to) {
    cells.push_back(std::move(b));
    ends.emplace_back(from, to);
  }
  std::vector<std::size_t> between(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (ends[i] == std::make_pair(from, to)) out.push_back(i);
    return out;
  }
};

// (id, id) and (dup, diag) on Ext^1 over FinAb: scalars on both, the twist of X + X, Delta and Nabla.
inline CellPool ext1_pool(const std::shared_ptr<const FinAbBackend>& fin, const RealisationPtr& s) {
  CellPool p;
  auto e = s->bifunctor_ptr();
  auto id = identity_exfunctor(fin, s);
  auto dup = make_exfunctor(diagonal_gamma(e, duplication_functor(fin)), s, s);
  p.functors = {id, dup};
  for (Int m = 0; m < 4; ++m) p.add(scalar_nt(id, m), 0, 0);
  for (Int m = 0; m < 4; ++m) p.add(scalar_nt(dup, m), 1, 1);
  p.add(ExNatTrans{"twist", dup, dup,
                   [fin](const Object& x) {
                     auto b = fin->biproduct(x, x);
                     return fin->row(b.iota2, b.iota1);
                   }},
        1, 1);
  p.add(ExNatTrans{"Delta", id, dup, [fin](const Object& x) { return fin->diagonal(x); }}, 0, 1);
  p.add(ExNatTrans{"Nabla", dup, id, [fin](const Object& x) { return fin->codiagonal(x); }}, 1, 0);
  return p;
}

// id and R on the relabeling table: scalars 0 and 1 on both, s : id => R and its inverse.
inline CellPool relabel_pool(const RelabelingFixture& fx) {
  CellPool p;
  p.functors = {fx.id, fx.r};
  for (Int m = 0; m < 2; ++m) {
    p.add(scalar_nt(fx.id, m), 0, 0);
    p.add(scalar_nt(fx.r, m), 1, 1);
  }
  p.add(fx.iso, 0, 1);
  p.add(fx.iso_inv, 1, 0);
  return p;
}

// (d2, b2, d1, b1) with b1 : F => G, b2 : G => H, d1 : L => M, d2 : M => N.
inline std::tuple<ExNatTrans, ExNatTrans, ExNatTrans, ExNatTrans> sample_grid(const CellPool& p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> fun(0, p.functors.size() - 1);
  auto pick = [&](std::size_t a, std::size_t b) -> const ExNatTrans& {
    auto c = p.between(a, b);
    std::uniform_int_distribution<std::size_t> k(0, c.size() - 1);
    return p.cells[c[k(rng)]];
  };
  auto f = fun(rng), g = fun(rng), h = fun(rng), l = fun(rng), m = fun(rng), n = fun(rng);
  const auto& b1 = pick(f, g);
  const auto& b2 = pick(g, h);
  const auto& d1 = pick(l, m);
  const auto& d2 = pick(m, n);
  return {d2, b2, d1, b1};
}

}  // namespace nexang::testing
