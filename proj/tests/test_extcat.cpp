#include <chrono>

#include "doctest.h"
#include "gen.hpp"
#include "nexang/extcat.hpp"

using namespace nexang;

namespace {

Object grp(std::vector<Int> f) { return Object::group(FinAbGroup(std::move(f))); }

// Every valid pair (a, c) : d -> r by brute force.
std::vector<ExtMorphism> brute_homs(const ExtCategory& x, const Extension& d, const Extension& r) {
  const auto& c = x.category();
  std::vector<ExtMorphism> out;
  for (const auto& a : c.hom_elements(d.A, r.A))
    for (const auto& cc : c.hom_elements(d.C, r.C)) {
      auto v = check_morphism(x.bifunctor(), d, r, a, cc);
      if (auto* m = std::get_if<ExtMorphism>(&v)) out.push_back(*m);
    }
  return out;
}

bool isomorphic(const ExtCategory& x, const Extension& d, const Extension& r) {
  for (const auto& f : brute_homs(x, d, r))
    if (x.inverse(f)) return true;
  return false;
}

void print(const Report& r) {
  if (!r.passed()) MESSAGE(r.to_text());
}

}  // namespace

TEST_CASE("morphisms of extensions") {
  auto fin = std::make_shared<FinAbBackend>(4);
  auto hom = std::make_shared<HomBifunctor>(fin);
  ExtCategory x(hom);
  auto z4 = grp({4}), z2 = grp({2});
  auto u = fin->universe(1);
  // Hom: (a, c) valid iff a d = r c
  for (const auto& A : u)
    for (const auto& C : u)
      for (const auto& B : u)
        for (const auto& D : u)
          for (const auto& d : hom->all(C, A))
            for (const auto& r : hom->all(D, B))
              for (const auto& a : fin->hom_elements(A, B))
                for (const auto& c : fin->hom_elements(C, D)) {
                  bool square = fin->compose(a, hom->as_morphism(d)) == fin->compose(hom->as_morphism(r), c);
                  CHECK(std::holds_alternative<ExtMorphism>(check_morphism(*hom, d, r, a, c)) == square);
                }
  auto d = hom->make(z4, z4, {2});
  CHECK(x.identity(d).a == fin->identity(z4));
  auto bad = check_morphism(*hom, d, hom->make(z4, z4, {1}), fin->identity(z4), fin->identity(z4));
  REQUIRE(std::holds_alternative<Violation>(bad));
  CHECK(std::get<Violation>(bad).lhs != std::get<Violation>(bad).rhs);
  CHECK_THROWS_AS(make_morphism(*hom, d, hom->make(z4, z4, {1}), fin->identity(z4), fin->identity(z4)), Error);

  ExtCategory sx(std::make_shared<SplitBifunctor>(fin));
  const auto& sb = sx.bifunctor();
  for (const auto& a : fin->hom_elements(z4, z2))
    for (const auto& c : fin->hom_elements(z2, z4))
      CHECK(std::holds_alternative<ExtMorphism>(check_morphism(sb, sb.zero(z2, z4), sb.zero(z4, z2), a, c)));
}

TEST_CASE("hom spaces of extensions match brute force") {
  auto fin = std::make_shared<FinAbBackend>(4);
  for (BifunctorPtr e : {BifunctorPtr(std::make_shared<HomBifunctor>(fin)), BifunctorPtr(std::make_shared<Ext1Bifunctor>(fin))}) {
    ExtCategory x(e);
    auto u = fin->universe(1);
    for (int t = 0; t < 40; ++t) {
      auto pick = [&] { return u[gen::uniform(0, static_cast<Int>(u.size()) - 1)]; };
      auto A = pick(), B = pick(), C = pick(), D = pick();
      Extension d{A, C, gen::element(e->value(C, A))}, r{B, D, gen::element(e->value(D, B))};
      auto space = x.hom(d, r);
      CHECK(space.group().order() == static_cast<Int>(brute_homs(x, d, r).size()));
      for (const auto& k : enumerate(space.group())) CHECK_NOTHROW(space.morphism(k));
    }
  }
}

TEST_CASE("composition and biproducts of extensions") {
  auto fin = std::make_shared<FinAbBackend>(4);
  auto hom = std::make_shared<HomBifunctor>(fin);
  ExtCategory x(hom);
  auto z4 = grp({4}), z2 = grp({2});
  auto d = hom->make(z4, z4, {2}), r = hom->make(z2, z4, {2});
  // (a, c) : d -> d with a = c = x3
  auto f = make_morphism(*hom, d, d, fin->scale(3, fin->identity(z4)), fin->scale(3, fin->identity(z4)));
  auto g = x.compose(f, f);
  CHECK(g.a == fin->compose(f.a, f.a));
  CHECK(x.compose(x.identity(d), f) == f);
  CHECK_THROWS_AS(x.compose(f, x.identity(r)), Error);

  auto b = x.biproduct(d, r);
  // block-diagonal morphism C + D -> A + B
  auto bd = fin->direct_sum(hom->as_morphism(d), hom->as_morphism(r));
  CHECK(hom->as_morphism(b.sum) == bd);
  CHECK(x.compose(b.pi1, b.iota1) == x.identity(d));
  CHECK(x.compose(b.pi2, b.iota1) == x.zero(d, r));
  CHECK(b.iota1.a == fin->biproduct(z4, z4).iota1);
}

TEST_CASE("a nonsplit conflation of arrows") {
  auto fin = std::make_shared<FinAbBackend>(4);
  auto hom = std::make_shared<HomBifunctor>(fin);
  ExtCategory x(hom);
  auto z4 = grp({4}), z44 = grp({4, 4});
  auto d = hom->make(z4, z4, {2});
  auto rho = Extension{z44, z44, fin->to_coords(fin->hom(z44, z44, Matrix{{2, 1}, {0, 2}}))};
  auto b = fin->biproduct(z4, z4);
  auto f = make_morphism(*hom, d, rho, b.iota1, b.iota1);
  auto g = make_morphism(*hom, rho, d, b.pi2, b.pi2);
  auto res = x.is_conflation(f, g);
  CHECK(res.holds);
  CHECK(res.dual_holds);
  // not split: no retraction of f in the category of extensions
  bool splits = false;
  for (const auto& r : brute_homs(x, rho, d)) splits = splits || x.compose(r, f) == x.identity(d);
  CHECK_FALSE(splits);
  // reconstructed from its inflation
  auto s = x.complete_inflation(f);
  REQUIRE(s);
  CHECK(isomorphic(x, s->deflation.target, d));

  // x2 is not a section
  auto two = fin->scale(2, fin->identity(z4));
  auto h = make_morphism(*hom, d, d, two, two);
  auto neg = x.is_conflation(h, x.identity(d));
  CHECK_FALSE(neg.holds);
  CHECK_FALSE(neg.dual_holds);
  CHECK(neg.reason == "a is not a section");
  CHECK_FALSE(x.complete_inflation(h));
}

TEST_CASE("completing inflations and deflations") {
  auto fin = std::make_shared<FinAbBackend>(8);
  auto ext = std::make_shared<Ext1Bifunctor>(fin);
  ExtCategory x(ext);
  auto u = fin->universe(1);
  for (int t = 0; t < 40; ++t) {
    auto pick = [&] { return u[gen::uniform(0, static_cast<Int>(u.size()) - 1)]; };
    auto A = pick(), B = pick(), C = pick(), D = pick();
    Extension d{A, C, gen::element(ext->value(C, A))}, r{B, D, gen::element(ext->value(D, B))};
    auto b = x.biproduct(d, r);
    auto s = x.complete_inflation(b.iota1);
    REQUIRE(s);
    CHECK(isomorphic(x, s->deflation.target, r));
    auto id = x.complete_inflation(x.identity(d));
    REQUIRE(id);
    CHECK(id->deflation.target.A == grp({}));
    CHECK(id->deflation.target.C == grp({}));
    auto k = x.complete_deflation(b.pi2);
    REQUIRE(k);
    CHECK(isomorphic(x, k->inflation.source, d));
    for (const auto* c : {&*s, &*k}) {
      CHECK(x.is_conflation(c->inflation, c->deflation).holds);
      auto cs = x.canonical_form(*c);
      CHECK(x.compose(cs.iso, c->inflation) == cs.inflation);
      CHECK(x.compose(cs.deflation, cs.iso) == c->deflation);
    }
  }
}

TEST_CASE("kernel and pushout properties agree with brute force") {
  auto fin = std::make_shared<FinAbBackend>(4);
  auto ext = std::make_shared<Ext1Bifunctor>(fin);
  ExtCategory x(ext);
  auto z2 = grp({2}), z4 = grp({4});
  auto d = ext->make(z2, z2, {1});
  auto r = ext->make(z4, z2, {1});
  auto b = x.biproduct(d, r);
  auto s = x.complete_inflation(b.iota1);
  REQUIRE(s);
  auto u = fin->universe(1);
  for (const auto& A : u)
    for (const auto& C : u)
      for (const auto& t : ext->all(C, A)) {
        // kernel: maps t -> middle killed by the deflation correspond to maps t -> d
        std::size_t killed = 0;
        for (const auto& y : brute_homs(x, t, s->inflation.target))
          killed += x.compose(s->deflation, y) == x.zero(t, s->deflation.target);
        bool brute = brute_homs(x, t, d).size() == killed;
        CHECK(x.kernel_property(*s, t) == brute);
        CHECK(brute);
        CHECK(x.cokernel_property(*s, t));
      }
  // pushout along a nonzero map d -> d
  auto h = make_morphism(*ext, d, d, fin->identity(z2), fin->identity(z2));
  auto sq = x.pushout(b.iota1, h);
  REQUIRE(sq);
  for (const auto& t : ext->all(z4, z4)) CHECK(x.pushout_property(b.iota1, h, *sq, t));
  CHECK(x.is_inflation(sq->leg1));
}

TEST_CASE("exact category verifier") {
  VerifyConfig cfg;
  auto fin4 = std::make_shared<FinAbBackend>(4);
  auto timed = [&](const ExtCategory& x, VerifyConfig c) {
    auto t0 = std::chrono::steady_clock::now();
    auto rep = verify_exact_category(x, c);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE(rep.subject << ": " << dt << " s");
    print(rep);
    return rep;
  };
  SUBCASE("split") {
    auto rep = timed(ExtCategory(std::make_shared<SplitBifunctor>(fin4)), cfg);
    CHECK(rep.passed());
    CHECK(rep.find("E2")->instances > 0);
  }
  SUBCASE("hom") {
    auto c = cfg;
    c.object_cap = 1;
    CHECK(timed(ExtCategory(std::make_shared<HomBifunctor>(fin4)), c).passed());
  }
  SUBCASE("ext1") {
    auto c = cfg;
    c.object_cap = 1;
    auto rep = timed(ExtCategory(std::make_shared<Ext1Bifunctor>(std::make_shared<FinAbBackend>(8))), c);
    CHECK(rep.passed());
  }
}
