#include "cells.hpp"
#include "doctest.h"
#include "nexang/twocat.hpp"

using namespace nexang;
using namespace nexang::testing;

namespace {

Object grp(std::vector<Int> f) { return Object::group(FinAbGroup(std::move(f))); }

VerifyConfig cap(int k) {
  VerifyConfig c;
  c.object_cap = k;
  return c;
}

struct Ext1Setup {
  std::shared_ptr<FinAbBackend> fin;
  std::shared_ptr<Ext1Bifunctor> ext;
  RealisationPtr s;
  CellPool pool;

  explicit Ext1Setup(Int exponent)
      : fin(std::make_shared<FinAbBackend>(exponent)),
        ext(std::make_shared<Ext1Bifunctor>(fin)),
        s(std::make_shared<Ext1Realisation>(ext)),
        pool(ext1_pool(fin, s)) {}

  const ExFunctorPtr& id() const { return pool.functors[0]; }
  const ExFunctorPtr& dup() const { return pool.functors[1]; }
};

}  // namespace

TEST_CASE("n-exangulated natural transformations") {
  Ext1Setup x(4);
  auto cfg = cap(2);
  for (std::size_t i = 0; i < x.pool.cells.size(); ++i) {
    const auto& b = x.pool.cells[i];
    auto n = check_natural(b, cfg);
    auto v = check_exangulated_nt(b, cfg);
    CHECK_MESSAGE(n.holds, b.name << ": " << n.witness);
    CHECK_MESSAGE(v.holds, b.name << ": " << v.witness);
    CHECK(v.instances > 0);
  }

  SUBCASE("mismatched Gamma and Lambda") {
    auto two = make_exfunctor(scalar_gamma(x.ext, identity_functor(x.fin), 2), x.s, x.s);
    ExNatTrans b{"id", x.id(), two, [&](const Object& o) { return x.fin->identity(o); }};
    CHECK(check_natural(b, cfg).holds);
    auto v = check_exangulated_nt(b, cfg);
    CHECK_FALSE(v.holds);
    CHECK(v.witness.find("Lambda(d)") != std::string::npos);
  }
  SUBCASE("not natural") {
    auto z2 = grp({2});
    ExNatTrans b{"spike", x.id(), x.id(), [&](const Object& o) {
                   return o == z2 ? x.fin->identity(o) : x.fin->zero(o, o);
                 }};
    auto n = check_natural(b, cfg);
    CHECK_FALSE(n.holds);
    CHECK(n.witness.find("b_Y F f") != std::string::npos);
  }
}

TEST_CASE("vertical and horizontal composition") {
  Ext1Setup x(4);
  auto cfg = cap(2);
  const auto& p = x.pool;

  for (Int m = 0; m < 4; ++m)
    for (Int k = 0; k < 4; ++k) {
      auto c = vcompose(scalar_nt(x.id(), m), scalar_nt(x.id(), k));
      CHECK(same_nt(c, scalar_nt(x.id(), m * k), 2).holds);
    }
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    const auto& b = p.cells[i];
    CHECK(same_nt(vcompose(b, identity_nt(b.source)), b, 1).holds);
    CHECK(same_nt(vcompose(identity_nt(b.target), b), b, 1).holds);
  }
  // Delta then Nabla is 2 on id; Nabla then Delta is not a scalar.
  auto delta = p.cells[p.between(0, 1)[0]];
  auto nabla = p.cells[p.between(1, 0)[0]];
  CHECK(same_nt(vcompose(nabla, delta), scalar_nt(x.id(), 2), 2).holds);
  CHECK_FALSE(same_nt(vcompose(delta, nabla), scalar_nt(x.dup(), 1), 1).holds);
  CHECK_THROWS_AS(vcompose(delta, delta), Error);
  try {
    vcompose(delta, delta);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EndpointMismatch);
  }

  SUBCASE("hcompose equals its whisker decomposition and stays exangulated") {
    for (const auto& d : p.cells)
      for (const auto& b : p.cells) {
        auto h = hcompose(d, b);
        auto w = vcompose(whisker_right(d, b.target), whisker_left(d.source, b));
        auto same = same_nt(h, w, 1);
        CHECK_MESSAGE(same.holds, d.name << " o_h " << b.name << ": " << same.witness);
        CHECK(check_natural(h, cap(1)).holds);
        CHECK(check_exangulated_nt(h, cap(1)).holds);
      }
  }
  SUBCASE("associativity and units") {
    auto scal = [&](Int m) { return scalar_nt(x.dup(), m); };
    for (Int a = 0; a < 4; ++a)
      for (Int b = 0; b < 4; ++b) {
        auto l = hcompose(hcompose(scal(a), delta), nabla);
        auto r = hcompose(scal(a), hcompose(delta, nabla));
        CHECK(same_nt(l, r, 1).holds);
        auto v1 = vcompose(vcompose(scal(a), scal(b)), delta);
        auto v2 = vcompose(scal(a), vcompose(scal(b), delta));
        CHECK(same_nt(v1, v2, 1).holds);
      }
    auto ide = identity_nt(x.id());
    for (const auto& b : p.cells) {
      CHECK(same_nt(hcompose(ide, b), hcompose(b, ide), 1).holds);
      auto hl = hcompose(ide, b);
      for (const auto& o : x.fin->universe(1)) CHECK(hl(o) == b(o));
    }
  }
  SUBCASE("hcompose across structures needs matching ends") {
    auto fx = relabeling_fixture();
    CHECK_THROWS_AS(hcompose(identity_nt(fx.id), delta), Error);
  }
}

TEST_CASE("interchange law") {
  Ext1Setup x(4);
  for (Int m = 0; m < 4; ++m)
    for (Int k = 0; k < 4; ++k)
      for (Int q = 0; q < 4; ++q)
        for (Int r = 0; r < 4; ++r) {
          auto v = check_interchange(scalar_nt(x.id(), m), scalar_nt(x.id(), k), scalar_nt(x.id(), q),
                                     scalar_nt(x.id(), r), 1);
          CHECK(v.holds);
        }
  std::mt19937_64 rng(0);
  for (int i = 0; i < 40; ++i) {
    auto [d2, b2, d1, b1] = sample_grid(x.pool, rng);
    auto v = check_interchange(d2, b2, d1, b1, 1);
    CHECK_MESSAGE(v.holds, d2.name << "," << b2.name << "," << d1.name << "," << b1.name << ": " << v.witness);
  }
  auto fx = relabeling_fixture();
  auto rp = relabel_pool(fx);
  for (int i = 0; i < 40; ++i) {
    auto [d2, b2, d1, b1] = sample_grid(rp, rng);
    CHECK(check_interchange(d2, b2, d1, b1, 1).holds);
  }
}

TEST_CASE("bracket and split_nt") {
  Ext1Setup x(4);
  auto cfg = cap(1);
  for (const auto& b : x.pool.cells) {
    auto a = bracket(b);
    auto n = check_natural_ext(a, cfg);
    CHECK_MESSAGE(n.holds, b.name << ": " << n.witness);
    CHECK(is_balanced(a, b.source, b.target, 1).holds);
    auto [l, r] = split_nt(a, b.source, b.target);
    CHECK(same_nt(l, b, 1).holds);
    CHECK(same_nt(r, b, 1).holds);
    CHECK(same_ext_nt(bracket(unbracket(a, b.source, b.target)), a, cfg).holds);
  }
  for (const auto& d : x.fin->universe(1)) {
    auto a = bracket(identity_nt(x.id()));
    auto m = a(Extension{d, d, GroupElement::zero(x.ext->value(d, d))});
    CHECK(m.a == x.fin->identity(d));
    CHECK(m.c == x.fin->identity(d));
  }

  SUBCASE("the unbalanced transformation on the split structure") {
    auto fin = std::make_shared<FinAbBackend>(4);
    auto e = std::make_shared<SplitBifunctor>(fin);
    for (int n = 1; n <= 2; ++n) {
      auto s = make_realisation(e, n);
      auto id = identity_exfunctor(fin, s);
      auto a = unbalanced_fixture(id);
      auto nat = check_natural_ext(a, cap(2));
      CHECK_MESSAGE(nat.holds, nat.witness);
      auto bal = is_balanced(a, id, id, 1);
      CHECK_FALSE(bal.holds);
      CHECK(bal.witness.find("a^l") != std::string::npos);
      auto [l, r] = split_nt(a, id, id);
      CHECK(same_nt(l, identity_nt(id), 2).holds);
      CHECK(same_nt(r, scalar_nt(id, 0), 2).holds);
      CHECK_THROWS_AS(unbracket(a, id, id), Error);
    }
    auto ext = std::make_shared<Ext1Bifunctor>(fin);
    auto s1 = std::make_shared<Ext1Realisation>(ext);
    CHECK_THROWS_AS(unbalanced_fixture(identity_exfunctor(fin, s1)), Error);
  }
  SUBCASE("distinct cells give distinct brackets") {
    const auto& p = x.pool;
    for (std::size_t i = 0; i < p.cells.size(); ++i)
      for (std::size_t j = 0; j < p.cells.size(); ++j) {
        if (p.ends[i] != p.ends[j]) continue;
        bool cells = same_nt(p.cells[i], p.cells[j], 1).holds;
        bool brackets = same_ext_nt(bracket(p.cells[i]), bracket(p.cells[j]), cfg).holds;
        CHECK(cells == brackets);
        CHECK(cells == (i == j));
      }
  }
}

TEST_CASE("the assignments on cells preserve identities and compositions") {
  auto cfg = cap(1);
  auto run = [&](const CellPool& p) {
    for (const auto& f : p.functors) {
      auto ef = daleth1(*f, cfg);
      CHECK(same_ext_nt(daleth2(identity_nt(f)), identity_ext_nt(ef), cfg).holds);
    }
    for (std::size_t i = 0; i < p.cells.size(); ++i)
      for (std::size_t j = 0; j < p.cells.size(); ++j) {
        const auto& b1 = p.cells[i];
        const auto& b2 = p.cells[j];
        if (p.ends[i].second == p.ends[j].first) {
          auto v = same_ext_nt(daleth2(vcompose(b2, b1)), vcompose_ext(daleth2(b2), daleth2(b1)), cfg);
          CHECK_MESSAGE(v.holds, b2.name << " o_v " << b1.name << ": " << v.witness);
        }
        auto h = same_ext_nt(daleth2(hcompose(b2, b1)), hcompose_ext(daleth2(b2), daleth2(b1)), cfg);
        CHECK_MESSAGE(h.holds, b2.name << " o_h " << b1.name << ": " << h.witness);
      }
  };
  Ext1Setup x(4);
  run(x.pool);
  auto fx = relabeling_fixture();
  run(relabel_pool(fx));

  auto comp = compose_exfunctors(x.dup(), x.dup());
  auto lhs = daleth1(*comp, cfg);
  auto rhs = compose_extfunctors(daleth1(*x.dup(), cfg), daleth1(*x.dup(), cfg));
  CHECK(same_extfunctor(*lhs, *rhs, cfg).holds);
  auto xc = daleth0(*x.s);
  CHECK(&xc.bifunctor() == x.ext.get());
}

TEST_CASE("adjoint pairs") {
  Ext1Setup x(4);
  auto cfg = cap(2);

  SUBCASE("identity") {
    Adjunction adj{x.id(), x.id(), identity_nt(x.id()), identity_nt(x.id())};
    adj.unit.target = compose_exfunctors(x.id(), x.id());
    adj.counit.source = compose_exfunctors(x.id(), x.id());
    auto rep = check_adjoint_pair(adj, cfg);
    if (!rep.passed()) MESSAGE(rep.to_text());
    CHECK(rep.passed());
    CHECK(rep.find("transported.left")->status == Status::Pass);
    CHECK(rep.find("formula.i")->instances > 0);
    CHECK(is_adjoint_equivalence(adj, cfg).holds);
    CHECK(is_equivalence(*x.id(), cfg).holds);
  }
  SUBCASE("duplication is self-adjoint but no equivalence") {
    auto fin = x.fin;
    auto dd = compose_exfunctors(x.dup(), x.dup());
    ExNatTrans unit{"eta", x.id(), dd, [fin](const Object& o) {
                      auto b = fin->biproduct(o, o);
                      return fin->column(b.iota1, b.iota2);
                    }};
    ExNatTrans counit{"eps", dd, x.id(), [fin](const Object& o) {
                        auto b = fin->biproduct(o, o);
                        return fin->row(b.pi1, b.pi2);
                      }};
    Adjunction adj{x.dup(), x.dup(), unit, counit};
    auto rep = check_adjoint_pair(adj, cap(1));
    if (!rep.passed()) MESSAGE(rep.to_text());
    CHECK(rep.passed());
    CHECK_FALSE(is_adjoint_equivalence(adj, cap(1)).holds);
    auto eq = is_equivalence(*x.dup(), cfg);
    CHECK_FALSE(eq.holds);
    CHECK(eq.witness.find("Gamma") != std::string::npos);
  }
  SUBCASE("broken unit") {
    Adjunction adj{x.id(), x.id(), scalar_nt(x.id(), 3), identity_nt(x.id())};
    adj.unit.target = compose_exfunctors(x.id(), x.id());
    adj.counit.source = compose_exfunctors(x.id(), x.id());
    auto rep = check_adjoint_pair(adj, cfg);
    CHECK_FALSE(rep.passed());
    CHECK(rep.find("triangle.left")->status == Status::Fail);
    CHECK(rep.find("formula.i")->status == Status::Fail);
    CHECK(rep.find("transported.left")->status == Status::Skipped);
  }
  SUBCASE("wrong endpoints") {
    Adjunction adj{x.id(), x.id(), identity_nt(x.dup()), identity_nt(x.id())};
    auto rep = check_adjoint_pair(adj, cfg);
    CHECK_FALSE(rep.passed());
    CHECK(rep.find("unit.endpoints")->status == Status::Fail);
  }
  SUBCASE("relabeling") {
    auto fx = relabeling_fixture();
    auto rep = check_adjoint_pair(fx.adjunction, cfg);
    if (!rep.passed()) MESSAGE(rep.to_text());
    CHECK(rep.passed());
    CHECK(is_adjoint_equivalence(fx.adjunction, cfg).holds);
    CHECK(is_equivalence(*fx.r, cfg).holds);
    CHECK(check_natural(fx.iso, cfg).holds);
    CHECK(check_exangulated_nt(fx.iso_inv, cfg).holds);
    CHECK(same_nt(vcompose(fx.iso_inv, fx.iso), identity_nt(fx.id), 2).holds);
    CHECK_FALSE(same_nt(fx.iso, identity_nt(fx.id), 2).holds);
  }
}
