#include "nexang/extcat.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <numeric>

namespace nexang {

std::string ExtMorphism::to_string() const {
  return "(" + a.to_string() + ", " + c.to_string() + ") : " + source.to_string() + " -> " + target.to_string();
}

std::variant<ExtMorphism, Violation> check_morphism(const Bifunctor& e, const Extension& d, const Extension& r,
                                                    const Morphism& a, const Morphism& c) {
  if (a.source != d.A || a.target != r.A || c.source != d.C || c.target != r.C)
    throw Error(ErrorCode::ObjectMismatch, "components do not match the extensions");
  auto lhs = e.push(a, d).cls;
  auto rhs = e.pull(c, r).cls;
  if (lhs != rhs) return Violation{"a_E d != c^E r", lhs, rhs};
  return ExtMorphism{d, r, a, c};
}

ExtMorphism make_morphism(const Bifunctor& e, const Extension& d, const Extension& r, const Morphism& a,
                          const Morphism& c) {
  auto v = check_morphism(e, d, r, a, c);
  if (auto* bad = std::get_if<Violation>(&v))
    throw Error(ErrorCode::NotAMorphism, "not a morphism of extensions: a_E d = " + bad->lhs.to_string() +
                                             ", c^E r = " + bad->rhs.to_string());
  return std::get<ExtMorphism>(std::move(v));
}

// ---------------------------------------------------------------- hom spaces

namespace {

struct ExtSlot {
  Extension source, target;
};

using PairFn = std::function<std::vector<Morphism>(const std::vector<std::pair<Morphism, Morphism>>&)>;

// Unknown pairs (a, c) for each slot; equations: validity of each pair, then extra(pairs) in the given hom slots.
AffineSystem ext_system(const Bifunctor& e, const std::vector<ExtSlot>& unknowns, const std::vector<Slot>& extra,
                        const PairFn& fn) {
  const auto& cat = e.category();
  std::vector<FinAbGroup> ug, eg;
  for (const auto& s : unknowns) {
    ug.push_back(cat.hom_group(s.source.A, s.target.A));
    ug.push_back(cat.hom_group(s.source.C, s.target.C));
    eg.push_back(e.value(s.source.C, s.target.A));
  }
  for (const auto& s : extra) eg.push_back(cat.hom_group(s.source, s.target));
  return AffineSystem(ug, eg, [&e, &cat, unknowns, extra, fn](const AffineSystem::Values& v) {
    std::vector<std::pair<Morphism, Morphism>> pairs;
    AffineSystem::Values out;
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
      const auto& s = unknowns[k];
      auto a = cat.from_coords(s.source.A, s.target.A, v[2 * k]);
      auto c = cat.from_coords(s.source.C, s.target.C, v[2 * k + 1]);
      out.push_back(e.push(a, s.source).cls - e.pull(c, s.target).cls);
      pairs.emplace_back(std::move(a), std::move(c));
    }
    if (!extra.empty())
      for (const auto& m : fn(pairs)) out.push_back(cat.to_coords(m));
    return out;
  });
}

Int ext_hom_order(const Bifunctor& e, const Extension& d, const Extension& r) {
  return ext_system(e, {{d, r}}, {}, {}).kernel_order();
}

}  // namespace

ExtHomSpace::ExtHomSpace(const Bifunctor& e, Extension d, Extension r) : e_(&e), d_(std::move(d)), r_(std::move(r)) {
  const auto& cat = e.category();
  hom_a_ = cat.hom_group(d_.A, r_.A);
  hom_c_ = cat.hom_group(d_.C, r_.C);
  auto sys = ext_system(e, {{d_, r_}}, {}, {});
  auto k = linear::kernel(sys.linear_part());
  group_ = k.group;
  inclusion_ = k.inclusion;
}

ExtMorphism ExtHomSpace::morphism(const GroupElement& k) const {
  if (k.parent != group_) throw Error(ErrorCode::ObjectMismatch, "element of another hom space");
  auto flat = inclusion_.apply(k.coords);
  std::vector<Int> ca(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(hom_a_.rank()));
  std::vector<Int> cc(flat.begin() + static_cast<std::ptrdiff_t>(hom_a_.rank()), flat.end());
  const auto& cat = e_->category();
  auto a = cat.from_coords(d_.A, r_.A, GroupElement::make(hom_a_, ca));
  auto c = cat.from_coords(d_.C, r_.C, GroupElement::make(hom_c_, cc));
  return make_morphism(*e_, d_, r_, a, c);
}

std::vector<ExtMorphism> ExtHomSpace::generators() const {
  std::vector<ExtMorphism> out;
  for (std::size_t i = 0; i < group_.rank(); ++i) out.push_back(morphism(GroupElement::basis(group_, i)));
  return out;
}

// ---------------------------------------------------------------- category structure

Extension ExtCategory::zero_object() const {
  auto z = category().zero_object();
  return e_->zero(z, z);
}

ExtMorphism ExtCategory::identity(const Extension& d) const {
  const auto& c = category();
  return make_morphism(*e_, d, d, c.identity(d.A), c.identity(d.C));
}

ExtMorphism ExtCategory::compose(const ExtMorphism& g, const ExtMorphism& f) const {
  if (f.target != g.source) throw Error(ErrorCode::ObjectMismatch, "extension mismatch in composition");
  const auto& c = category();
  return make_morphism(*e_, f.source, g.target, c.compose(g.a, f.a), c.compose(g.c, f.c));
}

ExtMorphism ExtCategory::add(const ExtMorphism& f, const ExtMorphism& g) const {
  if (f.source != g.source || f.target != g.target) throw Error(ErrorCode::ObjectMismatch, "adding morphisms with different ends");
  const auto& c = category();
  return make_morphism(*e_, f.source, f.target, c.add(f.a, g.a), c.add(f.c, g.c));
}

ExtMorphism ExtCategory::negate(const ExtMorphism& f) const {
  const auto& c = category();
  return make_morphism(*e_, f.source, f.target, c.negate(f.a), c.negate(f.c));
}

ExtMorphism ExtCategory::zero(const Extension& d, const Extension& r) const {
  const auto& c = category();
  return make_morphism(*e_, d, r, c.zero(d.A, r.A), c.zero(d.C, r.C));
}

std::optional<ExtMorphism> ExtCategory::inverse(const ExtMorphism& f) const {
  const auto& c = category();
  auto ai = nexang::inverse(c, f.a);
  auto ci = nexang::inverse(c, f.c);
  if (!ai || !ci) return std::nullopt;
  return make_morphism(*e_, f.target, f.source, *ai, *ci);
}

ExtBiproduct ExtCategory::biproduct(const Extension& d, const Extension& r) const {
  const auto& c = category();
  auto ba = c.biproduct(d.A, r.A);
  auto bc = c.biproduct(d.C, r.C);
  auto s = direct_sum(*e_, d, r);
  return ExtBiproduct{s, make_morphism(*e_, d, s, ba.iota1, bc.iota1), make_morphism(*e_, r, s, ba.iota2, bc.iota2),
                      make_morphism(*e_, s, d, ba.pi1, bc.pi1), make_morphism(*e_, s, r, ba.pi2, bc.pi2)};
}

ExtMorphism ExtCategory::column(const ExtMorphism& f, const ExtMorphism& g) const {
  if (f.source != g.source) throw Error(ErrorCode::ObjectMismatch, "column of morphisms with different sources");
  const auto& c = category();
  return make_morphism(*e_, f.source, direct_sum(*e_, f.target, g.target), c.column(f.a, g.a), c.column(f.c, g.c));
}

ExtMorphism ExtCategory::row(const ExtMorphism& f, const ExtMorphism& g) const {
  if (f.target != g.target) throw Error(ErrorCode::ObjectMismatch, "row of morphisms with different targets");
  const auto& c = category();
  return make_morphism(*e_, direct_sum(*e_, f.source, g.source), f.target, c.row(f.a, g.a), c.row(f.c, g.c));
}

// ---------------------------------------------------------------- conflations

namespace {

// x : A -> B, y : B -> A'. Section of y first, then solve x r = id - s y.
std::optional<SplitWitness> split_by_sections(const AdditiveCategory& c, const Morphism& x, const Morphism& y) {
  if (x.target != y.source || !c.is_zero(c.compose(y, x))) return std::nullopt;
  auto s = find_section(c, y);
  if (!s) return std::nullopt;
  auto rhs = c.subtract(c.identity(x.target), c.compose(*s, y));
  auto r = solve_morphisms(
      c, {{x.target, x.source}}, [&](const std::vector<Morphism>& v) { return std::vector{c.compose(x, v[0])}; }, {rhs});
  if (!r || c.compose((*r)[0], x) != c.identity(x.source)) return std::nullopt;
  return SplitWitness{(*r)[0], *s};
}

// Retraction of x first, then solve s y = id - x r.
std::optional<SplitWitness> split_by_retractions(const AdditiveCategory& c, const Morphism& x, const Morphism& y) {
  if (x.target != y.source || !c.is_zero(c.compose(y, x))) return std::nullopt;
  auto r = find_retraction(c, x);
  if (!r) return std::nullopt;
  auto rhs = c.subtract(c.identity(x.target), c.compose(x, *r));
  auto s = solve_morphisms(
      c, {{y.target, y.source}}, [&](const std::vector<Morphism>& v) { return std::vector{c.compose(v[0], y)}; }, {rhs});
  if (!s || c.compose(y, (*s)[0]) != c.identity(y.target)) return std::nullopt;
  return SplitWitness{*r, (*s)[0]};
}

}  // namespace

bool ExtCategory::is_inflation(const ExtMorphism& f) const { return complete_inflation(f).has_value(); }

bool ExtCategory::is_deflation(const ExtMorphism& g) const { return complete_deflation(g).has_value(); }

ConflationCheck ExtCategory::is_conflation(const ExtMorphism& f, const ExtMorphism& g) const {
  const auto& c = category();
  ConflationCheck out;
  if (f.target != g.source) {
    out.reason = "morphisms are not composable";
    return out;
  }
  auto w1 = split_by_sections(c, f.a, g.a);
  auto w2 = split_by_sections(c, f.c, g.c);
  out.holds = w1 && w2;
  out.dual_holds = split_by_retractions(c, f.a, g.a) && split_by_retractions(c, f.c, g.c);
  if (out.holds) {
    out.witness = ExtConflation{f, g, *w1, *w2};
  } else if (!find_retraction(c, f.a)) {
    out.reason = "a is not a section";
  } else if (!find_retraction(c, f.c)) {
    out.reason = "c is not a section";
  } else if (!w1) {
    out.reason = "b is not a cokernel of a";
  } else {
    out.reason = "d is not a cokernel of c";
  }
  return out;
}

std::optional<ExtConflation> ExtCategory::complete_inflation(const ExtMorphism& f) const {
  const auto& c = category();
  auto sa = split_complement(c, f.a);
  if (!sa) return std::nullopt;
  auto sc = split_complement(c, f.c);
  if (!sc) return std::nullopt;
  auto eta = e_->act(sc->section, sa->projection, f.target);
  auto g = make_morphism(*e_, f.target, eta, sa->projection, sc->projection);
  return ExtConflation{f, g, {sa->retraction, sa->section}, {sc->retraction, sc->section}};
}

std::optional<ExtConflation> ExtCategory::complete_deflation(const ExtMorphism& g) const {
  const auto& c = category();
  auto kb = split_kernel(c, g.a);
  if (!kb) return std::nullopt;
  auto kd = split_kernel(c, g.c);
  if (!kd) return std::nullopt;
  auto delta = e_->act(kd->inclusion, kb->retraction, g.source);
  auto f = make_morphism(*e_, delta, g.source, kb->inclusion, kd->inclusion);
  return ExtConflation{f, g, {kb->retraction, kb->section}, {kd->retraction, kd->section}};
}

CanonicalSplit ExtCategory::canonical_form(const ExtConflation& s) const {
  const auto& c = category();
  const auto &f = s.inflation, &g = s.deflation;
  auto h = c.column(s.first.retraction, g.a);
  auto k = c.column(s.second.retraction, g.c);
  auto k_inv = c.row(f.c, s.second.section);
  auto rho = e_->act(k_inv, h, f.target);
  auto ba = c.biproduct(f.source.A, g.target.A);
  auto bc = c.biproduct(f.source.C, g.target.C);
  return CanonicalSplit{make_morphism(*e_, f.target, rho, h, k), make_morphism(*e_, f.source, rho, ba.iota1, bc.iota1),
                        make_morphism(*e_, rho, g.target, ba.pi2, bc.pi2)};
}

std::optional<ExtSquare> ExtCategory::pushout(const ExtMorphism& f, const ExtMorphism& h) const {
  if (f.source != h.source) throw Error(ErrorCode::ObjectMismatch, "pushout of morphisms with different sources");
  auto e = column(negate(h), f);
  auto s = complete_inflation(e);
  if (!s) return std::nullopt;
  auto b = biproduct(h.target, f.target);
  return ExtSquare{*s, compose(s->deflation, b.iota1), compose(s->deflation, b.iota2)};
}

std::optional<ExtSquare> ExtCategory::pullback(const ExtMorphism& g, const ExtMorphism& h) const {
  if (g.target != h.target) throw Error(ErrorCode::ObjectMismatch, "pullback of morphisms with different targets");
  auto e = row(negate(h), g);
  auto s = complete_deflation(e);
  if (!s) return std::nullopt;
  auto b = biproduct(h.source, g.source);
  return ExtSquare{*s, compose(b.pi1, s->inflation), compose(b.pi2, s->inflation)};
}

// ---------------------------------------------------------------- universal properties

namespace {

std::vector<Slot> pair_slots(const Extension& from, const Extension& to) { return {{from.A, to.A}, {from.C, to.C}}; }

void append(std::vector<Slot>& a, const std::vector<Slot>& b) { a.insert(a.end(), b.begin(), b.end()); }

}  // namespace

bool ExtCategory::kernel_property(const ExtConflation& s, const Extension& t) const {
  const auto& c = category();
  const auto &f = s.inflation, &g = s.deflation;
  if (!c.is_zero(c.compose(g.a, f.a)) || !c.is_zero(c.compose(g.c, f.c))) return false;
  auto after_f = ext_system(*e_, {{t, f.source}}, pair_slots(t, f.target), [&](const auto& v) {
    return std::vector{c.compose(f.a, v[0].first), c.compose(f.c, v[0].second)};
  });
  auto killed = ext_system(*e_, {{t, f.target}}, pair_slots(t, g.target), [&](const auto& v) {
    return std::vector{c.compose(g.a, v[0].first), c.compose(g.c, v[0].second)};
  });
  return after_f.is_injective() && ext_hom_order(*e_, t, f.source) == killed.kernel_order();
}

bool ExtCategory::cokernel_property(const ExtConflation& s, const Extension& t) const {
  const auto& c = category();
  const auto &f = s.inflation, &g = s.deflation;
  if (!c.is_zero(c.compose(g.a, f.a)) || !c.is_zero(c.compose(g.c, f.c))) return false;
  auto before_g = ext_system(*e_, {{g.target, t}}, pair_slots(g.source, t), [&](const auto& v) {
    return std::vector{c.compose(v[0].first, g.a), c.compose(v[0].second, g.c)};
  });
  auto killed = ext_system(*e_, {{g.source, t}}, pair_slots(f.source, t), [&](const auto& v) {
    return std::vector{c.compose(v[0].first, f.a), c.compose(v[0].second, f.c)};
  });
  return before_g.is_injective() && ext_hom_order(*e_, g.target, t) == killed.kernel_order();
}

bool ExtCategory::pushout_property(const ExtMorphism& f, const ExtMorphism& h, const ExtSquare& sq,
                                   const Extension& t) const {
  const auto& c = category();
  if (compose(sq.leg1, h) != compose(sq.leg2, f)) return false;
  const auto& gamma = sq.leg1.target;
  auto slots = pair_slots(h.target, t);
  append(slots, pair_slots(f.target, t));
  auto restrict = ext_system(*e_, {{gamma, t}}, slots, [&](const auto& v) {
    const auto& [za, zc] = v[0];
    return std::vector{c.compose(za, sq.leg1.a), c.compose(zc, sq.leg1.c), c.compose(za, sq.leg2.a),
                       c.compose(zc, sq.leg2.c)};
  });
  auto cones = ext_system(*e_, {{h.target, t}, {f.target, t}}, pair_slots(f.source, t), [&](const auto& v) {
    return std::vector{c.subtract(c.compose(v[0].first, h.a), c.compose(v[1].first, f.a)),
                       c.subtract(c.compose(v[0].second, h.c), c.compose(v[1].second, f.c))};
  });
  return restrict.is_injective() && ext_hom_order(*e_, gamma, t) == cones.kernel_order();
}

bool ExtCategory::pullback_property(const ExtMorphism& g, const ExtMorphism& h, const ExtSquare& sq,
                                    const Extension& t) const {
  const auto& c = category();
  if (compose(h, sq.leg1) != compose(g, sq.leg2)) return false;
  const auto& gamma = sq.leg1.source;
  auto slots = pair_slots(t, h.source);
  append(slots, pair_slots(t, g.source));
  auto restrict = ext_system(*e_, {{t, gamma}}, slots, [&](const auto& v) {
    const auto& [za, zc] = v[0];
    return std::vector{c.compose(sq.leg1.a, za), c.compose(sq.leg1.c, zc), c.compose(sq.leg2.a, za),
                       c.compose(sq.leg2.c, zc)};
  });
  auto cones = ext_system(*e_, {{t, h.source}, {t, g.source}}, pair_slots(t, g.target), [&](const auto& v) {
    return std::vector{c.subtract(c.compose(h.a, v[0].first), c.compose(g.a, v[1].first)),
                       c.subtract(c.compose(h.c, v[0].second), c.compose(g.c, v[1].second))};
  });
  return restrict.is_injective() && ext_hom_order(*e_, t, gamma) == cones.kernel_order();
}

// ---------------------------------------------------------------- verifier

ExtUniverse ext_universe(const Bifunctor& e, const VerifyConfig& cfg, std::mt19937_64& rng) {
  ExtUniverse u;
  u.objects = e.category().universe(cfg.object_cap);
  for (const auto& C : u.objects)
    for (const auto& A : u.objects) {
      auto s = sample_group(e.value(C, A), cfg, rng);
      u.sampled = u.sampled || s.sampled;
      for (auto& x : s.elements) u.extensions.push_back(Extension{A, C, std::move(x)});
    }
  return u;
}

namespace {

struct Prepared {
  ExtCategory x;
  std::vector<Extension> exts;
  // [i][j]: sampled morphisms, inflations and deflations exts[i] -> exts[j]
  std::vector<std::vector<std::vector<ExtMorphism>>> morphs, infl, defl;
  bool sampled = false;
  std::string setup_error;
};

template <class T>
void keep_random(std::vector<T>& v, std::size_t k, std::mt19937_64& rng, bool& sampled) {
  if (v.size() <= k) return;
  std::shuffle(v.begin(), v.end(), rng);
  v.resize(k);
  sampled = true;
}

std::shared_ptr<Prepared> prepare(const ExtCategory& x, const VerifyConfig& cfg, std::mt19937_64& rng) {
  auto p = std::make_shared<Prepared>(Prepared{x, {}, {}, {}, {}, false, {}});
  const auto& c = x.category();
  auto u = ext_universe(x.bifunctor(), cfg, rng);
  p->exts = u.extensions;
  p->sampled = u.sampled;
  const std::size_t n = p->exts.size();
  p->morphs.assign(n, std::vector<std::vector<ExtMorphism>>(n));
  p->infl = p->defl = p->morphs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      try {
        auto space = x.hom(p->exts[i], p->exts[j]);
        auto s = sample_group(space.group(), cfg, rng);
        p->sampled = p->sampled || s.sampled;
        std::vector<ExtMorphism> all;
        for (const auto& k : s.elements) all.push_back(space.morphism(k));
        for (const auto& f : all) {
          if (find_retraction(c, f.a) && find_retraction(c, f.c) && x.complete_inflation(f)) p->infl[i][j].push_back(f);
          if (find_section(c, f.a) && find_section(c, f.c) && x.complete_deflation(f)) p->defl[i][j].push_back(f);
        }
        keep_random(all, cfg.per_pair, rng, p->sampled);
        keep_random(p->infl[i][j], cfg.per_pair, rng, p->sampled);
        keep_random(p->defl[i][j], cfg.per_pair, rng, p->sampled);
        p->morphs[i][j] = std::move(all);
      } catch (const std::exception& e) {
        if (p->setup_error.empty())
          p->setup_error = p->exts[i].to_string() + " -> " + p->exts[j].to_string() + ": " + e.what();
      }
    }
  return p;
}

// Indices of up to k test extensions.
std::vector<std::size_t> pick(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (n > k) {
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
  }
  return idx;
}

struct Triple {
  std::size_t i, j, k, a, b;
};

}  // namespace

Plan plan_exact_category(const ExtCategory& x, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto p = prepare(x, cfg, rng);
  const std::size_t n = p->exts.size();
  const auto& E = p->exts;
  Plan plan;
  plan.reserve(16);  // references returned by add_check stay valid
  auto add_check = [&](std::string id, std::string desc) -> PlannedCheck& {
    plan.push_back(PlannedCheck{std::move(id), std::move(desc), {}, p->sampled, {}});
    return plan.back();
  };
  auto str = [](const auto& v) { return v.to_string(); };

  if (!p->setup_error.empty()) {
    auto& s = add_check("setup", "enumerating morphisms of extensions");
    std::string err = p->setup_error;
    s.instances.push_back({"universe", [err]() -> std::optional<std::string> { return err; }});
  }

  // all inflations / deflations as (i, j, index)
  std::vector<std::array<std::size_t, 3>> infl, defl;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t a = 0; a < p->infl[i][j].size(); ++a) infl.push_back({i, j, a});
      for (std::size_t a = 0; a < p->defl[i][j].size(); ++a) defl.push_back({i, j, a});
    }

  {
    auto& ch = add_check("additive.zero", "the zero extension is a zero object");
    for (std::size_t i = 0; i < n; ++i)
      ch.instances.push_back({str(E[i]), [p, i]() {
                                const auto& d = p->exts[i];
                                auto z = p->x.zero_object();
                                return expect(p->x.hom(d, z).group().is_trivial() && p->x.hom(z, d).group().is_trivial(),
                                              "nonzero morphisms to or from the zero extension");
                              }});
  }
  {
    auto& ch = add_check("additive.biproduct", "direct sums of extensions are biproducts");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        ch.instances.push_back({str(E[i]) + " + " + str(E[j]), [p, i, j]() -> std::optional<std::string> {
                                  const auto& X = p->x;
                                  const auto &d = p->exts[i], &r = p->exts[j];
                                  auto b = X.biproduct(d, r);
                                  if (!verify_direct_sum(X.bifunctor(), d, r, b.sum)) return "defining equations fail";
                                  if (X.compose(b.pi1, b.iota1) != X.identity(d)) return "pi1 iota1 != id";
                                  if (X.compose(b.pi2, b.iota2) != X.identity(r)) return "pi2 iota2 != id";
                                  if (X.compose(b.pi1, b.iota2) != X.zero(r, d)) return "pi1 iota2 != 0";
                                  if (X.compose(b.pi2, b.iota1) != X.zero(d, r)) return "pi2 iota1 != 0";
                                  if (X.add(X.compose(b.iota1, b.pi1), X.compose(b.iota2, b.pi2)) != X.identity(b.sum))
                                    return "iota1 pi1 + iota2 pi2 != id";
                                  return std::nullopt;
                                }});
  }
  {
    auto& ch = add_check("additive.composition", "composition is unital, associative and bilinear");
    std::vector<Triple> ts;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < p->morphs[i][j].size(); ++a) {
          std::size_t k = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
          for (std::size_t b = 0; b < p->morphs[j][k].size(); ++b) ts.push_back({i, j, k, a, b});
        }
    for (const auto& t : ts)
      ch.instances.push_back({str(p->morphs[t.i][t.j][t.a]) + " then " + str(p->morphs[t.j][t.k][t.b]),
                              [p, t]() -> std::optional<std::string> {
                                const auto& X = p->x;
                                const auto& f = p->morphs[t.i][t.j][t.a];
                                const auto& g = p->morphs[t.j][t.k][t.b];
                                if (X.compose(X.identity(f.target), f) != f || X.compose(f, X.identity(f.source)) != f)
                                  return "identity law";
                                auto gf = X.compose(g, f);
                                if (X.compose(g, X.add(f, f)) != X.add(gf, gf)) return "not additive in the first slot";
                                if (X.compose(X.add(g, g), f) != X.add(gf, gf)) return "not additive in the second slot";
                                for (const auto& h : p->morphs[t.k][t.i])
                                  if (X.compose(h, gf) != X.compose(X.compose(h, g), f)) return "not associative";
                                return std::nullopt;
                              }});
  }
  {
    auto& ch = add_check("conflation.characterisations", "sections+cokernels agrees with retractions+kernels");
    std::vector<Triple> ts;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < p->morphs[i][j].size(); ++a) {
          std::size_t k = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
          if (!p->morphs[j][k].empty()) ts.push_back({i, j, k, a, 0});
        }
    for (const auto& t : ts)
      ch.instances.push_back({str(p->morphs[t.i][t.j][t.a]) + " then " + str(p->morphs[t.j][t.k][0]), [p, t]() {
                                auto r = p->x.is_conflation(p->morphs[t.i][t.j][t.a], p->morphs[t.j][t.k][0]);
                                return expect(r.holds == r.dual_holds, "characterisations disagree");
                              }});
    for (const auto& [i, j, a] : infl)
      ch.instances.push_back({"completion of " + str(p->infl[i][j][a]), [p, i, j, a]() -> std::optional<std::string> {
                                auto s = p->x.complete_inflation(p->infl[i][j][a]);
                                if (!s) return "no completion";
                                auto r = p->x.is_conflation(s->inflation, s->deflation);
                                return expect(r.holds && r.dual_holds, "completion is not a conflation: " + r.reason);
                              }});
  }
  {
    auto& ch = add_check("conflation.kernel_cokernel", "conflations are kernel-cokernel pairs");
    for (const auto& [i, j, a] : infl) {
      auto tests = pick(n, cfg.samples, rng);
      ch.instances.push_back({str(p->infl[i][j][a]), [p, i, j, a, tests]() -> std::optional<std::string> {
                                auto s = p->x.complete_inflation(p->infl[i][j][a]);
                                if (!s) return "no completion";
                                for (auto t : tests) {
                                  if (!p->x.kernel_property(*s, p->exts[t])) return "kernel property fails at " + p->exts[t].to_string();
                                  if (!p->x.cokernel_property(*s, p->exts[t])) return "cokernel property fails at " + p->exts[t].to_string();
                                }
                                return std::nullopt;
                              }});
    }
  }
  {
    auto& ch = add_check("conflation.canonical_form", "every conflation is isomorphic to its canonical split form");
    for (const auto& [i, j, a] : infl)
      ch.instances.push_back({str(p->infl[i][j][a]), [p, i, j, a]() -> std::optional<std::string> {
                                const auto& X = p->x;
                                auto s = X.complete_inflation(p->infl[i][j][a]);
                                if (!s) return "no completion";
                                auto cs = X.canonical_form(*s);
                                if (!X.inverse(cs.iso)) return "comparison map is not invertible";
                                if (X.compose(cs.iso, s->inflation) != cs.inflation) return "h a != iota";
                                if (X.compose(cs.deflation, cs.iso) != s->deflation) return "pi h != b";
                                return expect(X.is_conflation(cs.inflation, cs.deflation).holds, "canonical form is not a conflation");
                              }});
  }
  {
    auto& ch = add_check("conflation.iso_closure", "conflations are closed under isomorphism");
    for (const auto& [i, j, a] : infl)
      ch.instances.push_back({str(p->infl[i][j][a]), [p, i, j, a]() -> std::optional<std::string> {
                                const auto& X = p->x;
                                auto s = X.complete_inflation(p->infl[i][j][a]);
                                if (!s) return "no completion";
                                for (const auto& phi : p->morphs[j][j]) {
                                  auto inv = X.inverse(phi);
                                  if (!inv) continue;
                                  if (!X.is_conflation(X.compose(phi, s->inflation), X.compose(s->deflation, *inv)).holds)
                                    return "twisting the middle term by " + phi.to_string();
                                }
                                for (const auto& psi : p->morphs[i][i]) {
                                  if (!X.inverse(psi)) continue;
                                  if (!X.is_conflation(X.compose(s->inflation, psi), s->deflation).holds)
                                    return "twisting the first term by " + psi.to_string();
                                }
                                return std::nullopt;
                              }});
  }
  {
    auto& ch = add_check("E0", "identities are inflations");
    auto& chop = add_check("E0op", "identities are deflations");
    for (std::size_t i = 0; i < n; ++i) {
      ch.instances.push_back({str(E[i]), [p, i]() -> std::optional<std::string> {
                                const auto& X = p->x;
                                const auto& c = X.category();
                                auto s = X.complete_inflation(X.identity(p->exts[i]));
                                if (!s) return "identity does not complete";
                                const auto& eta = s->deflation.target;
                                if (!c.hom_group(eta.A, eta.A).is_trivial() || !c.hom_group(eta.C, eta.C).is_trivial())
                                  return "third term is not zero";
                                return expect(X.is_conflation(s->inflation, s->deflation).holds, "not a conflation");
                              }});
      chop.instances.push_back({str(E[i]), [p, i]() -> std::optional<std::string> {
                                  const auto& X = p->x;
                                  const auto& c = X.category();
                                  auto s = X.complete_deflation(X.identity(p->exts[i]));
                                  if (!s) return "identity does not complete";
                                  const auto& d = s->inflation.source;
                                  if (!c.hom_group(d.A, d.A).is_trivial() || !c.hom_group(d.C, d.C).is_trivial())
                                    return "first term is not zero";
                                  return expect(X.is_conflation(s->inflation, s->deflation).holds, "not a conflation");
                                }});
    }
  }
  {
    auto& ch = add_check("E1", "inflations are closed under composition");
    auto& chop = add_check("E1op", "deflations are closed under composition");
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < p->infl[i][j].size(); ++a)
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t b = 0; b < p->infl[j][k].size(); ++b)
              ch.instances.push_back({str(p->infl[i][j][a]) + " then " + str(p->infl[j][k][b]),
                                      [p, i, j, k, a, b]() -> std::optional<std::string> {
                                        const auto& X = p->x;
                                        auto gf = X.compose(p->infl[j][k][b], p->infl[i][j][a]);
                                        auto s = X.complete_inflation(gf);
                                        if (!s) return "composite " + gf.to_string() + " is not an inflation";
                                        return expect(X.is_conflation(s->inflation, s->deflation).holds, "completion is not a conflation");
                                      }});
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < p->defl[i][j].size(); ++a)
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t b = 0; b < p->defl[j][k].size(); ++b)
              chop.instances.push_back({str(p->defl[i][j][a]) + " then " + str(p->defl[j][k][b]),
                                        [p, i, j, k, a, b]() -> std::optional<std::string> {
                                          const auto& X = p->x;
                                          auto gf = X.compose(p->defl[j][k][b], p->defl[i][j][a]);
                                          auto s = X.complete_deflation(gf);
                                          if (!s) return "composite " + gf.to_string() + " is not a deflation";
                                          return expect(X.is_conflation(s->inflation, s->deflation).holds, "completion is not a conflation");
                                        }});
  }
  {
    auto& ch = add_check("E2", "pushouts of inflations exist and are inflations");
    for (const auto& [i, j, a] : infl)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t b = 0; b < p->morphs[i][k].size(); ++b) {
          auto tests = pick(n, cfg.samples, rng);
          ch.instances.push_back({str(p->infl[i][j][a]) + " along " + str(p->morphs[i][k][b]),
                                  [p, i, j, k, a, b, tests]() -> std::optional<std::string> {
                                    const auto& X = p->x;
                                    const auto& f = p->infl[i][j][a];
                                    const auto& h = p->morphs[i][k][b];
                                    auto sq = X.pushout(f, h);
                                    if (!sq) return "(-h; f) does not complete to a conflation";
                                    if (!X.is_conflation(sq->conflation.inflation, sq->conflation.deflation).holds)
                                      return "(-h; f) completion is not a conflation";
                                    if (!X.is_inflation(sq->leg1)) return "pushed-out map is not an inflation";
                                    for (auto t : tests)
                                      if (!X.pushout_property(f, h, *sq, p->exts[t]))
                                        return "universal property fails against " + p->exts[t].to_string();
                                    return std::nullopt;
                                  }});
        }
    auto& chop = add_check("E2op", "pullbacks of deflations exist and are deflations");
    for (const auto& [i, j, a] : defl)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t b = 0; b < p->morphs[k][j].size(); ++b) {
          auto tests = pick(n, cfg.samples, rng);
          chop.instances.push_back({str(p->defl[i][j][a]) + " along " + str(p->morphs[k][j][b]),
                                    [p, i, j, k, a, b, tests]() -> std::optional<std::string> {
                                      const auto& X = p->x;
                                      const auto& g = p->defl[i][j][a];
                                      const auto& h = p->morphs[k][j][b];
                                      auto sq = X.pullback(g, h);
                                      if (!sq) return "(-h g) does not complete to a conflation";
                                      if (!X.is_conflation(sq->conflation.inflation, sq->conflation.deflation).holds)
                                        return "(-h g) completion is not a conflation";
                                      if (!X.is_deflation(sq->leg1)) return "pulled-back map is not a deflation";
                                      for (auto t : tests)
                                        if (!X.pullback_property(g, h, *sq, p->exts[t]))
                                          return "universal property fails against " + p->exts[t].to_string();
                                      return std::nullopt;
                                    }});
        }
  }
  for (auto& ch : plan) thin(ch, cfg.max_instances, rng);
  return plan;
}

Report verify_exact_category(const ExtCategory& x, const VerifyConfig& cfg) {
  return run_plan("exact category of " + x.bifunctor().name() + " extensions over " + x.category().name(),
                  plan_exact_category(x, cfg), cfg.max_witnesses);
}

}  // namespace nexang
