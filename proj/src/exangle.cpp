#include "nexang/exangle.hpp"

#include <algorithm>
#include <numeric>

#include "nexang/extcat.hpp"

namespace nexang {

namespace {

[[noreturn]] void not_a_complex(const std::string& what) { throw Error(ErrorCode::NotAComplex, what); }

std::string sup(const std::string& x, std::size_t i) { return x + "^" + std::to_string(i); }

}  // namespace

std::string NComplex::to_string() const {
  std::string s = objects.empty() ? "" : objects[0].to_string();
  for (std::size_t i = 0; i < d.size(); ++i) s += " -" + d[i].data.to_string() + "-> " + objects[i + 1].to_string();
  return s;
}

void check_complex(const AdditiveCategory& c, const NComplex& x) {
  if (x.n < 1) not_a_complex("n must be at least 1");
  if (x.objects.size() != static_cast<std::size_t>(x.n) + 2 || x.d.size() != static_cast<std::size_t>(x.n) + 1)
    not_a_complex("a complex in degrees 0..n+1 needs n+2 objects and n+1 differentials");
  for (std::size_t i = 0; i < x.d.size(); ++i) {
    c.require(x.d[i]);
    if (x.d[i].source != x.objects[i] || x.d[i].target != x.objects[i + 1])
      not_a_complex("differential " + std::to_string(i) + " has the wrong ends");
  }
  for (std::size_t i = 0; i + 1 < x.d.size(); ++i)
    if (!c.is_zero(c.compose(x.d[i + 1], x.d[i])))
      not_a_complex("d^" + std::to_string(i + 1) + " d^" + std::to_string(i) + " != 0");
}

NComplex make_complex(const AdditiveCategory& c, std::vector<Morphism> d) {
  if (d.size() < 2) not_a_complex("need at least two differentials");
  NComplex x;
  x.n = static_cast<int>(d.size()) - 1;
  x.objects.push_back(d[0].source);
  for (const auto& f : d) x.objects.push_back(f.target);
  x.d = std::move(d);
  check_complex(c, x);
  return x;
}

NComplex padded_start(const AdditiveCategory& c, const Object& a, int n) {
  auto z = c.zero_object();
  std::vector<Morphism> d{c.identity(a), c.zero(a, z)};
  for (int i = 2; i <= n; ++i) d.push_back(c.zero(z, z));
  return make_complex(c, std::move(d));
}

NComplex padded_end(const AdditiveCategory& c, const Object& cc, int n) {
  auto z = c.zero_object();
  std::vector<Morphism> d;
  for (int i = 2; i <= n; ++i) d.push_back(c.zero(z, z));
  d.push_back(c.zero(z, cc));
  d.push_back(c.identity(cc));
  return make_complex(c, std::move(d));
}

NComplex direct_sum(const AdditiveCategory& c, const NComplex& x, const NComplex& y) {
  if (x.n != y.n) not_a_complex("direct sum of complexes of different length");
  std::vector<Morphism> d;
  for (std::size_t i = 0; i < x.d.size(); ++i) d.push_back(c.direct_sum(x.d[i], y.d[i]));
  return make_complex(c, std::move(d));
}

// ---------------------------------------------------------------- morphisms of complexes

bool is_chain_map(const AdditiveCategory& c, const NComplex& x, const NComplex& y, const ComplexMorphism& f) {
  if (x.n != y.n || f.f.size() != x.objects.size()) return false;
  for (std::size_t i = 0; i < f.f.size(); ++i)
    if (f.f[i].source != x.objects[i] || f.f[i].target != y.objects[i]) return false;
  for (std::size_t i = 0; i < x.d.size(); ++i)
    if (c.compose(f.f[i + 1], x.d[i]) != c.compose(y.d[i], f.f[i])) return false;
  return true;
}

ComplexMorphism identity_map(const AdditiveCategory& c, const NComplex& x) {
  ComplexMorphism f;
  for (const auto& o : x.objects) f.f.push_back(c.identity(o));
  return f;
}

ComplexMorphism compose(const AdditiveCategory& c, const ComplexMorphism& g, const ComplexMorphism& f) {
  if (g.f.size() != f.f.size()) throw Error(ErrorCode::NotComposable, "complex morphisms of different length");
  ComplexMorphism h;
  for (std::size_t i = 0; i < f.f.size(); ++i) h.f.push_back(c.compose(g.f[i], f.f[i]));
  return h;
}

NComplex mapping_cone(const AdditiveCategory& c, const NComplex& x, const NComplex& y, const ComplexMorphism& f) {
  if (!is_chain_map(c, x, y, f)) not_a_complex("mapping cone of something that is not a chain map");
  if (f.f[0] != c.identity(x.A())) not_a_complex("mapping cone needs f^0 = id");
  const auto n = static_cast<std::size_t>(x.n);
  const auto &dx = x.d, &dy = y.d;
  std::vector<Morphism> d;
  d.push_back(c.column(c.negate(dx[1]), f.f[1]));
  for (std::size_t i = 1; i < n; ++i)
    d.push_back(c.column(c.row(c.negate(dx[i + 1]), c.zero(y.objects[i], x.objects[i + 2])),
                         c.row(f.f[i + 1], dy[i])));
  d.push_back(c.row(f.f[n + 1], dy[n]));
  return make_complex(c, std::move(d));
}

NComplex mapping_cocone(const AdditiveCategory& c, const NComplex& x, const NComplex& y, const ComplexMorphism& f) {
  if (!is_chain_map(c, x, y, f)) not_a_complex("mapping cocone of something that is not a chain map");
  const auto n = static_cast<std::size_t>(x.n);
  if (f.f[n + 1] != c.identity(x.C())) not_a_complex("mapping cocone needs f^{n+1} = id");
  const auto &dx = x.d, &dy = y.d;
  std::vector<Morphism> d;
  d.push_back(c.column(f.f[0], dx[0]));
  for (std::size_t i = 1; i < n; ++i)
    d.push_back(c.column(c.row(c.negate(dy[i - 1]), f.f[i]),
                         c.row(c.zero(y.objects[i - 1], x.objects[i + 1]), dx[i])));
  d.push_back(c.row(c.negate(dy[n - 1]), f.f[n]));
  return make_complex(c, std::move(d));
}

// ---------------------------------------------------------------- homotopies

namespace {

// d_Y^{i-1} h^i + h^{i+1} d_X^i in each degree i = 0..n+1
std::vector<Morphism> homotopy_terms(const AdditiveCategory& c, const NComplex& x, const NComplex& y,
                                     const std::vector<Morphism>& h) {
  const std::size_t top = x.objects.size();
  std::vector<Morphism> out;
  for (std::size_t i = 0; i < top; ++i) {
    auto t = c.zero(x.objects[i], y.objects[i]);
    if (i >= 1) t = c.add(t, c.compose(y.d[i - 1], h[i - 1]));
    if (i + 1 < top) t = c.add(t, c.compose(h[i], x.d[i]));
    out.push_back(t);
  }
  return out;
}

std::vector<Slot> homotopy_slots(const NComplex& x, const NComplex& y) {
  std::vector<Slot> s;
  for (std::size_t k = 0; k + 1 < x.objects.size(); ++k) s.push_back({x.objects[k + 1], y.objects[k]});
  return s;
}

bool same_shape(const NComplex& x, const NComplex& y) { return x.n == y.n && x.A() == y.A() && x.C() == y.C(); }

struct LiftSystem {
  std::vector<Slot> unknowns, equations;
  MorphismFn lhs;
};

// f^{i+1} d_X^i - d_Y^i f^i for i = 0..n, with f^0 = a and f^{n+1} = cc fixed.
LiftSystem lift_system(const AdditiveCategory& c, const NComplex& x, const NComplex& y, const Morphism& a,
                       const Morphism& cc) {
  LiftSystem s;
  const std::size_t n = static_cast<std::size_t>(x.n);
  for (std::size_t i = 1; i <= n; ++i) s.unknowns.push_back({x.objects[i], y.objects[i]});
  for (std::size_t i = 0; i <= n; ++i) s.equations.push_back({x.objects[i], y.objects[i + 1]});
  s.lhs = [&c, &x, &y, a, cc, n](const std::vector<Morphism>& v) {
    std::vector<Morphism> full{a};
    full.insert(full.end(), v.begin(), v.end());
    full.push_back(cc);
    std::vector<Morphism> out;
    for (std::size_t i = 0; i <= n; ++i)
      out.push_back(c.subtract(c.compose(full[i + 1], x.d[i]), c.compose(y.d[i], full[i])));
    return out;
  };
  return s;
}

std::vector<Morphism> zeros(const AdditiveCategory& c, const std::vector<Slot>& slots) {
  std::vector<Morphism> out;
  for (const auto& s : slots) out.push_back(c.zero(s.source, s.target));
  return out;
}

ComplexMorphism with_ends(const Morphism& a, const std::vector<Morphism>& mid, const Morphism& cc) {
  ComplexMorphism f{{a}};
  f.f.insert(f.f.end(), mid.begin(), mid.end());
  f.f.push_back(cc);
  return f;
}

void require_lift_ends(const NComplex& x, const NComplex& y, const Morphism& a, const Morphism& cc) {
  if (x.n != y.n) throw Error(ErrorCode::ObjectMismatch, "complexes of different length");
  if (a.source != x.A() || a.target != y.A() || cc.source != x.C() || cc.target != y.C())
    throw Error(ErrorCode::ObjectMismatch, "end maps do not match the complexes");
}

}  // namespace

bool is_homotopy(const AdditiveCategory& c, const NComplex& x, const NComplex& y, const ComplexMorphism& f,
                 const ComplexMorphism& g, const Homotopy& h) {
  auto slots = homotopy_slots(x, y);
  if (h.h.size() != slots.size()) return false;
  for (std::size_t k = 0; k < slots.size(); ++k)
    if (h.h[k].source != slots[k].source || h.h[k].target != slots[k].target) return false;
  auto t = homotopy_terms(c, x, y, h.h);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (c.subtract(f.f[i], g.f[i]) != t[i]) return false;
  return true;
}

std::optional<Homotopy> is_homotopic(const AdditiveCategory& c, const NComplex& x, const NComplex& y,
                                     const ComplexMorphism& f, const ComplexMorphism& g) {
  if (!is_chain_map(c, x, y, f) || !is_chain_map(c, x, y, g)) throw Error(ErrorCode::NotAComplex, "not chain maps");
  if (f.f.front() != g.f.front() || f.f.back() != g.f.back()) return std::nullopt;
  std::vector<Morphism> rhs;
  for (std::size_t i = 0; i < f.f.size(); ++i) rhs.push_back(c.subtract(f.f[i], g.f[i]));
  auto h = solve_morphisms(
      c, homotopy_slots(x, y), [&](const std::vector<Morphism>& v) { return homotopy_terms(c, x, y, v); }, rhs);
  if (!h) return std::nullopt;
  return Homotopy{*h};
}

std::optional<ComplexMorphism> lift_morphism(const AdditiveCategory& c, const NComplex& x, const NComplex& y,
                                             const Morphism& a, const Morphism& cc) {
  require_lift_ends(x, y, a, cc);
  auto s = lift_system(c, x, y, a, cc);
  auto v = solve_morphisms(c, s.unknowns, s.lhs, zeros(c, s.equations));
  if (!v) return std::nullopt;
  return with_ends(a, *v, cc);
}

std::vector<ComplexMorphism> all_lifts(const AdditiveCategory& c, const NComplex& x, const NComplex& y,
                                       const Morphism& a, const Morphism& cc) {
  require_lift_ends(x, y, a, cc);
  auto s = lift_system(c, x, y, a, cc);
  auto sys = morphism_system(c, s.unknowns, s.equations, s.lhs);
  std::vector<ComplexMorphism> out;
  for (const auto& v : sys.all_solutions(coords_of(c, zeros(c, s.equations))))
    out.push_back(with_ends(a, morphisms_of(c, s.unknowns, v), cc));
  return out;
}

LiftClasses lift_classes(const AdditiveCategory& c, const NComplex& x, const NComplex& y, const Morphism& a,
                         const Morphism& cc) {
  require_lift_ends(x, y, a, cc);
  auto s = lift_system(c, x, y, a, cc);
  auto sys = morphism_system(c, s.unknowns, s.equations, s.lhs);
  LiftClasses out;
  auto p = sys.solve(coords_of(c, zeros(c, s.equations)));
  if (!p) return out;
  auto base = sys.flatten(*p, slot_groups(c, s.unknowns));
  const auto& lin = sys.linear_part();
  auto k = linear::kernel(lin);
  out.lifts = k.group.order();

  // differences dh + hd with h vanishing in degrees 0 and n+1, in the flat coordinates of f^1..f^n
  auto hs = homotopy_slots(x, y);
  const std::size_t top = x.objects.size();
  auto ends = morphism_system(c, hs, {{x.objects[0], y.objects[0]}, {x.objects[top - 1], y.objects[top - 1]}},
                              [&](const std::vector<Morphism>& v) {
                                auto t = homotopy_terms(c, x, y, v);
                                return std::vector{t.front(), t.back()};
                              });
  auto h0 = linear::kernel(ends.linear_part());
  auto mid = morphism_system(c, hs, s.unknowns, [&](const std::vector<Morphism>& v) {
    auto t = homotopy_terms(c, x, y, v);
    return std::vector<Morphism>(t.begin() + 1, t.end() - 1);
  });
  auto q = linear::quotient(lin.src, mid.linear_part().m * h0.inclusion);

  // K / (K meet null-homotopic) through its image in the quotient
  linear::Map phi{k.group.factors(), q.group.factors(), q.to_canon * k.inclusion};
  for (std::size_t i = 0; i < phi.m.rows(); ++i)
    for (std::size_t j = 0; j < phi.m.cols(); ++j) phi.m(i, j) = mod(phi.m(i, j), phi.dst[i]);
  auto r = linear::quotient(k.group.factors(), linear::kernel(phi).inclusion);
  for (const auto& e : linear::enumerate(r.group.factors())) {
    auto d = k.inclusion.apply(r.from_canon.apply(e));
    auto flat = base;
    for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = mod(flat[i] + d[i], lin.src[i]);
    out.representatives.push_back(with_ends(a, morphisms_of(c, s.unknowns, sys.split(flat)), cc));
  }
  return out;
}

namespace {

HomotopyEquivalence trivial_equivalence(const AdditiveCategory& c, const NComplex& x) {
  auto id = identity_map(c, x);
  Homotopy h{zeros(c, homotopy_slots(x, x))};
  return {id, id, h, h};
}

// Given f : X -> Y, solve for g : Y -> X and homotopies gf ~ id, fg ~ id (all linear in the unknowns).
std::optional<HomotopyEquivalence> invert_up_to_homotopy(const AdditiveCategory& c, const NComplex& x,
                                                         const NComplex& y, const ComplexMorphism& f) {
  const std::size_t n = static_cast<std::size_t>(x.n);
  std::vector<Slot> unknowns;
  for (std::size_t i = 1; i <= n; ++i) unknowns.push_back({y.objects[i], x.objects[i]});
  auto hx = homotopy_slots(x, x), hy = homotopy_slots(y, y);
  unknowns.insert(unknowns.end(), hx.begin(), hx.end());
  unknowns.insert(unknowns.end(), hy.begin(), hy.end());
  auto gl = lift_system(c, y, x, c.identity(y.A()), c.identity(y.C()));
  std::vector<Slot> eqs = gl.equations;
  for (std::size_t i = 0; i <= n + 1; ++i) eqs.push_back({x.objects[i], x.objects[i]});
  for (std::size_t i = 0; i <= n + 1; ++i) eqs.push_back({y.objects[i], y.objects[i]});

  auto split_unknowns = [n](const std::vector<Morphism>& v) {
    std::vector<Morphism> g(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<Morphism> a(v.begin() + static_cast<std::ptrdiff_t>(n), v.begin() + static_cast<std::ptrdiff_t>(2 * n + 1));
    std::vector<Morphism> b(v.begin() + static_cast<std::ptrdiff_t>(2 * n + 1), v.end());
    return std::tuple{g, a, b};
  };
  auto lhs = [&](const std::vector<Morphism>& v) {
    auto [gm, a, b] = split_unknowns(v);
    auto out = gl.lhs(gm);
    auto g = with_ends(c.identity(y.A()), gm, c.identity(y.C()));
    auto gf = compose(c, g, f), fg = compose(c, f, g);
    auto tx = homotopy_terms(c, x, x, a), ty = homotopy_terms(c, y, y, b);
    for (std::size_t i = 0; i <= n + 1; ++i)
      out.push_back(c.subtract(c.subtract(gf.f[i], c.identity(x.objects[i])), tx[i]));
    for (std::size_t i = 0; i <= n + 1; ++i)
      out.push_back(c.subtract(c.subtract(fg.f[i], c.identity(y.objects[i])), ty[i]));
    return out;
  };
  auto v = solve_morphisms(c, unknowns, lhs, zeros(c, eqs));
  if (!v) return std::nullopt;
  auto [gm, a, b] = split_unknowns(*v);
  return HomotopyEquivalence{f, with_ends(c.identity(y.A()), gm, c.identity(y.C())), Homotopy{a}, Homotopy{b}};
}

}  // namespace

std::optional<HomotopyEquivalence> homotopy_equivalent(const AdditiveCategory& c, const NComplex& x,
                                                       const NComplex& y) {
  if (!same_shape(x, y)) return std::nullopt;
  if (x == y) return trivial_equivalence(c, x);
  for (const auto& f : lift_classes(c, x, y, c.identity(x.A()), c.identity(x.C())).representatives)
    if (auto w = invert_up_to_homotopy(c, x, y, f)) return w;
  return std::nullopt;
}

std::optional<HomotopyEquivalence> isomorphic_with_fixed_ends(const AdditiveCategory& c, const NComplex& x,
                                                              const NComplex& y) {
  if (!same_shape(x, y)) return std::nullopt;
  auto f = lift_morphism(c, x, y, c.identity(x.A()), c.identity(x.C()));
  if (!f) return std::nullopt;
  ComplexMorphism g;
  for (const auto& m : f->f) {
    auto inv = inverse(c, m);
    if (!inv) return std::nullopt;
    g.f.push_back(*inv);
  }
  return HomotopyEquivalence{*f, g, Homotopy{zeros(c, homotopy_slots(x, x))}, Homotopy{zeros(c, homotopy_slots(y, y))}};
}

bool check_equivalence(const AdditiveCategory& c, const NComplex& x, const NComplex& y,
                       const HomotopyEquivalence& w) {
  if (!same_shape(x, y) || !is_chain_map(c, x, y, w.to) || !is_chain_map(c, y, x, w.back)) return false;
  if (w.to.f.front() != c.identity(x.A()) || w.to.f.back() != c.identity(x.C())) return false;
  if (w.back.f.front() != c.identity(x.A()) || w.back.f.back() != c.identity(x.C())) return false;
  return is_homotopy(c, x, x, compose(c, w.back, w.to), identity_map(c, x), w.on_x) &&
         is_homotopy(c, y, y, compose(c, w.to, w.back), identity_map(c, y), w.on_y);
}

// ---------------------------------------------------------------- n-exangles

std::string ExangleCheck::to_string() const {
  if (holds) return "n-exangle";
  return "not exact at " + position + " for P = " + probe.to_string();
}

namespace {

template <class Fn>
GroupHom tabulate(const FinAbGroup& s, const FinAbGroup& t, Fn fn) {
  Matrix m(t.rank(), s.rank());
  for (std::size_t j = 0; j < s.rank(); ++j) {
    auto y = fn(GroupElement::basis(s, j));
    for (std::size_t i = 0; i < t.rank(); ++i) m(i, j) = y.coords[i];
  }
  return GroupHom(s, t, std::move(m));
}

bool exact_at(const GroupHom& prev, const GroupHom& next) {
  return compose(next, prev).is_zero() && image_order(prev) * image_order(next) == prev.target().order();
}

}  // namespace

ExangleCheck is_n_exangle(const Bifunctor& e, const NComplex& x, const Extension& d) {
  const auto& c = e.category();
  check_complex(c, x);
  ExangleCheck r;
  if (d.A != x.A() || d.C != x.C()) {
    r.holds = false;
    r.position = "ends";
    return r;
  }
  const std::size_t n = static_cast<std::size_t>(x.n);
  for (const auto& p : c.probes_for(x.objects)) {
    // C(P, X^0) -> ... -> C(P, X^{n+1}) -> E(P, X^0)
    std::vector<GroupHom> cov;
    for (std::size_t i = 0; i <= n; ++i)
      cov.push_back(tabulate(c.hom_group(p, x.objects[i]), c.hom_group(p, x.objects[i + 1]), [&](const GroupElement& k) {
        return c.to_coords(c.compose(x.d[i], c.from_coords(p, x.objects[i], k)));
      }));
    cov.push_back(tabulate(c.hom_group(p, x.C()), e.value(p, x.A()), [&](const GroupElement& k) {
      return e.pull_class(c.from_coords(p, x.C(), k), x.A(), d.cls);
    }));
    // C(X^{n+1}, P) -> ... -> C(X^0, P) -> E(X^{n+1}, P)
    std::vector<GroupHom> con;
    for (std::size_t i = 0; i <= n; ++i) {
      std::size_t t = n + 1 - i;
      con.push_back(tabulate(c.hom_group(x.objects[t], p), c.hom_group(x.objects[t - 1], p), [&](const GroupElement& k) {
        return c.to_coords(c.compose(c.from_coords(x.objects[t], p, k), x.d[t - 1]));
      }));
    }
    con.push_back(tabulate(c.hom_group(x.A(), p), e.value(x.C(), p), [&](const GroupElement& k) {
      return e.push_class(c.from_coords(x.A(), p, k), x.C(), d.cls);
    }));
    for (std::size_t k = 1; k <= n + 1; ++k) {
      if (!exact_at(cov[k - 1], cov[k])) {
        r.holds = false;
        r.probe = p;
        r.position = "C(P, " + sup("X", k) + ")";
        return r;
      }
      if (!exact_at(con[k - 1], con[k])) {
        r.holds = false;
        r.probe = p;
        r.position = "C(" + sup("X", n + 1 - k) + ", P)";
        return r;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- realisations

SplitRealisation::SplitRealisation(BifunctorPtr e, int n) : e_(std::move(e)), n_(n) {
  if (n < 1) throw Error(ErrorCode::Validation, "n must be at least 1");
}

HomotopyClass SplitRealisation::realise_class(const Extension& d) const {
  const auto& c = e_->category();
  if (!d.cls.is_zero()) throw Error(ErrorCode::Unsupported, "the split realisation only realises zero classes");
  NComplex x;
  if (n_ == 1) {
    auto b = c.biproduct(d.A, d.C);
    x = make_complex(c, {b.iota1, b.pi2});
  } else {
    auto z = c.zero_object();
    std::vector<Morphism> ds{c.identity(d.A), c.zero(d.A, n_ == 2 ? d.C : z)};
    for (int i = 2; i < n_; ++i) ds.push_back(c.zero(z, i + 1 == n_ ? d.C : z));
    ds.push_back(c.identity(d.C));
    x = make_complex(c, std::move(ds));
  }
  return {x, x, trivial_equivalence(c, x)};
}

HomotopyClass Ext1Realisation::realise_class(const Extension& d) const {
  const auto& fin = e_->backend();
  const auto& A = d.A.as_group();
  const auto& C = d.C.as_group();
  const std::size_t ra = A.rank(), rc = C.rank();
  auto reps = e_->representatives(d);
  // generators: those of A, then one lift t_j per cyclic summand of C
  Matrix rel(ra + rc, ra + rc);
  for (std::size_t i = 0; i < ra; ++i) rel(i, i) = A.factors()[i];
  for (std::size_t j = 0; j < rc; ++j) {
    for (std::size_t i = 0; i < ra; ++i) rel(i, ra + j) = -reps(i, j);
    rel(ra + j, ra + j) = C.factors()[j];
  }
  auto can = canonicalize(rel);
  const std::size_t rb = can.group.rank();
  auto i = fin.hom(A, can.group, can.to_canon.block(0, 0, rb, ra));
  auto p = fin.hom(can.group, C, can.from_canon.block(ra, 0, rc, rb));
  auto x = make_complex(fin, {i, p});
  return {x, x, trivial_equivalence(fin, x)};
}

Extension Ext1Realisation::classify(const NComplex& x) const {
  const auto& fin = e_->backend();
  check_complex(fin, x);
  if (x.n != 1) throw Error(ErrorCode::Validation, "not a short sequence");
  auto i = fin.as_group_hom(x.d[0]);
  auto p = fin.as_group_hom(x.d[1]);
  if (!is_injective(i) || !is_surjective(p) || image_order(i) * p.target().order() != p.source().order())
    throw Error(ErrorCode::Validation, "sequence is not short exact");
  const auto& A = x.A().as_group();
  const auto& C = x.C().as_group();
  Matrix reps(A.rank(), C.rank());
  for (std::size_t j = 0; j < C.rank(); ++j) {
    auto b = solve(p, GroupElement::basis(C, j));
    auto a = solve(i, b->scaled(C.factors()[j]));
    for (std::size_t k = 0; k < A.rank(); ++k) reps(k, j) = a->coords[k];
  }
  return Extension{x.A(), x.C(), e_->class_of(x.C(), x.A(), reps)};
}

RelativeRealisation::RelativeRealisation(std::shared_ptr<const RelativeSubfunctor> e, RealisationPtr parent)
    : e_(std::move(e)), parent_(std::move(parent)) {
  if (&parent_->bifunctor() != &e_->parent())
    throw Error(ErrorCode::InvalidBackend, "realisation does not belong to the ambient bifunctor");
}

HomotopyClass RelativeRealisation::realise_class(const Extension& d) const {
  return parent_->realise_class(e_->include(d));
}

HomotopyClass CorruptedRealisation::realise_class(const Extension& d) const {
  return base_->realise_class(bifunctor().zero(d.C, d.A));
}

RealisationPtr make_realisation(const BifunctorPtr& e, int n) {
  if (auto r = std::dynamic_pointer_cast<const RelativeSubfunctor>(e))
    return std::make_shared<RelativeRealisation>(r, make_realisation(r->parent_ptr(), n));
  if (std::dynamic_pointer_cast<const SplitBifunctor>(e)) return std::make_shared<SplitRealisation>(e, n);
  if (auto x = std::dynamic_pointer_cast<const Ext1Bifunctor>(e)) {
    if (n != 1) throw Error(ErrorCode::Unsupported, "ext1 is realised by short exact sequences only (n = 1)");
    return std::make_shared<Ext1Realisation>(x);
  }
  throw Error(ErrorCode::Unsupported, "no realisation registered for " + e->name());
}

// ---------------------------------------------------------------- short exact sequences

NComplex ses_pushout(const FinAbBackend& c, const NComplex& x, const Morphism& a) {
  if (x.n != 1 || a.source != x.A()) throw Error(ErrorCode::ObjectMismatch, "pushout of a short sequence");
  const auto& X = a.target.as_group();
  const auto& B = x.objects[1].as_group();
  const auto& A = x.A().as_group();
  const std::size_t rx = X.rank(), rb = B.rank(), ra = A.rank();
  // (X + B) / {(a(y), -i(y))}
  Matrix rel(rx + rb, rx + rb + ra);
  for (std::size_t k = 0; k < rx; ++k) rel(k, k) = X.factors()[k];
  for (std::size_t k = 0; k < rb; ++k) rel(rx + k, rx + k) = B.factors()[k];
  for (std::size_t j = 0; j < ra; ++j) {
    for (std::size_t k = 0; k < rx; ++k) rel(k, rx + rb + j) = a.data(k, j);
    for (std::size_t k = 0; k < rb; ++k) rel(rx + k, rx + rb + j) = -x.d[0].data(k, j);
  }
  auto can = canonicalize(rel);
  const std::size_t rq = can.group.rank();
  Matrix proj(x.C().as_group().rank(), rx + rb);
  proj.set_block(0, rx, x.d[1].data);
  auto i = c.hom(X, can.group, can.to_canon.block(0, 0, rq, rx));
  auto p = c.hom(can.group, x.C().as_group(), proj * can.from_canon);
  return make_complex(c, {i, p});
}

NComplex ses_pullback(const FinAbBackend& c, const NComplex& x, const Morphism& z) {
  if (x.n != 1 || z.target != x.C()) throw Error(ErrorCode::ObjectMismatch, "pullback of a short sequence");
  auto s = c.biproduct(x.objects[1], z.source);
  auto phi = c.subtract(c.compose(x.d[1], s.pi1), c.compose(z, s.pi2));
  auto k = kernel(c.as_group_hom(phi));
  auto incl = c.hom(k.group, s.sum.as_group(), k.inclusion.matrix());
  auto i = solve_morphisms(
      c, {{x.A(), incl.source}}, [&](const std::vector<Morphism>& v) { return std::vector{c.compose(incl, v[0])}; },
      {c.compose(s.iota1, x.d[0])});
  if (!i) throw Error(ErrorCode::NotWellDefined, "inclusion does not factor through the pullback");
  return make_complex(c, {(*i)[0], c.compose(s.pi2, incl)});
}

NComplex ses_baer_sum(const FinAbBackend& c, const NComplex& x, const NComplex& y) {
  if (x.A() != y.A() || x.C() != y.C()) throw Error(ErrorCode::ObjectMismatch, "Baer sum of sequences with different ends");
  return ses_pullback(c, ses_pushout(c, direct_sum(c, x, y), c.codiagonal(x.A())), c.diagonal(x.C()));
}

// ---------------------------------------------------------------- inflations, deflations, EA2

namespace {

std::optional<Extension> realised_by(const Realisation& s, const NComplex& x) {
  for (const auto& d : s.bifunctor().all(x.C(), x.A()))
    if (homotopy_equivalent(s.category(), s.realise(d), x)) return d;
  return std::nullopt;
}

}  // namespace

std::optional<Extension> s_inflation_class(const Realisation& s, const Morphism& h) {
  const auto& c = s.category();
  auto cok = c.cokernel(h);
  if (!cok)
    if (auto sc = split_complement(c, h)) cok = std::pair{sc->complement, sc->projection};
  if (!cok) return std::nullopt;
  auto z = c.zero_object();
  std::vector<Morphism> d{h, cok->second};
  for (int i = 2; i <= s.n(); ++i) d.push_back(c.zero(i == 2 ? cok->first : z, z));
  return realised_by(s, make_complex(c, std::move(d)));
}

std::optional<Extension> s_deflation_class(const Realisation& s, const Morphism& h) {
  const auto& c = s.category();
  auto ker = c.kernel(h);
  if (!ker)
    if (auto sk = split_kernel(c, h)) ker = std::pair{sk->kernel, sk->inclusion};
  if (!ker) return std::nullopt;
  auto z = c.zero_object();
  std::vector<Morphism> d;
  for (int i = 2; i <= s.n(); ++i) d.push_back(c.zero(z, i == s.n() ? ker->first : z));
  d.push_back(ker->second);
  d.push_back(h);
  return realised_by(s, make_complex(c, std::move(d)));
}

LiftSearch ea2_search(const Realisation& s, const Extension& d, const Morphism& cc) {
  const auto& e = s.bifunctor();
  const auto& c = s.category();
  auto x = s.realise(e.pull(cc, d));
  auto y = s.realise(d);
  auto target = s.realise(e.push(x.d[0], d));
  LiftSearch r;
  auto lifts = lift_classes(c, x, y, c.identity(d.A), cc);
  r.lifts = lifts.lifts;
  r.classes = lifts.representatives.size();
  for (const auto& f : lifts.representatives) {
    ++r.tried;
    if (homotopy_equivalent(c, target, mapping_cone(c, x, y, f))) {
      r.lift = f;
      break;
    }
  }
  return r;
}

LiftSearch ea2op_search(const Realisation& s, const Extension& d, const Morphism& a) {
  const auto& e = s.bifunctor();
  const auto& c = s.category();
  auto x = s.realise(d);
  auto y = s.realise(e.push(a, d));
  auto target = s.realise(e.pull(y.d.back(), d));
  LiftSearch r;
  auto lifts = lift_classes(c, x, y, a, c.identity(d.C));
  r.lifts = lifts.lifts;
  r.classes = lifts.representatives.size();
  for (const auto& f : lifts.representatives) {
    ++r.tried;
    if (homotopy_equivalent(c, target, mapping_cocone(c, x, y, f))) {
      r.lift = f;
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------- verifier

namespace {

struct AxiomData {
  const Realisation* s;
  std::vector<Object> objects;
  std::vector<Extension> exts;
  std::vector<NComplex> realised;  // realise(exts[i]), empty on failure
  bool sampled = false;
};

std::vector<GroupElement> pick_elements(const FinAbGroup& g, const VerifyConfig& cfg, std::mt19937_64& rng,
                                        bool& sampled) {
  auto s = sample_group(g, cfg, rng);
  sampled = sampled || s.sampled;
  auto v = std::move(s.elements);
  if (v.size() > cfg.per_pair) {
    std::shuffle(v.begin(), v.end(), rng);
    v.resize(cfg.per_pair);
    sampled = true;
  }
  return v;
}

std::string lift_note(const LiftSearch& r) {
  return "no lift works (" + std::to_string(r.classes) + " homotopy classes of " + std::to_string(r.lifts) +
         " lifts tried)";
}

}  // namespace

Plan plan_axioms(const Realisation& s, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const auto& e = s.bifunctor();
  const auto& c = s.category();
  auto p = std::make_shared<AxiomData>();
  p->s = &s;
  auto u = ext_universe(e, cfg, rng);
  p->objects = u.objects;
  p->exts = u.extensions;
  p->sampled = u.sampled;
  Plan plan;
  plan.reserve(8);
  auto add_check = [&](std::string id, std::string desc) -> PlannedCheck& {
    plan.push_back(PlannedCheck{std::move(id), std::move(desc), {}, p->sampled, {}});
    return plan.back();
  };
  std::string setup_error;
  for (const auto& d : p->exts) {
    try {
      p->realised.push_back(s.realise(d));
    } catch (const std::exception& ex) {
      p->realised.emplace_back();
      if (setup_error.empty()) setup_error = d.to_string() + ": " + ex.what();
    }
  }
  const std::size_t n = p->exts.size();

  {
    auto& ch = add_check("R1", "realisations are n-exangles");
    for (std::size_t i = 0; i < n; ++i)
      ch.instances.push_back({p->exts[i].to_string(), [p, i]() -> std::optional<std::string> {
                                const auto& S = *p->s;
                                auto k = S.realise_class(p->exts[i]);
                                if (!check_equivalence(S.category(), k.representative, k.raw, k.witness))
                                  return "stored equivalence with the raw complex is invalid";
                                auto r = is_n_exangle(S.bifunctor(), k.representative, p->exts[i]);
                                if (!r.holds) return k.representative.to_string() + ": " + r.to_string();
                                return std::nullopt;
                              }});
  }
  {
    auto& ch = add_check("R0", "morphisms of extensions lift to the realisations");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t seed = rng();
        ch.instances.push_back({p->exts[i].to_string() + " -> " + p->exts[j].to_string(),
                                [p, i, j, seed, cfg]() -> std::optional<std::string> {
                                  const auto& S = *p->s;
                                  std::mt19937_64 r(seed);
                                  ExtHomSpace space(S.bifunctor(), p->exts[i], p->exts[j]);
                                  bool sampled = false;
                                  const auto& x = p->realised[i];
                                  const auto& y = p->realised[j];
                                  for (const auto& k : pick_elements(space.group(), cfg, r, sampled)) {
                                    auto m = space.morphism(k);
                                    auto f = lift_morphism(S.category(), x, y, m.a, m.c);
                                    if (!f) return "no lift of " + m.to_string();
                                    if (!is_chain_map(S.category(), x, y, *f)) return "lift is not a chain map";
                                  }
                                  return std::nullopt;
                                }});
      }
  }
  {
    auto& ch = add_check("R2", "zero classes realise to the identity-padded complexes");
    for (const auto& a : p->objects) {
      ch.instances.push_back({"0 in E(0, " + a.to_string() + ")", [p, a]() -> std::optional<std::string> {
                                const auto& S = *p->s;
                                const auto& c = S.category();
                                auto x = S.realise(S.bifunctor().zero(c.zero_object(), a));
                                return expect(homotopy_equivalent(c, x, padded_start(c, a, S.n())).has_value(),
                                              x.to_string() + " is not A -> A -> 0 ...");
                              }});
      ch.instances.push_back({"0 in E(" + a.to_string() + ", 0)", [p, a]() -> std::optional<std::string> {
                                const auto& S = *p->s;
                                const auto& c = S.category();
                                auto x = S.realise(S.bifunctor().zero(a, c.zero_object()));
                                return expect(homotopy_equivalent(c, x, padded_end(c, a, S.n())).has_value(),
                                              x.to_string() + " is not ... 0 -> C -> C");
                              }});
    }
  }
  {
    auto& ch = add_check("EA1", "s-inflations and s-deflations are closed under composition");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = p->realised[i];
      if (x.objects.empty()) continue;
      const auto& mid = x.objects[1];
      const auto& last = x.objects[x.objects.size() - 2];
      for (const auto& o : p->objects) {
        bool sampled = false;
        for (const auto& k : pick_elements(e.value(o, mid), cfg, rng, sampled)) {
          Extension r{mid, o, k};
          ch.instances.push_back({"inflation of " + p->exts[i].to_string() + " then of " + r.to_string(),
                                  [p, i, r]() -> std::optional<std::string> {
                                    const auto& S = *p->s;
                                    auto g = S.realise(r).d.front();
                                    auto h = S.category().compose(g, p->realised[i].d.front());
                                    return expect(s_inflation_class(S, h).has_value(),
                                                  "composite " + h.to_string() + " is not an s-inflation");
                                  }});
        }
        for (const auto& k : pick_elements(e.value(last, o), cfg, rng, sampled)) {
          Extension r{o, last, k};
          ch.instances.push_back({"deflation of " + r.to_string() + " then of " + p->exts[i].to_string(),
                                  [p, i, r]() -> std::optional<std::string> {
                                    const auto& S = *p->s;
                                    auto g = S.realise(r).d.back();
                                    auto h = S.category().compose(p->realised[i].d.back(), g);
                                    return expect(s_deflation_class(S, h).has_value(),
                                                  "composite " + h.to_string() + " is not an s-deflation");
                                  }});
        }
        p->sampled = p->sampled || sampled;
      }
    }
  }
  {
    auto& ch = add_check("EA2", "a lift of (id, c) whose cone realises the pushed class");
    auto& op = add_check("EA2op", "a lift of (a, id) whose cocone realises the pulled class");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& d = p->exts[i];
      for (const auto& o : p->objects) {
        bool sampled = false;
        for (const auto& k : pick_elements(c.hom_group(o, d.C), cfg, rng, sampled)) {
          auto cc = c.from_coords(o, d.C, k);
          ch.instances.push_back({d.to_string() + " along " + cc.to_string(), [p, d, cc]() -> std::optional<std::string> {
                                    auto r = ea2_search(*p->s, d, cc);
                                    return expect(r.lift.has_value(), lift_note(r));
                                  }});
        }
        for (const auto& k : pick_elements(c.hom_group(d.A, o), cfg, rng, sampled)) {
          auto a = c.from_coords(d.A, o, k);
          op.instances.push_back({d.to_string() + " along " + a.to_string(), [p, d, a]() -> std::optional<std::string> {
                                    auto r = ea2op_search(*p->s, d, a);
                                    return expect(r.lift.has_value(), lift_note(r));
                                  }});
        }
        p->sampled = p->sampled || sampled;
      }
    }
  }
  for (auto& ch : plan) {
    ch.sampled = ch.sampled || p->sampled;
    thin(ch, cfg.max_instances, rng);
  }
  if (!setup_error.empty())
    plan.insert(plan.begin(), PlannedCheck{"setup", "realising the universe",
                                           {{"universe", [setup_error]() -> std::optional<std::string> {
                                              return setup_error;
                                            }}},
                                           false, {}});
  return plan;
}

Report verify_axioms(const Realisation& s, const VerifyConfig& cfg) {
  return run_plan("realisation " + s.name() + " of " + s.bifunctor().name() + " extensions over " +
                      s.category().name(),
                  plan_axioms(s, cfg), cfg.max_witnesses);
}

}  // namespace nexang
