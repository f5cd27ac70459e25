#include "nexang/functors.hpp"

#include <algorithm>

namespace nexang {

namespace {

[[noreturn]] void mismatch(const std::string& what) { throw Error(ErrorCode::StructureMismatch, what); }

template <class Fn>
GroupHom tabulate_hom(const FinAbGroup& s, const FinAbGroup& t, Fn fn) {
  Matrix m(t.rank(), s.rank());
  for (std::size_t j = 0; j < s.rank(); ++j) {
    auto y = fn(GroupElement::basis(s, j));
    if (y.parent != t) throw Error(ErrorCode::ObjectMismatch, "image lies in " + y.parent.to_string());
    for (std::size_t i = 0; i < t.rank(); ++i) m(i, j) = y.coords[i];
  }
  return GroupHom(s, t, std::move(m));
}

template <class T>
void keep_random(std::vector<T>& v, std::size_t k, std::mt19937_64& rng, bool& sampled) {
  if (v.size() <= k) return;
  std::shuffle(v.begin(), v.end(), rng);
  v.resize(k);
  sampled = true;
}

PlannedCheck& add_check(Plan& plan, std::string id, std::string desc) {
  plan.push_back(PlannedCheck{std::move(id), std::move(desc), {}, false, {}});
  return plan.back();
}

class IdentityFunctor final : public AdditiveFunctor {
 public:
  explicit IdentityFunctor(CategoryPtr c) : c_(std::move(c)) {}
  std::string name() const override { return "id"; }
  const AdditiveCategory& source() const override { return *c_; }
  const AdditiveCategory& target() const override { return *c_; }
  Object on_object(const Object& x) const override { return x; }
  Morphism on_morphism(const Morphism& f) const override { return f; }

 private:
  CategoryPtr c_;
};

class DuplicationFunctor final : public AdditiveFunctor {
 public:
  explicit DuplicationFunctor(CategoryPtr c) : c_(std::move(c)) {}
  std::string name() const override { return "dup"; }
  const AdditiveCategory& source() const override { return *c_; }
  const AdditiveCategory& target() const override { return *c_; }
  Object on_object(const Object& x) const override { return c_->biproduct(x, x).sum; }
  Morphism on_morphism(const Morphism& f) const override { return c_->direct_sum(f, f); }

 private:
  CategoryPtr c_;
};

class ZeroFunctor final : public AdditiveFunctor {
 public:
  ZeroFunctor(CategoryPtr c, CategoryPtr d) : c_(std::move(c)), d_(std::move(d)) {}
  std::string name() const override { return "0"; }
  const AdditiveCategory& source() const override { return *c_; }
  const AdditiveCategory& target() const override { return *d_; }
  Object on_object(const Object&) const override { return d_->zero_object(); }
  Morphism on_morphism(const Morphism&) const override {
    return d_->zero(d_->zero_object(), d_->zero_object());
  }

 private:
  CategoryPtr c_, d_;
};

class ScalarFunctor final : public AdditiveFunctor {
 public:
  ScalarFunctor(CategoryPtr c, Int k) : c_(std::move(c)), k_(k) {}
  std::string name() const override { return std::to_string(k_) + "*"; }
  const AdditiveCategory& source() const override { return *c_; }
  const AdditiveCategory& target() const override { return *c_; }
  Object on_object(const Object& x) const override { return x; }
  Morphism on_morphism(const Morphism& f) const override { return c_->scale(k_, f); }

 private:
  CategoryPtr c_;
  Int k_;
};

class ComposedFunctor final : public AdditiveFunctor {
 public:
  ComposedFunctor(FunctorPtr g, FunctorPtr f) : g_(std::move(g)), f_(std::move(f)) {
    if (&g_->source() != &f_->target()) mismatch(g_->name() + " cannot follow " + f_->name());
  }
  std::string name() const override { return g_->name() + "." + f_->name(); }
  const AdditiveCategory& source() const override { return f_->source(); }
  const AdditiveCategory& target() const override { return g_->target(); }
  Object on_object(const Object& x) const override { return g_->on_object(f_->on_object(x)); }
  Morphism on_morphism(const Morphism& m) const override { return g_->on_morphism(f_->on_morphism(m)); }

 private:
  FunctorPtr g_, f_;
};

}  // namespace

Morphism AdditiveFunctor::coherence(const Object& x, const Object& y) const {
  auto b = source().biproduct(x, y);
  return target().column(on_morphism(b.pi1), on_morphism(b.pi2));
}

FunctorPtr identity_functor(CategoryPtr c) { return std::make_shared<IdentityFunctor>(std::move(c)); }
FunctorPtr duplication_functor(CategoryPtr c) { return std::make_shared<DuplicationFunctor>(std::move(c)); }
FunctorPtr zero_functor(CategoryPtr c, CategoryPtr d) {
  return std::make_shared<ZeroFunctor>(std::move(c), std::move(d));
}
FunctorPtr scalar_functor(CategoryPtr c, Int k) { return std::make_shared<ScalarFunctor>(std::move(c), k); }
FunctorPtr compose_functors(FunctorPtr g, FunctorPtr f) {
  return std::make_shared<ComposedFunctor>(std::move(g), std::move(f));
}

// ---------------------------------------------------------------- relabeling

RelabelingFunctor::RelabelingFunctor(std::shared_ptr<const TableBackend> t, std::map<std::string, FinAbGroup> groups,
                                     std::map<std::string, std::string> perm, std::map<std::string, Matrix> isos)
    : t_(std::move(t)), groups_(std::move(groups)), perm_(std::move(perm)), isos_(std::move(isos)) {
  for (const auto& x : t_->data().objects) {
    if (!groups_.count(x) || !perm_.count(x) || !isos_.count(x))
      throw Error(ErrorCode::InvalidFunctor, "relabeling misses object " + x);
    const auto& y = perm_.at(x);
    if (!groups_.count(y)) throw Error(ErrorCode::InvalidFunctor, "relabeling sends " + x + " outside the table");
    if (t_->hom_group(Object::named(x), Object::named(x)) != hom_group(groups_.at(x), groups_.at(x)).group)
      throw Error(ErrorCode::InvalidFunctor, "group of " + x + " does not match the table");
    GroupHom s(groups_.at(x), groups_.at(y), isos_.at(x));
    if (!is_injective(s) || !is_surjective(s))
      throw Error(ErrorCode::InvalidFunctor, "s_" + x + " is not an isomorphism");
  }
}

Object RelabelingFunctor::on_object(const Object& x) const {
  t_->require(x);
  return Object::named(perm_.at(x.as_name()));
}

GroupHom RelabelingFunctor::as_hom(const Morphism& f) const {
  auto hg = hom_group(groups_.at(f.source.as_name()), groups_.at(f.target.as_name()));
  return hg.hom_of(t_->to_coords(f));
}

Morphism RelabelingFunctor::from_hom(const std::string& x, const std::string& y, const GroupHom& h) const {
  auto hg = hom_group(groups_.at(x), groups_.at(y));
  return t_->from_coords(Object::named(x), Object::named(y), hg.coords_of(h));
}

Morphism RelabelingFunctor::on_morphism(const Morphism& f) const {
  t_->require(f);
  const auto& x = f.source.as_name();
  const auto& y = f.target.as_name();
  GroupHom sx(groups_.at(x), groups_.at(perm_.at(x)), isos_.at(x));
  GroupHom sy(groups_.at(y), groups_.at(perm_.at(y)), isos_.at(y));
  auto inv = tabulate_hom(sx.target(), sx.source(), [&](const GroupElement& e) { return *solve(sx, e); });
  return from_hom(perm_.at(x), perm_.at(y), compose(sy, compose(as_hom(f), inv)));
}

Morphism RelabelingFunctor::iso(const Object& x) const {
  const auto& n = x.as_name();
  return from_hom(n, perm_.at(n), GroupHom(groups_.at(n), groups_.at(perm_.at(n)), isos_.at(n)));
}

std::shared_ptr<const RelabelingFunctor> RelabelingFunctor::inverse() const {
  std::map<std::string, std::string> perm;
  std::map<std::string, Matrix> isos;
  for (const auto& [x, y] : perm_) {
    GroupHom sx(groups_.at(x), groups_.at(y), isos_.at(x));
    perm[y] = x;
    isos[y] = tabulate_hom(sx.target(), sx.source(), [&](const GroupElement& e) { return *solve(sx, e); }).matrix();
  }
  return std::make_shared<RelabelingFunctor>(t_, groups_, perm, isos);
}

std::shared_ptr<const RelabelingFunctor> swap_relabeling() {
  std::vector<std::pair<std::string, FinAbGroup>> objs{{"0", FinAbGroup()},
                                                       {"X1", FinAbGroup({2})},
                                                       {"X2", FinAbGroup({2})},
                                                       {"S", FinAbGroup({2, 2})}};
  auto t = std::make_shared<TableBackend>("relabel", table_from_groups(objs));
  std::map<std::string, FinAbGroup> groups(objs.begin(), objs.end());
  std::map<std::string, std::string> perm{{"0", "0"}, {"X1", "X2"}, {"X2", "X1"}, {"S", "S"}};
  std::map<std::string, Matrix> isos{{"0", Matrix(0, 0)}, {"X1", Matrix{{1}}}, {"X2", Matrix{{1}}},
                                     {"S", Matrix{{0, 1}, {1, 0}}}};
  return std::make_shared<RelabelingFunctor>(t, groups, perm, isos);
}

// ---------------------------------------------------------------- verify_additive

Report verify_additive(const AdditiveFunctor& f, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const auto& c = f.source();
  auto u = c.universe(cfg.object_cap);
  Plan plan;
  plan.reserve(5);
  auto& objs = add_check(plan, "objects", "F X lies in the target");
  auto& ids = add_check(plan, "identities", "F id_X = id_FX");
  auto& comp = add_check(plan, "composition", "F(g f) = F(g) F(f) on generators");
  auto& add = add_check(plan, "addition", "F(f + g) = F f + F g and F 0 = 0 on generators");
  auto& bip = add_check(plan, "biproducts", "(F pi1; F pi2) is invertible and compatible with the injections");
  const AdditiveFunctor* fp = &f;
  for (const auto& x : u) {
    objs.instances.push_back({x.to_string(), [fp, x] {
                                return expect(fp->target().contains(fp->on_object(x)),
                                              fp->on_object(x).to_string() + " is not in the target");
                              }});
    ids.instances.push_back({x.to_string(), [fp, x] {
                               auto fx = fp->on_object(x);
                               auto img = fp->on_morphism(fp->source().identity(x));
                               return expect(img == fp->target().identity(fx),
                                             "F id = " + img.to_string() + " for X = " + x.to_string());
                             }});
  }
  for (const auto& x : u)
    for (const auto& y : u) {
      auto fxy = c.hom_basis(x, y);
      for (std::size_t i = 0; i < fxy.size(); ++i)
        for (std::size_t j = i; j < fxy.size(); ++j)
          add.instances.push_back({x.to_string() + " -> " + y.to_string(), [fp, a = fxy[i], b = fxy[j]] {
                                     const auto& t = fp->target();
                                     auto lhs = fp->on_morphism(fp->source().add(a, b));
                                     auto rhs = t.add(fp->on_morphism(a), fp->on_morphism(b));
                                     return expect(lhs == rhs, "F(f + g) != F f + F g for f = " + a.to_string() +
                                                                   ", g = " + b.to_string());
                                   }});
      add.instances.push_back({"0: " + x.to_string() + " -> " + y.to_string(), [fp, x, y] {
                                 auto img = fp->on_morphism(fp->source().zero(x, y));
                                 return expect(fp->target().is_zero(img), "F 0 = " + img.to_string());
                               }});
      bool designated = true;
      try {
        c.biproduct(x, y);
        f.target().biproduct(f.on_object(x), f.on_object(y));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NotInCategory) throw;
        designated = false;
      }
      if (designated)
        bip.instances.push_back({x.to_string() + " + " + y.to_string(), [fp, x, y] () -> std::optional<std::string> {
                                 const auto& t = fp->target();
                                 auto b = fp->source().biproduct(x, y);
                                 auto fb = t.biproduct(fp->on_object(x), fp->on_object(y));
                                 auto h = fp->coherence(x, y);
                                 if (!inverse(t, h)) return "coherence map " + h.to_string() + " is not invertible";
                                 if (t.compose(h, fp->on_morphism(b.iota1)) != fb.iota1 ||
                                     t.compose(h, fp->on_morphism(b.iota2)) != fb.iota2)
                                   return "coherence map does not carry F iota to iota";
                                 return std::nullopt;
                               }});
      for (const auto& z : u) {
        auto gyz = c.hom_basis(y, z);
        for (const auto& a : fxy)
          for (const auto& g : gyz)
            comp.instances.push_back({x.to_string() + " -> " + y.to_string() + " -> " + z.to_string(), [fp, a, g] {
                                        const auto& t = fp->target();
                                        auto lhs = fp->on_morphism(fp->source().compose(g, a));
                                        auto rhs = t.compose(fp->on_morphism(g), fp->on_morphism(a));
                                        return expect(lhs == rhs, "F(g f) = " + lhs.to_string() + " but F g F f = " +
                                                                      rhs.to_string() + " for f = " + a.to_string() +
                                                                      ", g = " + g.to_string());
                                      }});
      }
    }
  for (auto& ch : plan)
    if (cfg.max_instances) thin(ch, cfg.max_instances, rng);
  return run_plan("additive functor " + f.name() + " on " + c.name(), plan, cfg.max_witnesses);
}

NComplex apply_to_complex(const AdditiveFunctor& f, const NComplex& x) {
  NComplex y;
  y.n = x.n;
  for (const auto& o : x.objects) y.objects.push_back(f.on_object(o));
  for (const auto& m : x.d) y.d.push_back(f.on_morphism(m));
  check_complex(f.target(), y);
  return y;
}

// ---------------------------------------------------------------- Gamma

Extension GammaTransform::apply(const Extension& d) const {
  const auto& f = *functor();
  return Extension{f.on_object(d.A), f.on_object(d.C), component(d.C, d.A)(d.cls)};
}

namespace {

class GammaBase : public GammaTransform {
 public:
  GammaBase(std::string name, BifunctorPtr e, BifunctorPtr e2, FunctorPtr f)
      : name_(std::move(name)), e_(std::move(e)), e2_(std::move(e2)), f_(std::move(f)) {
    if (&e_->category() != &f_->source() || &e2_->category() != &f_->target())
      mismatch("Gamma for " + f_->name() + " between bifunctors over other categories");
  }
  std::string name() const override { return name_; }
  const BifunctorPtr& source() const override { return e_; }
  const BifunctorPtr& target() const override { return e2_; }
  const FunctorPtr& functor() const override { return f_; }

 protected:
  void require_fixed(const Object& x) const {
    if (f_->on_object(x) != x)
      throw Error(ErrorCode::InvalidFunctor, name_ + " needs F X = X, got F " + x.to_string() + " = " +
                                                 f_->on_object(x).to_string());
  }
  std::string name_;
  BifunctorPtr e_, e2_;
  FunctorPtr f_;
};

class ScalarGamma final : public GammaBase {
 public:
  ScalarGamma(BifunctorPtr e, FunctorPtr f, Int k)
      : GammaBase(k == 1 ? "id" : std::to_string(k) + "*id", e, e, std::move(f)), k_(k) {}
  GroupHom component(const Object& C, const Object& A) const override {
    require_fixed(C);
    require_fixed(A);
    return GroupHom::identity(e_->value(C, A)).scaled(k_);
  }

 private:
  Int k_;
};

class DiagonalGamma final : public GammaBase {
 public:
  DiagonalGamma(BifunctorPtr e, FunctorPtr f) : GammaBase("diag", e, e, std::move(f)) {}
  GroupHom component(const Object& C, const Object& A) const override {
    const auto& c = e_->category();
    for (const auto& x : {C, A})
      if (f_->on_object(x) != c.biproduct(x, x).sum)
        throw Error(ErrorCode::InvalidFunctor, "diag needs F X = X + X at " + x.to_string());
    return tabulate_hom(e_->value(C, A), e_->value(c.biproduct(C, C).sum, c.biproduct(A, A).sum),
                        [&](const GroupElement& x) {
                          Extension d{A, C, x};
                          return direct_sum(*e_, d, d).cls;
                        });
  }
};

class ZeroGamma final : public GammaBase {
 public:
  ZeroGamma(BifunctorPtr e, BifunctorPtr e2, FunctorPtr f) : GammaBase("0", std::move(e), std::move(e2), std::move(f)) {}
  GroupHom component(const Object& C, const Object& A) const override {
    return GroupHom::zero(e_->value(C, A), e2_->value(f_->on_object(C), f_->on_object(A)));
  }
};

class HomGamma final : public GammaBase {
 public:
  HomGamma(std::shared_ptr<const HomBifunctor> e, std::shared_ptr<const HomBifunctor> e2, FunctorPtr f)
      : GammaBase("F", e, e2, std::move(f)), h_(std::move(e)), h2_(std::move(e2)) {}
  GroupHom component(const Object& C, const Object& A) const override {
    auto fc = f_->on_object(C), fa = f_->on_object(A);
    return tabulate_hom(h_->value(C, A), h2_->value(fc, fa), [&](const GroupElement& x) {
      return f_->target().to_coords(f_->on_morphism(h_->as_morphism(Extension{A, C, x})));
    });
  }

 private:
  std::shared_ptr<const HomBifunctor> h_, h2_;
};

class ComposedGamma final : public GammaBase {
 public:
  ComposedGamma(GammaPtr phi, GammaPtr gamma)
      : GammaBase(phi->name() + "." + gamma->name(), gamma->source(), phi->target(),
                  compose_functors(phi->functor(), gamma->functor())),
        phi_(std::move(phi)),
        gamma_(std::move(gamma)) {
    if (phi_->source() != gamma_->target()) mismatch(phi_->name() + " does not start where " + gamma_->name() + " ends");
  }
  GroupHom component(const Object& C, const Object& A) const override {
    const auto& f = *gamma_->functor();
    return compose(phi_->component(f.on_object(C), f.on_object(A)), gamma_->component(C, A));
  }

 private:
  GammaPtr phi_, gamma_;
};

class WhiskeredGamma final : public GammaBase {
 public:
  WhiskeredGamma(GammaPtr phi, FunctorPtr f)
      : GammaBase(phi->name() + "_" + f->name(), std::make_shared<PulledBackBifunctor>(phi->source(), f), phi->target(),
                  compose_functors(phi->functor(), f)),
        phi_(std::move(phi)),
        g_(std::move(f)) {}
  GroupHom component(const Object& C, const Object& A) const override {
    return phi_->component(g_->on_object(C), g_->on_object(A));
  }

 private:
  GammaPtr phi_;
  FunctorPtr g_;
};

}  // namespace

GammaPtr identity_gamma(BifunctorPtr e, FunctorPtr f) { return std::make_shared<ScalarGamma>(std::move(e), std::move(f), 1); }
GammaPtr scalar_gamma(BifunctorPtr e, FunctorPtr f, Int k) {
  return std::make_shared<ScalarGamma>(std::move(e), std::move(f), k);
}
GammaPtr diagonal_gamma(BifunctorPtr e, FunctorPtr f) { return std::make_shared<DiagonalGamma>(std::move(e), std::move(f)); }
GammaPtr zero_gamma(BifunctorPtr e, BifunctorPtr e2, FunctorPtr f) {
  return std::make_shared<ZeroGamma>(std::move(e), std::move(e2), std::move(f));
}
GammaPtr hom_gamma(std::shared_ptr<const HomBifunctor> e, std::shared_ptr<const HomBifunctor> e2, FunctorPtr f) {
  return std::make_shared<HomGamma>(std::move(e), std::move(e2), std::move(f));
}
GammaPtr compose_gamma(GammaPtr phi, GammaPtr gamma) {
  return std::make_shared<ComposedGamma>(std::move(phi), std::move(gamma));
}

FinAbGroup PulledBackBifunctor::value(const Object& C, const Object& A) const {
  return e_->value(f_->on_object(C), f_->on_object(A));
}
GroupElement PulledBackBifunctor::push_class(const Morphism& x, const Object& C, const GroupElement& cls) const {
  return e_->push_class(f_->on_morphism(x), f_->on_object(C), cls);
}
GroupElement PulledBackBifunctor::pull_class(const Morphism& z, const Object& A, const GroupElement& cls) const {
  return e_->pull_class(f_->on_morphism(z), f_->on_object(A), cls);
}

GammaPtr whisker_bifunctor(GammaPtr phi, FunctorPtr f) {
  if (&phi->functor()->source() != &f->target()) mismatch(phi->name() + " cannot be whiskered by " + f->name());
  return std::make_shared<WhiskeredGamma>(std::move(phi), std::move(f));
}

Report verify_natural(const GammaTransform& g, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const auto& e = *g.source();
  const auto& c = e.category();
  auto u = c.universe(cfg.object_cap);
  Plan plan;
  plan.reserve(3);
  auto& comps = add_check(plan, "components", "components are homomorphisms between the right groups");
  auto& push = add_check(plan, "push", "Gamma(x_E d) = (F x)_E' Gamma(d)");
  auto& pull = add_check(plan, "pull", "Gamma(z^E d) = (F z)^E' Gamma(d)");
  const GammaTransform* gp = &g;
  bool sampled = false;
  for (const auto& C : u)
    for (const auto& A : u) {
      comps.instances.push_back({"(" + C.to_string() + ", " + A.to_string() + ")", [gp, C, A] {
                                   const auto& f = *gp->functor();
                                   auto h = gp->component(C, A);
                                   return expect(h.source() == gp->source()->value(C, A) &&
                                                     h.target() == gp->target()->value(f.on_object(C), f.on_object(A)),
                                                 "component has the wrong groups");
                                 }});
      auto gens = e.generators(C, A);
      gens.push_back(e.zero(C, A));
      for (const auto& X : u) {
        auto xs = sample_group(c.hom_group(A, X), cfg, rng);
        sampled = sampled || xs.sampled;
        for (const auto& xc : xs.elements) {
          auto x = c.from_coords(A, X, xc);
          for (const auto& d : gens)
            push.instances.push_back({x.to_string() + " on " + d.to_string(), [gp, x, d] {
                                        const auto& f = *gp->functor();
                                        auto lhs = gp->apply(gp->source()->push(x, d));
                                        auto rhs = gp->target()->push(f.on_morphism(x), gp->apply(d));
                                        return expect(lhs == rhs, "Gamma(x_E d) = " + lhs.to_string() +
                                                                      " but (F x)_E' Gamma(d) = " + rhs.to_string());
                                      }});
        }
        auto zs = sample_group(c.hom_group(X, C), cfg, rng);
        sampled = sampled || zs.sampled;
        for (const auto& zc : zs.elements) {
          auto z = c.from_coords(X, C, zc);
          for (const auto& d : gens)
            pull.instances.push_back({z.to_string() + " on " + d.to_string(), [gp, z, d] {
                                        const auto& f = *gp->functor();
                                        auto lhs = gp->apply(gp->source()->pull(z, d));
                                        auto rhs = gp->target()->pull(f.on_morphism(z), gp->apply(d));
                                        return expect(lhs == rhs, "Gamma(z^E d) = " + lhs.to_string() +
                                                                      " but (F z)^E' Gamma(d) = " + rhs.to_string());
                                      }});
        }
      }
    }
  for (auto& ch : plan) {
    ch.sampled = ch.sampled || sampled;
    if (cfg.max_instances) thin(ch, cfg.max_instances, rng);
  }
  return run_plan("Gamma " + g.name() + " over " + g.functor()->name(), plan, cfg.max_witnesses);
}

// ---------------------------------------------------------------- ExFunctor

ExFunctorPtr make_exfunctor(GammaPtr gamma, RealisationPtr s, RealisationPtr t) {
  if (&s->bifunctor() != gamma->source().get()) mismatch("source realisation is not over " + gamma->source()->name());
  if (&t->bifunctor() != gamma->target().get()) mismatch("target realisation is not over " + gamma->target()->name());
  if (s->n() != t->n()) mismatch("structures with different n");
  return std::make_shared<ExFunctor>(ExFunctor{std::move(gamma), std::move(s), std::move(t)});
}

ExFunctorPtr identity_exfunctor(CategoryPtr c, RealisationPtr s) {
  if (c.get() != &s->category()) mismatch("realisation is not over " + c->name());
  auto f = identity_functor(std::move(c));
  return make_exfunctor(identity_gamma(s->bifunctor_ptr(), f), s, s);
}

ExFunctorPtr compose_exfunctors(const ExFunctorPtr& l, const ExFunctorPtr& f) {
  if (&f->target->bifunctor() != &l->source->bifunctor() || f->target->n() != l->source->n())
    mismatch(l->name() + " cannot follow " + f->name());
  return make_exfunctor(compose_gamma(l->gamma, f->gamma), f->source, l->target);
}

Verdict is_exangulated(const ExFunctor& f, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto u = ext_universe(*f.gamma->source(), cfg, rng);
  Verdict v;
  v.sampled = u.sampled;
  const auto& t = *f.target;
  for (const auto& d : u.extensions) {
    ++v.instances;
    auto fx = apply_to_complex(f.functor(), f.source->realise(d));
    auto img = f.gamma->apply(d);
    auto y = t.realise(img);
    if (!homotopy_equivalent(t.category(), fx, y)) {
      v.holds = false;
      v.witness = "d = " + d.to_string() + ": F applied to its realisation is not equivalent to s'(" +
                  img.to_string() + ") = " + y.to_string();
      return v;
    }
  }
  return v;
}

bool same_exfunctor(const ExFunctor& a, const ExFunctor& b, int cap) {
  if (a.gamma == b.gamma && a.source == b.source && a.target == b.target) return true;
  auto same_realisation = [](const Realisation& x, const Realisation& y) {
    return &x == &y || (&x.bifunctor() == &y.bifunctor() && x.n() == y.n() && x.name() == y.name());
  };
  if (!same_realisation(*a.source, *b.source) || !same_realisation(*a.target, *b.target)) return false;
  if (a.gamma->source() != b.gamma->source() || a.gamma->target() != b.gamma->target()) return false;
  const auto& fa = a.functor();
  const auto& fb = b.functor();
  if (&fa.source() != &fb.source() || &fa.target() != &fb.target()) return false;
  auto u = fa.source().universe(cap);
  for (const auto& x : u)
    if (fa.on_object(x) != fb.on_object(x)) return false;
  for (const auto& x : u)
    for (const auto& y : u) {
      for (const auto& g : fa.source().hom_basis(x, y))
        if (fa.on_morphism(g) != fb.on_morphism(g)) return false;
      if (a.gamma->component(x, y) != b.gamma->component(x, y)) return false;
    }
  return true;
}

// ---------------------------------------------------------------- ExtCatFunctor

namespace {

class InducedExtFunctor final : public ExtCatFunctor {
 public:
  explicit InducedExtFunctor(GammaPtr g) : g_(std::move(g)) {}
  std::string name() const override { return "E_(" + g_->functor()->name() + ", " + g_->name() + ")"; }
  const BifunctorPtr& source() const override { return g_->source(); }
  const BifunctorPtr& target() const override { return g_->target(); }
  Extension on_object(const Extension& d) const override { return g_->apply(d); }
  ExtMorphism on_morphism(const ExtMorphism& m) const override {
    const auto& f = *g_->functor();
    return ExtMorphism{g_->apply(m.source), g_->apply(m.target), f.on_morphism(m.a), f.on_morphism(m.c)};
  }
  FunctorPtr over() const override { return g_->functor(); }

 private:
  GammaPtr g_;
};

class SwapExtFunctor final : public ExtCatFunctor {
 public:
  explicit SwapExtFunctor(BifunctorPtr e) : e_(std::move(e)) {
    if (!dynamic_cast<const SplitBifunctor*>(e_.get()))
      throw Error(ErrorCode::Unsupported, "the swap functor needs the split bifunctor");
  }
  std::string name() const override { return "swap"; }
  const BifunctorPtr& source() const override { return e_; }
  const BifunctorPtr& target() const override { return e_; }
  Extension on_object(const Extension& d) const override { return e_->zero(d.A, d.C); }
  ExtMorphism on_morphism(const ExtMorphism& m) const override {
    return ExtMorphism{on_object(m.source), on_object(m.target), m.c, m.a};
  }

 private:
  BifunctorPtr e_;
};

class ComposedExtFunctor final : public ExtCatFunctor {
 public:
  ComposedExtFunctor(ExtFunctorPtr g, ExtFunctorPtr f) : g_(std::move(g)), f_(std::move(f)) {
    if (g_->source() != f_->target()) mismatch(g_->name() + " cannot follow " + f_->name());
  }
  std::string name() const override { return g_->name() + "." + f_->name(); }
  const BifunctorPtr& source() const override { return f_->source(); }
  const BifunctorPtr& target() const override { return g_->target(); }
  Extension on_object(const Extension& d) const override { return g_->on_object(f_->on_object(d)); }
  ExtMorphism on_morphism(const ExtMorphism& m) const override { return g_->on_morphism(f_->on_morphism(m)); }
  FunctorPtr over() const override {
    auto a = g_->over(), b = f_->over();
    if (!a || !b) return nullptr;
    return compose_functors(a, b);
  }

 private:
  ExtFunctorPtr g_, f_;
};

class ExtGamma final : public GammaBase {
 public:
  ExtGamma(FunctorPtr f, ExtFunctorPtr e)
      : GammaBase("Gamma_" + e->name(), e->source(), e->target(), std::move(f)), ext_(std::move(e)) {}
  GroupHom component(const Object& C, const Object& A) const override {
    auto fc = f_->on_object(C), fa = f_->on_object(A);
    return tabulate_hom(e_->value(C, A), e2_->value(fc, fa), [&](const GroupElement& x) {
      auto y = ext_->on_object(Extension{A, C, x});
      if (y.A != fa || y.C != fc)
        throw Error(ErrorCode::NotRespecting, ext_->name() + " sends an extension of " + C.to_string() + " by " +
                                                  A.to_string() + " outside E'(FC, FA)");
      return y.cls;
    });
  }

 private:
  ExtFunctorPtr ext_;
};

}  // namespace

ExtFunctorPtr induced_extfunctor(GammaPtr g) { return std::make_shared<InducedExtFunctor>(std::move(g)); }

ExtFunctorPtr extfun_from(GammaPtr g, const VerifyConfig& cfg) {
  auto rep = verify_natural(*g, cfg);
  if (!rep.passed()) {
    std::string w;
    for (const auto& ch : rep.checks)
      if (ch.status != Status::Pass) {
        w = ch.id + ": " + (ch.witnesses.empty() ? ch.note : ch.witnesses.front());
        break;
      }
    throw Error(ErrorCode::NaturalityViolation, g->name() + " is not natural: " + w);
  }
  return induced_extfunctor(std::move(g));
}

ExtFunctorPtr swap_extfunctor(BifunctorPtr split) { return std::make_shared<SwapExtFunctor>(std::move(split)); }

ExtFunctorPtr compose_extfunctors(ExtFunctorPtr g, ExtFunctorPtr f) {
  return std::make_shared<ComposedExtFunctor>(std::move(g), std::move(f));
}

std::vector<ExtMorphism> sample_ext_morphisms(const Bifunctor& e, const VerifyConfig& cfg, std::mt19937_64& rng,
                                              bool* sampled) {
  auto u = ext_universe(e, cfg, rng);
  bool s = u.sampled;
  std::vector<ExtMorphism> out;
  for (const auto& d : u.extensions)
    for (const auto& r : u.extensions) {
      ExtHomSpace space(e, d, r);
      auto els = sample_group(space.group(), cfg, rng);
      s = s || els.sampled;
      keep_random(els.elements, cfg.per_pair, rng, s);
      for (const auto& k : els.elements) out.push_back(space.morphism(k));
    }
  if (sampled) *sampled = s;
  return out;
}

Report verify_extfun(const ExtCatFunctor& e, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto u = ext_universe(*e.source(), cfg, rng);
  bool sampled = false;
  auto morphs = sample_ext_morphisms(*e.source(), cfg, rng, &sampled);
  auto src = std::make_shared<ExtCategory>(e.source());
  auto dst = std::make_shared<ExtCategory>(e.target());
  const ExtCatFunctor* ep = &e;
  Plan plan;
  plan.reserve(6);
  auto& objs = add_check(plan, "objects", "images of extensions are extensions of the target");
  auto& mors = add_check(plan, "morphisms", "E(f) is a morphism E(source) -> E(target)");
  auto& ids = add_check(plan, "identities", "E(id_d) = id_E(d)");
  auto& comp = add_check(plan, "composition", "E(g f) = E(g) E(f)");
  auto& add = add_check(plan, "additivity", "E(f + g) = E f + E g and E 0 = 0");
  auto& exact = add_check(plan, "exactness", "conflations are sent to conflations");
  for (const auto& d : u.extensions) {
    objs.instances.push_back({d.to_string(), [ep, d] {
                                auto y = ep->on_object(d);
                                return expect(y.cls.parent == ep->target()->value(y.C, y.A),
                                              "E(d) = " + y.to_string() + " is not a class of the target");
                              }});
    ids.instances.push_back({d.to_string(), [ep, src, dst, d] {
                               auto img = ep->on_morphism(src->identity(d));
                               return expect(img == dst->identity(ep->on_object(d)), "E(id) = " + img.to_string());
                             }});
  }
  std::map<std::string, std::vector<std::size_t>> by_source;
  for (std::size_t i = 0; i < morphs.size(); ++i) by_source[morphs[i].source.to_string()].push_back(i);
  for (std::size_t i = 0; i < morphs.size(); ++i) {
    const auto& f = morphs[i];
    mors.instances.push_back({f.to_string(), [ep, f]() -> std::optional<std::string> {
                                auto img = ep->on_morphism(f);
                                if (img.source != ep->on_object(f.source) || img.target != ep->on_object(f.target))
                                  return "E(f) has the wrong ends for f = " + f.to_string();
                                auto v = check_morphism(*ep->target(), img.source, img.target, img.a, img.c);
                                if (auto* bad = std::get_if<Violation>(&v)) return "E(f) is not a morphism: " + bad->reason;
                                return std::nullopt;
                              }});
    auto it = by_source.find(f.target.to_string());
    if (it != by_source.end())
      for (auto j : it->second) {
        const auto& g = morphs[j];
        comp.instances.push_back({g.to_string() + " . " + f.to_string(), [ep, src, dst, f, g] {
                                    auto lhs = ep->on_morphism(src->compose(g, f));
                                    auto rhs = dst->compose(ep->on_morphism(g), ep->on_morphism(f));
                                    return expect(lhs == rhs, "E(g f) = " + lhs.to_string() + " but E g E f = " +
                                                                  rhs.to_string());
                                  }});
      }
  }
  for (std::size_t i = 0; i < morphs.size(); ++i)
    for (std::size_t j = i; j < morphs.size() && j < i + cfg.per_pair; ++j) {
      const auto& f = morphs[i];
      const auto& g = morphs[j];
      if (f.source != g.source || f.target != g.target) continue;
      add.instances.push_back({f.to_string() + " + " + g.to_string(), [ep, src, dst, f, g] {
                                 auto lhs = ep->on_morphism(src->add(f, g));
                                 auto rhs = dst->add(ep->on_morphism(f), ep->on_morphism(g));
                                 return expect(lhs == rhs, "E(f + g) = " + lhs.to_string() + " but E f + E g = " +
                                                               rhs.to_string());
                               }});
    }
  for (const auto& d : u.extensions)
    add.instances.push_back({"0 on " + d.to_string(), [ep, src, dst, d] {
                               auto img = ep->on_morphism(src->zero(d, d));
                               return expect(img == dst->zero(ep->on_object(d), ep->on_object(d)),
                                             "E(0) = " + img.to_string());
                             }});
  auto conflation_instance = [&](ExtMorphism f, ExtMorphism g) {
    exact.instances.push_back({f.to_string() + ", " + g.to_string(), [ep, dst, f, g] {
                                 auto r = dst->is_conflation(ep->on_morphism(f), ep->on_morphism(g));
                                 return expect(r.holds, "image is not a conflation: " + r.reason);
                               }});
  };
  for (const auto& d : u.extensions)
    for (const auto& r : u.extensions) {
      auto b = src->biproduct(d, r);
      conflation_instance(b.iota1, b.pi2);
    }
  for (const auto& f : morphs)
    if (src->is_inflation(f))
      if (auto s = src->complete_inflation(f)) conflation_instance(s->inflation, s->deflation);
  for (auto& ch : plan) {
    ch.sampled = ch.sampled || sampled || u.sampled;
    if (cfg.max_instances) thin(ch, cfg.max_instances, rng);
  }
  return run_plan("functor " + e.name() + " of extension categories", plan, cfg.max_witnesses);
}

Verdict respects_morphisms_over(const ExtCatFunctor& e, const AdditiveFunctor& f, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  Verdict v;
  auto morphs = sample_ext_morphisms(*e.source(), cfg, rng, &v.sampled);
  for (const auto& m : morphs) {
    ++v.instances;
    auto lhs = e.on_morphism(m);
    ExtMorphism rhs{e.on_object(m.source), e.on_object(m.target), f.on_morphism(m.a), f.on_morphism(m.c)};
    if (lhs != rhs) {
      v.holds = false;
      v.witness = "for (a, c) = " + m.to_string() + ": E(a, c) = " + lhs.to_string() + " but (F a, F c) = " +
                  rhs.to_string();
      return v;
    }
  }
  return v;
}

Verdict respects_exangles_over(const ExtCatFunctor& e, const AdditiveFunctor& f, const Realisation& s,
                               const Realisation& t, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto u = ext_universe(*e.source(), cfg, rng);
  Verdict v;
  v.sampled = u.sampled;
  for (const auto& d : u.extensions) {
    ++v.instances;
    auto fx = apply_to_complex(f, s.realise(d));
    auto img = e.on_object(d);
    auto y = t.realise(img);
    if (!homotopy_equivalent(t.category(), fx, y)) {
      v.holds = false;
      v.witness = "d = " + d.to_string() + ": s'(E d) = " + y.to_string() + " is not equivalent to F applied to " +
                  "s(d), " + fx.to_string();
      return v;
    }
  }
  return v;
}

Report verify_respecting_laws(const ExtCatFunctor& e, const AdditiveFunctor& f, const VerifyConfig& cfg,
                              Int max_order) {
  std::mt19937_64 rng(cfg.seed);
  const auto& src = *e.source();
  const auto& c = src.category();
  auto u = c.universe(cfg.object_cap);
  const ExtCatFunctor* ep = &e;
  const AdditiveFunctor* fp = &f;
  Plan plan;
  plan.reserve(3);
  auto& add = add_check(plan, "additivity", "E(d1 + d2) = E d1 + E d2");
  auto& push = add_check(plan, "push", "E(x_E d) = (F x)_E' E(d)");
  auto& pull = add_check(plan, "pull", "E(z^E d) = (F z)^E' E(d)");
  bool sampled = false;
  for (const auto& C : u)
    for (const auto& A : u) {
      if (src.value(C, A).order() > max_order) continue;
      auto all = src.all(C, A);
      for (const auto& d1 : all)
        for (const auto& d2 : all)
          add.instances.push_back({d1.to_string() + " + " + d2.to_string(), [ep, d1, d2] {
                                     auto lhs = ep->on_object(ep->source()->add(d1, d2));
                                     auto a = ep->on_object(d1), b = ep->on_object(d2);
                                     if (a.A != b.A || a.C != b.C) return expect(false, "images have different ends");
                                     auto rhs = ep->target()->add(a, b);
                                     return expect(lhs == rhs, "E(d1 + d2) = " + lhs.to_string() + " but E d1 + E d2 = " +
                                                                   rhs.to_string());
                                   }});
      for (const auto& X : u) {
        auto xs = sample_group(c.hom_group(A, X), cfg, rng);
        auto zs = sample_group(c.hom_group(X, C), cfg, rng);
        sampled = sampled || xs.sampled || zs.sampled;
        for (const auto& xc : xs.elements) {
          auto x = c.from_coords(A, X, xc);
          for (const auto& d : all)
            push.instances.push_back({x.to_string() + " on " + d.to_string(), [ep, fp, x, d] {
                                        auto lhs = ep->on_object(ep->source()->push(x, d));
                                        auto rhs = ep->target()->push(fp->on_morphism(x), ep->on_object(d));
                                        return expect(lhs == rhs, "E(x_E d) = " + lhs.to_string() +
                                                                      " but (F x)_E' E d = " + rhs.to_string());
                                      }});
        }
        for (const auto& zc : zs.elements) {
          auto z = c.from_coords(X, C, zc);
          for (const auto& d : all)
            pull.instances.push_back({z.to_string() + " on " + d.to_string(), [ep, fp, z, d] {
                                        auto lhs = ep->on_object(ep->source()->pull(z, d));
                                        auto rhs = ep->target()->pull(fp->on_morphism(z), ep->on_object(d));
                                        return expect(lhs == rhs, "E(z^E d) = " + lhs.to_string() +
                                                                      " but (F z)^E' E d = " + rhs.to_string());
                                      }});
        }
      }
    }
  for (auto& ch : plan) {
    ch.sampled = ch.sampled || sampled;
    if (cfg.max_instances) thin(ch, cfg.max_instances, rng);
  }
  return run_plan("additivity and push/pull laws for " + e.name() + " over " + f.name(), plan, cfg.max_witnesses);
}

Verdict same_gamma(const GammaTransform& a, const GammaTransform& b, int cap) {
  Verdict v;
  if (a.source() != b.source() || a.target() != b.target()) {
    v.holds = false;
    v.witness = "different bifunctors";
    return v;
  }
  const auto& c = a.source()->category();
  for (const auto& C : c.universe(cap))
    for (const auto& A : c.universe(cap)) {
      ++v.instances;
      auto x = a.component(C, A), y = b.component(C, A);
      if (x != y) {
        v.holds = false;
        v.witness = "components at (" + C.to_string() + ", " + A.to_string() + ") differ: " + x.matrix().to_string() +
                    " vs " + y.matrix().to_string();
        return v;
      }
    }
  return v;
}

GammaPtr gamma_from(FunctorPtr f, ExtFunctorPtr e, const VerifyConfig& cfg) {
  if (&f->source() != &e->source()->category() || &f->target() != &e->target()->category())
    mismatch(f->name() + " and " + e->name() + " live over different categories");
  auto r = respects_morphisms_over(*e, *f, cfg);
  if (!r) throw Error(ErrorCode::NotRespecting, e->name() + " does not respect morphisms over " + f->name() + ": " + r.witness);
  GammaPtr g = std::make_shared<ExtGamma>(f, e);
  std::mt19937_64 rng(cfg.seed);
  for (const auto& d : ext_universe(*e->source(), cfg, rng).extensions) {
    GroupElement x;
    try {
      x = g->component(d.C, d.A)(d.cls);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NotWellDefined) throw;
      throw Error(ErrorCode::NaturalityViolation, "E is not additive on E(" + d.C.to_string() + ", " +
                                                      d.A.to_string() + "): " + err.what());
    }
    if (x != e->on_object(d).cls)
      throw Error(ErrorCode::NaturalityViolation, "E is not additive: E(" + d.to_string() + ") = " +
                                                      e->on_object(d).to_string() + " but the homomorphism gives " +
                                                      x.to_string());
  }
  auto rep = verify_natural(*g, cfg);
  if (!rep.passed()) throw Error(ErrorCode::NaturalityViolation, "recovered Gamma is not natural:\n" + rep.to_text());
  return g;
}

bool objects_isomorphic(const AdditiveCategory& c, const Object& x, const Object& y) {
  if (x == y) return true;
  if (c.hom_group(x, y).order() != c.hom_group(y, x).order()) return false;
  for (const auto& f : c.hom_elements(x, y))
    if (inverse(c, f)) return true;
  return false;
}

Refutation refute_respecting(const ExtCatFunctor& e, const std::vector<Object>& objects) {
  Refutation r;
  const auto& b = *e.source();
  const auto& c = b.category();
  const auto& t = e.target()->category();
  auto id_of = [&](const Extension& d) { return ExtMorphism{d, d, c.identity(d.A), c.identity(d.C)}; };
  std::map<Object, Object> forced;
  for (const auto& x : objects) {
    auto img = e.on_morphism(id_of(b.zero(x, x)));
    if (img.a != img.c) {
      r.refuted = true;
      r.steps.push_back("E(id_X, id_X) = (" + img.a.to_string() + ", " + img.c.to_string() + ") for X = " +
                        x.to_string() + " has different components, but (F id_X, F id_X) would not");
      return r;
    }
    if (img.a.source != img.a.target || img.a != t.identity(img.a.source)) {
      r.refuted = true;
      r.steps.push_back("E(id_X, id_X) has component " + img.a.to_string() + " for X = " + x.to_string() +
                        ", which is not an identity, but F id_X = id_FX");
      return r;
    }
    forced[x] = img.a.source;
    r.steps.push_back("E(id_X, id_X) = (id, id) on " + img.a.source.to_string() + " forces F X = " +
                      img.a.source.to_string() + " for X = " + x.to_string());
  }
  for (const auto& a : objects)
    for (const auto& cc : objects) {
      if (a == c.zero_object() || cc == c.zero_object() || objects_isomorphic(c, a, cc)) continue;
      auto img = e.on_morphism(id_of(b.zero(cc, a)));
      auto want_a = t.identity(forced.at(a)), want_c = t.identity(forced.at(cc));
      if (img.a == want_a && img.c == want_c) continue;
      r.refuted = true;
      r.steps.push_back("A = " + a.to_string() + " and C = " + cc.to_string() + " are not isomorphic");
      r.steps.push_back("E(id_A, id_C) = (" + img.a.to_string() + ", " + img.c.to_string() + ") but (F id_A, F id_C) = (" +
                        want_a.to_string() + ", " + want_c.to_string() + ")");
      r.steps.push_back("so no additive F has E respecting morphisms over F");
      return r;
    }
  bool have_pair = false;
  for (const auto& a : objects)
    for (const auto& cc : objects)
      have_pair = have_pair || (a != c.zero_object() && cc != c.zero_object() && !objects_isomorphic(c, a, cc));
  r.steps.push_back(have_pair ? "the forced values are consistent on every pair"
                              : "no pair of non-isomorphic nonzero objects to test");
  return r;
}

Verdict same_extfunctor(const ExtCatFunctor& a, const ExtCatFunctor& b, const VerifyConfig& cfg) {
  Verdict v;
  if (a.source() != b.source() || a.target() != b.target()) {
    v.holds = false;
    v.witness = "different bifunctors";
    return v;
  }
  std::mt19937_64 rng(cfg.seed);
  for (const auto& d : ext_universe(*a.source(), cfg, rng).extensions) {
    ++v.instances;
    if (a.on_object(d) != b.on_object(d)) {
      v.holds = false;
      v.witness = "on " + d.to_string() + ": " + a.on_object(d).to_string() + " vs " + b.on_object(d).to_string();
      return v;
    }
  }
  for (const auto& m : sample_ext_morphisms(*a.source(), cfg, rng, &v.sampled)) {
    ++v.instances;
    if (a.on_morphism(m) != b.on_morphism(m)) {
      v.holds = false;
      v.witness = "on " + m.to_string() + ": " + a.on_morphism(m).to_string() + " vs " + b.on_morphism(m).to_string();
      return v;
    }
  }
  return v;
}

}  // namespace nexang
