#include "nexang/bifunctor.hpp"

#include <map>
#include <mutex>

namespace nexang {

std::string Extension::to_string() const {
  return "[" + cls.to_string() + " in E(" + C.to_string() + ", " + A.to_string() + ")]";
}

// ---------------------------------------------------------------- Bifunctor

Extension Bifunctor::make(const Object& C, const Object& A, std::vector<Int> coords) const {
  return Extension{A, C, GroupElement::make(value(C, A), std::move(coords))};
}

Extension Bifunctor::zero(const Object& C, const Object& A) const {
  return Extension{A, C, GroupElement::zero(value(C, A))};
}

Extension Bifunctor::push(const Morphism& x, const Extension& d) const {
  if (x.source != d.A)
    throw Error(ErrorCode::ObjectMismatch, "push along " + x.to_string() + " of " + d.to_string());
  return Extension{x.target, d.C, push_class(x, d.C, d.cls)};
}

Extension Bifunctor::pull(const Morphism& z, const Extension& d) const {
  if (z.target != d.C)
    throw Error(ErrorCode::ObjectMismatch, "pull along " + z.to_string() + " of " + d.to_string());
  return Extension{d.A, z.source, pull_class(z, d.A, d.cls)};
}

Extension Bifunctor::act(const Morphism& z, const Morphism& x, const Extension& d) const { return push(x, pull(z, d)); }

Extension Bifunctor::add(const Extension& d, const Extension& r) const {
  if (d.A != r.A || d.C != r.C) throw Error(ErrorCode::ObjectMismatch, "adding classes of different groups");
  return Extension{d.A, d.C, d.cls + r.cls};
}

Extension Bifunctor::negate(const Extension& d) const { return Extension{d.A, d.C, -d.cls}; }

std::vector<Extension> Bifunctor::all(const Object& C, const Object& A) const {
  std::vector<Extension> out;
  for (auto& e : enumerate(value(C, A))) out.push_back(Extension{A, C, std::move(e)});
  return out;
}

std::vector<Extension> Bifunctor::generators(const Object& C, const Object& A) const {
  auto v = value(C, A);
  std::vector<Extension> out;
  for (std::size_t i = 0; i < v.rank(); ++i) out.push_back(Extension{A, C, GroupElement::basis(v, i)});
  return out;
}

GroupHom Bifunctor::push_hom(const Morphism& x, const Object& C) const {
  auto src = value(C, x.source), dst = value(C, x.target);
  Matrix m(dst.rank(), src.rank());
  for (std::size_t j = 0; j < src.rank(); ++j) {
    auto y = push_class(x, C, GroupElement::basis(src, j));
    for (std::size_t i = 0; i < dst.rank(); ++i) m(i, j) = y.coords[i];
  }
  return GroupHom(src, dst, m);
}

GroupHom Bifunctor::pull_hom(const Morphism& z, const Object& A) const {
  auto src = value(z.target, A), dst = value(z.source, A);
  Matrix m(dst.rank(), src.rank());
  for (std::size_t j = 0; j < src.rank(); ++j) {
    auto y = pull_class(z, A, GroupElement::basis(src, j));
    for (std::size_t i = 0; i < dst.rank(); ++i) m(i, j) = y.coords[i];
  }
  return GroupHom(src, dst, m);
}

// ---------------------------------------------------------------- split

FinAbGroup SplitBifunctor::value(const Object& C, const Object& A) const {
  c_->require(C);
  c_->require(A);
  return FinAbGroup{};
}

GroupElement SplitBifunctor::push_class(const Morphism&, const Object&, const GroupElement&) const {
  return GroupElement::zero(FinAbGroup{});
}

GroupElement SplitBifunctor::pull_class(const Morphism&, const Object&, const GroupElement&) const {
  return GroupElement::zero(FinAbGroup{});
}

// ---------------------------------------------------------------- hom

FinAbGroup HomBifunctor::value(const Object& C, const Object& A) const { return c_->hom_group(C, A); }

Morphism HomBifunctor::as_morphism(const Extension& d) const { return c_->from_coords(d.C, d.A, d.cls); }

GroupElement HomBifunctor::push_class(const Morphism& x, const Object& C, const GroupElement& cls) const {
  return c_->to_coords(c_->compose(x, c_->from_coords(C, x.source, cls)));
}

GroupElement HomBifunctor::pull_class(const Morphism& z, const Object& A, const GroupElement& cls) const {
  return c_->to_coords(c_->compose(c_->from_coords(z.target, A, cls), z));
}

// ---------------------------------------------------------------- Ext^1

struct Ext1Bifunctor::Value {
  std::size_t rank_a = 0, rank_c = 0;
  std::vector<Int> moduli;  // gcd(a_i, c_j), row-major over (i, j)
  Canonical canon;
};

struct Ext1Bifunctor::Cache {
  std::mutex mu;
  std::map<std::pair<FinAbGroup, FinAbGroup>, std::unique_ptr<Value>> values;
};

Ext1Bifunctor::Ext1Bifunctor(std::shared_ptr<const FinAbBackend> c) : c_(std::move(c)), cache_(std::make_unique<Cache>()) {}

Ext1Bifunctor::~Ext1Bifunctor() = default;

const Ext1Bifunctor::Value& Ext1Bifunctor::cached(const FinAbGroup& C, const FinAbGroup& A) const {
  std::lock_guard lock(cache_->mu);
  auto& slot = cache_->values[{C, A}];
  if (!slot) {
    slot = std::make_unique<Value>();
    slot->rank_a = A.rank();
    slot->rank_c = C.rank();
    for (Int a : A.factors())
      for (Int c : C.factors()) slot->moduli.push_back(gcd(a, c));
    slot->canon = canonicalize_cyclic(slot->moduli);
  }
  return *slot;
}

FinAbGroup Ext1Bifunctor::value(const Object& C, const Object& A) const {
  c_->require(C);
  c_->require(A);
  return cached(C.as_group(), A.as_group()).canon.group;
}

Matrix Ext1Bifunctor::representatives(const Extension& d) const {
  const auto& v = cached(d.C.as_group(), d.A.as_group());
  auto raw = v.canon.raw_of(d.cls.coords);
  Matrix m(v.rank_a, v.rank_c);
  for (std::size_t i = 0; i < v.rank_a; ++i)
    for (std::size_t j = 0; j < v.rank_c; ++j) {
      std::size_t k = i * v.rank_c + j;
      m(i, j) = mod(raw[k], v.moduli[k]);
    }
  return m;
}

GroupElement Ext1Bifunctor::class_of(const Object& C, const Object& A, const Matrix& reps) const {
  const auto& v = cached(C.as_group(), A.as_group());
  if (reps.rows() != v.rank_a || reps.cols() != v.rank_c) throw Error(ErrorCode::DimensionMismatch, "Ext representatives");
  std::vector<Int> raw(v.moduli.size());
  for (std::size_t i = 0; i < v.rank_a; ++i)
    for (std::size_t j = 0; j < v.rank_c; ++j) {
      std::size_t k = i * v.rank_c + j;
      raw[k] = mod(reps(i, j), v.moduli[k]);
    }
  return GroupElement{v.canon.group, v.canon.canon_of(raw)};
}

GroupElement Ext1Bifunctor::push_class(const Morphism& x, const Object& C, const GroupElement& cls) const {
  Extension d{x.source, C, cls};
  return class_of(C, x.target, x.data * representatives(d));
}

GroupElement Ext1Bifunctor::pull_class(const Morphism& z, const Object& A, const GroupElement& cls) const {
  Extension d{A, z.target, cls};
  Matrix m = representatives(d);
  const auto& cf = z.target.as_group().factors();
  const auto& zf = z.source.as_group().factors();
  // Z/z_k -> Z/c_j, 1 -> u lifts to multiplication by u z_k / c_j between the resolutions.
  Matrix w(cf.size(), zf.size());
  for (std::size_t j = 0; j < cf.size(); ++j)
    for (std::size_t k = 0; k < zf.size(); ++k) w(j, k) = checked_mul(mod(z.data(j, k), cf[j]), zf[k]) / cf[j];
  return class_of(z.source, A, m * w);
}

// ---------------------------------------------------------------- relative subfunctor

RelativeSubfunctor::RelativeSubfunctor(BifunctorPtr parent, std::vector<Object> objects)
    : parent_(std::move(parent)), objects_(std::move(objects)) {}

std::string RelativeSubfunctor::name() const {
  std::string s = parent_->name() + " relative to {";
  for (std::size_t i = 0; i < objects_.size(); ++i) s += (i ? ", " : "") + objects_[i].to_string();
  return s + "}";
}

Subgroup RelativeSubfunctor::subgroup(const Object& C, const Object& A) const {
  const auto& cat = parent_->category();
  std::vector<Morphism> probes;
  std::vector<FinAbGroup> targets;
  for (const auto& x : objects_)
    for (auto& z : cat.hom_basis(x, C)) {
      targets.push_back(parent_->value(x, A));
      probes.push_back(std::move(z));
    }
  auto v = parent_->value(C, A);
  AffineSystem sys({v}, targets, [&](const AffineSystem::Values& d) {
    AffineSystem::Values out;
    for (const auto& z : probes) out.push_back(parent_->pull_class(z, A, d[0]));
    return out;
  });
  auto k = linear::kernel(sys.linear_part());
  return Subgroup{k.group, GroupHom(k.group, v, k.inclusion)};
}

FinAbGroup RelativeSubfunctor::value(const Object& C, const Object& A) const { return subgroup(C, A).group; }

Extension RelativeSubfunctor::include(const Extension& d) const {
  return Extension{d.A, d.C, subgroup(d.C, d.A).inclusion(d.cls)};
}

std::optional<Extension> RelativeSubfunctor::restrict(const Extension& d) const {
  auto x = solve(subgroup(d.C, d.A).inclusion, d.cls);
  if (!x) return std::nullopt;
  return Extension{d.A, d.C, *x};
}

GroupElement RelativeSubfunctor::push_class(const Morphism& x, const Object& C, const GroupElement& cls) const {
  auto r = restrict(parent_->push(x, include(Extension{x.source, C, cls})));
  if (!r) throw Error(ErrorCode::NotWellDefined, "relative subfunctor not closed under push");
  return r->cls;
}

GroupElement RelativeSubfunctor::pull_class(const Morphism& z, const Object& A, const GroupElement& cls) const {
  auto r = restrict(parent_->pull(z, include(Extension{A, z.target, cls})));
  if (!r) throw Error(ErrorCode::NotWellDefined, "relative subfunctor not closed under pull");
  return r->cls;
}

// ---------------------------------------------------------------- direct sums and Baer sums

Extension direct_sum(const Bifunctor& e, const Extension& d, const Extension& r) {
  const auto& c = e.category();
  auto bc = c.biproduct(d.C, r.C);
  auto ba = c.biproduct(d.A, r.A);
  return e.add(e.act(bc.pi1, ba.iota1, d), e.act(bc.pi2, ba.iota2, r));
}

bool verify_direct_sum(const Bifunctor& e, const Extension& d, const Extension& r, const Extension& x) {
  const auto& c = e.category();
  auto bc = c.biproduct(d.C, r.C);
  auto ba = c.biproduct(d.A, r.A);
  if (x.C != bc.sum || x.A != ba.sum) return false;
  if (e.act(bc.iota1, ba.pi1, x) != d || e.act(bc.iota2, ba.pi2, x) != r) return false;
  if (!e.act(bc.iota1, ba.pi2, x).cls.is_zero() || !e.act(bc.iota2, ba.pi1, x).cls.is_zero()) return false;
  AffineSystem components({e.value(bc.sum, ba.sum)},
                          {e.value(d.C, d.A), e.value(r.C, r.A), e.value(d.C, r.A), e.value(r.C, d.A)},
                          [&](const AffineSystem::Values& v) {
                            Extension y{ba.sum, bc.sum, v[0]};
                            return AffineSystem::Values{e.act(bc.iota1, ba.pi1, y).cls, e.act(bc.iota2, ba.pi2, y).cls,
                                                        e.act(bc.iota1, ba.pi2, y).cls, e.act(bc.iota2, ba.pi1, y).cls};
                          });
  return components.is_injective();
}

Extension baer_sum(const Bifunctor& e, const Extension& d1, const Extension& d2) {
  if (d1.A != d2.A || d1.C != d2.C) throw Error(ErrorCode::ObjectMismatch, "Baer sum of classes in different groups");
  const auto& c = e.category();
  return e.pull(c.diagonal(d1.C), e.push(c.codiagonal(d1.A), direct_sum(e, d1, d2)));
}

}  // namespace nexang
