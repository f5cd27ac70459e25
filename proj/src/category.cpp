#include "nexang/category.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace nexang {

// ---------------------------------------------------------------- Object / Morphism

Object Object::group(FinAbGroup g) {
  Object o;
  o.repr_ = std::move(g);
  return o;
}

Object Object::named(std::string name) {
  Object o;
  o.repr_ = std::move(name);
  return o;
}

const FinAbGroup& Object::as_group() const {
  if (is_named()) throw Error(ErrorCode::ObjectMismatch, "object " + as_name() + " is not a group");
  return std::get<FinAbGroup>(repr_);
}

const std::string& Object::as_name() const {
  if (!is_named()) throw Error(ErrorCode::ObjectMismatch, "object " + to_string() + " has no name");
  return std::get<std::string>(repr_);
}

std::string Object::to_string() const { return is_named() ? as_name() : as_group().to_string(); }

std::strong_ordering Object::operator<=>(const Object& o) const {
  if (repr_.index() != o.repr_.index()) return repr_.index() <=> o.repr_.index();
  if (is_named()) {
    int c = as_name().compare(o.as_name());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  return as_group() <=> o.as_group();
}

std::string Morphism::to_string() const { return source.to_string() + "->" + target.to_string() + " " + data.to_string(); }

// ---------------------------------------------------------------- generic category operations

Morphism AdditiveCategory::add(const Morphism& f, const Morphism& g) const {
  if (f.source != g.source || f.target != g.target) throw Error(ErrorCode::ObjectMismatch, "adding morphisms");
  return from_coords(f.source, f.target, to_coords(f) + to_coords(g));
}

Morphism AdditiveCategory::scale(Int k, const Morphism& f) const {
  return from_coords(f.source, f.target, to_coords(f).scaled(k));
}

Morphism AdditiveCategory::zero(const Object& x, const Object& y) const {
  return from_coords(x, y, GroupElement::zero(hom_group(x, y)));
}

std::optional<std::pair<Object, Morphism>> AdditiveCategory::cokernel(const Morphism&) const { return std::nullopt; }
std::optional<std::pair<Object, Morphism>> AdditiveCategory::kernel(const Morphism&) const { return std::nullopt; }

std::vector<Object> AdditiveCategory::universe(int cap) const {
  auto probes = probe_objects();
  std::vector<Object> out{zero_object()};
  std::set<Object> seen{zero_object()};
  // multisets of probe indices, non-decreasing, sizes 1..cap
  std::vector<std::vector<std::size_t>> layer{{}};
  for (int size = 1; size <= cap; ++size) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& ms : layer) {
      std::size_t start = ms.empty() ? 0 : ms.back();
      for (std::size_t p = start; p < probes.size(); ++p) {
        auto m = ms;
        m.push_back(p);
        next.push_back(m);
      }
    }
    for (const auto& ms : next) {
      try {
        Object acc = probes[ms[0]];
        for (std::size_t k = 1; k < ms.size(); ++k) acc = biproduct(acc, probes[ms[k]]).sum;
        if (seen.insert(acc).second) out.push_back(acc);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotInCategory) throw;
      }
    }
    layer = std::move(next);
  }
  return out;
}

Morphism AdditiveCategory::compose(std::initializer_list<Morphism> chain) const {
  if (chain.size() == 0) throw Error(ErrorCode::NotComposable, "empty chain");
  auto it = std::rbegin(chain);
  Morphism acc = *it;
  for (++it; it != std::rend(chain); ++it) acc = compose(*it, acc);
  return acc;
}

bool AdditiveCategory::is_zero(const Morphism& f) const { return to_coords(f).is_zero(); }

std::vector<Morphism> AdditiveCategory::hom_elements(const Object& x, const Object& y) const {
  std::vector<Morphism> out;
  for (const auto& e : enumerate(hom_group(x, y))) out.push_back(from_coords(x, y, e));
  return out;
}

std::vector<Morphism> AdditiveCategory::hom_basis(const Object& x, const Object& y) const {
  auto g = hom_group(x, y);
  std::vector<Morphism> out;
  for (std::size_t i = 0; i < g.rank(); ++i) out.push_back(from_coords(x, y, GroupElement::basis(g, i)));
  return out;
}

Morphism AdditiveCategory::diagonal(const Object& x) const {
  auto b = biproduct(x, x);
  return add(b.iota1, b.iota2);
}

Morphism AdditiveCategory::codiagonal(const Object& x) const {
  auto b = biproduct(x, x);
  return add(b.pi1, b.pi2);
}

Morphism AdditiveCategory::direct_sum(const Morphism& f, const Morphism& g) const {
  auto s = biproduct(f.source, g.source);
  auto t = biproduct(f.target, g.target);
  return add(compose({t.iota1, f, s.pi1}), compose({t.iota2, g, s.pi2}));
}

Morphism AdditiveCategory::column(const Morphism& f, const Morphism& g) const {
  if (f.source != g.source) throw Error(ErrorCode::ObjectMismatch, "column of morphisms with different sources");
  auto t = biproduct(f.target, g.target);
  return add(compose(t.iota1, f), compose(t.iota2, g));
}

Morphism AdditiveCategory::row(const Morphism& f, const Morphism& g) const {
  if (f.target != g.target) throw Error(ErrorCode::ObjectMismatch, "row of morphisms with different targets");
  auto s = biproduct(f.source, g.source);
  return add(compose(f, s.pi1), compose(g, s.pi2));
}

void AdditiveCategory::require(const Object& x) const {
  if (!contains(x)) throw Error(ErrorCode::NotInCategory, x.to_string() + " is not an object of " + name());
}

void AdditiveCategory::require(const Morphism& f) const {
  require(f.source);
  require(f.target);
}

// ---------------------------------------------------------------- linear systems over hom-groups

std::vector<FinAbGroup> slot_groups(const AdditiveCategory& c, const std::vector<Slot>& slots) {
  std::vector<FinAbGroup> out;
  for (const auto& s : slots) out.push_back(c.hom_group(s.source, s.target));
  return out;
}

std::vector<Morphism> morphisms_of(const AdditiveCategory& c, const std::vector<Slot>& slots,
                                   const std::vector<GroupElement>& coords) {
  std::vector<Morphism> out;
  for (std::size_t k = 0; k < slots.size(); ++k) out.push_back(c.from_coords(slots[k].source, slots[k].target, coords[k]));
  return out;
}

std::vector<GroupElement> coords_of(const AdditiveCategory& c, const std::vector<Morphism>& fs) {
  std::vector<GroupElement> out;
  for (const auto& f : fs) out.push_back(c.to_coords(f));
  return out;
}

AffineSystem morphism_system(const AdditiveCategory& c, const std::vector<Slot>& unknowns,
                             const std::vector<Slot>& equations, const MorphismFn& lhs) {
  return AffineSystem(slot_groups(c, unknowns), slot_groups(c, equations),
                      [&](const AffineSystem::Values& x) { return coords_of(c, lhs(morphisms_of(c, unknowns, x))); });
}

std::optional<std::vector<Morphism>> solve_morphisms(const AdditiveCategory& c, const std::vector<Slot>& unknowns,
                                                     const MorphismFn& lhs, const std::vector<Morphism>& rhs) {
  std::vector<Slot> eqs;
  for (const auto& r : rhs) eqs.push_back({r.source, r.target});
  auto sys = morphism_system(c, unknowns, eqs, lhs);
  auto x = sys.solve(coords_of(c, rhs));
  if (!x) return std::nullopt;
  return morphisms_of(c, unknowns, *x);
}

// ---------------------------------------------------------------- sections and retractions

std::optional<Morphism> is_section(const AdditiveCategory& c, const Morphism& f) {
  auto id = c.identity(f.source);
  for (auto& r : c.hom_elements(f.target, f.source))
    if (c.compose(r, f) == id) return r;
  return std::nullopt;
}

std::optional<Morphism> is_retraction(const AdditiveCategory& c, const Morphism& g) {
  auto id = c.identity(g.target);
  for (auto& s : c.hom_elements(g.target, g.source))
    if (c.compose(g, s) == id) return s;
  return std::nullopt;
}

std::optional<Morphism> find_retraction(const AdditiveCategory& c, const Morphism& f) {
  auto x = solve_morphisms(
      c, {{f.target, f.source}}, [&](const std::vector<Morphism>& v) { return std::vector{c.compose(v[0], f)}; },
      {c.identity(f.source)});
  if (!x) return std::nullopt;
  return (*x)[0];
}

std::optional<Morphism> find_section(const AdditiveCategory& c, const Morphism& g) {
  auto x = solve_morphisms(
      c, {{g.target, g.source}}, [&](const std::vector<Morphism>& v) { return std::vector{c.compose(g, v[0])}; },
      {c.identity(g.target)});
  if (!x) return std::nullopt;
  return (*x)[0];
}

std::optional<Morphism> inverse(const AdditiveCategory& c, const Morphism& f) {
  auto r = find_retraction(c, f);
  if (!r || c.compose(f, *r) != c.identity(f.target)) return std::nullopt;
  return r;
}

namespace {

// t with f t = rhs, f : A -> B, rhs : B -> B
std::optional<Morphism> factor_through(const AdditiveCategory& c, const Morphism& f, const Morphism& rhs) {
  auto x = solve_morphisms(
      c, {{rhs.source, f.source}}, [&](const std::vector<Morphism>& v) { return std::vector{c.compose(f, v[0])}; },
      {rhs});
  if (!x) return std::nullopt;
  return (*x)[0];
}

// t with t g = rhs, g : B -> C, rhs : B -> B
std::optional<Morphism> factor_after(const AdditiveCategory& c, const Morphism& g, const Morphism& rhs) {
  auto x = solve_morphisms(
      c, {{g.target, rhs.target}}, [&](const std::vector<Morphism>& v) { return std::vector{c.compose(v[0], g)}; },
      {rhs});
  if (!x) return std::nullopt;
  return (*x)[0];
}

std::optional<SplitComplement> complement_with(const AdditiveCategory& c, const Morphism& f, const Object& cok,
                                               const Morphism& b) {
  auto s = find_section(c, b);
  if (!s) return std::nullopt;
  auto id = c.identity(f.target);
  auto r = factor_through(c, f, c.subtract(id, c.compose(*s, b)));
  if (!r) return std::nullopt;
  return SplitComplement{*r, cok, b, *s};
}

std::optional<SplitKernel> kernel_with(const AdditiveCategory& c, const Morphism& g, const Object& ker,
                                       const Morphism& k) {
  auto r = find_retraction(c, k);
  if (!r) return std::nullopt;
  auto id = c.identity(g.source);
  auto s = factor_after(c, g, c.subtract(id, c.compose(k, *r)));
  if (!s) return std::nullopt;
  return SplitKernel{*s, ker, k, *r};
}

}  // namespace

std::optional<SplitComplement> split_complement(const AdditiveCategory& c, const Morphism& f) {
  if (!find_retraction(c, f)) return std::nullopt;
  if (auto ck = c.cokernel(f)) return complement_with(c, f, ck->first, ck->second);
  for (const auto& cand : c.universe(1)) {
    auto sys = morphism_system(c, {{f.target, cand}}, {{f.source, cand}},
                               [&](const std::vector<Morphism>& v) { return std::vector{c.compose(v[0], f)}; });
    for (auto& sol : sys.all_solutions({GroupElement::zero(c.hom_group(f.source, cand))})) {
      auto b = c.from_coords(f.target, cand, sol[0]);
      if (auto out = complement_with(c, f, cand, b)) return out;
    }
  }
  return std::nullopt;
}

std::optional<SplitKernel> split_kernel(const AdditiveCategory& c, const Morphism& g) {
  if (!find_section(c, g)) return std::nullopt;
  if (auto k = c.kernel(g)) return kernel_with(c, g, k->first, k->second);
  for (const auto& cand : c.universe(1)) {
    auto sys = morphism_system(c, {{cand, g.source}}, {{cand, g.target}},
                               [&](const std::vector<Morphism>& v) { return std::vector{c.compose(g, v[0])}; });
    for (auto& sol : sys.all_solutions({GroupElement::zero(c.hom_group(cand, g.target))})) {
      auto k = c.from_coords(cand, g.source, sol[0]);
      if (auto out = kernel_with(c, g, cand, k)) return out;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- FinAb

struct FinAbBackend::Cache {
  std::mutex mu;
  std::map<std::pair<FinAbGroup, FinAbGroup>, std::unique_ptr<HomGroup>> homs;
  std::map<std::pair<FinAbGroup, FinAbGroup>, BiproductData> sums;
};

FinAbBackend::FinAbBackend(Int exponent) : exponent_(exponent), cache_(std::make_unique<Cache>()) {
  if (exponent < 1) throw Error(ErrorCode::InvalidBackend, "exponent must be positive");
}

FinAbBackend::~FinAbBackend() = default;

const HomGroup& FinAbBackend::cached_hom(const FinAbGroup& x, const FinAbGroup& y) const {
  std::lock_guard lock(cache_->mu);
  auto& slot = cache_->homs[{x, y}];
  if (!slot) slot = std::make_unique<HomGroup>(nexang::hom_group(x, y));
  return *slot;
}

std::string FinAbBackend::name() const { return "FinAb(exponent " + std::to_string(exponent_) + ")"; }

bool FinAbBackend::contains(const Object& x) const {
  return !x.is_named();
}

std::vector<Object> FinAbBackend::probe_objects() const {
  std::vector<Object> out;
  for (Int d = 2; d <= exponent_; ++d)
    if (exponent_ % d == 0) out.push_back(Object::group(FinAbGroup::cyclic(d)));
  return out;
}

std::vector<Object> FinAbBackend::probes_for(const std::vector<Object>& objects) const {
  Int e = 1;
  for (const auto& x : objects) e = lcm(e, x.as_group().exponent());
  std::vector<Object> out;
  for (Int d = 2; d <= e; ++d)
    if (e % d == 0) out.push_back(Object::group(FinAbGroup::cyclic(d)));
  return out;
}

Object FinAbBackend::zero_object() const { return Object::group(FinAbGroup{}); }

Morphism FinAbBackend::hom(const FinAbGroup& x, const FinAbGroup& y, Matrix m) const {
  GroupHom h(x, y, std::move(m));
  return Morphism{Object::group(x), Object::group(y), h.matrix()};
}

Morphism FinAbBackend::hom(const Object& x, const Object& y, Matrix m) const {
  return hom(x.as_group(), y.as_group(), std::move(m));
}

GroupHom FinAbBackend::as_group_hom(const Morphism& f) const {
  return GroupHom(f.source.as_group(), f.target.as_group(), f.data);
}

FinAbGroup FinAbBackend::hom_group(const Object& x, const Object& y) const {
  require(x);
  require(y);
  return cached_hom(x.as_group(), y.as_group()).group;
}

GroupElement FinAbBackend::to_coords(const Morphism& f) const {
  return cached_hom(f.source.as_group(), f.target.as_group()).coords_of_matrix(f.data);
}

Morphism FinAbBackend::from_coords(const Object& x, const Object& y, const GroupElement& c) const {
  const auto& h = cached_hom(x.as_group(), y.as_group());
  if (c.parent != h.group) throw Error(ErrorCode::ObjectMismatch, "coordinates outside hom-group");
  return Morphism{x, y, h.matrix_of(c.coords)};
}

Morphism FinAbBackend::compose(const Morphism& g, const Morphism& f) const {
  if (f.target != g.source)
    throw Error(ErrorCode::NotComposable, f.to_string() + " then " + g.to_string());
  auto h = nexang::compose(as_group_hom(g), as_group_hom(f));
  return Morphism{f.source, g.target, h.matrix()};
}

Morphism FinAbBackend::identity(const Object& x) const {
  require(x);
  return Morphism{x, x, Matrix::identity(x.as_group().rank())};
}

Morphism FinAbBackend::add(const Morphism& f, const Morphism& g) const {
  if (f.source != g.source || f.target != g.target) throw Error(ErrorCode::ObjectMismatch, "adding morphisms");
  return Morphism{f.source, f.target, (as_group_hom(f) + as_group_hom(g)).matrix()};
}

Morphism FinAbBackend::scale(Int k, const Morphism& f) const {
  return Morphism{f.source, f.target, as_group_hom(f).scaled(k).matrix()};
}

Morphism FinAbBackend::zero(const Object& x, const Object& y) const {
  return Morphism{x, y, Matrix(y.as_group().rank(), x.as_group().rank())};
}

BiproductData FinAbBackend::biproduct(const Object& x, const Object& y) const {
  require(x);
  require(y);
  const auto& gx = x.as_group();
  const auto& gy = y.as_group();
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->sums.find({gx, gy});
    if (it != cache_->sums.end()) return it->second;
  }
  std::vector<Int> orders = gx.factors();
  orders.insert(orders.end(), gy.factors().begin(), gy.factors().end());
  auto c = canonicalize_cyclic(orders);
  const std::size_t nx = gx.rank(), ny = gy.rank(), k = c.group.rank();
  BiproductData b;
  b.sum = Object::group(c.group);
  b.iota1 = hom(gx, c.group, c.to_canon.block(0, 0, k, nx));
  b.iota2 = hom(gy, c.group, c.to_canon.block(0, nx, k, ny));
  b.pi1 = hom(c.group, gx, c.from_canon.block(0, 0, nx, k));
  b.pi2 = hom(c.group, gy, c.from_canon.block(nx, 0, ny, k));
  std::lock_guard lock(cache_->mu);
  cache_->sums.emplace(std::pair{gx, gy}, b);
  return b;
}

std::optional<std::pair<Object, Morphism>> FinAbBackend::cokernel(const Morphism& f) const {
  auto q = nexang::cokernel(as_group_hom(f));
  return std::pair{Object::group(q.group), Morphism{f.target, Object::group(q.group), q.projection.matrix()}};
}

std::optional<std::pair<Object, Morphism>> FinAbBackend::kernel(const Morphism& g) const {
  auto k = nexang::kernel(as_group_hom(g));
  return std::pair{Object::group(k.group), Morphism{Object::group(k.group), g.source, k.inclusion.matrix()}};
}

// ---------------------------------------------------------------- tables

TableBackend::TableBackend(std::string label, TableData data) : label_(std::move(label)), data_(std::move(data)) {}

bool TableBackend::contains(const Object& x) const {
  return x.is_named() && std::find(data_.objects.begin(), data_.objects.end(), x.as_name()) != data_.objects.end();
}

std::vector<Object> TableBackend::probe_objects() const {
  std::vector<Object> out;
  for (const auto& o : data_.objects)
    if (o != data_.zero) out.push_back(Object::named(o));
  return out;
}

Object TableBackend::zero_object() const { return Object::named(data_.zero); }

FinAbGroup TableBackend::hom_group(const Object& x, const Object& y) const {
  auto it = data_.homs.find({x.as_name(), y.as_name()});
  if (it == data_.homs.end())
    throw Error(ErrorCode::NotInCategory, "no hom-group for (" + x.to_string() + ", " + y.to_string() + ")");
  return it->second;
}

GroupElement TableBackend::to_coords(const Morphism& f) const {
  return GroupElement::make(hom_group(f.source, f.target), f.data.column(0));
}

Morphism TableBackend::from_coords(const Object& x, const Object& y, const GroupElement& c) const {
  auto g = hom_group(x, y);
  if (c.parent != g) throw Error(ErrorCode::ObjectMismatch, "coordinates outside hom-group");
  Matrix m(c.coords.size(), 1);
  for (std::size_t i = 0; i < c.coords.size(); ++i) m(i, 0) = c.coords[i];
  return Morphism{x, y, std::move(m)};
}

Morphism TableBackend::element(const std::string& x, const std::string& y, std::vector<Int> coords) const {
  auto g = hom_group(Object::named(x), Object::named(y));
  return from_coords(Object::named(x), Object::named(y), GroupElement::make(g, std::move(coords)));
}

Morphism TableBackend::compose(const Morphism& g, const Morphism& f) const {
  if (f.target != g.source) throw Error(ErrorCode::NotComposable, f.to_string() + " then " + g.to_string());
  const auto& x = f.source.as_name();
  const auto& y = f.target.as_name();
  const auto& z = g.target.as_name();
  auto it = data_.compose.find({x, y, z});
  auto hz = hom_group(f.source, g.target);
  auto acc = GroupElement::zero(hz);
  if (it == data_.compose.end()) {
    if (!hz.is_trivial() && !(hom_group(f.source, f.target).is_trivial() || hom_group(g.source, g.target).is_trivial()))
      throw Error(ErrorCode::InvalidBackend, "missing composition table " + x + "," + y + "," + z);
    return from_coords(f.source, g.target, acc);
  }
  auto gc = to_coords(g), fc = to_coords(f);
  for (std::size_t i = 0; i < gc.coords.size(); ++i)
    for (std::size_t j = 0; j < fc.coords.size(); ++j) {
      if (gc.coords[i] == 0 || fc.coords[j] == 0) continue;
      acc = acc + GroupElement::make(hz, it->second.at(i).at(j)).scaled(checked_mul(gc.coords[i], fc.coords[j]));
    }
  return from_coords(f.source, g.target, acc);
}

Morphism TableBackend::identity(const Object& x) const {
  auto it = data_.identities.find(x.as_name());
  if (it == data_.identities.end()) throw Error(ErrorCode::NotInCategory, "no identity for " + x.to_string());
  return element(x.as_name(), x.as_name(), it->second);
}

BiproductData TableBackend::biproduct(const Object& x, const Object& y) const {
  auto it = data_.biproducts.find({x.as_name(), y.as_name()});
  if (it == data_.biproducts.end())
    throw Error(ErrorCode::NotInCategory, "no designated biproduct of " + x.to_string() + " and " + y.to_string());
  const auto& b = it->second;
  const auto& s = b.sum;
  return BiproductData{Object::named(s), element(x.as_name(), s, b.iota1), element(y.as_name(), s, b.iota2),
                       element(s, x.as_name(), b.pi1), element(s, y.as_name(), b.pi2)};
}

std::vector<Object> TableBackend::universe(int) const {
  std::vector<Object> out{zero_object()};
  for (const auto& o : data_.objects)
    if (o != data_.zero) out.push_back(Object::named(o));
  return out;
}

std::vector<std::string> TableBackend::validate() const {
  std::vector<std::string> problems;
  auto note = [&](std::string s) { problems.push_back(std::move(s)); };
  const auto& objs = data_.objects;
  if (std::find(objs.begin(), objs.end(), data_.zero) == objs.end()) note("zero object not listed");
  for (const auto& x : objs)
    for (const auto& y : objs)
      if (!data_.homs.count({x, y})) note("missing hom-group " + x + "," + y);
  if (!problems.empty()) return problems;
  for (const auto& x : objs) {
    if (!data_.homs.at({data_.zero, x}).is_trivial() || !data_.homs.at({x, data_.zero}).is_trivial())
      note("zero object has nontrivial hom-group with " + x);
    if (!data_.identities.count(x)) note("missing identity for " + x);
  }
  if (!problems.empty()) return problems;
  auto gens = [&](const std::string& a, const std::string& b) { return hom_basis(Object::named(a), Object::named(b)); };
  try {
    for (const auto& x : objs)
      for (const auto& y : objs)
        for (const auto& z : objs) {
          auto hyz = gens(y, z), hxy = gens(x, y);
          for (std::size_t i = 0; i < hyz.size(); ++i)
            for (std::size_t j = 0; j < hxy.size(); ++j) {
              auto c = compose(hyz[i], hxy[j]);
              Int oi = data_.homs.at({y, z}).factors()[i];
              Int oj = data_.homs.at({x, y}).factors()[j];
              if (!is_zero(scale(oi, c)) || !is_zero(scale(oj, c)))
                note("composition not bilinear on generators " + std::to_string(i) + "," + std::to_string(j) +
                     " of " + x + "->" + y + "->" + z);
            }
          for (const auto& f : hxy) {
            if (compose(identity(Object::named(y)), f) != f || compose(f, identity(Object::named(x))) != f)
              note("identity law fails on " + f.to_string());
          }
        }
    for (const auto& x : objs)
      for (const auto& y : objs)
        for (const auto& z : objs)
          for (const auto& w : objs)
            for (const auto& h : gens(z, w))
              for (const auto& g : gens(y, z))
                for (const auto& f : gens(x, y))
                  if (compose(compose(h, g), f) != compose(h, compose(g, f)))
                    note("associativity fails on " + x + "->" + y + "->" + z + "->" + w);
    for (const auto& [key, _] : data_.biproducts) {
      auto b = biproduct(Object::named(key.first), Object::named(key.second));
      auto id1 = identity(b.iota1.source), id2 = identity(b.iota2.source);
      if (compose(b.pi1, b.iota1) != id1 || compose(b.pi2, b.iota2) != id2 || !is_zero(compose(b.pi1, b.iota2)) ||
          !is_zero(compose(b.pi2, b.iota1)) ||
          add(compose(b.iota1, b.pi1), compose(b.iota2, b.pi2)) != identity(b.sum))
        note("biproduct identities fail for " + key.first + "+" + key.second);
    }
  } catch (const Error& e) {
    note(e.what());
  }
  std::sort(problems.begin(), problems.end());
  problems.erase(std::unique(problems.begin(), problems.end()), problems.end());
  return problems;
}

TableData table_from_groups(const std::vector<std::pair<std::string, FinAbGroup>>& objects) {
  TableData t;
  std::map<std::string, FinAbGroup> grp;
  for (const auto& [n, g] : objects) {
    t.objects.push_back(n);
    grp[n] = g;
    if (g.is_trivial() && t.zero.empty()) t.zero = n;
  }
  if (t.zero.empty()) throw Error(ErrorCode::InvalidBackend, "table needs a zero object");
  std::map<std::pair<std::string, std::string>, HomGroup> hg;
  for (const auto& x : t.objects)
    for (const auto& y : t.objects) {
      hg.emplace(std::pair{x, y}, hom_group(grp[x], grp[y]));
      t.homs[{x, y}] = hg.at({x, y}).group;
    }
  for (const auto& x : t.objects) t.identities[x] = hg.at({x, x}).coords_of(GroupHom::identity(grp[x])).coords;
  for (const auto& x : t.objects)
    for (const auto& y : t.objects)
      for (const auto& z : t.objects) {
        const auto& gyz = hg.at({y, z});
        const auto& gxy = hg.at({x, y});
        const auto& gxz = hg.at({x, z});
        std::vector<std::vector<std::vector<Int>>> tab(gyz.basis.size(), std::vector<std::vector<Int>>(gxy.basis.size()));
        for (std::size_t i = 0; i < gyz.basis.size(); ++i)
          for (std::size_t j = 0; j < gxy.basis.size(); ++j)
            tab[i][j] = gxz.coords_of(nexang::compose(gyz.basis[i], gxy.basis[j])).coords;
        t.compose[{x, y, z}] = std::move(tab);
      }
  for (const auto& x : t.objects)
    for (const auto& y : t.objects) {
      std::vector<Int> orders = grp[x].factors();
      orders.insert(orders.end(), grp[y].factors().begin(), grp[y].factors().end());
      auto s = canonicalize_cyclic(orders).group;
      std::string target;
      if (grp[y].is_trivial() && grp[x] == s) target = x;
      else if (grp[x].is_trivial() && grp[y] == s) target = y;
      else
        for (const auto& o : t.objects)
          if (grp[o] == s) {
            target = o;
            break;
          }
      if (target.empty()) continue;
      std::vector<Int> ox = grp[x].factors(), oy = grp[y].factors();
      auto c = canonicalize_cyclic(orders);
      const std::size_t nx = ox.size(), ny = oy.size(), k = s.rank();
      auto coords = [&](const std::string& a, const std::string& b, const Matrix& m) {
        return hg.at({a, b}).coords_of(GroupHom(grp[a], grp[b], m)).coords;
      };
      TableData::Biproduct b;
      b.sum = target;
      b.iota1 = coords(x, target, c.to_canon.block(0, 0, k, nx));
      b.iota2 = coords(y, target, c.to_canon.block(0, nx, k, ny));
      b.pi1 = coords(target, x, c.from_canon.block(0, 0, nx, k));
      b.pi2 = coords(target, y, c.from_canon.block(nx, 0, ny, k));
      t.biproducts[{x, y}] = std::move(b);
    }
  return t;
}

}  // namespace nexang
