#include "spec.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace nexang::cli {

using json = nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }
[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::Validation, msg); }

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) parse_fail(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) parse_fail(where + ": unknown key \"" + k + "\"");
  }
}

const json& req(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

template <class T>
T as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    parse_fail(where + ": unexpected value " + j.dump());
  }
}

template <class T>
T opt(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return as<T>(j.at(key), where + "." + key);
}

// Wraps library errors raised while building declared data.
template <class Fn>
auto building(const std::string& where, Fn fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse || e.code() == ErrorCode::Validation) throw;
    invalid(where + ": " + e.what());
  }
}

Object parse_object(const Model& m, const json& j, const std::string& where) {
  if (m.table) {
    auto name = as<std::string>(j, where);
    auto o = Object::named(name);
    if (!m.table->contains(o)) invalid(where + ": no object " + name + " in the table");
    return o;
  }
  auto f = as<std::vector<Int>>(j, where);
  return building(where, [&] { return Object::group(FinAbGroup(f)); });
}

void parse_backend(Model& m, const json& j) {
  const std::string w = "backend";
  allow_keys(j, w, {"kind", "exponent", "label", "objects"});
  auto kind = as<std::string>(req(j, "kind", w), w + ".kind");
  if (kind == "finab") {
    auto e = as<Int>(req(j, "exponent", w), w + ".exponent");
    if (e < 1 || e > 1000000) invalid(w + ": exponent must lie in 1..1000000");
    m.finab = building(w, [&] { return std::make_shared<const FinAbBackend>(e); });
    m.category = m.finab;
    m.backend_desc = "FinAb, exponent " + std::to_string(e);
  } else if (kind == "table") {
    auto label = opt<std::string>(j, "label", "table", w);
    const auto& objs = req(j, "objects", w);
    if (!objs.is_array() || objs.empty()) parse_fail(w + ".objects: expected a non-empty array");
    std::set<std::string> seen;
    for (const auto& o : objs) {
      if (!o.is_array() || o.size() != 2) parse_fail(w + ".objects: expected [name, factors] pairs");
      auto name = as<std::string>(o[0], w + ".objects");
      auto f = as<std::vector<Int>>(o[1], w + ".objects." + name);
      if (!seen.insert(name).second) invalid(w + ": object " + name + " declared twice");
      m.table_groups.emplace_back(name, building(w + ".objects." + name, [&] { return FinAbGroup(f); }));
    }
    m.table = building(w, [&] { return std::make_shared<const TableBackend>(label, table_from_groups(m.table_groups)); });
    auto problems = m.table->validate();
    if (!problems.empty()) invalid(w + ": " + problems.front());
    m.category = m.table;
    m.backend_desc = "table " + label + ", " + std::to_string(m.table_groups.size()) + " objects";
  } else {
    invalid(w + ": unknown kind " + kind);
  }
}

void parse_structure(Model& m, const json& j) {
  const std::string w = "structure";
  allow_keys(j, w, {"bifunctor", "n", "relative"});
  auto kind = as<std::string>(req(j, "bifunctor", w), w + ".bifunctor");
  m.n = opt<int>(j, "n", 1, w);
  if (m.n < 1 || m.n > 8) invalid(w + ": n must lie in 1..8");
  if (kind == "split") {
    m.bifunctor = std::make_shared<const SplitBifunctor>(m.category);
  } else if (kind == "hom") {
    m.bifunctor = std::make_shared<const HomBifunctor>(m.category);
  } else if (kind == "ext1") {
    if (!m.finab) invalid(w + ": ext1 needs the finab backend");
    m.bifunctor = std::make_shared<const Ext1Bifunctor>(m.finab);
  } else {
    invalid(w + ": unknown bifunctor " + kind);
  }
  if (j.contains("relative")) {
    const auto& r = j.at("relative");
    if (!r.is_array()) parse_fail(w + ".relative: expected an array of objects");
    std::vector<Object> objs;
    for (const auto& o : r) objs.push_back(parse_object(m, o, w + ".relative"));
    auto parent = m.bifunctor;
    m.bifunctor = building(w, [&] { return std::make_shared<const RelativeSubfunctor>(parent, objs); });
  }
  if (kind == "hom") return;
  m.realisation = building(w, [&] { return make_realisation(m.bifunctor, m.n); });
}

void parse_caps(Model& m, const json& j) {
  const std::string w = "caps";
  allow_keys(j, w, {"objects", "order", "samples", "per_pair", "max_instances", "max_witnesses"});
  auto& c = m.cfg;
  c.object_cap = opt<int>(j, "objects", c.object_cap, w);
  c.order_cap = opt<Int>(j, "order", c.order_cap, w);
  c.samples = opt<std::size_t>(j, "samples", c.samples, w);
  c.per_pair = opt<std::size_t>(j, "per_pair", c.per_pair, w);
  c.max_instances = opt<std::size_t>(j, "max_instances", c.max_instances, w);
  c.max_witnesses = opt<std::size_t>(j, "max_witnesses", c.max_witnesses, w);
}

void check_caps(const Model& m) {
  if (m.cfg.object_cap < 0 || m.cfg.object_cap > 4) invalid("caps: objects must lie in 0..4");
  if (m.cfg.order_cap < 1) invalid("caps: order must be positive");
  if (m.cfg.per_pair < 1) invalid("caps: per_pair must be positive");
}

// Tables list finitely many objects, so most of them lack designated biproducts with each other.
bool biproducts_total(const Model& m) {
  if (!m.table) return true;
  auto u = m.category->universe(m.cfg.object_cap);
  for (const auto& x : u)
    for (const auto& y : u) {
      try {
        (void)m.category->biproduct(x, y);
      } catch (const Error&) {
        return false;
      }
    }
  return true;
}

bool needs_biproducts(const std::string& suite) { return suite == "exact-category" || suite == "axioms"; }

FunctorPtr parse_functor_map(Model& m, const json& j, const std::string& w) {
  if (j.is_string()) {
    auto k = j.get<std::string>();
    if (k == "id") return identity_functor(m.category);
    if (k == "dup") return duplication_functor(m.category);
    if (k == "zero") return zero_functor(m.category, m.category);
    invalid(w + ": unknown functor " + k);
  }
  if (!j.is_object() || j.size() != 1) parse_fail(w + ": expected a name or a one-key object");
  const auto& [key, val] = *j.items().begin();
  if (key == "scalar") return scalar_functor(m.category, as<Int>(val, w + ".scalar"));
  if (key == "inverse") {
    auto r = as<std::string>(val, w + ".inverse");
    if (!m.relabels.count(r)) invalid(w + ": " + r + " is not a relabeling declared earlier");
    return m.relabels.at(r)->inverse();
  }
  if (key == "relabel") {
    if (!m.table) invalid(w + ": relabeling needs the table backend");
    allow_keys(val, w + ".relabel", {"perm", "isos"});
    std::map<std::string, FinAbGroup> groups(m.table_groups.begin(), m.table_groups.end());
    std::map<std::string, std::string> perm;
    std::map<std::string, Matrix> isos;
    auto p = opt<std::map<std::string, std::string>>(val, "perm", {}, w + ".relabel");
    auto s = opt<std::map<std::string, std::vector<std::vector<Int>>>>(val, "isos", {}, w + ".relabel");
    for (const auto& [x, g] : groups) {
      perm[x] = p.count(x) ? p.at(x) : x;
      if (!groups.count(perm[x])) invalid(w + ": " + x + " is sent to unknown object " + perm[x]);
      const auto& tgt = groups.at(perm[x]);
      if (!s.count(x)) {
        if (tgt.rank() != g.rank()) invalid(w + ": missing iso for " + x);
        isos[x] = Matrix::identity(g.rank());
        continue;
      }
      const auto& rows = s.at(x);
      Matrix mx(tgt.rank(), g.rank());
      if (rows.size() != tgt.rank()) invalid(w + ": iso for " + x + " has the wrong shape");
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != g.rank()) invalid(w + ": iso for " + x + " has the wrong shape");
        for (std::size_t c = 0; c < rows[r].size(); ++c) mx(r, c) = rows[r][c];
      }
      isos[x] = mx;
    }
    for (const auto& [x, y] : p)
      if (!groups.count(x)) invalid(w + ": unknown object " + x);
    return building(w, [&] { return std::make_shared<const RelabelingFunctor>(m.table, groups, perm, isos); });
  }
  invalid(w + ": unknown functor " + key);
}

GammaPtr parse_gamma(Model& m, const json& j, const FunctorPtr& f, const std::string& w) {
  auto e = m.bifunctor;
  if (j.is_string()) {
    auto k = j.get<std::string>();
    if (k == "id") return identity_gamma(e, f);
    if (k == "diag") return diagonal_gamma(e, f);
    if (k == "zero") return zero_gamma(e, e, f);
    if (k == "hom") {
      auto h = std::dynamic_pointer_cast<const HomBifunctor>(e);
      if (!h) invalid(w + ": hom Gamma needs the hom bifunctor");
      return hom_gamma(h, h, f);
    }
    invalid(w + ": unknown Gamma " + k);
  }
  if (j.is_object() && j.size() == 1 && j.contains("scalar")) return scalar_gamma(e, f, as<Int>(j.at("scalar"), w));
  parse_fail(w + ": expected a Gamma name or {\"scalar\": k}");
}

// Evaluate everything once on the small universe so that bad declarations fail at load time.
void probe_functor(const Model& m, const ExFunctor& f, const std::string& w) {
  building(w, [&] {
    auto u = m.category->universe(1);
    for (const auto& x : u) (void)f.functor().on_object(x);
    for (const auto& x : u)
      for (const auto& y : u) {
        for (const auto& h : m.category->hom_basis(x, y)) (void)f.functor().on_morphism(h);
        (void)f.gamma->component(x, y);
      }
    return 0;
  });
}

void parse_functors(Model& m, const json& arr) {
  if (!arr.is_array()) parse_fail("functors: expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& j = arr[i];
    std::string w = "functors[" + std::to_string(i) + "]";
    allow_keys(j, w, {"name", "functor", "Gamma", "compose", "fixture"});
    NamedFunctor nf;
    nf.name = as<std::string>(req(j, "name", w), w + ".name");
    nf.fixture = opt<bool>(j, "fixture", false, w);
    w = "functor " + nf.name;
    for (const auto& o : m.functors)
      if (o.name == nf.name) invalid(w + ": declared twice");
    if (!m.realisation) invalid(w + ": functors need a structure with a realisation");
    if (j.contains("compose")) {
      auto parts = as<std::vector<std::string>>(j.at("compose"), w + ".compose");
      if (parts.size() != 2) parse_fail(w + ".compose: expected [left, right]");
      const auto& l = m.functor(parts[0]);
      const auto& r = m.functor(parts[1]);
      nf.f = building(w, [&] { return compose_exfunctors(l.f, r.f); });
    } else {
      auto f = parse_functor_map(m, req(j, "functor", w), w + ".functor");
      if (auto r = std::dynamic_pointer_cast<const RelabelingFunctor>(f)) m.relabels[nf.name] = r;
      auto g = building(w, [&] { return parse_gamma(m, req(j, "Gamma", w), f, w + ".Gamma"); });
      nf.f = building(w, [&] { return make_exfunctor(g, m.realisation, m.realisation); });
    }
    probe_functor(m, *nf.f, w);
    m.functors.push_back(std::move(nf));
  }
}

std::function<Morphism(const Object&)> parse_components(Model& m, const json& j, const std::string& w) {
  auto c = m.category;
  if (j.is_string()) {
    auto k = j.get<std::string>();
    if (k == "diagonal") return [c](const Object& x) { return c->diagonal(x); };
    if (k == "codiagonal") return [c](const Object& x) { return c->codiagonal(x); };
    if (k == "twist")
      return [c](const Object& x) {
        auto b = c->biproduct(x, x);
        return c->row(b.iota2, b.iota1);
      };
    if (k == "dup-unit")
      return [c](const Object& x) {
        auto b = c->biproduct(x, x);
        return c->column(b.iota1, b.iota2);
      };
    if (k == "dup-counit")
      return [c](const Object& x) {
        auto b = c->biproduct(x, x);
        return c->row(b.pi1, b.pi2);
      };
    if (k == "identity") return nullptr;  // filled in once the source is known
    invalid(w + ": unknown components " + k);
  }
  if (!j.is_object() || j.size() != 1) parse_fail(w + ": expected a name or a one-key object");
  const auto& [key, val] = *j.items().begin();
  if (key == "scalar") {
    auto k = as<Int>(val, w + ".scalar");
    return [c, k](const Object& x) { return c->scale(k, c->identity(x)); };  // x is F X here
  }
  if (key == "spike") {
    auto o = parse_object(m, val, w + ".spike");
    return [c, o](const Object& x) { return x == o ? c->identity(x) : c->zero(x, x); };  // x is F X here
  }
  if (key == "relabel-iso" || key == "relabel-iso-inverse") {
    auto r = as<std::string>(val, w + "." + key);
    if (!m.relabels.count(r)) invalid(w + ": " + r + " is not a relabeling");
    auto rel = m.relabels.at(r);
    if (key == "relabel-iso") return [rel](const Object& x) { return rel->iso(x); };
    auto t = m.table;
    return [rel, t](const Object& x) { return *inverse(*t, rel->iso(x)); };
  }
  invalid(w + ": unknown components " + key);
}

void parse_cells(Model& m, const json& arr) {
  if (!arr.is_array()) parse_fail("cells: expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& j = arr[i];
    std::string w = "cells[" + std::to_string(i) + "]";
    allow_keys(j, w, {"name", "source", "target", "components", "fixture"});
    NamedCell nc;
    nc.name = as<std::string>(req(j, "name", w), w + ".name");
    w = "cell " + nc.name;
    for (const auto& o : m.cells)
      if (o.name == nc.name) invalid(w + ": declared twice");
    nc.source = as<std::string>(req(j, "source", w), w + ".source");
    nc.target = as<std::string>(req(j, "target", w), w + ".target");
    nc.fixture = opt<bool>(j, "fixture", false, w);
    auto f = m.functor(nc.source).f;
    auto g = m.functor(nc.target).f;
    const auto& comp = req(j, "components", w);
    auto at = parse_components(m, comp, w + ".components");
    bool on_image = comp.is_object() && (comp.contains("scalar") || comp.contains("spike"));
    auto c = m.category;
    std::function<Morphism(const Object&)> fn;
    if (!at)
      fn = [c, f](const Object& x) { return c->identity(f->functor().on_object(x)); };
    else if (on_image)
      fn = [at, f](const Object& x) { return at(f->functor().on_object(x)); };
    else
      fn = at;
    nc.cell = ExNatTrans{nc.name, f, g, fn};
    building(w, [&] {
      for (const auto& x : m.category->universe(1)) {
        auto b = nc.cell(x);
        if (b.source != f->functor().on_object(x) || b.target != g->functor().on_object(x))
          invalid(w + ": component at " + x.to_string() + " is not a map " + nc.source + " X -> " + nc.target + " X");
      }
      return 0;
    });
    m.cells.push_back(std::move(nc));
  }
}

const NamedCell& find_cell(const Model& m, const std::string& name, const std::string& w) {
  for (const auto& c : m.cells)
    if (c.name == name) return c;
  invalid(w + ": unknown cell " + name);
}

void parse_adjunctions(Model& m, const json& arr) {
  if (!arr.is_array()) parse_fail("adjunctions: expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& j = arr[i];
    std::string w = "adjunctions[" + std::to_string(i) + "]";
    allow_keys(j, w, {"name", "left", "right", "unit", "counit", "equivalence"});
    NamedAdjunction na;
    na.name = as<std::string>(req(j, "name", w), w + ".name");
    w = "adjunction " + na.name;
    na.adj.left = m.functor(as<std::string>(req(j, "left", w), w + ".left")).f;
    na.adj.right = m.functor(as<std::string>(req(j, "right", w), w + ".right")).f;
    na.adj.unit = find_cell(m, as<std::string>(req(j, "unit", w), w + ".unit"), w).cell;
    na.adj.counit = find_cell(m, as<std::string>(req(j, "counit", w), w + ".counit"), w).cell;
    if (j.contains("equivalence")) na.equivalence = as<bool>(j.at("equivalence"), w + ".equivalence");
    m.adjunctions.push_back(std::move(na));
  }
}

const std::set<std::string>& fixture_kinds() {
  static const std::set<std::string> k{"unbalanced",    "swap",           "corrupted",          "not-additive",
                                       "not-exangulated", "not-equivalence", "cell-not-exangulated", "cell-not-natural"};
  return k;
}

void parse_fixtures(Model& m, const json& arr) {
  if (!arr.is_array()) parse_fail("fixtures: expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& j = arr[i];
    std::string w = "fixtures[" + std::to_string(i) + "]";
    allow_keys(j, w, {"name", "kind", "functor", "cell", "objects"});
    Fixture fx;
    fx.name = as<std::string>(req(j, "name", w), w + ".name");
    fx.kind = as<std::string>(req(j, "kind", w), w + ".kind");
    w = "fixture " + fx.name;
    if (!fixture_kinds().count(fx.kind)) invalid(w + ": unknown kind " + fx.kind);
    if (fx.kind == "unbalanced" || fx.kind == "not-additive" || fx.kind == "not-exangulated" ||
        fx.kind == "not-equivalence") {
      fx.functor = as<std::string>(req(j, "functor", w), w + ".functor");
      (void)m.functor(fx.functor);
    }
    if (fx.kind.rfind("cell-", 0) == 0) {
      fx.functor = as<std::string>(req(j, "cell", w), w + ".cell");
      (void)find_cell(m, fx.functor, w);
    }
    if (fx.kind == "unbalanced" && !dynamic_cast<const SplitBifunctor*>(m.bifunctor.get()))
      invalid(w + ": needs the split bifunctor");
    if (fx.kind == "swap") {
      if (!dynamic_cast<const SplitBifunctor*>(m.bifunctor.get())) invalid(w + ": needs the split bifunctor");
      if (!biproducts_total(m)) invalid(w + ": needs a category closed under biproducts");
      const auto& objs = req(j, "objects", w);
      if (!objs.is_array()) parse_fail(w + ".objects: expected an array");
      for (const auto& o : objs) fx.objects.push_back(parse_object(m, o, w + ".objects"));
      std::set<Object> distinct(fx.objects.begin(), fx.objects.end());
      if (distinct.size() != fx.objects.size()) invalid(w + ": objects must be distinct");
      bool pair = false;
      for (const auto& a : fx.objects)
        for (const auto& c : fx.objects)
          pair = pair || (a != m.category->zero_object() && c != m.category->zero_object() &&
                          !objects_isomorphic(*m.category, a, c));
      if (!pair) invalid(w + ": needs two non-isomorphic nonzero objects");
    }
    if (fx.kind == "corrupted") {
      if (!m.realisation) invalid(w + ": needs a realisation");
      if (dynamic_cast<const SplitBifunctor*>(m.bifunctor.get())) invalid(w + ": every split class is zero already");
      if (!biproducts_total(m)) invalid(w + ": needs a category closed under biproducts");
    }
    m.fixtures.push_back(std::move(fx));
  }
}

// ---------------------------------------------------------------- suites

using ModelPtr = std::shared_ptr<const Model>;

std::optional<std::string> first_failure(const Report& r) {
  for (const auto& c : r.checks)
    if (c.status != Status::Pass)
      return c.id + ": " + (c.witnesses.empty() ? (c.note.empty() ? std::string(to_string(c.status)) : c.note)
                                                : c.witnesses.front());
  return std::nullopt;
}

std::optional<std::string> verdict(const Verdict& v) {
  if (v.holds) return std::nullopt;
  return v.witness;
}

PlannedCheck& add(Plan& p, std::string id, std::string desc) {
  p.push_back(PlannedCheck{std::move(id), std::move(desc), {}, false, {}});
  return p.back();
}

void drop_empty(Plan& p) {
  std::erase_if(p, [](const PlannedCheck& c) { return c.instances.empty(); });
}

std::vector<const NamedFunctor*> positive_functors(const Model& m) {
  std::vector<const NamedFunctor*> out;
  for (const auto& f : m.functors)
    if (!f.fixture) out.push_back(&f);
  return out;
}

std::vector<const NamedCell*> positive_cells(const Model& m) {
  std::vector<const NamedCell*> out;
  for (const auto& c : m.cells)
    if (!c.fixture) out.push_back(&c);
  return out;
}

// Composites such as D o D o D o D blow up quickly; pair checks skip functors whose images leave the bound.
bool within_bound(const Model& m, const ExFunctor& f) {
  const double limit = std::log2(static_cast<double>(enumeration_bound()));
  for (const auto& x : m.category->universe(m.cfg.object_cap)) {
    auto y = f.functor().on_object(x);
    if (y.is_named()) continue;
    double bits = 0;
    for (auto q : y.as_group().factors()) bits += std::log2(static_cast<double>(q));
    if (bits > limit) return false;
  }
  return true;
}

void note_omitted(PlannedCheck& c, std::size_t k) {
  if (k == 0) return;
  c.sampled = true;
  c.note = std::to_string(k) + " pairs omitted: composite images exceed the enumeration bound";
}

Plan functor_suite(const ModelPtr& m) {
  Plan p;
  p.reserve(8);  // checks are filled through references
  auto& add_ = add(p, "additive", "F preserves identities, composition, sums and biproducts");
  auto& nat = add(p, "natural", "Gamma is natural in both variables");
  auto& exa = add(p, "exangulated", "s'(Gamma d) = [F s(d)] on every capped d");
  auto& exact = add(p, "exact", "E_(F, Gamma) is an additive exact functor");
  const bool total = biproducts_total(*m);
  for (const auto* nf : positive_functors(*m)) {
    auto f = nf->f;
    add_.instances.push_back({nf->name, [m, f] { return first_failure(verify_additive(f->functor(), m->cfg)); }});
    nat.instances.push_back({nf->name, [m, f] { return first_failure(verify_natural(*f->gamma, m->cfg)); }});
    exa.instances.push_back({nf->name, [m, f] { return verdict(is_exangulated(*f, m->cfg)); }});
    if (total)
      exact.instances.push_back(
        {nf->name, [m, f] { return first_failure(verify_extfun(*induced_extfunctor(f->gamma), m->cfg)); }});
  }
  drop_empty(p);
  return p;
}

Plan theorem_a_suite(const ModelPtr& m) {
  Plan p;
  p.reserve(8);  // checks are filled through references
  auto& g = add(p, "round-trip.gamma", "gamma_from(F, E_(F, Gamma)) = Gamma");
  auto& e = add(p, "round-trip.functor", "E_(F, gamma_from(F, E)) = E");
  auto& rm = add(p, "respects.morphisms", "E_(F, Gamma) respects morphisms over F");
  auto& rx = add(p, "respects.exangles", "E_(F, Gamma) respects distinguished n-exangles over F");
  auto& laws = add(p, "laws", "additivity and push/pull laws on extension groups of order at most 16");
  for (const auto* nf : positive_functors(*m)) {
    auto f = nf->f;
    g.instances.push_back({nf->name, [m, f]() -> std::optional<std::string> {
                             auto ef = extfun_from(f->gamma, m->cfg);
                             auto back = gamma_from(f->gamma->functor(), ef, m->cfg);
                             return verdict(same_gamma(*back, *f->gamma, m->cfg.object_cap));
                           }});
    e.instances.push_back({nf->name, [m, f]() -> std::optional<std::string> {
                             auto ef = extfun_from(f->gamma, m->cfg);
                             auto again = extfun_from(gamma_from(f->gamma->functor(), ef, m->cfg), m->cfg);
                             return verdict(same_extfunctor(*again, *ef, m->cfg));
                           }});
    rm.instances.push_back({nf->name, [m, f] {
                              return verdict(respects_morphisms_over(*induced_extfunctor(f->gamma), f->functor(), m->cfg));
                            }});
    rx.instances.push_back({nf->name, [m, f] {
                              return verdict(respects_exangles_over(*induced_extfunctor(f->gamma), f->functor(),
                                                                    *f->source, *f->target, m->cfg));
                            }});
    laws.instances.push_back({nf->name, [m, f] {
                                return first_failure(
                                    verify_respecting_laws(*induced_extfunctor(f->gamma), f->functor(), m->cfg, 16));
                              }});
  }
  drop_empty(p);
  return p;
}

Plan theorem_b_suite(const ModelPtr& m) {
  Plan p;
  p.reserve(8);  // checks are filled through references
  auto& nat = add(p, "natural", "the cell is natural");
  auto& exa = add(p, "exangulated", "(b_A)_E' Gamma(d) = (b_C)^E' Lambda(d)");
  auto& bn = add(p, "bracket.natural", "<b> is a natural transformation");
  auto& bb = add(p, "bracket.balanced", "<b> is balanced");
  auto& sp = add(p, "split.round-trip", "<b>^l = <b>^r = b");
  auto& ub = add(p, "unbracket.round-trip", "<common value of <b>> = <b>");
  const int cap = m->cfg.object_cap;
  for (const auto* nc : positive_cells(*m)) {
    auto b = nc->cell;
    nat.instances.push_back({nc->name, [m, b] { return verdict(check_natural(b, m->cfg)); }});
    exa.instances.push_back({nc->name, [m, b] { return verdict(check_exangulated_nt(b, m->cfg)); }});
    bn.instances.push_back({nc->name, [m, b] { return verdict(check_natural_ext(bracket(b), m->cfg)); }});
    bb.instances.push_back({nc->name, [b, cap] { return verdict(is_balanced(bracket(b), b.source, b.target, cap)); }});
    sp.instances.push_back({nc->name, [b, cap]() -> std::optional<std::string> {
                              auto [l, r] = split_nt(bracket(b), b.source, b.target);
                              if (auto w = verdict(same_nt(l, b, cap))) return "left: " + *w;
                              if (auto w = verdict(same_nt(r, b, cap))) return "right: " + *w;
                              return std::nullopt;
                            }});
    ub.instances.push_back({nc->name, [m, b, cap] {
                              auto a = bracket(b);
                              return verdict(same_ext_nt(bracket(unbracket(a, b.source, b.target, cap)), a, m->cfg));
                            }});
  }
  drop_empty(p);
  return p;
}

Plan two_functor_suite(const ModelPtr& m) {
  Plan p;
  p.reserve(8);  // checks are filled through references
  auto& ids = add(p, "daleth2.identity", "<id_F> = id");
  auto& vert = add(p, "daleth2.vertical", "<b' o_v b> = <b'> o_v <b>");
  auto& hor = add(p, "daleth2.horizontal", "<d o_h b> = <d> o_h <b>");
  auto& whisk = add(p, "whisker.decomposition", "d o_h b = d_G o_v L b");
  auto& hexa = add(p, "hcompose.exangulated", "d o_h b is an n-exangulated natural transformation");
  auto& d1 = add(p, "daleth1.composition", "E_(L o F) = E_L o E_F");
  const int cap = m->cfg.object_cap;
  for (const auto* nf : positive_functors(*m)) {
    auto f = nf->f;
    ids.instances.push_back({nf->name, [m, f] {
                               return verdict(
                                   same_ext_nt(daleth2(identity_nt(f)), identity_ext_nt(daleth1(*f, m->cfg)), m->cfg));
                             }});
  }
  auto fs = positive_functors(*m);
  std::size_t skipped_d1 = 0, skipped_h = 0;
  for (const auto* l : fs)
    for (const auto* r : fs) {
      auto lf = l->f, rf = r->f;
      if (!within_bound(*m, *compose_exfunctors(lf, rf))) {
        ++skipped_d1;
        continue;
      }
      d1.instances.push_back({l->name + " o " + r->name, [m, lf, rf] {
                                auto lhs = daleth1(*compose_exfunctors(lf, rf), m->cfg);
                                auto rhs = compose_extfunctors(daleth1(*lf, m->cfg), daleth1(*rf, m->cfg));
                                return verdict(same_extfunctor(*lhs, *rhs, m->cfg));
                              }});
    }
  auto cs = positive_cells(*m);
  for (const auto* b1 : cs)
    for (const auto* b2 : cs) {
      auto x = b1->cell, y = b2->cell;
      std::string pair = b2->name + ", " + b1->name;
      if (b1->target == b2->source)
        vert.instances.push_back({pair, [m, x, y] {
                                    return verdict(same_ext_nt(daleth2(vcompose(y, x)),
                                                               vcompose_ext(daleth2(y), daleth2(x)), m->cfg));
                                  }});
      if (!within_bound(*m, *compose_exfunctors(y.source, x.source)) ||
          !within_bound(*m, *compose_exfunctors(y.target, x.target))) {
        ++skipped_h;
        continue;
      }
      hor.instances.push_back({pair, [m, x, y] {
                                 return verdict(same_ext_nt(daleth2(hcompose(y, x)),
                                                            hcompose_ext(daleth2(y), daleth2(x)), m->cfg));
                               }});
      whisk.instances.push_back({pair, [x, y, cap] {
                                   return verdict(same_nt(hcompose(y, x),
                                                          vcompose(whisker_right(y, x.target), whisker_left(y.source, x)),
                                                          cap));
                                 }});
      hexa.instances.push_back({pair, [m, x, y] { return verdict(check_exangulated_nt(hcompose(y, x), m->cfg)); }});
    }
  note_omitted(d1, skipped_d1);
  for (auto* c : {&hor, &whisk, &hexa}) note_omitted(*c, skipped_h);
  drop_empty(p);
  return p;
}

Plan interchange_suite(const ModelPtr& m) {
  Plan p;
  p.reserve(8);  // checks are filled through references
  std::vector<NamedCell> pool;
  for (const auto* nf : positive_functors(*m)) pool.push_back({"id_" + nf->name, identity_nt(nf->f), nf->name, nf->name});
  for (const auto* nc : positive_cells(*m)) pool.push_back(*nc);
  if (pool.empty() || m->grids == 0) return p;
  std::mt19937_64 rng(m->cfg.seed);
  auto pick_from = [&](const std::string& src) -> const NamedCell& {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (src.empty() || pool[i].source == src) c.push_back(i);
    return pool[c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)]];
  };
  auto& ch = add(p, "grids", "(d' o_h b') o_v (d o_h b) = (d' o_v d) o_h (b' o_v b) on sampled 2x2 grids");
  ch.sampled = true;
  const int cap = m->cfg.object_cap;
  for (std::size_t k = 0; k < m->grids; ++k) {
    const auto& b1 = pick_from("");
    const auto& b2 = pick_from(b1.target);
    const auto& d1 = pick_from("");
    const auto& d2 = pick_from(d1.target);
    auto label = "[" + d2.name + ", " + b2.name + "; " + d1.name + ", " + b1.name + "]";
    ch.instances.push_back({label, [a = d2.cell, b = b2.cell, c = d1.cell, d = b1.cell, cap] {
                              return verdict(check_interchange(a, b, c, d, cap));
                            }});
  }
  return p;
}

Plan adjunction_suite(const ModelPtr& m) {
  Plan p;
  p.reserve(8);  // checks are filled through references
  auto& pair = add(p, "pair", "triangle identities, exangulated unit and counit, both extension formulas, "
                              "and the transported triangle identities");
  auto& eq = add(p, "equivalence", "the declared answer to being an n-exangulated equivalence");
  for (const auto& na : m->adjunctions) {
    auto adj = na.adj;
    pair.instances.push_back({na.name, [m, adj] { return first_failure(check_adjoint_pair(adj, m->cfg)); }});
    if (na.equivalence) {
      bool want = *na.equivalence;
      eq.instances.push_back({na.name, [m, adj, want]() -> std::optional<std::string> {
                                auto v = is_adjoint_equivalence(adj, m->cfg);
                                auto w = is_equivalence(*adj.left, m->cfg);
                                if (v.holds != want)
                                  return std::string(want ? "expected an equivalence: " + v.witness
                                                          : "unexpectedly an adjoint equivalence");
                                if (w.holds != want)
                                  return std::string(want ? "left adjoint: " + w.witness
                                                          : "left adjoint unexpectedly an equivalence");
                                return std::nullopt;
                              }});
    }
  }
  drop_empty(p);
  return p;
}

std::optional<std::string> run_fixture(const ModelPtr& m, const Fixture& fx) {
  const auto& cfg = m->cfg;
  if (fx.kind == "unbalanced") {
    auto f = m->functor(fx.functor).f;
    auto a = unbalanced_fixture(f);
    if (auto w = verdict(check_natural_ext(a, cfg))) return "not natural: " + *w;
    if (is_balanced(a, f, f, cfg.object_cap)) return std::string("balanced");
    return std::nullopt;
  }
  if (fx.kind == "swap") {
    auto e = swap_extfunctor(m->bifunctor);
    auto id = identity_functor(m->category);
    if (auto w = first_failure(verify_extfun(*e, cfg))) return "not an exact functor: " + *w;
    if (respects_morphisms_over(*e, *id, cfg)) return std::string("respects morphisms over the identity");
    try {
      gamma_from(id, e, cfg);
      return std::string("gamma_from succeeded");
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NotRespecting) return std::string("gamma_from raised ") + to_string(err.code());
    }
    auto r = refute_respecting(*e, fx.objects);
    if (!r.refuted) return std::string("no contradiction derived");
    return std::nullopt;
  }
  if (fx.kind == "corrupted") {
    auto bad = std::make_shared<CorruptedRealisation>(m->realisation);
    if (verify_axioms(*bad, cfg).passed()) return std::string("the corrupted realisation passed");
    return std::nullopt;
  }
  if (fx.kind == "not-additive") {
    if (verify_additive(m->functor(fx.functor).f->functor(), cfg).passed()) return std::string("additive");
    return std::nullopt;
  }
  if (fx.kind == "not-exangulated") {
    if (is_exangulated(*m->functor(fx.functor).f, cfg)) return std::string("exangulated");
    return std::nullopt;
  }
  if (fx.kind == "not-equivalence") {
    if (is_equivalence(*m->functor(fx.functor).f, cfg)) return std::string("an equivalence up to the cap");
    return std::nullopt;
  }
  const auto& cell = find_cell(*m, fx.functor, "fixture " + fx.name).cell;
  if (fx.kind == "cell-not-natural") {
    if (check_natural(cell, cfg)) return std::string("natural");
    return std::nullopt;
  }
  if (check_exangulated_nt(cell, cfg)) return std::string("n-exangulated");
  return std::nullopt;
}

Plan fixture_suite(const ModelPtr& m) {
  Plan p;
  p.reserve(8);  // checks are filled through references
  for (const auto& fx : m->fixtures) {
    auto& ch = add(p, fx.name, "expected negative: " + fx.kind);
    ch.instances.push_back({fx.kind, [m, fx] { return run_fixture(m, fx); }});
  }
  return p;
}

}  // namespace

const NamedFunctor& Model::functor(const std::string& name) const {
  for (const auto& f : functors)
    if (f.name == name) return f;
  invalid("unknown functor " + name);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> s{"exact-category", "axioms",      "functors",    "theorem-a", "theorem-b",
                                          "two-functor",    "interchange", "adjunctions", "fixtures"};
  return s;
}

void select_suites(Model& m, const std::vector<std::string>& suites) {
  const auto& all = suite_names();
  for (const auto& s : suites) {
    if (std::find(all.begin(), all.end(), s) == all.end()) invalid("unknown suite " + s);
    if (needs_biproducts(s) && !biproducts_total(m)) invalid("suite " + s + " needs a category closed under biproducts");
  }
  m.suites = suites;
  if (!suites.empty()) return;
  for (const auto& s : all)
    if (!needs_biproducts(s) || biproducts_total(m)) m.suites.push_back(s);
}

std::shared_ptr<Model> load_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("not a JSON document: ") + e.what());
  }
  allow_keys(doc, "spec", {"name", "backend", "structure", "caps", "functors", "cells", "adjunctions", "fixtures",
                           "interchange", "suites"});
  auto m = std::make_shared<Model>();
  m->name = as<std::string>(req(doc, "name", "spec"), "spec.name");
  parse_backend(*m, req(doc, "backend", "spec"));
  parse_structure(*m, req(doc, "structure", "spec"));
  if (doc.contains("caps")) parse_caps(*m, doc.at("caps"));
  check_caps(*m);
  if (doc.contains("functors")) parse_functors(*m, doc.at("functors"));
  if (doc.contains("cells")) parse_cells(*m, doc.at("cells"));
  if (doc.contains("adjunctions")) parse_adjunctions(*m, doc.at("adjunctions"));
  if (doc.contains("fixtures")) parse_fixtures(*m, doc.at("fixtures"));
  if (doc.contains("interchange")) {
    const auto& j = doc.at("interchange");
    allow_keys(j, "interchange", {"grids"});
    m->grids = opt<std::size_t>(j, "grids", m->grids, "interchange");
  }
  auto chosen = doc.contains("suites") ? as<std::vector<std::string>>(doc.at("suites"), "spec.suites")
                                      : std::vector<std::string>{};
  if (doc.contains("suites") && chosen.empty())
    m->suites.clear();  // an explicit empty list runs nothing
  else
    select_suites(*m, chosen);
  return m;
}

std::shared_ptr<Model> load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_spec(ss.str());
}

Plan build_suite(const std::shared_ptr<const Model>& m, const std::string& suite) {
  if (suite == "exact-category") return plan_exact_category(ExtCategory(m->bifunctor), m->cfg);
  if (suite == "axioms") return m->realisation ? plan_axioms(*m->realisation, m->cfg) : Plan{};
  if (suite == "functors") return functor_suite(m);
  if (suite == "theorem-a") return theorem_a_suite(m);
  if (suite == "theorem-b") return theorem_b_suite(m);
  if (suite == "two-functor") return two_functor_suite(m);
  if (suite == "interchange") return interchange_suite(m);
  if (suite == "adjunctions") return adjunction_suite(m);
  if (suite == "fixtures") return fixture_suite(m);
  invalid("unknown suite " + suite);
}

std::vector<std::string> bound_warnings(const Model& m) {
  std::vector<std::string> out;
  const double limit = std::log2(static_cast<double>(enumeration_bound()));
  auto bits = [](const FinAbGroup& g) {
    double b = 0;
    for (auto q : g.factors()) b += std::log2(static_cast<double>(q));
    return b;
  };
  auto u = m.category->universe(m.cfg.object_cap);
  for (const auto& C : u)
    for (const auto& A : u) {
      std::string at = "(" + C.to_string() + ", " + A.to_string() + ")";
      if (bits(m.bifunctor->value(C, A)) > limit) out.push_back("E" + at + " exceeds the enumeration bound");
      if (bits(m.category->hom_group(C, A)) > limit) out.push_back("hom" + at + " exceeds the enumeration bound");
    }
  return out;
}

std::string describe(const std::shared_ptr<const Model>& m) {
  std::ostringstream os;
  const auto& cfg = m->cfg;
  os << "spec " << m->name << "\n";
  os << "backend: " << m->backend_desc << "\n";
  os << "structure: " << m->bifunctor->name() << ", n = " << m->n << ", realisation "
     << (m->realisation ? m->realisation->name() : std::string("none")) << "\n";
  os << "caps: objects " << cfg.object_cap << ", order " << cfg.order_cap << ", samples " << cfg.samples
     << ", per_pair " << cfg.per_pair << ", max_instances " << cfg.max_instances << ", seed " << cfg.seed << "\n";
  auto u = m->category->universe(cfg.object_cap);
  os << "universe: " << u.size() << " objects\n";
  os << "declared: " << m->functors.size() << " functors, " << m->cells.size() << " cells, " << m->adjunctions.size()
     << " adjunctions, " << m->fixtures.size() << " fixtures\n";
  auto warnings = bound_warnings(*m);
  for (const auto& w : warnings) os << "warning: BoundExceeded: " << w << "\n";
  if (!warnings.empty()) {
    os << "suites not planned: the caps exceed the enumeration bound\n";
    return os.str();
  }
  std::size_t checks = 0, instances = 0;
  for (const auto& s : m->suites) {
    auto plan = build_suite(m, s);
    std::size_t inst = 0;
    for (const auto& c : plan) inst += c.instances.size();
    checks += plan.size();
    instances += inst;
    os << "suite " << s << ": " << plan.size() << " checks, " << inst << " instances\n";
  }
  std::mt19937_64 rng(cfg.seed);
  auto eu = ext_universe(*m->bifunctor, cfg, rng);
  os << "extensions: " << eu.extensions.size() << (eu.sampled ? " (sampled)" : "") << "\n";
  os << "total: " << checks << " checks, " << instances << " instances\n";
  return os.str();
}

std::string format_text(const Model& m, const std::vector<SuiteReport>& reps) {
  std::ostringstream os;
  const auto& c = m.cfg;
  os << "nexang " << kVersion << "  spec " << m.name << "  seed " << c.seed << "\n";
  os << "caps: objects " << c.object_cap << ", order " << c.order_cap << ", samples " << c.samples << ", per_pair "
     << c.per_pair << ", max_instances " << c.max_instances << "\n";
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& r : reps) {
    os << "\n[" << r.suite << "] " << r.report.to_text();
    for (const auto& ch : r.report.checks) {
      pass += ch.status == Status::Pass;
      fail += ch.status == Status::Fail;
      skip += ch.status == Status::Skipped;
    }
  }
  os << "\nsummary: " << pass + fail + skip << " checks, " << pass << " passed, " << fail << " failed, " << skip
     << " skipped\n";
  return os.str();
}

std::string format_structured(const Model& m, const std::vector<SuiteReport>& reps) {
  std::ostringstream os;
  const auto& c = m.cfg;
  json head{{"type", "header"},
            {"tool", "nexang"},
            {"version", kVersion},
            {"spec", m.name},
            {"seed", c.seed},
            {"caps",
             {{"objects", c.object_cap},
              {"order", c.order_cap},
              {"samples", c.samples},
              {"per_pair", c.per_pair},
              {"max_instances", c.max_instances}}}};
  os << head.dump() << "\n";
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& r : reps)
    for (const auto& ch : r.report.checks) {
      pass += ch.status == Status::Pass;
      fail += ch.status == Status::Fail;
      skip += ch.status == Status::Skipped;
      json line{{"type", "check"},
                {"suite", r.suite},
                {"id", ch.id},
                {"description", ch.description},
                {"status", to_string(ch.status)},
                {"instances", ch.instances},
                {"failures", ch.failures},
                {"sampled", ch.sampled},
                {"note", ch.note},
                {"witnesses", ch.witnesses}};
      os << line.dump() << "\n";
    }
  json tail{{"type", "summary"}, {"checks", pass + fail + skip}, {"passed", pass}, {"failed", fail}, {"skipped", skip}};
  os << tail.dump() << "\n";
  return os.str();
}

}  // namespace nexang::cli
