#pragma once

#include <compare>
#include <map>
#include <tuple>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nexang/algebra.hpp"

namespace nexang {

// A FinAb object is its canonical group; a table object is a name.
class Object {
 public:
  Object() = default;
  static Object group(FinAbGroup g);
  static Object named(std::string name);

  bool is_named() const noexcept { return std::holds_alternative<std::string>(repr_); }
  const FinAbGroup& as_group() const;
  const std::string& as_name() const;
  std::string to_string() const;

  bool operator==(const Object&) const = default;
  std::strong_ordering operator<=>(const Object& o) const;

 private:
  std::variant<FinAbGroup, std::string> repr_;
};

// data is backend specific: the hom matrix for FinAb, the hom-group coordinates (one column) for tables.
struct Morphism {
  Object source, target;
  Matrix data;

  std::string to_string() const;
  bool operator==(const Morphism&) const = default;
};

struct BiproductData {
  Object sum;
  Morphism iota1, iota2, pi1, pi2;
};

class AdditiveCategory {
 public:
  virtual ~AdditiveCategory() = default;

  virtual std::string name() const = 0;
  virtual bool contains(const Object& x) const = 0;
  virtual std::vector<Object> probe_objects() const = 0;
  // Enough objects to test exactness of Hom sequences through the given objects.
  virtual std::vector<Object> probes_for(const std::vector<Object>&) const { return probe_objects(); }
  virtual Object zero_object() const = 0;

  virtual FinAbGroup hom_group(const Object& x, const Object& y) const = 0;
  virtual GroupElement to_coords(const Morphism& f) const = 0;
  virtual Morphism from_coords(const Object& x, const Object& y, const GroupElement& c) const = 0;

  virtual Morphism compose(const Morphism& g, const Morphism& f) const = 0;  // g after f
  virtual Morphism identity(const Object& x) const = 0;
  virtual Morphism add(const Morphism& f, const Morphism& g) const;
  virtual Morphism scale(Int k, const Morphism& f) const;
  virtual Morphism zero(const Object& x, const Object& y) const;

  // Throws NotInCategory when the backend has no designated biproduct.
  virtual BiproductData biproduct(const Object& x, const Object& y) const = 0;

  // Categorical cokernel / kernel when the backend can compute one directly.
  virtual std::optional<std::pair<Object, Morphism>> cokernel(const Morphism& f) const;
  virtual std::optional<std::pair<Object, Morphism>> kernel(const Morphism& g) const;

  // Zero plus every biproduct of at most `cap` probes, in a fixed order.
  virtual std::vector<Object> universe(int cap) const;

  // Problems found by structural validation; empty means valid.
  virtual std::vector<std::string> validate() const { return {}; }

  Morphism negate(const Morphism& f) const { return scale(-1, f); }
  Morphism subtract(const Morphism& f, const Morphism& g) const { return add(f, negate(g)); }
  Morphism compose(std::initializer_list<Morphism> chain) const;  // leftmost applied last
  bool is_zero(const Morphism& f) const;

  std::vector<Morphism> hom_elements(const Object& x, const Object& y) const;
  std::vector<Morphism> hom_basis(const Object& x, const Object& y) const;

  Morphism diagonal(const Object& x) const;    // X -> X+X
  Morphism codiagonal(const Object& x) const;  // X+X -> X
  Morphism direct_sum(const Morphism& f, const Morphism& g) const;
  // (f; g) : X -> Y1+Y2 and (f g) : X1+X2 -> Y
  Morphism column(const Morphism& f, const Morphism& g) const;
  Morphism row(const Morphism& f, const Morphism& g) const;

  void require(const Object& x) const;
  void require(const Morphism& f) const;
};

using CategoryPtr = std::shared_ptr<const AdditiveCategory>;

// Exhaustive searches over hom-groups (bounded by the enumeration bound).
std::optional<Morphism> is_section(const AdditiveCategory& c, const Morphism& f);
std::optional<Morphism> is_retraction(const AdditiveCategory& c, const Morphism& g);

// Same questions answered by linear algebra.
std::optional<Morphism> find_retraction(const AdditiveCategory& c, const Morphism& f);
std::optional<Morphism> find_section(const AdditiveCategory& c, const Morphism& g);
std::optional<Morphism> inverse(const AdditiveCategory& c, const Morphism& f);

// f : A -> B split mono. r f = id, b = coker f, b s = id, r s = 0, f r + s b = id.
struct SplitComplement {
  Morphism retraction;
  Object complement;
  Morphism projection;
  Morphism section;
};
std::optional<SplitComplement> split_complement(const AdditiveCategory& c, const Morphism& f);

// g : B -> C split epi. g s = id, k = ker g, r k = id, r s = 0, k r + s g = id.
struct SplitKernel {
  Morphism section;
  Object kernel;
  Morphism inclusion;
  Morphism retraction;
};
std::optional<SplitKernel> split_kernel(const AdditiveCategory& c, const Morphism& g);

// Solve lhs(x) == rhs for unknown morphisms x in the given hom slots; lhs must be affine.
struct Slot {
  Object source, target;
};
using MorphismFn = std::function<std::vector<Morphism>(const std::vector<Morphism>&)>;
AffineSystem morphism_system(const AdditiveCategory& c, const std::vector<Slot>& unknowns,
                             const std::vector<Slot>& equations, const MorphismFn& lhs);
std::optional<std::vector<Morphism>> solve_morphisms(const AdditiveCategory& c, const std::vector<Slot>& unknowns,
                                                     const MorphismFn& lhs, const std::vector<Morphism>& rhs);
std::vector<FinAbGroup> slot_groups(const AdditiveCategory& c, const std::vector<Slot>& slots);
std::vector<Morphism> morphisms_of(const AdditiveCategory& c, const std::vector<Slot>& slots,
                                   const std::vector<GroupElement>& coords);
std::vector<GroupElement> coords_of(const AdditiveCategory& c, const std::vector<Morphism>& fs);

// ---------------------------------------------------------------- FinAb

// All finite abelian groups. The exponent bound only selects the probes Z/d (d | exponent, d > 1)
// and hence the universe; middle terms of extensions may exceed it.
class FinAbBackend final : public AdditiveCategory {
 public:
  explicit FinAbBackend(Int exponent);
  ~FinAbBackend() override;

  Int exponent() const noexcept { return exponent_; }
  Morphism hom(const FinAbGroup& x, const FinAbGroup& y, Matrix m) const;
  Morphism hom(const Object& x, const Object& y, Matrix m) const;
  GroupHom as_group_hom(const Morphism& f) const;

  std::string name() const override;
  bool contains(const Object& x) const override;
  std::vector<Object> probe_objects() const override;
  std::vector<Object> probes_for(const std::vector<Object>& objects) const override;
  Object zero_object() const override;
  FinAbGroup hom_group(const Object& x, const Object& y) const override;
  GroupElement to_coords(const Morphism& f) const override;
  Morphism from_coords(const Object& x, const Object& y, const GroupElement& c) const override;
  Morphism compose(const Morphism& g, const Morphism& f) const override;
  using AdditiveCategory::compose;
  Morphism identity(const Object& x) const override;
  Morphism add(const Morphism& f, const Morphism& g) const override;
  Morphism scale(Int k, const Morphism& f) const override;
  Morphism zero(const Object& x, const Object& y) const override;
  BiproductData biproduct(const Object& x, const Object& y) const override;
  std::optional<std::pair<Object, Morphism>> cokernel(const Morphism& f) const override;
  std::optional<std::pair<Object, Morphism>> kernel(const Morphism& g) const override;

 private:
  struct Cache;
  const HomGroup& cached_hom(const FinAbGroup& x, const FinAbGroup& y) const;
  Int exponent_;
  std::unique_ptr<Cache> cache_;
};

// ---------------------------------------------------------------- tables

struct TableData {
  struct Biproduct {
    std::string sum;
    std::vector<Int> iota1, iota2, pi1, pi2;  // coordinates
  };
  std::vector<std::string> objects;
  std::string zero;
  std::map<std::pair<std::string, std::string>, FinAbGroup> homs;
  std::map<std::string, std::vector<Int>> identities;
  // (X, Y, Z) -> [i][j] coordinates in hom(X, Z) of (generator i of hom(Y, Z)) after (generator j of hom(X, Y))
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<std::vector<std::vector<Int>>>> compose;
  std::map<std::pair<std::string, std::string>, Biproduct> biproducts;
};

class TableBackend final : public AdditiveCategory {
 public:
  TableBackend(std::string label, TableData data);

  const TableData& data() const noexcept { return data_; }
  Morphism element(const std::string& x, const std::string& y, std::vector<Int> coords) const;

  std::string name() const override { return label_; }
  bool contains(const Object& x) const override;
  std::vector<Object> probe_objects() const override;
  Object zero_object() const override;
  FinAbGroup hom_group(const Object& x, const Object& y) const override;
  GroupElement to_coords(const Morphism& f) const override;
  Morphism from_coords(const Object& x, const Object& y, const GroupElement& c) const override;
  Morphism compose(const Morphism& g, const Morphism& f) const override;
  using AdditiveCategory::compose;
  Morphism identity(const Object& x) const override;
  BiproductData biproduct(const Object& x, const Object& y) const override;
  std::vector<Object> universe(int cap) const override;
  std::vector<std::string> validate() const override;

 private:
  std::string label_;
  TableData data_;
};

// Full subcategory of finite abelian groups on the named objects; biproducts are designated
// whenever the sum is isomorphic to a listed object (a summand is preferred when the other is zero).
TableData table_from_groups(const std::vector<std::pair<std::string, FinAbGroup>>& objects);

}  // namespace nexang
