#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nexang/category.hpp"

namespace nexang {

// delta in E(C, A)
struct Extension {
  Object A, C;
  GroupElement cls;

  std::string to_string() const;
  bool operator==(const Extension&) const = default;
};

class Bifunctor {
 public:
  virtual ~Bifunctor() = default;

  virtual std::string name() const = 0;
  virtual const AdditiveCategory& category() const = 0;
  virtual FinAbGroup value(const Object& C, const Object& A) const = 0;
  // x : A -> X sends E(C, A) to E(C, X)
  virtual GroupElement push_class(const Morphism& x, const Object& C, const GroupElement& cls) const = 0;
  // z : Z -> C sends E(C, A) to E(Z, A)
  virtual GroupElement pull_class(const Morphism& z, const Object& A, const GroupElement& cls) const = 0;

  Extension make(const Object& C, const Object& A, std::vector<Int> coords) const;
  Extension zero(const Object& C, const Object& A) const;
  Extension push(const Morphism& x, const Extension& d) const;  // x_E d
  Extension pull(const Morphism& z, const Extension& d) const;  // z^E d
  Extension act(const Morphism& z, const Morphism& x, const Extension& d) const;  // E(z, x) d
  Extension add(const Extension& d, const Extension& r) const;
  Extension negate(const Extension& d) const;

  std::vector<Extension> all(const Object& C, const Object& A) const;
  std::vector<Extension> generators(const Object& C, const Object& A) const;
  // The maps x_E : E(C, A) -> E(C, X) and z^E : E(C, A) -> E(Z, A) as group homs.
  GroupHom push_hom(const Morphism& x, const Object& C) const;
  GroupHom pull_hom(const Morphism& z, const Object& A) const;
};

using BifunctorPtr = std::shared_ptr<const Bifunctor>;

class SplitBifunctor final : public Bifunctor {
 public:
  explicit SplitBifunctor(CategoryPtr c) : c_(std::move(c)) {}
  std::string name() const override { return "split"; }
  const AdditiveCategory& category() const override { return *c_; }
  FinAbGroup value(const Object& C, const Object& A) const override;
  GroupElement push_class(const Morphism& x, const Object& C, const GroupElement& cls) const override;
  GroupElement pull_class(const Morphism& z, const Object& A, const GroupElement& cls) const override;

 private:
  CategoryPtr c_;
};

// E(C, A) = C(C, A)
class HomBifunctor final : public Bifunctor {
 public:
  explicit HomBifunctor(CategoryPtr c) : c_(std::move(c)) {}
  std::string name() const override { return "hom"; }
  const AdditiveCategory& category() const override { return *c_; }
  FinAbGroup value(const Object& C, const Object& A) const override;
  GroupElement push_class(const Morphism& x, const Object& C, const GroupElement& cls) const override;
  GroupElement pull_class(const Morphism& z, const Object& A, const GroupElement& cls) const override;
  Morphism as_morphism(const Extension& d) const;

 private:
  CategoryPtr c_;
};

// Ext^1 over FinAb: Ext(Z/c, M) = M / cM, extended additively in the first variable.
// A class is represented by vectors m_j in A, one per cyclic summand Z/c_j of C.
class Ext1Bifunctor final : public Bifunctor {
 public:
  explicit Ext1Bifunctor(std::shared_ptr<const FinAbBackend> c);
  ~Ext1Bifunctor() override;

  std::string name() const override { return "ext1"; }
  const AdditiveCategory& category() const override { return *c_; }
  const FinAbBackend& backend() const { return *c_; }
  FinAbGroup value(const Object& C, const Object& A) const override;
  GroupElement push_class(const Morphism& x, const Object& C, const GroupElement& cls) const override;
  GroupElement pull_class(const Morphism& z, const Object& A, const GroupElement& cls) const override;

  // Column j holds m_j (rank A x rank C), entries reduced mod gcd(a_i, c_j).
  Matrix representatives(const Extension& d) const;
  GroupElement class_of(const Object& C, const Object& A, const Matrix& reps) const;

 private:
  struct Cache;
  struct Value;
  const Value& cached(const FinAbGroup& C, const FinAbGroup& A) const;
  std::shared_ptr<const FinAbBackend> c_;
  std::unique_ptr<Cache> cache_;
};

// E_I(C, A) = { d : z^E d = 0 for every z : X -> C with X in I }
class RelativeSubfunctor final : public Bifunctor {
 public:
  RelativeSubfunctor(BifunctorPtr parent, std::vector<Object> objects);
  std::string name() const override;
  const AdditiveCategory& category() const override { return parent_->category(); }
  FinAbGroup value(const Object& C, const Object& A) const override;
  GroupElement push_class(const Morphism& x, const Object& C, const GroupElement& cls) const override;
  GroupElement pull_class(const Morphism& z, const Object& A, const GroupElement& cls) const override;

  const Bifunctor& parent() const { return *parent_; }
  const BifunctorPtr& parent_ptr() const { return parent_; }
  Subgroup subgroup(const Object& C, const Object& A) const;
  Extension include(const Extension& d) const;
  std::optional<Extension> restrict(const Extension& d) const;

 private:
  BifunctorPtr parent_;
  std::vector<Object> objects_;
};

// Unique class x in E(C+D, A+B) with E(iota_C, pi_A) x = d, E(iota_D, pi_B) x = r and mixed components zero.
Extension direct_sum(const Bifunctor& e, const Extension& d, const Extension& r);
// Checks the four defining identities and that they determine x uniquely.
bool verify_direct_sum(const Bifunctor& e, const Extension& d, const Extension& r, const Extension& x);
// d1 + d2 = E(Delta_C, Nabla_A)(d1 (+) d2)
Extension baer_sum(const Bifunctor& e, const Extension& d1, const Extension& d2);

}  // namespace nexang
