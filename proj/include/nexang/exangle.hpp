#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nexang/bifunctor.hpp"
#include "nexang/report.hpp"

namespace nexang {

// X^0 -> X^1 -> ... -> X^{n+1}; d[i] : X^i -> X^{i+1}.
struct NComplex {
  int n = 1;
  std::vector<Object> objects;
  std::vector<Morphism> d;

  const Object& A() const { return objects.front(); }
  const Object& C() const { return objects.back(); }
  std::string to_string() const;
  bool operator==(const NComplex&) const = default;
};

// Builds the complex from its differentials; throws NotAComplex.
NComplex make_complex(const AdditiveCategory& c, std::vector<Morphism> d);
void check_complex(const AdditiveCategory& c, const NComplex& x);
// A ->id A -> 0 -> ... -> 0 and 0 -> ... -> 0 -> C ->id C
NComplex padded_start(const AdditiveCategory& c, const Object& a, int n);
NComplex padded_end(const AdditiveCategory& c, const Object& cc, int n);
NComplex direct_sum(const AdditiveCategory& c, const NComplex& x, const NComplex& y);

// f[i] : X^i -> Y^i
struct ComplexMorphism {
  std::vector<Morphism> f;
  bool operator==(const ComplexMorphism&) const = default;
};

bool is_chain_map(const AdditiveCategory& c, const NComplex& x, const NComplex& y, const ComplexMorphism& f);
ComplexMorphism identity_map(const AdditiveCategory& c, const NComplex& x);
ComplexMorphism compose(const AdditiveCategory& c, const ComplexMorphism& g, const ComplexMorphism& f);

// Throws NotAComplex unless f is a chain map with f^0 = id (resp. f^{n+1} = id).
NComplex mapping_cone(const AdditiveCategory& c, const NComplex& x, const NComplex& y, const ComplexMorphism& f);
NComplex mapping_cocone(const AdditiveCategory& c, const NComplex& x, const NComplex& y, const ComplexMorphism& f);

// h[i] : X^{i+1} -> Y^i, with f^i - g^i = d_Y^{i-1} h^i + h^{i+1} d_X^i in every degree.
struct Homotopy {
  std::vector<Morphism> h;
};
bool is_homotopy(const AdditiveCategory& c, const NComplex& x, const NComplex& y, const ComplexMorphism& f,
                 const ComplexMorphism& g, const Homotopy& h);
std::optional<Homotopy> is_homotopic(const AdditiveCategory& c, const NComplex& x, const NComplex& y,
                                     const ComplexMorphism& f, const ComplexMorphism& g);

// Chain maps with prescribed ends f^0 = a, f^{n+1} = cc.
std::optional<ComplexMorphism> lift_morphism(const AdditiveCategory& c, const NComplex& x, const NComplex& y,
                                             const Morphism& a, const Morphism& cc);
std::vector<ComplexMorphism> all_lifts(const AdditiveCategory& c, const NComplex& x, const NComplex& y,
                                       const Morphism& a, const Morphism& cc);
// One lift per homotopy class (homotopies vanishing at both ends), plus the number of lifts.
struct LiftClasses {
  std::vector<ComplexMorphism> representatives;
  Int lifts = 0;
};
LiftClasses lift_classes(const AdditiveCategory& c, const NComplex& x, const NComplex& y, const Morphism& a,
                         const Morphism& cc);

// Isomorphism in the homotopy category with fixed ends: back to = id_X via on_x, to back = id_Y via on_y.
struct HomotopyEquivalence {
  ComplexMorphism to, back;
  Homotopy on_x, on_y;
};
std::optional<HomotopyEquivalence> homotopy_equivalent(const AdditiveCategory& c, const NComplex& x,
                                                       const NComplex& y);
// Cheaper sufficient test: the first lift of (id, id) is degreewise invertible (homotopies zero).
// For n = 1 and exact rows every lift is an isomorphism, so this decides equivalence there.
std::optional<HomotopyEquivalence> isomorphic_with_fixed_ends(const AdditiveCategory& c, const NComplex& x,
                                                              const NComplex& y);
bool check_equivalence(const AdditiveCategory& c, const NComplex& x, const NComplex& y,
                       const HomotopyEquivalence& w);

// Exactness of C(-, X^.) -> E(-, X^0) and C(X^., -) -> E(X^{n+1}, -) at the probes.
struct ExangleCheck {
  bool holds = true;
  Object probe;
  std::string position;  // e.g. "C(P, X^2)" or "C(X^0, P)"

  std::string to_string() const;
};
ExangleCheck is_n_exangle(const Bifunctor& e, const NComplex& x, const Extension& d);

struct HomotopyClass {
  NComplex representative, raw;
  HomotopyEquivalence witness;  // representative -> raw
};

class Realisation {
 public:
  virtual ~Realisation() = default;
  virtual std::string name() const = 0;
  virtual const Bifunctor& bifunctor() const = 0;
  virtual BifunctorPtr bifunctor_ptr() const = 0;
  virtual int n() const = 0;
  virtual HomotopyClass realise_class(const Extension& d) const = 0;

  NComplex realise(const Extension& d) const { return realise_class(d).representative; }
  const AdditiveCategory& category() const { return bifunctor().category(); }
};

using RealisationPtr = std::shared_ptr<const Realisation>;

// E = 0. n = 1: A -> A+C -> C; n >= 2: A ->id A -> 0 -> ... -> 0 -> C ->id C.
class SplitRealisation final : public Realisation {
 public:
  SplitRealisation(BifunctorPtr e, int n);
  std::string name() const override { return "split(n=" + std::to_string(n_) + ")"; }
  const Bifunctor& bifunctor() const override { return *e_; }
  BifunctorPtr bifunctor_ptr() const override { return e_; }
  int n() const override { return n_; }
  HomotopyClass realise_class(const Extension& d) const override;

 private:
  BifunctorPtr e_;
  int n_;
};

// Short exact sequences. Class (m_j) has middle term (A + Z^J) / <(-m_j, c_j e_j)>.
class Ext1Realisation final : public Realisation {
 public:
  explicit Ext1Realisation(std::shared_ptr<const Ext1Bifunctor> e) : e_(std::move(e)) {}
  std::string name() const override { return "ext1"; }
  const Bifunctor& bifunctor() const override { return *e_; }
  BifunctorPtr bifunctor_ptr() const override { return e_; }
  int n() const override { return 1; }
  HomotopyClass realise_class(const Extension& d) const override;

  // The class of a short exact sequence A -> B -> C; throws Validation if it is not exact.
  Extension classify(const NComplex& x) const;

 private:
  std::shared_ptr<const Ext1Bifunctor> e_;
};

// Realises E_I(C, A) by the realisation of the ambient bifunctor.
class RelativeRealisation final : public Realisation {
 public:
  RelativeRealisation(std::shared_ptr<const RelativeSubfunctor> e, RealisationPtr parent);
  std::string name() const override { return parent_->name() + " restricted"; }
  const Bifunctor& bifunctor() const override { return *e_; }
  BifunctorPtr bifunctor_ptr() const override { return e_; }
  int n() const override { return parent_->n(); }
  HomotopyClass realise_class(const Extension& d) const override;

 private:
  std::shared_ptr<const RelativeSubfunctor> e_;
  RealisationPtr parent_;
};

// Test fixture: every class is realised by the sequence of the zero class.
class CorruptedRealisation final : public Realisation {
 public:
  explicit CorruptedRealisation(RealisationPtr base) : base_(std::move(base)) {}
  std::string name() const override { return "corrupted " + base_->name(); }
  const Bifunctor& bifunctor() const override { return base_->bifunctor(); }
  BifunctorPtr bifunctor_ptr() const override { return base_->bifunctor_ptr(); }
  int n() const override { return base_->n(); }
  HomotopyClass realise_class(const Extension& d) const override;

 private:
  RealisationPtr base_;
};

// The registered realisation for split (any n), ext1 (n = 1) and their relative subfunctors.
// Throws Unsupported otherwise.
RealisationPtr make_realisation(const BifunctorPtr& e, int n);

// Short exact sequences over FinAb: pushout along x : A -> X, pullback along z : Z -> C.
NComplex ses_pushout(const FinAbBackend& c, const NComplex& x, const Morphism& a);
NComplex ses_pullback(const FinAbBackend& c, const NComplex& x, const Morphism& z);
// Pullback along the diagonal of the pushout along the codiagonal of x + y.
NComplex ses_baer_sum(const FinAbBackend& c, const NComplex& x, const NComplex& y);

// h is an s-inflation (resp. s-deflation) if its cokernel (kernel) complex realises some class.
std::optional<Extension> s_inflation_class(const Realisation& s, const Morphism& h);
std::optional<Extension> s_deflation_class(const Realisation& s, const Morphism& h);

// Search for a lift f of (id_A, c) whose cone realises (d_X^0)_E d (and the dual with the cocone).
struct LiftSearch {
  std::optional<ComplexMorphism> lift;  // first lift that works
  Int lifts = 0;                        // size of the lift space
  std::size_t classes = 0;              // lifts up to homotopy
  std::size_t tried = 0;
};
LiftSearch ea2_search(const Realisation& s, const Extension& d, const Morphism& c);
LiftSearch ea2op_search(const Realisation& s, const Extension& d, const Morphism& a);

Plan plan_axioms(const Realisation& s, const VerifyConfig& cfg);
Report verify_axioms(const Realisation& s, const VerifyConfig& cfg);

}  // namespace nexang
