#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nexang/bifunctor.hpp"
#include "nexang/report.hpp"

namespace nexang {

// (a, c) : d -> r with a_E d = c^E r. Both end extensions are stored, so equality compares them too.
struct ExtMorphism {
  Extension source, target;
  Morphism a, c;

  std::string to_string() const;
  bool operator==(const ExtMorphism&) const = default;
};

struct Violation {
  std::string reason;
  GroupElement lhs, rhs;  // a_E d and c^E r
};

std::variant<ExtMorphism, Violation> check_morphism(const Bifunctor& e, const Extension& d, const Extension& r,
                                                    const Morphism& a, const Morphism& c);
// Throws NotAMorphism carrying both sides of the failed equation.
ExtMorphism make_morphism(const Bifunctor& e, const Extension& d, const Extension& r, const Morphism& a,
                          const Morphism& c);

struct ExtBiproduct {
  Extension sum;
  ExtMorphism iota1, iota2, pi1, pi2;
};

// (x, y) split exact: r x = id, y s = id, x r + s y = id.
struct SplitWitness {
  Morphism retraction, section;
};

struct ExtConflation {
  ExtMorphism inflation, deflation;
  SplitWitness first, second;  // for (a, b) and for (c, d)
};

struct ConflationCheck {
  bool holds = false;       // sections with cokernels
  bool dual_holds = false;  // retractions with kernels
  std::string reason;
  std::optional<ExtConflation> witness;
};

// The group of morphisms d -> r.
class ExtHomSpace {
 public:
  ExtHomSpace(const Bifunctor& e, Extension d, Extension r);
  const FinAbGroup& group() const noexcept { return group_; }
  ExtMorphism morphism(const GroupElement& k) const;
  std::vector<ExtMorphism> generators() const;

 private:
  const Bifunctor* e_;
  Extension d_, r_;
  FinAbGroup group_;
  Matrix inclusion_;
  FinAbGroup hom_a_, hom_c_;
};

// Canonical split form: iso (h, g) : rho' -> rho with h a = iota_A, pi h = b, g c = iota_C, pi g = d.
struct CanonicalSplit {
  ExtMorphism iso;
  ExtMorphism inflation, deflation;  // (iota_A, iota_C) and (pi_A', pi_C')
};

// Pushout of an inflation f : d -> r along h : d -> beta (or the dual pullback).
struct ExtSquare {
  ExtConflation conflation;  // d -> beta + r -> gamma, resp. the dual
  ExtMorphism leg1, leg2;    // beta -> gamma and r -> gamma, resp. gamma -> beta and gamma -> r
};

class ExtCategory {
 public:
  explicit ExtCategory(BifunctorPtr e) : e_(std::move(e)) {}

  const Bifunctor& bifunctor() const { return *e_; }
  const BifunctorPtr& bifunctor_ptr() const { return e_; }
  const AdditiveCategory& category() const { return e_->category(); }

  Extension zero_object() const;
  ExtMorphism identity(const Extension& d) const;
  ExtMorphism compose(const ExtMorphism& g, const ExtMorphism& f) const;  // throws ObjectMismatch
  ExtMorphism add(const ExtMorphism& f, const ExtMorphism& g) const;
  ExtMorphism negate(const ExtMorphism& f) const;
  ExtMorphism zero(const Extension& d, const Extension& r) const;
  std::optional<ExtMorphism> inverse(const ExtMorphism& f) const;
  ExtBiproduct biproduct(const Extension& d, const Extension& r) const;
  ExtHomSpace hom(const Extension& d, const Extension& r) const { return ExtHomSpace(*e_, d, r); }
  // (f; g) : d -> r1 + r2 and (f g) : d1 + d2 -> r
  ExtMorphism column(const ExtMorphism& f, const ExtMorphism& g) const;
  ExtMorphism row(const ExtMorphism& f, const ExtMorphism& g) const;

  bool is_inflation(const ExtMorphism& f) const;
  bool is_deflation(const ExtMorphism& g) const;
  ConflationCheck is_conflation(const ExtMorphism& f, const ExtMorphism& g) const;
  std::optional<ExtConflation> complete_inflation(const ExtMorphism& f) const;
  std::optional<ExtConflation> complete_deflation(const ExtMorphism& g) const;
  CanonicalSplit canonical_form(const ExtConflation& s) const;

  std::optional<ExtSquare> pushout(const ExtMorphism& inflation, const ExtMorphism& h) const;
  std::optional<ExtSquare> pullback(const ExtMorphism& deflation, const ExtMorphism& h) const;

  // Universal properties tested against a single extension t.
  bool kernel_property(const ExtConflation& s, const Extension& t) const;
  bool cokernel_property(const ExtConflation& s, const Extension& t) const;
  bool pushout_property(const ExtMorphism& inflation, const ExtMorphism& h, const ExtSquare& sq,
                        const Extension& t) const;
  bool pullback_property(const ExtMorphism& deflation, const ExtMorphism& h, const ExtSquare& sq,
                         const Extension& t) const;

 private:
  BifunctorPtr e_;
};

// Extensions d in E(C, A) for A, C in the capped universe, each group enumerated or sampled.
struct ExtUniverse {
  std::vector<Object> objects;
  std::vector<Extension> extensions;
  bool sampled = false;
};
ExtUniverse ext_universe(const Bifunctor& e, const VerifyConfig& cfg, std::mt19937_64& rng);

Plan plan_exact_category(const ExtCategory& x, const VerifyConfig& cfg);
Report verify_exact_category(const ExtCategory& x, const VerifyConfig& cfg);

}  // namespace nexang
