#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nexang/exangle.hpp"
#include "nexang/extcat.hpp"

namespace nexang {

// ---------------------------------------------------------------- additive functors

class AdditiveFunctor {
 public:
  virtual ~AdditiveFunctor() = default;
  virtual std::string name() const = 0;
  virtual const AdditiveCategory& source() const = 0;
  virtual const AdditiveCategory& target() const = 0;
  virtual Object on_object(const Object& x) const = 0;
  virtual Morphism on_morphism(const Morphism& f) const = 0;

  // (F pi1; F pi2) : F(X + Y) -> FX + FY
  Morphism coherence(const Object& x, const Object& y) const;
};

using FunctorPtr = std::shared_ptr<const AdditiveFunctor>;

FunctorPtr identity_functor(CategoryPtr c);
FunctorPtr duplication_functor(CategoryPtr c);  // X + X, f + f
FunctorPtr zero_functor(CategoryPtr c, CategoryPtr d);
FunctorPtr scalar_functor(CategoryPtr c, Int k);  // X, k f; a fixture, not a functor unless k^2 = k
FunctorPtr compose_functors(FunctorPtr g, FunctorPtr f);  // g after f

// Automorphism of a table category built from groups (table_from_groups):
// X -> perm(X), f -> s_Y f s_X^{-1} with s_X : X -> perm(X) a group isomorphism.
class RelabelingFunctor final : public AdditiveFunctor {
 public:
  RelabelingFunctor(std::shared_ptr<const TableBackend> t, std::map<std::string, FinAbGroup> groups,
                    std::map<std::string, std::string> perm, std::map<std::string, Matrix> isos);

  std::string name() const override { return "relabel"; }
  const AdditiveCategory& source() const override { return *t_; }
  const AdditiveCategory& target() const override { return *t_; }
  Object on_object(const Object& x) const override;
  Morphism on_morphism(const Morphism& f) const override;

  Morphism iso(const Object& x) const;  // s_X in the table
  std::shared_ptr<const RelabelingFunctor> inverse() const;
  const std::shared_ptr<const TableBackend>& table() const { return t_; }

 private:
  GroupHom as_hom(const Morphism& f) const;
  Morphism from_hom(const std::string& x, const std::string& y, const GroupHom& h) const;
  std::shared_ptr<const TableBackend> t_;
  std::map<std::string, FinAbGroup> groups_;
  std::map<std::string, std::string> perm_;
  std::map<std::string, Matrix> isos_;
};

// Table 0, X1 = Z/2, X2 = Z/2, S = Z/2 + Z/2; X1 <-> X2 and the coordinate swap on S.
std::shared_ptr<const RelabelingFunctor> swap_relabeling();

// Identities, composition, addition and biproduct coherence on the capped universe.
Report verify_additive(const AdditiveFunctor& f, const VerifyConfig& cfg);

NComplex apply_to_complex(const AdditiveFunctor& f, const NComplex& x);

// ---------------------------------------------------------------- Gamma

// Components E(C, A) -> E'(FC, FA).
class GammaTransform {
 public:
  virtual ~GammaTransform() = default;
  virtual std::string name() const = 0;
  virtual const BifunctorPtr& source() const = 0;
  virtual const BifunctorPtr& target() const = 0;
  virtual const FunctorPtr& functor() const = 0;
  virtual GroupHom component(const Object& C, const Object& A) const = 0;

  Extension apply(const Extension& d) const;
};

using GammaPtr = std::shared_ptr<const GammaTransform>;

// f must be the identity on objects for identity_gamma and scalar_gamma,
// and X -> X + X for diagonal_gamma. Throws InvalidFunctor otherwise (checked lazily per object).
GammaPtr identity_gamma(BifunctorPtr e, FunctorPtr f);
GammaPtr scalar_gamma(BifunctorPtr e, FunctorPtr f, Int k);
GammaPtr diagonal_gamma(BifunctorPtr e, FunctorPtr f);  // d -> d + d
GammaPtr zero_gamma(BifunctorPtr e, BifunctorPtr e2, FunctorPtr f);
GammaPtr hom_gamma(std::shared_ptr<const HomBifunctor> e, std::shared_ptr<const HomBifunctor> e2, FunctorPtr f);
// Phi_{F x F} after Gamma; throws StructureMismatch unless E' and the middle category match.
GammaPtr compose_gamma(GammaPtr phi, GammaPtr gamma);

// E'(F-, F-) as a bifunctor on the source of F.
class PulledBackBifunctor final : public Bifunctor {
 public:
  PulledBackBifunctor(BifunctorPtr e, FunctorPtr f) : e_(std::move(e)), f_(std::move(f)) {}
  std::string name() const override { return e_->name() + "(" + f_->name() + "-, " + f_->name() + "-)"; }
  const AdditiveCategory& category() const override { return f_->source(); }
  FinAbGroup value(const Object& C, const Object& A) const override;
  GroupElement push_class(const Morphism& x, const Object& C, const GroupElement& cls) const override;
  GroupElement pull_class(const Morphism& z, const Object& A, const GroupElement& cls) const override;

 private:
  BifunctorPtr e_;
  FunctorPtr f_;
};

// Phi_{F x F} : E'(F-, F-) => E''(LF-, LF-)
GammaPtr whisker_bifunctor(GammaPtr phi, FunctorPtr f);

// Both naturality squares on the capped universe.
Report verify_natural(const GammaTransform& g, const VerifyConfig& cfg);

// ---------------------------------------------------------------- n-exangulated functors

struct ExFunctor {
  GammaPtr gamma;
  RealisationPtr source, target;  // s on E and s' on E'

  const AdditiveFunctor& functor() const { return *gamma->functor(); }
  std::string name() const { return "(" + gamma->functor()->name() + ", " + gamma->name() + ")"; }
};

using ExFunctorPtr = std::shared_ptr<const ExFunctor>;

// Throws StructureMismatch unless the realisations sit over the bifunctors of gamma.
ExFunctorPtr make_exfunctor(GammaPtr gamma, RealisationPtr s, RealisationPtr t);
// (id, id) on the realisation's structure.
ExFunctorPtr identity_exfunctor(CategoryPtr c, RealisationPtr s);
// (L o F, Phi_{F x F} o Gamma); throws StructureMismatch.
ExFunctorPtr compose_exfunctors(const ExFunctorPtr& l, const ExFunctorPtr& f);

struct Verdict {
  bool holds = true;
  std::string witness;
  std::size_t instances = 0;
  bool sampled = false;

  explicit operator bool() const { return holds; }
};

// s'(Gamma d) = [F X] whenever s(d) = [X], for every capped d.
Verdict is_exangulated(const ExFunctor& f, const VerifyConfig& cfg);

// Equal functors: same F on objects and hom generators, same Gamma components, same realisations;
// compared on the universe of the given cap.
bool same_exfunctor(const ExFunctor& a, const ExFunctor& b, int cap = 1);

// ---------------------------------------------------------------- functors of extension categories

class ExtCatFunctor {
 public:
  virtual ~ExtCatFunctor() = default;
  virtual std::string name() const = 0;
  virtual const BifunctorPtr& source() const = 0;
  virtual const BifunctorPtr& target() const = 0;
  virtual Extension on_object(const Extension& d) const = 0;
  virtual ExtMorphism on_morphism(const ExtMorphism& f) const = 0;
  // Set when the functor is known to respect morphisms over this F.
  virtual FunctorPtr over() const { return nullptr; }
};

using ExtFunctorPtr = std::shared_ptr<const ExtCatFunctor>;

// E_(F, Gamma) without verification.
ExtFunctorPtr induced_extfunctor(GammaPtr g);
// Verifies naturality of Gamma first; throws NaturalityViolation.
ExtFunctorPtr extfun_from(GammaPtr g, const VerifyConfig& cfg);
// A0C -> C0A, (a, c) -> (c, a). Requires a split bifunctor.
ExtFunctorPtr swap_extfunctor(BifunctorPtr split);
ExtFunctorPtr compose_extfunctors(ExtFunctorPtr g, ExtFunctorPtr f);

// Functoriality, additivity on hom groups, and images of conflations.
Report verify_extfun(const ExtCatFunctor& e, const VerifyConfig& cfg);

// E(a, c) = (Fa, Fc) as morphisms E d -> E r, sampled over the capped extension category.
Verdict respects_morphisms_over(const ExtCatFunctor& e, const AdditiveFunctor& f, const VerifyConfig& cfg);
// s'(E d) = [F X] whenever s(d) = [X].
Verdict respects_exangles_over(const ExtCatFunctor& e, const AdditiveFunctor& f, const Realisation& s,
                               const Realisation& t, const VerifyConfig& cfg);

// E(d1 + d2) = E d1 + E d2, E(x_E d) = (Fx)_E' E d and E(z^E d) = (Fz)^E' E d,
// exhaustively over the capped extension groups of order at most max_order.
Report verify_respecting_laws(const ExtCatFunctor& e, const AdditiveFunctor& f, const VerifyConfig& cfg,
                              Int max_order = 16);

// Components d -> E(d), recovered from generators and re-verified on the capped universe.
// Throws NotRespecting if E does not respect morphisms over f, NaturalityViolation if the
// recovered components are not homomorphisms or not natural.
GammaPtr gamma_from(FunctorPtr f, ExtFunctorPtr e, const VerifyConfig& cfg);

// Any F with E respecting morphisms over F has F(id_X) forced by E(id_{X0X});
// collects these and reports the first inconsistency. Objects must be pairwise distinct.
struct Refutation {
  bool refuted = false;
  std::vector<std::string> steps;
};
Refutation refute_respecting(const ExtCatFunctor& e, const std::vector<Object>& objects);

bool objects_isomorphic(const AdditiveCategory& c, const Object& x, const Object& y);

// Equality of E and E' on objects and on sampled morphisms of the capped extension category.
Verdict same_extfunctor(const ExtCatFunctor& a, const ExtCatFunctor& b, const VerifyConfig& cfg);
// Component matrices on the capped universe.
Verdict same_gamma(const GammaTransform& a, const GammaTransform& b, int cap);

// Morphisms of the capped extension category, at most per_pair per (source, target).
std::vector<ExtMorphism> sample_ext_morphisms(const Bifunctor& e, const VerifyConfig& cfg, std::mt19937_64& rng,
                                              bool* sampled = nullptr);

}  // namespace nexang
