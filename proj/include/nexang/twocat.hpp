#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nexang/functors.hpp"

namespace nexang {

// Components FX -> GX between n-exangulated functors (F, Gamma) and (G, Lambda).
struct ExNatTrans {
  std::string name;
  ExFunctorPtr source, target;
  std::function<Morphism(const Object&)> at;

  Morphism operator()(const Object& x) const { return at(x); }
};

ExNatTrans identity_nt(const ExFunctorPtr& f);
ExNatTrans scalar_nt(const ExFunctorPtr& f, Int m);  // m id_FX
// Components given by a function; nothing is checked here.
ExNatTrans make_nt(std::string name, ExFunctorPtr f, ExFunctorPtr g, std::function<Morphism(const Object&)> at);

// b_Y F f = G f b_X on hom generators of the capped universe.
Verdict check_natural(const ExNatTrans& b, const VerifyConfig& cfg);
// (b_A)_E' Gamma(d) = (b_C)^E' Lambda(d) for every capped d.
Verdict check_exangulated_nt(const ExNatTrans& b, const VerifyConfig& cfg);

// Throw EndpointMismatch unless the cells compose.
ExNatTrans vcompose(const ExNatTrans& b2, const ExNatTrans& b1);   // b2 after b1
ExNatTrans hcompose(const ExNatTrans& d, const ExNatTrans& b);     // d_{GX} L(b_X)
ExNatTrans whisker_left(const ExFunctorPtr& l, const ExNatTrans& b);   // L b
ExNatTrans whisker_right(const ExNatTrans& d, const ExFunctorPtr& g);  // d_G

// Same endpoints and equal components on the universe of the given cap.
Verdict same_nt(const ExNatTrans& a, const ExNatTrans& b, int cap = 1);

// (d' o_h b') o_v (d o_h b) = (d' o_v d) o_h (b' o_v b)
Verdict check_interchange(const ExNatTrans& d2, const ExNatTrans& b2, const ExNatTrans& d1, const ExNatTrans& b1,
                          int cap = 1);

// ---------------------------------------------------------------- natural transformations of E-Ext functors

struct ExtNatTrans {
  std::string name;
  ExtFunctorPtr source, target;
  std::function<ExtMorphism(const Extension&)> at;

  ExtMorphism operator()(const Extension& d) const { return at(d); }
};

// Each component is a morphism source(d) -> target(d), and the squares commute on sampled morphisms.
Verdict check_natural_ext(const ExtNatTrans& a, const VerifyConfig& cfg);
ExtNatTrans identity_ext_nt(const ExtFunctorPtr& e);
ExtNatTrans vcompose_ext(const ExtNatTrans& a2, const ExtNatTrans& a1);
ExtNatTrans hcompose_ext(const ExtNatTrans& a2, const ExtNatTrans& a1);  // a2_{G d} L(a1_d)
// Componentwise on the capped extensions (ends compared as stored in the morphisms).
Verdict same_ext_nt(const ExtNatTrans& a, const ExtNatTrans& b, const VerifyConfig& cfg);

// <b>_d = (b_A, b_C) : Gamma(d) -> Lambda(d)
ExtNatTrans bracket(const ExNatTrans& b);

// l_A from a at the zero class of E(0, A), r_C from a at the zero class of E(C, 0).
std::pair<ExNatTrans, ExNatTrans> split_nt(const ExtNatTrans& a, const ExFunctorPtr& f, const ExFunctorPtr& g);
Verdict is_balanced(const ExtNatTrans& a, const ExFunctorPtr& f, const ExFunctorPtr& g, int cap = 1);
// The common value of a balanced a; throws NotExangulated if a is not balanced on the capped universe.
ExNatTrans unbracket(const ExtNatTrans& a, const ExFunctorPtr& f, const ExFunctorPtr& g, int cap = 1);

// The assignments on structures, 1-cells and 2-cells.
ExtCategory daleth0(const Realisation& s);
ExtFunctorPtr daleth1(const ExFunctor& f, const VerifyConfig& cfg);
ExtNatTrans daleth2(const ExNatTrans& b);

// The natural transformation a_d = (id_A, 0) on the identity functor of a split structure.
ExtNatTrans unbalanced_fixture(const ExFunctorPtr& id);

// ---------------------------------------------------------------- adjunctions

struct Adjunction {
  ExFunctorPtr left, right;  // (F, Gamma) : C -> D and (A, Xi) : D -> C
  ExNatTrans unit, counit;   // id => A F and F A => id
};

// Triangle identities, unit and counit as n-exangulated cells against the composites,
// the two identities on E'(FC, FA) and E(AD, AB), and the triangle identities of the images.
Report check_adjoint_pair(const Adjunction& adj, const VerifyConfig& cfg);

// Gamma invertible componentwise, F fully faithful, and every target object isomorphic to some F X.
// All three are checked on the universe of cfg.object_cap only.
Verdict is_equivalence(const ExFunctor& f, const VerifyConfig& cfg);
// check_adjoint_pair plus invertible unit and counit components.
Verdict is_adjoint_equivalence(const Adjunction& adj, const VerifyConfig& cfg);

// Relabeling adjunction on the split structure of the relabeling table (n = 2), unit and counit identities.
struct RelabelingFixture {
  std::shared_ptr<const RelabelingFunctor> relabel;
  RealisationPtr structure;
  ExFunctorPtr id, r, r_inverse;
  Adjunction adjunction;
  ExNatTrans iso;      // s : id => R
  ExNatTrans iso_inv;  // s^{-1} : R => id
};
RelabelingFixture relabeling_fixture();

}  // namespace nexang
