// The prequotient X⫽G of a right weak action, its projection q, the
// universal property, maps induced by equivariant morphisms, the
// action-projection comparison Q, principality and quotients in stages.
//
// Arrows x -> y of X⫽G are classes [g, b] of pairs with t(g) = mu(x) and
// b : xg -> y, where (g, b) ~ (g', b') when b'∘(x·j) = b for some j : g -> g'.
//   [h, c]∘[g, b] = [gh, c ∘ (b·h) ∘ beta(x, g, h)],   id_x = [1, epsilon(x)],
//   q(b) = [1, b ∘ epsilon(x)].
// Over a point all pullbacks of G-objects along base maps are the objects
// themselves, so no pullback choice appears anywhere below.
#pragma once

#include <array>
#include <unordered_map>
#include <vector>

#include "stacky/action.hpp"

namespace stacky {

using ActionPtr = std::shared_ptr<const WeakAction>;
inline ActionPtr share(WeakAction wa) { return std::make_shared<const WeakAction>(std::move(wa)); }

struct PrequotientGroupoid {
    ActionPtr action;
    GroupoidPtr carrier;
    // Pair p = (x, g, b); classOf[p] is the carrier arrow it represents.
    std::vector<std::array<Id, 3>> pairs;
    std::vector<Id> classOf;
    // Per carrier arrow: least member (by (g, b), members share x) and all members.
    std::vector<Id> rep;
    std::vector<std::vector<Id>> members;
    GroupoidFunctor q;  // X -> carrier

    // kNone unless (x, g, b) is a pair.
    Id pair_index(Id x, Id g, Id b) const;
    Id cls(Id x, Id g, Id b) const;
    // Class of (g, id_{xg}): the canonical arrow x -> xg.
    Id gamma0(Id x, Id g) const;

    std::unordered_map<long long, Id> lookup;
};

// Right actions only (invert a left action first). Throws CheckFailed when
// the class composition depends on representatives or the result is not a
// groupoid; that only happens for actions failing (a4).
PrequotientGroupoid prequotient(const ActionPtr& wa);

// Composition is independent of representatives (every member pair of every
// composable pair of classes), then the groupoid axioms of the carrier.
Verdict check_prestack_wellformed(const ActionPtr& wa);

// The action on the fibres of q with gamma(x, g) = [g, id_{xg}].
FiberedAction canonical_gamma0(const PrequotientGroupoid& pq);

// Phi(x) = P(x), Phi[g, b] = P(b)∘gamma(x, g). Throws CheckFailed when the
// fibred action fails its checks or Phi depends on representatives.
GroupoidFunctor universal_map(const PrequotientGroupoid& pq, const FiberedAction& fa);
// Phi∘q = P on the nose and Phi[g, id] = gamma(x, g) (the phi = id square).
Verdict check_universal_map(const PrequotientGroupoid& pq, const FiberedAction& fa, const GroupoidFunctor& Phi);
// Given phi : Phi q -> P, phibar : Phibar q -> Pbar and rho : P -> Pbar (all
// by component on objects of X), the psi : Phi -> Phibar with
// phibar∘psi = rho∘phi, found by search. Throws CheckFailed("psi-exists" or
// "psi-unique") and ("psi-natural") when psi is not a natural isomorphism.
std::vector<Id> comparison_psi(const GroupoidFunctor& Phi, const std::vector<Id>& phi, const GroupoidFunctor& Phibar,
                               const std::vector<Id>& phibar, const std::vector<Id>& rho);

// Phi : X1⫽G -> X2⫽G from an equivariant F, through the universal property
// applied to q2 F with gamma(x, g) = q2(delta(x, g))∘gamma0(F x, g).
struct InducedMap {
    FiberedAction fibred;  // over q2 F
    GroupoidFunctor Phi;
};
InducedMap induced_on_quotients(const EquivariantMorphism& em, const PrequotientGroupoid& pq1,
                                const PrequotientGroupoid& pq2);

// Q : X ×_M G -> iso_comma(q, q), (x, g) -> (x, [g, id], xg).
struct ActionProjectionComparison {
    IsoComma XqX;
    GroupoidFunctor Q;
};
ActionProjectionComparison action_proj_comparison(const PrequotientGroupoid& pq);
// Fullness of Q through the explicit lift: for each comma arrow (c1, c2)
// between images, find any j' : g·1 -> 1·g' with the class equality
// triangle, set j = lambda(g')∘j'∘rho(g)⁻¹ and require c2 == c1·j.
// Witness "lift" (domain object, domain object, comma arrow).
Verdict check_q_full_by_lift(const PrequotientGroupoid& pq, const ActionProjectionComparison& c);

// (1) q essentially surjective, (2) the action is on the fibres of q via
// gamma0, (3) Q an equivalence. weakRep is is_weakly_representable(Delta).
// The two must agree; disagreement throws std::logic_error.
struct PrincipalReport {
    Verdict principal, weakRep;
};
PrincipalReport check_principal(const ActionPtr& wa);

// Strict set action: the translation groupoid maps into the prequotient by
// (x, g) : xg -> x  ↦  [g, id]⁻¹.
GroupoidFunctor translation_comparison(const PrequotientGroupoid& pq, const TranslationGroupoid& tg,
                                       const SetAction& sa);

// Quotient in stages for an action of product_presentation(sg1, sg2).
struct StagedQuotient {
    ActionPtr first;          // restriction to sg1: x·g1 = x·(g1, 1)
    PrequotientGroupoid Y;    // X⫽G1
    ActionPtr induced;        // sg2 on X⫽G1
    PrequotientGroupoid Z;    // (X⫽G1)⫽G2
    PrequotientGroupoid W;    // X⫽(G1×G2)
    GroupoidFunctor Phi;      // Z -> W, [g2, [g1, b]] -> [(g1, g2), b∘xi]
};
ActionPtr restrict_to_factor(const ActionPtr& wa, const SgPtr& sg1, const SgPtr& sg2, int factor);
StagedQuotient quotient_in_stages(const ActionPtr& wa, const SgPtr& sg1, const SgPtr& sg2);
Verdict check_quotient_in_stages(const StagedQuotient& s);

// G acting on X ×_M G by (x, g)h = (xh, h⁻¹g), on the fibres of the action
// map; the induced map from the prequotient to X should be an equivalence.
struct ActionMapQuotient {
    ActionPtr diagonal;
    FiberedAction fibred;
    PrequotientGroupoid pq;
    GroupoidFunctor Phi;
};
ActionMapQuotient action_map_quotient(const ActionPtr& wa);

}  // namespace stacky
