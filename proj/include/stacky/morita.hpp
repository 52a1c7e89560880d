// Weak bibundles between stacky groupoid presentations: the tau coherences,
// biprincipality, flipping and composing Morita bibundles, rigidity when
// one side is an honest groupoid, and a finite prequantization analogue.
//
// tau(g1, x, g2) : g1(x g2) -> (g1 x) g2, dense over [g1][x][g2] with kNone
// off the domain. Diagram labels:
//   g1g1'xg2   tau(g1g1', x, g2) ∘ beta1(g1, g1', xg2)⁻¹
//              = (beta1(g1, g1', x)⁻¹·g2) ∘ tau(g1, g1'x, g2) ∘ (g1·tau(g1', x, g2))
//   g1xg2g2'   beta2(g1x, g2, g2') ∘ tau(g1, x, g2g2')
//              = (tau(g1, x, g2)·g2') ∘ tau(g1, xg2, g2') ∘ (g1·beta2(x, g2, g2'))
//   1xg2       (epsilon1(x)·g2) ∘ tau(1, x, g2) = epsilon1(xg2)
//   g1x1       epsilon2(g1x) ∘ tau(g1, x, 1) = g1·epsilon2(x)
#pragma once

#include <memory>
#include <vector>

#include "stacky/bundles.hpp"
#include "stacky/prequotient.hpp"

namespace stacky {

struct StackyBibundle {
    ActionPtr left;   // sg1 along mu1, on the fibres of mu2
    ActionPtr right;  // sg2 along mu2, on the fibres of mu1
    std::vector<Id> tau;

    const SgPtr& sg1() const { return left->sg; }
    const SgPtr& sg2() const { return right->sg; }
    const GroupoidPtr& X() const { return left->X; }
    const GroupoidFunctor& mu1() const { return left->mu; }
    const GroupoidFunctor& mu2() const { return right->mu; }
    std::size_t tau_index(Id g1, Id x, Id g2) const {
        return (static_cast<std::size_t>(g1) * X()->num_objects() + x) * sg2()->n() + g2;
    }
    Id t(Id g1, Id x, Id g2) const { return tau[tau_index(g1, x, g2)]; }
};

// tau(g1, x, g2) for every triple with (g1, x) and (x, g2) acting pairs.
StackyBibundle assemble_bibundle(ActionPtr left, ActionPtr right, const std::function<Id(Id, Id, Id)>& tau);

// Both actions (scoped "left:" / "right:"), the fibre conditions
// "left-fibre" {g1, x} and "right-fibre" {x, g2}, "tau-shape" {g1, x, g2},
// "tau-natural" {j1, a, j2}, then the four diagrams with the tuple as ids.
Verdict check_bibundle(const StackyBibundle& bb);

// Left: the sg1 action is principal over mu2. Right: sg2 over mu1.
// combined names the failing side through its scope.
struct BiprincipalReport {
    Verdict left, right, combined;
};
BiprincipalReport is_biprincipal(const StackyBibundle& bb);

// sg on itself from both sides with tau = alpha.
StackyBibundle self_bibundle(const SgPtr& sg);
// s⁻¹(x) as an sg - (isotropy at x) bibundle, actions and tau restricted
// from the self bibundle.
struct RestrictionBibundle {
    SgPtr isotropy;
    Subgroupoid fibre;  // s⁻¹(x) inside sg.G
    StackyBibundle bb;
};
RestrictionBibundle restriction_bibundle(const SgPtr& sg, Id x);
// A strict bibundle of groupoids as a bibundle of their strict presentations
// on a discrete carrier, all cells units. Given presentations are reused
// (they must be strict presentations of sb.G and sb.H).
StackyBibundle lift_strict_bibundle(const StrictBibundle& sb, SgPtr sg1 = nullptr, SgPtr sg2 = nullptr);

// Actions inverted, tau'(g2, x, g1) = tau(g1⁻¹, x, g2⁻¹)⁻¹.
StackyBibundle flip_bibundle(const StackyBibundle& bb);

// bb1 : G1 - G and bb2 : G - G2. The carrier is (X ×_M Y)⫽G for the
// diagonal action (x, y)g = (xg, g⁻¹y); outer actions descend by
//   j1·[g, (b1, b2)] = [g, ((j1·b1) ∘ tau1(g1, x, g)⁻¹, b2)]
//   [g, (b1, b2)]·j2 = [g, (b1, (b2·j2) ∘ tau2(g⁻¹, y, g2))]
// with cells q(beta1, 1), q(1, beta2), q(epsilon1, 1), q(1, epsilon2) and
// tau the identity. Throws StructuralError on a middle mismatch and
// CheckFailed("descent") when a descended arrow depends on the representative.
struct ComposedBibundle {
    Pullback XY;
    ActionPtr middle;
    PrequotientGroupoid pq;
    StackyBibundle bb;
};
ComposedBibundle compose_bibundles(const StackyBibundle& bb1, const StackyBibundle& bb2);

// The stages of the composition argument, each checked on its own:
// "inputs" both bibundles valid, "F1" bb1 right principal, "F3" bb2 right
// principal, "middle" the diagonal action principal, "carrier" the
// composite passes check_bibundle and is_biprincipal.
struct CompositionStages {
    Verdict inputs, f1, f3, middle, carrier;
};
CompositionStages composition_stages(const StackyBibundle& bb1, const StackyBibundle& bb2, const ComposedBibundle& c);

// Carrier of compose(lift P, lift Q) -> points of tensor_bibundles(P, Q).
GroupoidFunctor carrier_to_tensor(const ComposedBibundle& c, const StrictBibundle& P, const StrictBibundle& Q,
                                  const StrictBibundle& PQ);

// bb : K - sg with K = sg1->G an honest groupoid (sg1 strict). label : X -> K
// must be an equivalence with mu1 = t∘label, mu2 = s∘label and
// label(k·x) = k·label(x). Then F(g) = label(x·g) where x is labelled by
// the unit at t(g). Checks "preserve-s", "preserve-t", "preserve-u",
// "preserve-m" {g, h} and is_equivalence(F); failures throw CheckFailed.
// Throws CheckFailed("carrier-representable") first when X has automorphisms.
GroupoidFunctor strictify_if_groupoid(const StackyBibundle& bb, const GroupoidFunctor& label);

// bb biprincipal with a representable carrier and sg1 strict with a
// representable groupoid: then sg2.G is representable as well.
struct RepresentableReport {
    Verdict biprincipal, carrier, source, target;
};
RepresentableReport representable_pipeline(const StackyBibundle& bb);

// Finite analogue of the prequantization example, with [K/H] in place of
// the real line modulo periods. The gauge side is pair(n) × [K/H]; the
// bibundle is its s-fibre over 0 with the isotropy 2-group acting on the
// right. inclusion maps H into K.
struct PrequantizationAnalogue {
    SgPtr quotient2group;  // [K/H]
    SgPtr gauge;
    RestrictionBibundle restriction;
    Verdict bibundle;
    BiprincipalReport principal;
    int pi0 = 0;           // classes of objects of [K/H], |K/H|
    bool isotropyMatches = false;  // isotropy at 0 ≅ [K/H] on objects and arrows
};
PrequantizationAnalogue discrete_prequantization_example(const FiniteGroup& K, const FiniteGroup& H,
                                                         const std::vector<Id>& inclusion, int n);

}  // namespace stacky
