// Weak actions of stacky groupoid presentations on finite groupoids.
//
// Right action: pairs (x, g) with mu(x) == t(g), act(x, g) = xg,
//   beta(x, g, h) : x(gh) -> (xg)h,   epsilon(x) : x·1 -> x.
// Left action: pairs (g, x) with s(g) == mu(x), act(g, x) = gx,
//   beta(h, g, x) : (hg)x -> h(gx),   epsilon(x) : 1·x -> x.
// Both store beta densely as [x][first][second] with first, second the two
// group objects in the order they are written above.
#pragma once

#include <memory>
#include <vector>

#include "stacky/weakgroupoid.hpp"

namespace stacky {

using SgPtr = std::shared_ptr<const StackyGroupoid>;
inline SgPtr share(StackyGroupoid sg) { return std::make_shared<const StackyGroupoid>(std::move(sg)); }

struct WeakAction {
    SgPtr sg;
    Side side = Side::right;
    GroupoidPtr X;
    GroupoidFunctor mu;  // X -> M
    Pullback dom;        // X ×_{mu,M,t} G, or G ×_{s,M,mu} X
    GroupoidFunctor act; // dom.g -> X
    std::vector<Id> beta, epsilon;

    int nx() const { return X->num_objects(); }
    // Object and arrow actions with arguments in the written order, kNone off
    // the domain: right act_o(x, g), left act_o(g, x).
    Id act_o(Id p, Id q) const;
    Id act_a(Id a, Id b) const;
    // Point x acted on by an arrow of G, holding x fixed: x·j or j·x.
    Id act_fixed(Id x, Id j) const;
    Id pair_index(Id x, Id g) const { return side == Side::right ? dom.obj(x, g) : dom.obj(g, x); }
    Id b(Id x, Id first, Id second) const {
        return beta[(static_cast<std::size_t>(x) * sg->n() + first) * sg->n() + second];
    }
    Id& b_ref(Id x, Id first, Id second) {
        return beta[(static_cast<std::size_t>(x) * sg->n() + first) * sg->n() + second];
    }
};

// Right: beta(x, g, h), left: beta(h, g, x); see the header comment.
struct ActionMaps {
    std::function<Id(Id, Id)> actObj, actArr;  // written order
    std::function<Id(Id, Id, Id)> beta;         // written order
    std::function<Id(Id)> epsilon;
};

WeakAction assemble_action(SgPtr sg, Side side, GroupoidPtr X, GroupoidFunctor mu, const ActionMaps& maps);

// Functor validity, the strict moment identity, cell shapes and naturality,
// then the three diagrams: right (xghl), (x1g), (xg1); left (lhgx), (g1x), (1gx).
Verdict check_a2_a4(const WeakAction& wa, Exec exec = Exec::parallel);
bool replay_action(const WeakAction& wa, const Witness& w);

// Right: X = G, mu = s, act = m, beta = alpha, epsilon = rho.
// Left: mu = t, beta = alpha⁻¹, epsilon = lambda.
WeakAction self_action(const SgPtr& sg, Side side);
// Both actions on the same side act componentwise on X1 ×_M X2. A right and
// a left action give (x, y)g = (xg, g⁻¹y), inverting the left one first.
WeakAction diagonal_action(const WeakAction& a, const WeakAction& b);
// Left to right: x·g := g⁻¹x with beta* = beta(h⁻¹, g⁻¹, x) ∘ (theta(g,h)·x)
// and epsilon* = epsilon(x) ∘ (chi·x). Right to left is the mirror image.
WeakAction invert_action(const WeakAction& wa);
// Strict set action of an honest group as a weak action of its presentation
// on a discrete groupoid.
WeakAction from_set_action(const SgPtr& sg, const SetAction& a);

// Delta: (x, g) -> (x, xg) for right actions, (g, x) -> (gx, x) for left,
// into product_groupoid(X, X).
struct ActionProjection {
    Pullback XX;
    GroupoidFunctor delta;
};
ActionProjection action_projection(const WeakAction& wa);

// For every x, j ↦ x·j is injective on parallel arrows of the fibre over
// mu(x). Witness (x, j, j').
Verdict is_1free(const WeakAction& wa);

// Right actions only. delta[(x, g)] : act2(F x, g) -> F(act1(x, g)), indexed
// by the pair objects of a1.
struct EquivariantMorphism {
    std::shared_ptr<const WeakAction> a1, a2;
    GroupoidFunctor F;
    std::vector<Id> delta;
};
Verdict check_equivariant(const EquivariantMorphism& em);
// F2 F1 with delta(x, g) = F2(delta1(x, g)) ∘ delta2(F1 x, g).
EquivariantMorphism compose_equivariant(const EquivariantMorphism& em1, const EquivariantMorphism& em2);
EquivariantMorphism identity_equivariant(const std::shared_ptr<const WeakAction>& a);

// G acting on X ×_M G by (x, g)h = (x, gh), with beta = (1, alpha) and
// epsilon = (1, rho). The action map is equivariant from it with
// delta = beta⁻¹.
WeakAction pair_action(const WeakAction& wa);
EquivariantMorphism action_map_equivariant(const std::shared_ptr<const WeakAction>& wa,
                                           const std::shared_ptr<const WeakAction>& pairs);

// gamma indexed by the pair objects of the action:
// right gamma(x, g) : P(x) -> P(xg), left gamma(g, x) : P(x) -> P(gx).
struct FiberedAction {
    std::shared_ptr<const WeakAction> action;
    GroupoidFunctor P;
    std::vector<Id> gamma;
};
Verdict check_action_on_fibers(const FiberedAction& fa);
// Right to left or back with the same P: gamma'(x, g) = gamma(g⁻¹, x).
FiberedAction invert_fibered(const FiberedAction& fa, const std::shared_ptr<const WeakAction>& inverted);

// Principal bundle conditions for P: X -> S: P essentially surjective, the
// action is on the fibres of P, and the comparison to iso_comma(P, P),
// (x, g) -> (x, gamma, xg) or (g, x) -> (gx, gamma⁻¹, x), is an equivalence.
struct BundleComparison {
    IsoComma XSX;
    GroupoidFunctor C;
};
BundleComparison bundle_comparison(const FiberedAction& fa);
Verdict check_principal_bundle(const FiberedAction& fa);

}  // namespace stacky
