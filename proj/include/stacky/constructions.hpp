// Fibred products, comma groupoids, equivalence tests and the other
// groupoid-level constructions the rest of the library is built from.
#pragma once

#include <array>
#include <unordered_map>
#include <vector>

#include "stacky/groupoid.hpp"

namespace stacky {

GroupoidPtr point_groupoid();
// Functor into a discrete groupoid given by its object map. Arrows go to units,
// so the map must be constant along arrows (checked: StructuralError otherwise).
GroupoidFunctor to_discrete(const GroupoidPtr& dom, const GroupoidPtr& cod, std::vector<Id> obj);
// Discrete groupoid on the objects of g, included in g.
GroupoidFunctor object_inclusion(const GroupoidPtr& g);
GroupoidFunctor collapse(const GroupoidPtr& g);

// Strict fibred product A ×_C B of F: A -> C and G: B -> C: pairs of objects
// and pairs of arrows with equal images. With C a discrete base M this is
// X ×_M G.
struct Pullback {
    GroupoidPtr g, left, right;
    std::vector<std::array<Id, 2>> objs, arrs;
    std::vector<Id> objIndex, arrIndex;  // dense over left × right, kNone outside

    Id obj(Id a, Id b) const { return objIndex[static_cast<std::size_t>(a) * right->num_objects() + b]; }
    Id arr(Id f, Id h) const { return arrIndex[static_cast<std::size_t>(f) * right->num_arrows() + h]; }
    GroupoidFunctor pr1() const;
    GroupoidFunctor pr2() const;
};

Pullback strict_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g);
Pullback product_groupoid(const GroupoidPtr& a, const GroupoidPtr& b);
// F × G between products or pullbacks: (x, y) -> (F x, G y). Both sides must
// contain the image pairs (StructuralError otherwise).
GroupoidFunctor pair_functor(const Pullback& from, const Pullback& to, const GroupoidFunctor& f,
                             const GroupoidFunctor& g);

// Objects (x, a, z) with a: F(x) -> G(z); arrows (b1, b2): (x, a, z) -> (x', a', z')
// with G(b2)∘a = a'∘F(b1).
struct IsoComma {
    GroupoidPtr g;
    GroupoidFunctor F, G;
    std::vector<std::array<Id, 3>> objs;
    std::vector<std::array<Id, 2>> arrs;

    Id obj(Id x, Id a, Id z) const;
    // The arrow with components (b1, b2) leaving comma object o.
    Id arr(Id o, Id b1, Id b2) const;
    GroupoidFunctor pr1() const;
    GroupoidFunctor pr2() const;

    std::unordered_map<long long, Id> objLookup;
    std::vector<Id> arrStart;
};

IsoComma iso_comma(const GroupoidFunctor& f, const GroupoidFunctor& g);

Verdict is_faithful(const GroupoidFunctor& f, Exec exec = Exec::parallel);
Verdict is_full(const GroupoidFunctor& f, Exec exec = Exec::parallel);
Verdict is_fully_faithful(const GroupoidFunctor& f, Exec exec = Exec::parallel);
Verdict is_essentially_surjective(const GroupoidFunctor& f);
Verdict is_equivalence(const GroupoidFunctor& f, Exec exec = Exec::parallel);
Verdict is_representable(const FiniteGroupoid& g);
// iso_comma(F, object inclusion of the codomain) has trivial automorphisms.
// Witness ids: comma object, comma arrow, x, b1 (the arrow of dom(F) involved).
Verdict is_weakly_representable(const GroupoidFunctor& f);

// Quasi-inverse of an equivalence (CheckFailed if f is not one). Each object
// y goes to the least x with F(x) ≅ y.
GroupoidFunctor quasi_inverse(const GroupoidFunctor& f);

// Full subgroupoid on a set of objects, with maps back into the parent.
struct Subgroupoid {
    GroupoidPtr g, parent;
    std::vector<Id> objMap, arrMap;      // new -> parent
    std::vector<Id> objBack, arrBack;    // parent -> new or kNone
    GroupoidFunctor inclusion() const;
};

Subgroupoid full_subgroupoid(const GroupoidPtr& g, const std::vector<bool>& keepObject);
// Preimage of a subset of the base under a map objects -> base.
Subgroupoid restrict_groupoid(const GroupoidPtr& g, const std::vector<Id>& baseMap, const std::vector<bool>& keepBase);
// Arrows over the single base point x. StructuralError when x is not a base point.
Subgroupoid isotropy(const GroupoidPtr& g, const std::vector<Id>& baseMap, Id x);

enum class Side { right, left };

// Strict action of a finite groupoid on a finite set along a moment map.
// Right: x·g defined when moment(x) == tgt(g), with moment(x·g) == src(g).
// Left: g·x defined when moment(x) == src(g), with moment(g·x) == tgt(g).
struct SetAction {
    GroupoidPtr G;
    int points = 0;
    std::vector<Id> moment;
    Side side = Side::right;
    std::vector<Id> table;  // points × arrows of G, kNone where undefined

    bool defined(Id x, Id g) const {
        return moment[x] == (side == Side::right ? G->tgt(g) : G->src(g));
    }
    Id act(Id x, Id g) const { return table[static_cast<std::size_t>(x) * G->num_arrows() + g]; }
};

SetAction make_set_action(const GroupoidPtr& G, int points, std::vector<Id> moment, Side side,
                          const std::function<Id(Id, Id)>& act);
Verdict validate_set_action(const SetAction& a);
bool replay_set_action(const SetAction& a, const Witness& w);

// Right actions: arrows (x, g) with moment(x) == tgt(g), target x,
// source x·g, and (x, g)∘(x·g, h) = (x, gh). Left actions use (g, x): x -> g·x.
struct TranslationGroupoid {
    GroupoidPtr g;
    std::vector<std::array<Id, 2>> arrs;  // (point, arrow of G)
    std::vector<Id> arrIndex;              // dense points × arrows of G
    Id arr(Id x, Id h, int arrowsOfG) const { return arrIndex[static_cast<std::size_t>(x) * arrowsOfG + h]; }
};

TranslationGroupoid translation_groupoid(const SetAction& a);

// Lie-groupoid-style fibred product: objects (x0, h, g0) with h: a(x0) -> b(g0),
// arrows (x, h, g) from (s x, h, s g) to (t x, b(g)∘h∘a(x)⁻¹, t g).
struct WeakFibredProduct {
    GroupoidPtr g;
    std::vector<std::array<Id, 3>> objs, arrs;
};

WeakFibredProduct weak_fibred_product(const GroupoidFunctor& a, const GroupoidFunctor& b);
// The canonical functor weak_fibred_product -> iso_comma is an equivalence.
Verdict check_weak_product_comparison(const GroupoidFunctor& a, const GroupoidFunctor& b);

}  // namespace stacky
