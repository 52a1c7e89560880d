// Set-level bundle theory: principal bundles, bibundles between finite
// groupoids, their tensor product, weak equivalences and gauge groupoids.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "stacky/constructions.hpp"

namespace stacky {

// sa acts on the fibres of r : points -> {0..baseSize-1}; principal when r is
// onto and (x, g) -> (x, xg) is a bijection onto X ×_S X ((g, x) -> (gx, x)
// for left actions). Throws CheckFailed("fibre", {x, g}) when r(xg) != r(x).
// Witnesses: "surjective" {s}, "injective" {x, g, g'}, "pair" {x, y}.
Verdict is_principal_set_bundle(const SetAction& sa, const std::vector<Id>& r, int baseSize);

// Left G-action along a, right H-action along b on the same points.
struct StrictBibundle {
    GroupoidPtr G, H;
    int points = 0;
    std::vector<Id> a, b;
    SetAction left, right;
    // For constructed bibundles, the pair each point stands for (the
    // representative pair for tensor products).
    std::vector<std::array<Id, 2>> parts;
};

StrictBibundle make_bibundle(const GroupoidPtr& G, const GroupoidPtr& H, int points, std::vector<Id> a,
                             std::vector<Id> b, const std::function<Id(Id, Id)>& leftAct,
                             const std::function<Id(Id, Id)>& rightAct);

// Both actions valid, b(gp) = b(p), a(ph) = a(p), (gp)h = g(ph).
// Witnesses scoped "left:" / "right:", then "left-fibre" {g, p},
// "right-fibre" {p, h}, "commute" {g, p, h}.
Verdict validate_bibundle(const StrictBibundle& bb);
// Right principal: principal H-bundle over G0 via a. Left: G-bundle over H0 via b.
Verdict is_right_principal(const StrictBibundle& bb);
Verdict is_left_principal(const StrictBibundle& bb);
Verdict is_biprincipal(const StrictBibundle& bb);

// G0 ×_{phi, H0, t} H with g(g0, h) = (t g, phi(g) h) and (g0, h)h' = (g0, hh').
// parts[p] = (g0, h).
StrictBibundle bibundle_from_morphism(const GroupoidFunctor& phi);
inline StrictBibundle unit_bibundle(const GroupoidPtr& G) { return bibundle_from_morphism(identity_functor(G)); }

// The H-G bibundle on the same points: h·p = p·h⁻¹, p·g = g⁻¹·p.
StrictBibundle transpose_bibundle(const StrictBibundle& bb);

// (P ×_{H0} Q)/H with (z, w)h = (zh, h⁻¹w); orbits numbered by least
// representative, parts[p] = that representative. Requires P right principal.
StrictBibundle tensor_bibundles(const StrictBibundle& P, const StrictBibundle& Q);

// An equivariant bijection P -> Q commuting with a and b, by exhaustive
// search over orbit representatives. nullopt when none exists.
std::optional<std::vector<Id>> find_bibundle_isomorphism(const StrictBibundle& P, const StrictBibundle& Q);

// (1) every object of H receives an arrow from some phi(g0); (2) each
// hom(x, y) -> hom(phi x, phi y) is a bijection. Witnesses "surjective" {h0}
// and "cartesian" {x, y}.
Verdict is_weak_equivalence(const GroupoidFunctor& phi);

// (X ×_{G0} X)/G for a principal left G-bundle r : X -> S: arrows
// [z, w] : r(w) -> r(z) and [z, w][w', v] = [z, gv] where gw' = w.
struct GaugeGroupoid {
    GroupoidPtr g;
    std::vector<std::array<Id, 2>> reps;  // least pair per arrow
};
GaugeGroupoid gauge_groupoid(const SetAction& left, const std::vector<Id>& r, int baseSize);

// The bibundle of pr1 : X ×_M G -> X given directly as G0 ×_M X, with
// (x', g)(g0, x) = (t g, x'x) and (g0, x)x' = (g0, xx'). parts[p] = (g0, x).
StrictBibundle projection_bibundle(const Pullback& XG);

// E1 ×_{X0} E2 for E1 : X-Y and E2 : X-Z, as an X-(Y ×_M Z) bibundle with the
// diagonal left action. YZ must be a pullback of Y and Z.
StrictBibundle fibred_bibundle(const StrictBibundle& E1, const StrictBibundle& E2, const Pullback& YZ);

// The translation groupoid of the left action on bibundle_from_morphism(phi)
// against iso_comma(phi, object inclusion of H): the functor
// (g0, h) -> (g0, h⁻¹, s h) must be an equivalence.
Verdict check_bibundle_pullback(const GroupoidFunctor& phi);

}  // namespace stacky
