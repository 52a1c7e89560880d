// Weak groupoid objects in finite groupoids ("stacky groupoid presentations").
//
// Objects of G are written g, h, ...; products gh are objects m(g, h) of G,
// defined when s(g) == t(h). The 2-isomorphisms are stored by component on
// objects of G:
//   alpha(g, h, l) : g(hl) -> (gh)l
//   lambda(g)      : 1·g -> g          with 1 = u(t g)
//   rho(g)         : g·1 -> g          with 1 = u(s g)
//   iota_l(g)      : g⁻¹g -> u(s g)
//   iota_r(g)      : gg⁻¹ -> u(t g)
// Whiskering an arrow a by an object g means m(unit g, a), written g·a.
#pragma once

#include <vector>

#include "stacky/constructions.hpp"
#include "stacky/corpus.hpp"

namespace stacky {

struct StackyGroupoid {
    GroupoidPtr M, G;
    GroupoidFunctor s, t, u, i;
    Pullback GG;        // G ×_{s,M,t} G
    GroupoidFunctor m;  // GG.g -> G
    std::vector<Id> alpha;  // objects³, kNone off the composable triples
    std::vector<Id> lambda, rho, iota_l, iota_r;

    int n() const { return G->num_objects(); }
    Id src_base(Id g) const { return s.obj[g]; }
    Id tgt_base(Id g) const { return t.obj[g]; }
    Id one(Id x) const { return u.obj[x]; }
    Id inverse(Id g) const { return i.obj[g]; }
    // kNone unless the pair lies in GG.
    Id mul(Id g, Id h) const;
    Id mul_arr(Id a, Id b) const;
    Id lw(Id g, Id a) const { return mul_arr(G->unit(g), a); }
    Id rw(Id a, Id h) const { return mul_arr(a, G->unit(h)); }
    Id a(Id g, Id h, Id l) const { return alpha[(static_cast<std::size_t>(g) * n() + h) * n() + l]; }
    Id& a_ref(Id g, Id h, Id l) { return alpha[(static_cast<std::size_t>(g) * n() + h) * n() + l]; }
};

// Object and arrow formulas used to fill in a presentation. GG is computed
// from s and t; m and the 2-cells are evaluated on every composable input.
struct StructureMaps {
    std::function<Id(Id, Id)> mulObj, mulArr;
    std::function<Id(Id, Id, Id)> alpha;
    std::function<Id(Id)> lambda, rho, iota_l, iota_r;
};

StackyGroupoid assemble(GroupoidPtr M, GroupoidPtr G, GroupoidFunctor s, GroupoidFunctor t,
                        GroupoidFunctor u, GroupoidFunctor i, const StructureMaps& maps);

// Functor validity, discreteness of M and the six strict identities
// s u = id, t u = id, s i = t, t i = s, s m = s pr2, t m = t pr1.
Verdict check_g2(const StackyGroupoid& sg);
// Endpoints and naturality of the five 2-isomorphisms.
Verdict check_g3(const StackyGroupoid& sg, Exec exec = Exec::parallel);

enum class G4 { kghl, one_gh, g_one_h, gh_one, g_ginv_g };
const char* label(G4 d);
// One diagram, enumerated over every composable tuple of objects. Assumes the
// cell shapes are right (check_g3).
Verdict check_g4_diagram(const StackyGroupoid& sg, G4 d, Exec exec = Exec::parallel);
// check_g3, then the five diagrams in the order listed.
Verdict check_g4(const StackyGroupoid& sg, Exec exec = Exec::parallel);
// Re-evaluates the law named by a witness of check_g2/g3/g4.
bool replay_stacky(const StackyGroupoid& sg, const Witness& w);

// Strict presentation of an honest groupoid H: M = objects, G = arrows of H
// (discrete), m = composition, every 2-cell a unit.
StackyGroupoid strict_presentation(const GroupoidPtr& H);
StackyGroupoid group_presentation(const FiniteGroup& g);

struct CrossedModuleData {
    FiniteGroup A, K;
    std::vector<Id> phi;  // A -> K
};
Verdict validate_crossed_module(const CrossedModuleData& cm);
// Base a point, G the translation groupoid of A on K by k·a = k + phi(a)
// (arrow (k, a) : k + phi(a) -> k, identifier k·|A| + a), m the direct
// product, all 2-cells units.
StackyGroupoid from_crossed_module(const CrossedModuleData& cm);

struct Skeletal2GroupData {
    FiniteGroup pi1, pi2;
    std::vector<Id> act;    // pi1 × pi2: g·a
    std::vector<Id> omega;  // pi1³
    Id act_on(Id g, Id a) const { return act[static_cast<std::size_t>(g) * pi2.order + a]; }
    Id w(Id g, Id h, Id l) const {
        return omega[(static_cast<std::size_t>(g) * pi1.order + h) * pi1.order + l];
    }
};
Skeletal2GroupData trivial_action_skeletal(const FiniteGroup& pi1, const FiniteGroup& pi2, std::vector<Id> omega);
// Action by automorphisms and pi2 abelian. With requireNormalized also
// omega = 0 whenever an argument is the identity.
Verdict validate_skeletal(const Skeletal2GroupData& sk, bool requireNormalized = true);
// Objects pi1, arrow (g, a) : g -> g with identifier g·|pi2| + a,
// m((g, a), (h, b)) = (gh, a + g·b), alpha(g, h, l) = omega(g, h, l),
// lambda = rho = iota_l = 0 and iota_r(g) = -omega(g, g⁻¹, g).
StackyGroupoid from_skeletal(const Skeletal2GroupData& sk, bool requireNormalized = true);
// omega(a, b, c) = a·floor((b + c) / n) mod n on Z/n with trivial action.
Skeletal2GroupData cyclic_cocycle_2group(int n, int multiple = 1);

StackyGroupoid product_presentation(const StackyGroupoid& a, const StackyGroupoid& b);

// Structure restricted to arrows with s = t = x.
struct RestrictedPresentation {
    StackyGroupoid sg;
    Subgroupoid sub;  // inside the parent's G
};
RestrictedPresentation isotropy_2group(const StackyGroupoid& sg, Id x);
IsoComma s_fibre(const StackyGroupoid& sg, Id x);

// theta(g, h) : (gh)⁻¹ -> h⁻¹g⁻¹, dense over pairs of objects.
struct ThetaTable {
    int n = 0;
    std::vector<Id> cell;
    Id at(Id g, Id h) const { return cell[static_cast<std::size_t>(g) * n + h]; }
    Id& at(Id g, Id h) { return cell[static_cast<std::size_t>(g) * n + h]; }
};
// The unique arrow making the defining diagram commute, by search over the
// hom-set. CheckFailed when none or several qualify.
Id derive_theta(const StackyGroupoid& sg, Id g, Id h);
ThetaTable derive_theta_all(const StackyGroupoid& sg);
// True when theta satisfies the defining diagram at (g, h).
bool theta_diagram_holds(const StackyGroupoid& sg, Id g, Id h, Id theta);
// chi(x) = iota_l(1_x) ∘ rho(1_x)⁻¹ : (1_x)⁻¹ -> 1_x, per base point.
std::vector<Id> derive_chi(const StackyGroupoid& sg);
// Defining diagram, naturality, the theta/alpha hexagon, the two theta/chi
// squares and lambda = rho on 1·1.
Verdict check_theta_coherence(const StackyGroupoid& sg, const ThetaTable& theta, Exec exec = Exec::parallel);
Verdict check_theta_coherence(const StackyGroupoid& sg, Exec exec = Exec::parallel);

}  // namespace stacky
