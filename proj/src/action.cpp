#include "stacky/action.hpp"

#include <map>
#include <string>

#include "detail.hpp"

namespace stacky {

using detail::bucket;
using detail::Buckets;
using detail::endpoints;
using detail::eq;
using detail::first_witness;
using Ids = std::vector<Id>;

Id WeakAction::act_o(Id p, Id q) const {
    if (p < 0 || q < 0) return kNone;
    Id k = dom.obj(p, q);
    return k == kNone ? kNone : act.obj[k];
}

Id WeakAction::act_a(Id a, Id b) const {
    if (a < 0 || b < 0) return kNone;
    Id k = dom.arr(a, b);
    return k == kNone ? kNone : act.arr[k];
}

Id WeakAction::act_fixed(Id x, Id j) const {
    return side == Side::right ? act_a(X->unit(x), j) : act_a(j, X->unit(x));
}

namespace {

bool right(const WeakAction& wa) { return wa.side == Side::right; }

// beta in written order, kNone when any argument is missing.
Id B(const WeakAction& wa, Id p, Id q, Id r) {
    if (p < 0 || q < 0 || r < 0) return kNone;
    return right(wa) ? wa.b(p, q, r) : wa.b(r, p, q);
}

// Objects of G grouped by t (right actions) or s (left actions): the
// candidates that can act on a point over a given base point.
Buckets acting(const WeakAction& wa) { return bucket(right(wa) ? wa.sg->t : wa.sg->s); }
// Objects of G that can follow g on the acting side.
Id next_base(const WeakAction& wa, Id g) { return right(wa) ? wa.sg->src_base(g) : wa.sg->tgt_base(g); }
Id next_base_arr(const WeakAction& wa, Id j) {
    const auto& sg = *wa.sg;
    return sg.M->src(right(wa) ? sg.s.arr[j] : sg.t.arr[j]);
}

// ---- shapes and naturality ----

// Right (x, g, h), left (h, g, x).
bool beta_endpoints(const WeakAction& wa, Id p, Id q, Id r) {
    const auto& sg = *wa.sg;
    if (right(wa))
        return endpoints(*wa.X, B(wa, p, q, r), wa.act_o(p, sg.mul(q, r)), wa.act_o(wa.act_o(p, q), r));
    return endpoints(*wa.X, B(wa, p, q, r), wa.act_o(sg.mul(p, q), r), wa.act_o(p, wa.act_o(q, r)));
}

// Right arrows (a, b, c) = (X, G, G); left (c, b, a) = (G, G, X).
bool beta_natural(const WeakAction& wa, Id p, Id q, Id r) {
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    const auto& G = *sg.G;
    if (right(wa)) {
        Id lhs = X.comp_chain({B(wa, X.tgt(p), G.tgt(q), G.tgt(r)), wa.act_a(p, sg.mul_arr(q, r))});
        Id rhs = X.comp_chain({wa.act_a(wa.act_a(p, q), r), B(wa, X.src(p), G.src(q), G.src(r))});
        return eq(lhs, rhs);
    }
    Id lhs = X.comp_chain({B(wa, G.tgt(p), G.tgt(q), X.tgt(r)), wa.act_a(sg.mul_arr(p, q), r)});
    Id rhs = X.comp_chain({wa.act_a(p, wa.act_a(q, r)), B(wa, G.src(p), G.src(q), X.src(r))});
    return eq(lhs, rhs);
}

bool epsilon_endpoints(const WeakAction& wa, Id x) {
    Id one = wa.sg->one(wa.mu.obj[x]);
    Id from = right(wa) ? wa.act_o(x, one) : wa.act_o(one, x);
    return endpoints(*wa.X, wa.epsilon[x], from, x);
}

bool epsilon_natural(const WeakAction& wa, Id a) {
    const auto& X = *wa.X;
    Id one = wa.sg->u.arr[wa.mu.arr[a]];
    Id acted = right(wa) ? wa.act_a(a, one) : wa.act_a(one, a);
    return eq(X.comp_chain({wa.epsilon[X.tgt(a)], acted}), X.comp_chain({a, wa.epsilon[X.src(a)]}));
}

// ---- (a4) ----

bool xghl(const WeakAction& wa, Id x, Id g, Id h, Id l) {
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    Id lhs = X.comp_chain({B(wa, wa.act_o(x, g), h, l), B(wa, x, g, sg.mul(h, l))});
    Id rhs = X.comp_chain({wa.act_a(B(wa, x, g, h), sg.G->unit(l)), B(wa, x, sg.mul(g, h), l),
                           wa.act_a(X.unit(x), sg.a(g, h, l))});
    return eq(lhs, rhs);
}

bool x1g(const WeakAction& wa, Id x, Id g) {
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    Id one = sg.one(wa.mu.obj[x]);
    return eq(X.comp_chain({wa.act_a(wa.epsilon[x], sg.G->unit(g)), B(wa, x, one, g)}),
              wa.act_a(X.unit(x), sg.lambda[g]));
}

bool xg1(const WeakAction& wa, Id x, Id g) {
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    Id one = sg.one(sg.src_base(g));
    Id xg = wa.act_o(x, g);
    if (xg == kNone) return false;
    return eq(X.comp_chain({wa.epsilon[xg], B(wa, x, g, one)}), wa.act_a(X.unit(x), sg.rho[g]));
}

bool lhgx(const WeakAction& wa, Id l, Id h, Id g, Id x) {
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    Id lhs = X.comp_chain({B(wa, l, h, wa.act_o(g, x)), B(wa, sg.mul(l, h), g, x),
                           wa.act_a(sg.a(l, h, g), X.unit(x))});
    Id rhs = X.comp_chain({wa.act_a(sg.G->unit(l), B(wa, h, g, x)), B(wa, l, sg.mul(h, g), x)});
    return eq(lhs, rhs);
}

bool g1x(const WeakAction& wa, Id g, Id x) {
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    Id one = sg.one(sg.src_base(g));
    return eq(X.comp_chain({wa.act_a(sg.G->unit(g), wa.epsilon[x]), B(wa, g, one, x)}),
              wa.act_a(sg.rho[g], X.unit(x)));
}

bool one_gx(const WeakAction& wa, Id g, Id x) {
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    Id one = sg.one(sg.tgt_base(g));
    Id gx = wa.act_o(g, x);
    if (gx == kNone) return false;
    return eq(X.comp_chain({wa.epsilon[gx], B(wa, one, g, x)}), wa.act_a(sg.lambda[g], X.unit(x)));
}

bool in_range(const Ids& ids, std::initializer_list<int> bounds) {
    if (ids.size() != bounds.size()) return false;
    std::size_t k = 0;
    for (int b : bounds) {
        if (ids[k] < 0 || ids[k] >= b) return false;
        ++k;
    }
    return true;
}

}  // namespace

WeakAction assemble_action(SgPtr sg, Side side, GroupoidPtr X, GroupoidFunctor mu, const ActionMaps& maps) {
    WeakAction wa;
    wa.sg = std::move(sg);
    wa.side = side;
    wa.X = std::move(X);
    wa.mu = std::move(mu);
    const auto& S = *wa.sg;
    wa.dom = side == Side::right ? strict_pullback(wa.mu, S.t) : strict_pullback(S.s, wa.mu);
    wa.act = GroupoidFunctor{wa.dom.g, wa.X, {}, {}};
    for (auto [p, q] : wa.dom.objs) wa.act.obj.push_back(maps.actObj(p, q));
    for (auto [a, b] : wa.dom.arrs) wa.act.arr.push_back(maps.actArr(a, b));
    check_structure(wa.act);
    const int n = S.n();
    wa.beta.assign(static_cast<std::size_t>(wa.nx()) * n * n, kNone);
    Buckets by = acting(wa);
    for (Id x = 0; x < wa.nx(); ++x)
        for (Id g : by.objs[wa.mu.obj[x]])
            for (Id h : by.objs[next_base(wa, g)]) {
                if (side == Side::right)
                    wa.b_ref(x, g, h) = maps.beta(x, g, h);
                else
                    wa.b_ref(x, h, g) = maps.beta(h, g, x);
            }
    for (Id x = 0; x < wa.nx(); ++x) wa.epsilon.push_back(maps.epsilon(x));
    return wa;
}

Verdict check_a2_a4(const WeakAction& wa, Exec exec) {
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    const int n = sg.n();
    if (Verdict v = validate_functor(wa.mu); !v) return v.scoped("mu");
    if (Verdict v = validate_functor(wa.act); !v) return v.scoped("act");
    // (a2): mu act = s pr2 (right) or t pr1 (left), checked on arrows.
    for (Id p = 0; p < wa.dom.g->num_arrows(); ++p) {
        auto [a, b] = wa.dom.arrs[p];
        Id want = right(wa) ? sg.s.arr[b] : sg.t.arr[a];
        if (wa.mu.arr[wa.act.arr[p]] != want) return Verdict::fail("moment", {p});
    }
    if (wa.beta.size() != static_cast<std::size_t>(wa.nx()) * n * n || wa.epsilon.size() != static_cast<std::size_t>(wa.nx()))
        throw StructuralError("action cell tables have the wrong size");
    for (Id c : wa.beta)
        if (c < kNone || c >= X.num_arrows()) throw StructuralError("beta component out of range");
    for (Id c : wa.epsilon)
        if (c < 0 || c >= X.num_arrows()) throw StructuralError("epsilon component out of range");

    Buckets by = acting(wa);
    for (Id x = 0; x < wa.nx(); ++x)
        for (Id g : by.objs[wa.mu.obj[x]])
            for (Id h : by.objs[next_base(wa, g)]) {
                bool ok = right(wa) ? beta_endpoints(wa, x, g, h) : beta_endpoints(wa, h, g, x);
                if (!ok) return Verdict::fail("beta-endpoints", right(wa) ? Ids{x, g, h} : Ids{h, g, x});
            }
    for (Id x = 0; x < wa.nx(); ++x)
        if (!epsilon_endpoints(wa, x)) return Verdict::fail("epsilon-endpoints", {x});

    const auto nxa = static_cast<std::size_t>(X.num_arrows());
    Verdict nat = first_witness(exec, nxa, "beta-natural", [&](std::size_t ai, Ids* out) {
        Id a = static_cast<Id>(ai);
        for (Id b : by.arrs[wa.mu.cod->src(wa.mu.arr[a])])
            for (Id c : by.arrs[next_base_arr(wa, b)]) {
                bool ok = right(wa) ? beta_natural(wa, a, b, c) : beta_natural(wa, c, b, a);
                if (!ok) {
                    if (out) *out = right(wa) ? Ids{a, b, c} : Ids{c, b, a};
                    return true;
                }
            }
        return false;
    });
    if (!nat) return nat;
    for (Id a = 0; a < X.num_arrows(); ++a)
        if (!epsilon_natural(wa, a)) return Verdict::fail("epsilon-natural", {a});

    const auto nx = static_cast<std::size_t>(wa.nx());
    if (right(wa)) {
        Verdict v = first_witness(exec, nx, "xghl", [&](std::size_t xi, Ids* out) {
            Id x = static_cast<Id>(xi);
            for (Id g : by.objs[wa.mu.obj[x]])
                for (Id h : by.objs[sg.src_base(g)])
                    for (Id l : by.objs[sg.src_base(h)])
                        if (!xghl(wa, x, g, h, l)) {
                            if (out) *out = {x, g, h, l};
                            return true;
                        }
            return false;
        });
        if (!v) return v;
        for (Id x = 0; x < wa.nx(); ++x)
            for (Id g : by.objs[wa.mu.obj[x]])
                if (!x1g(wa, x, g)) return Verdict::fail("x1g", {x, g});
        for (Id x = 0; x < wa.nx(); ++x)
            for (Id g : by.objs[wa.mu.obj[x]])
                if (!xg1(wa, x, g)) return Verdict::fail("xg1", {x, g});
        return Verdict::ok();
    }
    Verdict v = first_witness(exec, nx, "lhgx", [&](std::size_t xi, Ids* out) {
        Id x = static_cast<Id>(xi);
        for (Id g : by.objs[wa.mu.obj[x]])
            for (Id h : by.objs[sg.tgt_base(g)])
                for (Id l : by.objs[sg.tgt_base(h)])
                    if (!lhgx(wa, l, h, g, x)) {
                        if (out) *out = {l, h, g, x};
                        return true;
                    }
        return false;
    });
    if (!v) return v;
    for (Id x = 0; x < wa.nx(); ++x)
        for (Id g : by.objs[wa.mu.obj[x]])
            if (!g1x(wa, g, x)) return Verdict::fail("g1x", {g, x});
    for (Id x = 0; x < wa.nx(); ++x)
        for (Id g : by.objs[wa.mu.obj[x]])
            if (!one_gx(wa, g, x)) return Verdict::fail("1gx", {g, x});
    return Verdict::ok();
}

bool replay_action(const WeakAction& wa, const Witness& w) {
    const auto& sg = *wa.sg;
    const int n = sg.n(), nx = wa.nx(), na = sg.G->num_arrows(), nxa = wa.X->num_arrows();
    const auto& ids = w.ids;
    const std::string& ax = w.axiom;
    const bool r = right(wa);
    // A tuple counts only if every product it names exists.
    auto defined = [](std::initializer_list<Id> v) {
        for (Id x : v)
            if (x == kNone) return false;
        return true;
    };
    if (ax == "moment" && in_range(ids, {wa.dom.g->num_arrows()})) {
        auto [a, b] = wa.dom.arrs[ids[0]];
        return wa.mu.arr[wa.act.arr[ids[0]]] != (r ? sg.s.arr[b] : sg.t.arr[a]);
    }
    if (ax == "beta-endpoints") {
        if (r && in_range(ids, {nx, n, n}))
            return defined({wa.act_o(ids[0], ids[1]), sg.mul(ids[1], ids[2])}) && !beta_endpoints(wa, ids[0], ids[1], ids[2]);
        if (!r && in_range(ids, {n, n, nx}))
            return defined({wa.act_o(ids[1], ids[2]), sg.mul(ids[0], ids[1])}) && !beta_endpoints(wa, ids[0], ids[1], ids[2]);
        return false;
    }
    if (ax == "beta-natural") {
        if (r && in_range(ids, {nxa, na, na}))
            return defined({wa.act_a(ids[0], ids[1]), sg.mul_arr(ids[1], ids[2])}) && !beta_natural(wa, ids[0], ids[1], ids[2]);
        if (!r && in_range(ids, {na, na, nxa}))
            return defined({wa.act_a(ids[1], ids[2]), sg.mul_arr(ids[0], ids[1])}) && !beta_natural(wa, ids[0], ids[1], ids[2]);
        return false;
    }
    if (ax == "epsilon-endpoints" && in_range(ids, {nx})) return !epsilon_endpoints(wa, ids[0]);
    if (ax == "epsilon-natural" && in_range(ids, {nxa})) return !epsilon_natural(wa, ids[0]);
    if (ax == "xghl" && r && in_range(ids, {nx, n, n, n}))
        return defined({wa.act_o(ids[0], ids[1]), sg.mul(ids[1], ids[2]), sg.mul(ids[2], ids[3])}) &&
               !xghl(wa, ids[0], ids[1], ids[2], ids[3]);
    if ((ax == "x1g" || ax == "xg1") && r && in_range(ids, {nx, n})) {
        if (!defined({wa.act_o(ids[0], ids[1])})) return false;
        return ax == "x1g" ? !x1g(wa, ids[0], ids[1]) : !xg1(wa, ids[0], ids[1]);
    }
    if (ax == "lhgx" && !r && in_range(ids, {n, n, n, nx}))
        return defined({wa.act_o(ids[2], ids[3]), sg.mul(ids[1], ids[2]), sg.mul(ids[0], ids[1])}) &&
               !lhgx(wa, ids[0], ids[1], ids[2], ids[3]);
    if ((ax == "g1x" || ax == "1gx") && !r && in_range(ids, {n, nx})) {
        if (!defined({wa.act_o(ids[0], ids[1])})) return false;
        return ax == "g1x" ? !g1x(wa, ids[0], ids[1]) : !one_gx(wa, ids[0], ids[1]);
    }
    auto colon = ax.find(':');
    if (colon != std::string::npos) {
        Witness inner{ax.substr(colon + 1), ids};
        if (ax.compare(0, colon, "mu") == 0) return replay_functor(wa.mu, inner);
        if (ax.compare(0, colon, "act") == 0) return replay_functor(wa.act, inner);
    }
    return false;
}

// ---- constructions ----

WeakAction self_action(const SgPtr& sgp, Side side) {
    const StackyGroupoid& sg = *sgp;
    const auto& G = *sg.G;
    ActionMaps maps{[&](Id p, Id q) { return sg.mul(p, q); },
                    [&](Id a, Id b) { return sg.mul_arr(a, b); },
                    [&](Id p, Id q, Id r) {
                        // right beta(x, g, h) = alpha(x, g, h); left beta(h, g, x) = alpha(h, g, x)⁻¹
                        return side == Side::right ? sg.a(p, q, r) : G.inv(sg.a(p, q, r));
                    },
                    [&](Id x) { return side == Side::right ? sg.rho[x] : sg.lambda[x]; }};
    return assemble_action(sgp, side, sg.G, side == Side::right ? sg.s : sg.t, maps);
}

WeakAction diagonal_action(const WeakAction& a, const WeakAction& b) {
    if (a.sg != b.sg) throw StructuralError("diagonal_action: actions of different presentations");
    if (a.side != b.side) {
        if (a.side == Side::left) return diagonal_action(invert_action(a), b);
        return diagonal_action(a, invert_action(b));
    }
    Pullback P = strict_pullback(a.mu, b.mu);
    GroupoidFunctor mu = compose(a.mu, P.pr1());
    const auto& Pa = P;
    ActionMaps maps;
    if (a.side == Side::right) {
        maps.actObj = [&](Id p, Id g) { return Pa.obj(a.act_o(Pa.objs[p][0], g), b.act_o(Pa.objs[p][1], g)); };
        maps.actArr = [&](Id f, Id j) { return Pa.arr(a.act_a(Pa.arrs[f][0], j), b.act_a(Pa.arrs[f][1], j)); };
        maps.beta = [&](Id p, Id g, Id h) { return Pa.arr(a.b(Pa.objs[p][0], g, h), b.b(Pa.objs[p][1], g, h)); };
    } else {
        maps.actObj = [&](Id g, Id p) { return Pa.obj(a.act_o(g, Pa.objs[p][0]), b.act_o(g, Pa.objs[p][1])); };
        maps.actArr = [&](Id j, Id f) { return Pa.arr(a.act_a(j, Pa.arrs[f][0]), b.act_a(j, Pa.arrs[f][1])); };
        maps.beta = [&](Id h, Id g, Id p) { return Pa.arr(a.b(Pa.objs[p][0], h, g), b.b(Pa.objs[p][1], h, g)); };
    }
    maps.epsilon = [&](Id p) { return Pa.arr(a.epsilon[Pa.objs[p][0]], b.epsilon[Pa.objs[p][1]]); };
    return assemble_action(a.sg, a.side, P.g, mu, maps);
}

WeakAction invert_action(const WeakAction& wa) {
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    ThetaTable th = derive_theta_all(sg);
    std::vector<Id> chi = derive_chi(sg);
    ActionMaps maps;
    if (wa.side == Side::left) {
        maps.actObj = [&](Id x, Id g) { return wa.act_o(sg.inverse(g), x); };
        maps.actArr = [&](Id a, Id j) { return wa.act_a(sg.i.arr[j], a); };
        // x(gh) = (gh)⁻¹x -> (h⁻¹g⁻¹)x -> h⁻¹(g⁻¹x) = (xg)h
        maps.beta = [&](Id x, Id g, Id h) {
            return X.comp_chain({B(wa, sg.inverse(h), sg.inverse(g), x), wa.act_a(th.at(g, h), X.unit(x))});
        };
        maps.epsilon = [&](Id x) {
            return X.comp_chain({wa.epsilon[x], wa.act_a(chi[wa.mu.obj[x]], X.unit(x))});
        };
    } else {
        maps.actObj = [&](Id g, Id x) { return wa.act_o(x, sg.inverse(g)); };
        maps.actArr = [&](Id j, Id a) { return wa.act_a(a, sg.i.arr[j]); };
        // (hg)x = x(hg)⁻¹ -> x(g⁻¹h⁻¹) -> (xg⁻¹)h⁻¹ = h(gx)
        maps.beta = [&](Id h, Id g, Id x) {
            return X.comp_chain({B(wa, x, sg.inverse(g), sg.inverse(h)), wa.act_a(X.unit(x), th.at(h, g))});
        };
        maps.epsilon = [&](Id x) {
            return X.comp_chain({wa.epsilon[x], wa.act_a(X.unit(x), chi[wa.mu.obj[x]])});
        };
    }
    Side other = wa.side == Side::left ? Side::right : Side::left;
    return assemble_action(wa.sg, other, wa.X, wa.mu, maps);
}

WeakAction from_set_action(const SgPtr& sgp, const SetAction& a) {
    const auto& sg = *sgp;
    if (!sg.G->is_discrete() || sg.n() != a.G->num_arrows() || sg.M->num_objects() != a.G->num_objects())
        throw StructuralError("from_set_action: presentation does not match the acting groupoid");
    auto X = discrete_groupoid(a.points);
    auto mu = to_discrete(X, sg.M, a.moment);
    ActionMaps maps;
    if (a.side == Side::right) {
        maps.actObj = [&](Id x, Id g) { return a.act(x, g); };
        maps.beta = [&](Id x, Id g, Id h) { return a.act(a.act(x, g), h); };
    } else {
        maps.actObj = [&](Id g, Id x) { return a.act(x, g); };
        maps.beta = [&](Id h, Id g, Id x) { return a.act(a.act(x, g), h); };
    }
    maps.actArr = maps.actObj;  // both groupoids discrete: arrow ids are object ids
    maps.epsilon = [](Id x) { return x; };
    return assemble_action(sgp, a.side, X, mu, maps);
}

ActionProjection action_projection(const WeakAction& wa) {
    ActionProjection r{product_groupoid(wa.X, wa.X), {}};
    r.delta = GroupoidFunctor{wa.dom.g, r.XX.g, {}, {}};
    for (Id k = 0; k < wa.dom.g->num_objects(); ++k) {
        auto [p, q] = wa.dom.objs[k];
        Id y = wa.act.obj[k];
        r.delta.obj.push_back(right(wa) ? r.XX.obj(p, y) : r.XX.obj(y, q));
    }
    for (Id k = 0; k < wa.dom.g->num_arrows(); ++k) {
        auto [p, q] = wa.dom.arrs[k];
        Id y = wa.act.arr[k];
        r.delta.arr.push_back(right(wa) ? r.XX.arr(p, y) : r.XX.arr(y, q));
    }
    return r;
}

Verdict is_1free(const WeakAction& wa) {
    const auto& G = *wa.sg->G;
    Buckets by = acting(wa);
    for (Id x = 0; x < wa.nx(); ++x) {
        const auto& js = by.arrs[wa.mu.obj[x]];
        for (std::size_t i = 0; i < js.size(); ++i)
            for (std::size_t k = i + 1; k < js.size(); ++k) {
                Id j = js[i], j2 = js[k];
                if (G.src(j) != G.src(j2) || G.tgt(j) != G.tgt(j2)) continue;
                if (wa.act_fixed(x, j) == wa.act_fixed(x, j2)) return Verdict::fail("1-free", {x, j, j2});
            }
    }
    return Verdict::ok();
}

// ---- equivariant morphisms ----

Verdict check_equivariant(const EquivariantMorphism& em) {
    const auto& a1 = *em.a1;
    const auto& a2 = *em.a2;
    if (a1.side != Side::right || a2.side != Side::right) throw StructuralError("check_equivariant: right actions only");
    if (a1.sg != a2.sg) throw StructuralError("check_equivariant: actions of different presentations");
    const auto& sg = *a1.sg;
    const auto& X2 = *a2.X;
    const auto& F = em.F;
    if (Verdict v = validate_functor(F); !v) return v.scoped("F");
    for (Id a = 0; a < a1.X->num_arrows(); ++a)
        if (a2.mu.arr[F.arr[a]] != a1.mu.arr[a]) return Verdict::fail("moment", {a});
    if (em.delta.size() != static_cast<std::size_t>(a1.dom.g->num_objects())) throw StructuralError("delta has the wrong size");
    auto delta = [&](Id x, Id g) {
        Id k = (x < 0 || g < 0) ? kNone : a1.pair_index(x, g);
        return k == kNone ? kNone : em.delta[k];
    };
    for (Id k = 0; k < a1.dom.g->num_objects(); ++k) {
        auto [x, g] = a1.dom.objs[k];
        if (!endpoints(X2, em.delta[k], a2.act_o(F.obj[x], g), F.obj[a1.act.obj[k]]))
            return Verdict::fail("delta-endpoints", {k});
    }
    for (Id k = 0; k < a1.dom.g->num_arrows(); ++k) {
        auto [a, b] = a1.dom.arrs[k];
        Id s = a1.dom.g->src(k), t = a1.dom.g->tgt(k);
        if (!eq(X2.comp_chain({em.delta[t], a2.act_a(F.arr[a], b)}), X2.comp_chain({F.arr[a1.act.arr[k]], em.delta[s]})))
            return Verdict::fail("delta-natural", {k});
    }
    Buckets by = bucket(sg.t);
    for (Id x = 0; x < a1.nx(); ++x)
        for (Id g : by.objs[a1.mu.obj[x]])
            for (Id h : by.objs[sg.src_base(g)]) {
                Id lhs = X2.comp_chain({F.arr[a1.b(x, g, h)], delta(x, sg.mul(g, h))});
                Id rhs = X2.comp_chain({delta(a1.act_o(x, g), h), a2.act_a(delta(x, g), sg.G->unit(h)),
                                        a2.b(F.obj[x], g, h)});
                if (!eq(lhs, rhs)) return Verdict::fail("delta-beta", {x, g, h});
            }
    for (Id x = 0; x < a1.nx(); ++x)
        if (!eq(X2.comp_chain({F.arr[a1.epsilon[x]], delta(x, sg.one(a1.mu.obj[x]))}), a2.epsilon[F.obj[x]]))
            return Verdict::fail("delta-epsilon", {x});
    return Verdict::ok();
}

EquivariantMorphism compose_equivariant(const EquivariantMorphism& em1, const EquivariantMorphism& em2) {
    if (em1.a2 != em2.a1) throw StructuralError("compose_equivariant: middle actions differ");
    EquivariantMorphism r{em1.a1, em2.a2, compose(em2.F, em1.F), {}};
    const auto& X3 = *em2.a2->X;
    for (Id k = 0; k < em1.a1->dom.g->num_objects(); ++k) {
        auto [x, g] = em1.a1->dom.objs[k];
        Id k2 = em1.a2->pair_index(em1.F.obj[x], g);
        r.delta.push_back(X3.comp_chain({em2.F.arr[em1.delta[k]], em2.delta[k2]}));
    }
    return r;
}

EquivariantMorphism identity_equivariant(const std::shared_ptr<const WeakAction>& a) {
    EquivariantMorphism r{a, a, identity_functor(a->X), {}};
    for (Id k = 0; k < a->dom.g->num_objects(); ++k) r.delta.push_back(a->X->unit(a->act.obj[k]));
    return r;
}

WeakAction pair_action(const WeakAction& wa) {
    if (wa.side != Side::right) throw StructuralError("pair_action: right actions only");
    const auto& sg = *wa.sg;
    const auto& D = wa.dom;
    const auto& X = *wa.X;
    GroupoidFunctor mu{D.g, sg.M, {}, {}};
    for (auto [x, g] : D.objs) mu.obj.push_back(sg.src_base(g));
    for (auto [a, b] : D.arrs) mu.arr.push_back(sg.s.arr[b]);
    ActionMaps maps{[&](Id p, Id h) { return D.obj(D.objs[p][0], sg.mul(D.objs[p][1], h)); },
                    [&](Id f, Id j) { return D.arr(D.arrs[f][0], sg.mul_arr(D.arrs[f][1], j)); },
                    [&](Id p, Id h, Id l) { return D.arr(X.unit(D.objs[p][0]), sg.a(D.objs[p][1], h, l)); },
                    [&](Id p) { return D.arr(X.unit(D.objs[p][0]), sg.rho[D.objs[p][1]]); }};
    return assemble_action(wa.sg, Side::right, D.g, mu, maps);
}

EquivariantMorphism action_map_equivariant(const std::shared_ptr<const WeakAction>& wa,
                                           const std::shared_ptr<const WeakAction>& pairs) {
    EquivariantMorphism r{pairs, wa, wa->act, {}};
    const auto& X = *wa->X;
    for (Id k = 0; k < pairs->dom.g->num_objects(); ++k) {
        auto [p, h] = pairs->dom.objs[k];
        auto [x, g] = wa->dom.objs[p];
        // (xg)h -> x(gh)
        r.delta.push_back(detail::inv_or_none(X, wa->b(x, g, h)));
    }
    return r;
}

// ---- actions on fibres ----

Verdict check_action_on_fibers(const FiberedAction& fa) {
    const auto& wa = *fa.action;
    const auto& sg = *wa.sg;
    const auto& P = fa.P;
    if (P.dom != wa.X && !(P.dom && *P.dom == *wa.X)) throw StructuralError("P does not start at the acted-on groupoid");
    if (Verdict v = validate_functor(P); !v) return v.scoped("P");
    const auto& S = *P.cod;
    const auto& D = wa.dom;
    if (fa.gamma.size() != static_cast<std::size_t>(D.g->num_objects())) throw StructuralError("gamma has the wrong size");
    const bool r = right(wa);
    auto gamma = [&](Id p, Id q) {
        Id k = (p < 0 || q < 0) ? kNone : D.obj(p, q);
        return k == kNone ? kNone : fa.gamma[k];
    };
    for (Id k = 0; k < D.g->num_objects(); ++k) {
        auto [p, q] = D.objs[k];
        Id x = r ? p : q;
        if (!endpoints(S, fa.gamma[k], P.obj[x], P.obj[wa.act.obj[k]])) return Verdict::fail("gamma-endpoints", {k});
    }
    for (Id k = 0; k < D.g->num_arrows(); ++k) {
        auto [p, q] = D.arrs[k];
        Id a = r ? p : q;
        if (!eq(S.comp_chain({fa.gamma[D.g->tgt(k)], P.arr[a]}), S.comp_chain({P.arr[wa.act.arr[k]], fa.gamma[D.g->src(k)]})))
            return Verdict::fail("gamma-natural", {k});
    }
    Buckets by = acting(wa);
    for (Id x = 0; x < wa.nx(); ++x)
        for (Id g : by.objs[wa.mu.obj[x]])
            for (Id h : by.objs[next_base(wa, g)]) {
                Id lhs, rhs;
                if (r) {
                    lhs = S.comp_chain({P.arr[wa.b(x, g, h)], gamma(x, sg.mul(g, h))});
                    rhs = S.comp_chain({gamma(wa.act_o(x, g), h), gamma(x, g)});
                } else {
                    lhs = S.comp_chain({P.arr[wa.b(x, h, g)], gamma(sg.mul(h, g), x)});
                    rhs = S.comp_chain({gamma(h, wa.act_o(g, x)), gamma(g, x)});
                }
                if (!eq(lhs, rhs)) return Verdict::fail("gamma-beta", r ? Ids{x, g, h} : Ids{h, g, x});
            }
    for (Id x = 0; x < wa.nx(); ++x) {
        Id one = sg.one(wa.mu.obj[x]);
        Id g1 = r ? gamma(x, one) : gamma(one, x);
        if (!eq(S.comp_chain({P.arr[wa.epsilon[x]], g1}), S.unit(P.obj[x]))) return Verdict::fail("gamma-epsilon", {x});
    }
    return Verdict::ok();
}

FiberedAction invert_fibered(const FiberedAction& fa, const std::shared_ptr<const WeakAction>& inverted) {
    const auto& wa = *fa.action;
    const auto& sg = *wa.sg;
    FiberedAction r{inverted, fa.P, {}};
    for (auto [p, q] : inverted->dom.objs) {
        // right (x, g) uses gamma(g⁻¹, x); left (g, x) uses gamma(x, g⁻¹)
        Id k = inverted->side == Side::right ? wa.dom.obj(sg.inverse(q), p) : wa.dom.obj(q, sg.inverse(p));
        r.gamma.push_back(k == kNone ? kNone : fa.gamma[k]);
    }
    return r;
}

BundleComparison bundle_comparison(const FiberedAction& fa) {
    const auto& wa = *fa.action;
    const auto& S = *fa.P.cod;
    BundleComparison r{iso_comma(fa.P, fa.P), {}};
    const auto& D = wa.dom;
    r.C = GroupoidFunctor{D.g, r.XSX.g, {}, {}};
    for (Id k = 0; k < D.g->num_objects(); ++k) {
        auto [p, q] = D.objs[k];
        Id y = wa.act.obj[k];
        Id o = right(wa) ? r.XSX.obj(p, fa.gamma[k], y) : r.XSX.obj(y, detail::inv_or_none(S, fa.gamma[k]), q);
        if (o == kNone) throw CheckFailed("comparison object missing", Verdict::fail("gamma-endpoints", {k}));
        r.C.obj.push_back(o);
    }
    for (Id k = 0; k < D.g->num_arrows(); ++k) {
        auto [p, q] = D.arrs[k];
        Id y = wa.act.arr[k];
        Id o = r.C.obj[D.g->src(k)];
        r.C.arr.push_back(right(wa) ? r.XSX.arr(o, p, y) : r.XSX.arr(o, y, q));
    }
    return r;
}

Verdict check_principal_bundle(const FiberedAction& fa) {
    if (Verdict v = is_essentially_surjective(fa.P); !v) return v.scoped("epimorphism");
    if (Verdict v = check_action_on_fibers(fa); !v) return v.scoped("fibres");
    auto cmp = bundle_comparison(fa);
    if (Verdict v = validate_functor(cmp.C); !v) return v.scoped("comparison");
    if (Verdict v = is_equivalence(cmp.C); !v) return v.scoped("comparison");
    return Verdict::ok();
}

}  // namespace stacky
