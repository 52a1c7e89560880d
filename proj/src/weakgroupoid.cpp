#include "stacky/weakgroupoid.hpp"

#include "detail.hpp"

#include <map>
#include <string>

namespace stacky {

Id StackyGroupoid::mul(Id g, Id h) const {
    if (g < 0 || h < 0 || s.obj[g] != t.obj[h]) return kNone;
    Id p = GG.obj(g, h);
    return p == kNone ? kNone : m.obj[p];
}

Id StackyGroupoid::mul_arr(Id a, Id b) const {
    if (a < 0 || b < 0) return kNone;
    Id p = GG.arr(a, b);
    return p == kNone ? kNone : m.arr[p];
}

namespace {

using Ids = std::vector<Id>;

using detail::Buckets;
using detail::bucket;
using detail::endpoints;
using detail::eq;

// ---- (g3) laws ----

bool alpha_endpoints(const StackyGroupoid& sg, Id g, Id h, Id l) {
    return endpoints(*sg.G, sg.a(g, h, l), sg.mul(g, sg.mul(h, l)), sg.mul(sg.mul(g, h), l));
}

bool alpha_natural(const StackyGroupoid& sg, Id a, Id b, Id c) {
    const auto& G = *sg.G;
    Id lhs = G.comp_chain({sg.a(G.tgt(a), G.tgt(b), G.tgt(c)), sg.mul_arr(a, sg.mul_arr(b, c))});
    Id rhs = G.comp_chain({sg.mul_arr(sg.mul_arr(a, b), c), sg.a(G.src(a), G.src(b), G.src(c))});
    return eq(lhs, rhs);
}

Id left_unit_arrow(const StackyGroupoid& sg, Id a) { return sg.u.arr[sg.t.arr[a]]; }
Id right_unit_arrow(const StackyGroupoid& sg, Id a) { return sg.u.arr[sg.s.arr[a]]; }

bool lambda_endpoints(const StackyGroupoid& sg, Id g) {
    return endpoints(*sg.G, sg.lambda[g], sg.mul(sg.one(sg.tgt_base(g)), g), g);
}
bool lambda_natural(const StackyGroupoid& sg, Id a) {
    const auto& G = *sg.G;
    return eq(G.comp_chain({sg.lambda[G.tgt(a)], sg.mul_arr(left_unit_arrow(sg, a), a)}),
              G.comp_chain({a, sg.lambda[G.src(a)]}));
}
bool rho_endpoints(const StackyGroupoid& sg, Id g) {
    return endpoints(*sg.G, sg.rho[g], sg.mul(g, sg.one(sg.src_base(g))), g);
}
bool rho_natural(const StackyGroupoid& sg, Id a) {
    const auto& G = *sg.G;
    return eq(G.comp_chain({sg.rho[G.tgt(a)], sg.mul_arr(a, right_unit_arrow(sg, a))}),
              G.comp_chain({a, sg.rho[G.src(a)]}));
}
bool iota_l_endpoints(const StackyGroupoid& sg, Id g) {
    return endpoints(*sg.G, sg.iota_l[g], sg.mul(sg.inverse(g), g), sg.one(sg.src_base(g)));
}
bool iota_l_natural(const StackyGroupoid& sg, Id a) {
    const auto& G = *sg.G;
    return eq(G.comp_chain({sg.iota_l[G.tgt(a)], sg.mul_arr(sg.i.arr[a], a)}),
              G.comp_chain({right_unit_arrow(sg, a), sg.iota_l[G.src(a)]}));
}
bool iota_r_endpoints(const StackyGroupoid& sg, Id g) {
    return endpoints(*sg.G, sg.iota_r[g], sg.mul(g, sg.inverse(g)), sg.one(sg.tgt_base(g)));
}
bool iota_r_natural(const StackyGroupoid& sg, Id a) {
    const auto& G = *sg.G;
    return eq(G.comp_chain({sg.iota_r[G.tgt(a)], sg.mul_arr(a, sg.i.arr[a])}),
              G.comp_chain({left_unit_arrow(sg, a), sg.iota_r[G.src(a)]}));
}

// ---- (g4) diagrams ----

bool kghl(const StackyGroupoid& sg, Id k, Id g, Id h, Id l) {
    const auto& G = *sg.G;
    Id lhs = G.comp_chain({sg.a(sg.mul(k, g), h, l), sg.a(k, g, sg.mul(h, l))});
    Id rhs = G.comp_chain({sg.rw(sg.a(k, g, h), l), sg.a(k, sg.mul(g, h), l), sg.lw(k, sg.a(g, h, l))});
    return eq(lhs, rhs);
}

bool one_gh(const StackyGroupoid& sg, Id g, Id h) {
    Id one = sg.one(sg.tgt_base(g));
    return eq(sg.lambda[sg.mul(g, h)], sg.G->comp_chain({sg.rw(sg.lambda[g], h), sg.a(one, g, h)}));
}

bool g_one_h(const StackyGroupoid& sg, Id g, Id h) {
    Id one = sg.one(sg.src_base(g));
    return eq(sg.lw(g, sg.lambda[h]), sg.G->comp_chain({sg.rw(sg.rho[g], h), sg.a(g, one, h)}));
}

bool gh_one(const StackyGroupoid& sg, Id g, Id h) {
    Id one = sg.one(sg.src_base(h));
    return eq(sg.lw(g, sg.rho[h]), sg.G->comp_chain({sg.rho[sg.mul(g, h)], sg.a(g, h, one)}));
}

bool g_ginv_g(const StackyGroupoid& sg, Id g) {
    const auto& G = *sg.G;
    Id gi = sg.inverse(g);
    Id lhs = G.comp_chain({sg.rho[g], sg.lw(g, sg.iota_l[g])});
    Id rhs = G.comp_chain({sg.lambda[g], sg.rw(sg.iota_r[g], g), sg.a(g, gi, g)});
    return eq(lhs, rhs);
}

bool ids_in_range(const Ids& ids, std::size_t count, int bound) {
    if (ids.size() != count) return false;
    for (Id x : ids)
        if (x < 0 || x >= bound) return false;
    return true;
}

// Composable object pairs (g, h) in lexicographic order.
template <class F>
Verdict over_pairs(const StackyGroupoid& sg, const Buckets& byT, Exec exec, const char* name, F&& holds) {
    const int n = sg.n();
    Ids witness;
    std::size_t bad = kernel::first_failure(exec, static_cast<std::size_t>(n), [&](std::size_t gi) {
        Id g = static_cast<Id>(gi);
        for (Id h : byT.objs[sg.src_base(g)])
            if (!holds(g, h)) return true;
        return false;
    });
    if (bad == static_cast<std::size_t>(n)) return Verdict::ok();
    Id g = static_cast<Id>(bad);
    for (Id h : byT.objs[sg.src_base(g)])
        if (!holds(g, h)) return Verdict::fail(name, {g, h});
    return Verdict::ok();
}

}  // namespace

const char* label(G4 d) {
    switch (d) {
        case G4::kghl: return "kghl";
        case G4::one_gh: return "1gh";
        case G4::g_one_h: return "g1h";
        case G4::gh_one: return "gh1";
        case G4::g_ginv_g: return "gg-1g";
    }
    return "?";
}

StackyGroupoid assemble(GroupoidPtr M, GroupoidPtr G, GroupoidFunctor s, GroupoidFunctor t,
                        GroupoidFunctor u, GroupoidFunctor i, const StructureMaps& maps) {
    StackyGroupoid sg;
    sg.M = std::move(M);
    sg.G = std::move(G);
    sg.s = std::move(s);
    sg.t = std::move(t);
    sg.u = std::move(u);
    sg.i = std::move(i);
    sg.GG = strict_pullback(sg.s, sg.t);
    sg.m = GroupoidFunctor{sg.GG.g, sg.G, {}, {}};
    for (auto [g, h] : sg.GG.objs) sg.m.obj.push_back(maps.mulObj(g, h));
    for (auto [a, b] : sg.GG.arrs) sg.m.arr.push_back(maps.mulArr(a, b));
    check_structure(sg.m);
    const int n = sg.n();
    sg.alpha.assign(static_cast<std::size_t>(n) * n * n, kNone);
    for (Id g = 0; g < n; ++g)
        for (Id h = 0; h < n; ++h) {
            if (sg.s.obj[g] != sg.t.obj[h]) continue;
            for (Id l = 0; l < n; ++l)
                if (sg.s.obj[h] == sg.t.obj[l]) sg.a_ref(g, h, l) = maps.alpha(g, h, l);
        }
    for (Id g = 0; g < n; ++g) {
        sg.lambda.push_back(maps.lambda(g));
        sg.rho.push_back(maps.rho(g));
        sg.iota_l.push_back(maps.iota_l(g));
        sg.iota_r.push_back(maps.iota_r(g));
    }
    return sg;
}

Verdict check_g2(const StackyGroupoid& sg) {
    const auto& M = *sg.M;
    for (Id a = 0; a < M.num_arrows(); ++a)
        if (M.src(a) != M.tgt(a) || M.unit(M.src(a)) != a) return Verdict::fail("base-discrete", {a});
    const std::pair<const char*, const GroupoidFunctor*> fs[] = {
        {"s", &sg.s}, {"t", &sg.t}, {"u", &sg.u}, {"i", &sg.i}, {"m", &sg.m}};
    for (auto [name, f] : fs)
        if (Verdict v = validate_functor(*f); !v) return v.scoped(name);
    // Valid functors agreeing on arrows agree on objects, so arrows suffice.
    for (Id a = 0; a < M.num_arrows(); ++a) {
        if (sg.s.arr[sg.u.arr[a]] != a) return Verdict::fail("su", {a});
        if (sg.t.arr[sg.u.arr[a]] != a) return Verdict::fail("tu", {a});
    }
    for (Id a = 0; a < sg.G->num_arrows(); ++a) {
        if (sg.s.arr[sg.i.arr[a]] != sg.t.arr[a]) return Verdict::fail("si", {a});
        if (sg.t.arr[sg.i.arr[a]] != sg.s.arr[a]) return Verdict::fail("ti", {a});
    }
    for (Id p = 0; p < sg.GG.g->num_arrows(); ++p) {
        auto [a, b] = sg.GG.arrs[p];
        if (sg.s.arr[sg.m.arr[p]] != sg.s.arr[b]) return Verdict::fail("sm", {p});
        if (sg.t.arr[sg.m.arr[p]] != sg.t.arr[a]) return Verdict::fail("tm", {p});
    }
    return Verdict::ok();
}

Verdict check_g3(const StackyGroupoid& sg, Exec exec) {
    const int n = sg.n();
    const auto& G = *sg.G;
    if (sg.alpha.size() != static_cast<std::size_t>(n) * n * n || sg.lambda.size() != static_cast<std::size_t>(n) ||
        sg.rho.size() != sg.lambda.size() || sg.iota_l.size() != sg.lambda.size() ||
        sg.iota_r.size() != sg.lambda.size())
        throw StructuralError("2-cell tables have the wrong size");
    for (Id c : sg.alpha)
        if (c < kNone || c >= G.num_arrows()) throw StructuralError("alpha component out of range");
    for (const auto* tab : {&sg.lambda, &sg.rho, &sg.iota_l, &sg.iota_r})
        for (Id c : *tab)
            if (c < 0 || c >= G.num_arrows()) throw StructuralError("unit or inverse cell out of range");

    Buckets byT = bucket(sg.t);
    using Unary = bool (*)(const StackyGroupoid&, Id);
    const std::pair<const char*, Unary> objLaws[] = {{"lambda-endpoints", lambda_endpoints},
                                                     {"rho-endpoints", rho_endpoints},
                                                     {"iota_l-endpoints", iota_l_endpoints},
                                                     {"iota_r-endpoints", iota_r_endpoints}};
    for (Id g = 0; g < n; ++g)
        for (Id h : byT.objs[sg.src_base(g)])
            for (Id l : byT.objs[sg.src_base(h)])
                if (!alpha_endpoints(sg, g, h, l)) return Verdict::fail("alpha-endpoints", {g, h, l});
    for (auto [name, law] : objLaws)
        for (Id g = 0; g < n; ++g)
            if (!law(sg, g)) return Verdict::fail(name, {g});

    const auto na = static_cast<std::size_t>(G.num_arrows());
    auto natural = [&](std::size_t ai, Ids* out) {
        Id a = static_cast<Id>(ai);
        for (Id b : byT.arrs[sg.M->src(sg.s.arr[a])])
            for (Id c : byT.arrs[sg.M->src(sg.s.arr[b])])
                if (!alpha_natural(sg, a, b, c)) {
                    if (out) *out = {a, b, c};
                    return true;
                }
        return false;
    };
    std::size_t bad = kernel::first_failure(exec, na, [&](std::size_t ai) { return natural(ai, nullptr); });
    if (bad != na) {
        Ids w;
        natural(bad, &w);
        return Verdict::fail("alpha-natural", w);
    }
    const std::pair<const char*, Unary> arrLaws[] = {{"lambda-natural", lambda_natural},
                                                     {"rho-natural", rho_natural},
                                                     {"iota_l-natural", iota_l_natural},
                                                     {"iota_r-natural", iota_r_natural}};
    for (auto [name, law] : arrLaws)
        for (Id a = 0; a < G.num_arrows(); ++a)
            if (!law(sg, a)) return Verdict::fail(name, {a});
    return Verdict::ok();
}

Verdict check_g4_diagram(const StackyGroupoid& sg, G4 d, Exec exec) {
    const int n = sg.n();
    Buckets byT = bucket(sg.t);
    switch (d) {
        case G4::kghl: {
            auto scan = [&](Id k, Ids* out) {
                for (Id g : byT.objs[sg.src_base(k)])
                    for (Id h : byT.objs[sg.src_base(g)])
                        for (Id l : byT.objs[sg.src_base(h)])
                            if (!kghl(sg, k, g, h, l)) {
                                if (out) *out = {k, g, h, l};
                                return true;
                            }
                return false;
            };
            std::size_t bad = kernel::first_failure(exec, static_cast<std::size_t>(n),
                                                    [&](std::size_t k) { return scan(static_cast<Id>(k), nullptr); });
            if (bad == static_cast<std::size_t>(n)) return Verdict::ok();
            Ids w;
            scan(static_cast<Id>(bad), &w);
            return Verdict::fail("kghl", w);
        }
        case G4::one_gh:
            return over_pairs(sg, byT, exec, "1gh", [&](Id g, Id h) { return one_gh(sg, g, h); });
        case G4::g_one_h:
            return over_pairs(sg, byT, exec, "g1h", [&](Id g, Id h) { return g_one_h(sg, g, h); });
        case G4::gh_one:
            return over_pairs(sg, byT, exec, "gh1", [&](Id g, Id h) { return gh_one(sg, g, h); });
        case G4::g_ginv_g:
            for (Id g = 0; g < n; ++g)
                if (!g_ginv_g(sg, g)) return Verdict::fail("gg-1g", {g});
            return Verdict::ok();
    }
    return Verdict::ok();
}

Verdict check_g4(const StackyGroupoid& sg, Exec exec) {
    if (Verdict v = check_g3(sg, exec); !v) return v;
    for (G4 d : {G4::kghl, G4::one_gh, G4::g_one_h, G4::gh_one, G4::g_ginv_g})
        if (Verdict v = check_g4_diagram(sg, d, exec); !v) return v;
    return Verdict::ok();
}

bool replay_stacky(const StackyGroupoid& sg, const Witness& w) {
    const auto& ids = w.ids;
    const int n = sg.n();
    const int na = sg.G->num_arrows();
    auto composable = [&](Id g, Id h) { return sg.src_base(g) == sg.tgt_base(h); };
    auto composable_arr = [&](Id a, Id b) { return sg.GG.arr(a, b) != kNone; };
    const std::string& ax = w.axiom;
    if (ax == "kghl" && ids_in_range(ids, 4, n))
        return composable(ids[0], ids[1]) && composable(ids[1], ids[2]) && composable(ids[2], ids[3]) &&
               !kghl(sg, ids[0], ids[1], ids[2], ids[3]);
    if ((ax == "1gh" || ax == "g1h" || ax == "gh1") && ids_in_range(ids, 2, n)) {
        if (!composable(ids[0], ids[1])) return false;
        if (ax == "1gh") return !one_gh(sg, ids[0], ids[1]);
        if (ax == "g1h") return !g_one_h(sg, ids[0], ids[1]);
        return !gh_one(sg, ids[0], ids[1]);
    }
    if (ax == "gg-1g" && ids_in_range(ids, 1, n)) return !g_ginv_g(sg, ids[0]);
    if (ax == "alpha-endpoints" && ids_in_range(ids, 3, n))
        return composable(ids[0], ids[1]) && composable(ids[1], ids[2]) && !alpha_endpoints(sg, ids[0], ids[1], ids[2]);
    if (ax == "alpha-natural" && ids_in_range(ids, 3, na))
        return composable_arr(ids[0], ids[1]) && composable_arr(ids[1], ids[2]) &&
               !alpha_natural(sg, ids[0], ids[1], ids[2]);
    using Unary = bool (*)(const StackyGroupoid&, Id);
    static const std::map<std::string, std::pair<Unary, bool>> unary = {
        {"lambda-endpoints", {lambda_endpoints, false}}, {"rho-endpoints", {rho_endpoints, false}},
        {"iota_l-endpoints", {iota_l_endpoints, false}}, {"iota_r-endpoints", {iota_r_endpoints, false}},
        {"lambda-natural", {lambda_natural, true}},       {"rho-natural", {rho_natural, true}},
        {"iota_l-natural", {iota_l_natural, true}},       {"iota_r-natural", {iota_r_natural, true}}};
    if (auto it = unary.find(ax); it != unary.end() && ids_in_range(ids, 1, it->second.second ? na : n))
        return !it->second.first(sg, ids[0]);
    // Strict identities of check_g2.
    if (ax == "base-discrete" && ids_in_range(ids, 1, sg.M->num_arrows()))
        return sg.M->src(ids[0]) != sg.M->tgt(ids[0]) || sg.M->unit(sg.M->src(ids[0])) != ids[0];
    if ((ax == "su" || ax == "tu") && ids_in_range(ids, 1, sg.M->num_arrows()))
        return (ax == "su" ? sg.s : sg.t).arr[sg.u.arr[ids[0]]] != ids[0];
    if (ax == "si" && ids_in_range(ids, 1, na)) return sg.s.arr[sg.i.arr[ids[0]]] != sg.t.arr[ids[0]];
    if (ax == "ti" && ids_in_range(ids, 1, na)) return sg.t.arr[sg.i.arr[ids[0]]] != sg.s.arr[ids[0]];
    if ((ax == "sm" || ax == "tm") && ids_in_range(ids, 1, sg.GG.g->num_arrows())) {
        auto [a, b] = sg.GG.arrs[ids[0]];
        return ax == "sm" ? sg.s.arr[sg.m.arr[ids[0]]] != sg.s.arr[b] : sg.t.arr[sg.m.arr[ids[0]]] != sg.t.arr[a];
    }
    auto colon = ax.find(':');
    if (colon != std::string::npos) {
        std::string which = ax.substr(0, colon);
        Witness inner{ax.substr(colon + 1), ids};
        if (which == "s") return replay_functor(sg.s, inner);
        if (which == "t") return replay_functor(sg.t, inner);
        if (which == "u") return replay_functor(sg.u, inner);
        if (which == "i") return replay_functor(sg.i, inner);
        if (which == "m") return replay_functor(sg.m, inner);
    }
    return false;
}

// ---- constructions ----

StackyGroupoid strict_presentation(const GroupoidPtr& H) {
    auto M = discrete_groupoid(H->num_objects());
    auto G = discrete_groupoid(H->num_arrows());
    auto s = to_discrete(G, M, H->src_table());
    auto t = to_discrete(G, M, H->tgt_table());
    auto u = to_discrete(M, G, H->unit_table());
    auto i = to_discrete(G, G, H->inv_table());
    const auto& h = *H;
    auto unit = [](Id g) { return g; };  // G discrete: object g has unit arrow g
    StructureMaps maps{[&h](Id a, Id b) { return h.comp(a, b); },
                       [&h](Id a, Id b) { return h.comp(a, b); },
                       [&h](Id a, Id b, Id c) { return h.comp_chain({a, b, c}); },
                       [&h](Id a) { return a; },
                       unit,
                       [&h](Id a) { return h.unit(h.src(a)); },
                       [&h](Id a) { return h.unit(h.tgt(a)); }};
    return assemble(M, G, s, t, u, i, maps);
}

StackyGroupoid group_presentation(const FiniteGroup& g) { return strict_presentation(delooping(g)); }

Verdict validate_crossed_module(const CrossedModuleData& cm) {
    if (Verdict v = validate_group(cm.A); !v) return v.scoped("A");
    if (Verdict v = validate_group(cm.K); !v) return v.scoped("K");
    if (!cm.A.abelian) return Verdict::fail("A-abelian", {});
    if (!cm.K.abelian) return Verdict::fail("K-abelian", {});
    if (cm.phi.size() != static_cast<std::size_t>(cm.A.order)) throw StructuralError("phi has the wrong size");
    for (Id v : cm.phi)
        if (v < 0 || v >= cm.K.order) throw StructuralError("phi value out of range");
    for (Id a = 0; a < cm.A.order; ++a)
        for (Id b = 0; b < cm.A.order; ++b)
            if (cm.phi[cm.A.mul(a, b)] != cm.K.mul(cm.phi[a], cm.phi[b])) return Verdict::fail("phi-hom", {a, b});
    return Verdict::ok();
}

StackyGroupoid from_crossed_module(const CrossedModuleData& cm) {
    if (Verdict v = validate_crossed_module(cm); !v) throw CheckFailed("invalid crossed module", v);
    const FiniteGroup A = cm.A, K = cm.K;
    const std::vector<Id> phi = cm.phi;
    const int na = A.order, nk = K.order;
    // (k, a) : k + phi(a) -> k
    std::vector<Id> src, tgt, unit(nk), inv;
    for (Id k = 0; k < nk; ++k)
        for (Id a = 0; a < na; ++a) {
            src.push_back(K.mul(k, phi[a]));
            tgt.push_back(k);
            inv.push_back(K.mul(k, phi[a]) * na + A.inv(a));
        }
    for (Id k = 0; k < nk; ++k) unit[k] = k * na;
    auto G = share(FiniteGroupoid::build(nk, src, tgt, unit, inv, [&](Id f, Id h) {
        return (f / na) * na + A.mul(f % na, h % na);
    }));
    auto M = point_groupoid();
    auto s = to_discrete(G, M, std::vector<Id>(nk, 0));
    auto t = s;
    auto u = GroupoidFunctor{M, G, {0}, {0}};
    GroupoidFunctor i{G, G, {}, {}};
    for (Id k = 0; k < nk; ++k) i.obj.push_back(K.inv(k));
    for (Id f = 0; f < G->num_arrows(); ++f) i.arr.push_back(K.inv(f / na) * na + A.inv(f % na));
    const auto* g = G.get();
    StructureMaps maps{[K](Id k, Id l) { return K.mul(k, l); },
                       [K, A, na](Id f, Id h) { return K.mul(f / na, h / na) * na + A.mul(f % na, h % na); },
                       [K, g](Id k, Id l, Id r) { return g->unit(K.mul(K.mul(k, l), r)); },
                       [g](Id k) { return g->unit(k); },
                       [g](Id k) { return g->unit(k); },
                       [g](Id) { return g->unit(0); },
                       [g](Id) { return g->unit(0); }};
    return assemble(M, G, s, t, u, i, maps);
}

Skeletal2GroupData trivial_action_skeletal(const FiniteGroup& pi1, const FiniteGroup& pi2, std::vector<Id> omega) {
    Skeletal2GroupData sk{pi1, pi2, {}, std::move(omega)};
    for (Id g = 0; g < pi1.order; ++g)
        for (Id a = 0; a < pi2.order; ++a) sk.act.push_back(a);
    return sk;
}

Skeletal2GroupData cyclic_cocycle_2group(int n, int multiple) {
    std::vector<Id> omega;
    for (Id a = 0; a < n; ++a)
        for (Id b = 0; b < n; ++b)
            for (Id c = 0; c < n; ++c) omega.push_back((multiple * a * ((b + c) / n)) % n);
    return trivial_action_skeletal(cyclic_group(n), cyclic_group(n), std::move(omega));
}

Verdict validate_skeletal(const Skeletal2GroupData& sk, bool requireNormalized) {
    if (Verdict v = validate_group(sk.pi1); !v) return v.scoped("pi1");
    if (Verdict v = validate_group(sk.pi2); !v) return v.scoped("pi2");
    if (!sk.pi2.abelian) return Verdict::fail("pi2-abelian", {});
    const int n1 = sk.pi1.order, n2 = sk.pi2.order;
    if (sk.act.size() != static_cast<std::size_t>(n1) * n2) throw StructuralError("act has the wrong size");
    if (sk.omega.size() != static_cast<std::size_t>(n1) * n1 * n1) throw StructuralError("omega has the wrong size");
    for (Id v : sk.act)
        if (v < 0 || v >= n2) throw StructuralError("act value out of range");
    for (Id v : sk.omega)
        if (v < 0 || v >= n2) throw StructuralError("omega value out of range");
    for (Id g = 0; g < n1; ++g)
        for (Id a = 0; a < n2; ++a) {
            if (sk.act_on(0, a) != a) return Verdict::fail("act-identity", {a});
            for (Id b = 0; b < n2; ++b)
                if (sk.act_on(g, sk.pi2.mul(a, b)) != sk.pi2.mul(sk.act_on(g, a), sk.act_on(g, b)))
                    return Verdict::fail("act-additive", {g, a, b});
            for (Id h = 0; h < n1; ++h)
                if (sk.act_on(sk.pi1.mul(g, h), a) != sk.act_on(g, sk.act_on(h, a)))
                    return Verdict::fail("act-compose", {g, h, a});
        }
    if (requireNormalized)
        for (Id g = 0; g < n1; ++g)
            for (Id h = 0; h < n1; ++h)
                for (Id l = 0; l < n1; ++l)
                    if ((g == 0 || h == 0 || l == 0) && sk.w(g, h, l) != 0)
                        return Verdict::fail("omega-normalized", {g, h, l});
    return Verdict::ok();
}

StackyGroupoid from_skeletal(const Skeletal2GroupData& sk, bool requireNormalized) {
    if (Verdict v = validate_skeletal(sk, requireNormalized); !v) throw CheckFailed("invalid skeletal data", v);
    const FiniteGroup P1 = sk.pi1, P2 = sk.pi2;
    const int n1 = P1.order, n2 = P2.order;
    auto arrow = [n2](Id g, Id a) { return g * n2 + a; };
    std::vector<Id> src, inv, unit;
    for (Id g = 0; g < n1; ++g) {
        unit.push_back(arrow(g, 0));
        for (Id a = 0; a < n2; ++a) {
            src.push_back(g);
            inv.push_back(arrow(g, P2.inv(a)));
        }
    }
    auto G = share(FiniteGroupoid::build(n1, src, src, unit, inv, [&](Id f, Id h) {
        return arrow(f / n2, P2.mul(f % n2, h % n2));
    }));
    auto M = point_groupoid();
    auto s = to_discrete(G, M, std::vector<Id>(n1, 0));
    GroupoidFunctor u{M, G, {0}, {0}};
    GroupoidFunctor i{G, G, {}, {}};
    for (Id g = 0; g < n1; ++g) i.obj.push_back(P1.inv(g));
    for (Id f = 0; f < G->num_arrows(); ++f) {
        Id gi = P1.inv(f / n2);
        i.arr.push_back(arrow(gi, P2.inv(sk.act_on(gi, f % n2))));
    }
    StructureMaps maps{[P1](Id g, Id h) { return P1.mul(g, h); },
                       [=](Id f, Id h) {
                           Id g = f / n2;
                           return arrow(P1.mul(g, h / n2), P2.mul(f % n2, sk.act_on(g, h % n2)));
                       },
                       [=](Id g, Id h, Id l) { return arrow(P1.mul(P1.mul(g, h), l), sk.w(g, h, l)); },
                       [=](Id g) { return arrow(g, 0); },
                       [=](Id g) { return arrow(g, 0); },
                       [=](Id) { return arrow(0, 0); },
                       [=](Id g) { return arrow(0, P2.inv(sk.w(g, P1.inv(g), g))); }};
    return assemble(M, G, s, s, u, i, maps);
}

StackyGroupoid product_presentation(const StackyGroupoid& a, const StackyGroupoid& b) {
    Pullback M = product_groupoid(a.M, b.M);
    Pullback G = product_groupoid(a.G, b.G);
    auto s = pair_functor(G, M, a.s, b.s);
    auto t = pair_functor(G, M, a.t, b.t);
    auto u = pair_functor(M, G, a.u, b.u);
    auto i = pair_functor(G, G, a.i, b.i);
    auto split = [](const std::vector<std::array<Id, 2>>& v, Id x) { return v[x]; };
    StructureMaps maps{
        [&](Id x, Id y) {
            auto [x1, x2] = split(G.objs, x);
            auto [y1, y2] = split(G.objs, y);
            return G.obj(a.mul(x1, y1), b.mul(x2, y2));
        },
        [&](Id f, Id h) {
            auto [f1, f2] = split(G.arrs, f);
            auto [h1, h2] = split(G.arrs, h);
            return G.arr(a.mul_arr(f1, h1), b.mul_arr(f2, h2));
        },
        [&](Id x, Id y, Id z) {
            auto [x1, x2] = split(G.objs, x);
            auto [y1, y2] = split(G.objs, y);
            auto [z1, z2] = split(G.objs, z);
            return G.arr(a.a(x1, y1, z1), b.a(x2, y2, z2));
        },
        [&](Id x) { return G.arr(a.lambda[G.objs[x][0]], b.lambda[G.objs[x][1]]); },
        [&](Id x) { return G.arr(a.rho[G.objs[x][0]], b.rho[G.objs[x][1]]); },
        [&](Id x) { return G.arr(a.iota_l[G.objs[x][0]], b.iota_l[G.objs[x][1]]); },
        [&](Id x) { return G.arr(a.iota_r[G.objs[x][0]], b.iota_r[G.objs[x][1]]); }};
    return assemble(M.g, G.g, s, t, u, i, maps);
}

RestrictedPresentation isotropy_2group(const StackyGroupoid& sg, Id x) {
    if (x < 0 || x >= sg.M->num_objects()) throw StructuralError("base point not in the base");
    std::vector<bool> keep(sg.n());
    for (Id g = 0; g < sg.n(); ++g) keep[g] = sg.src_base(g) == x && sg.tgt_base(g) == x;
    RestrictedPresentation r{{}, full_subgroupoid(sg.G, keep)};
    const auto& sub = r.sub;
    const int n = sub.g->num_objects();
    auto M = point_groupoid();
    auto s = to_discrete(sub.g, M, std::vector<Id>(n, 0));
    GroupoidFunctor u{M, sub.g, {sub.objBack[sg.one(x)]}, {sub.arrBack[sg.G->unit(sg.one(x))]}};
    GroupoidFunctor i{sub.g, sub.g, {}, {}};
    for (Id g : sub.objMap) i.obj.push_back(sub.objBack[sg.inverse(g)]);
    for (Id f : sub.arrMap) i.arr.push_back(sub.arrBack[sg.i.arr[f]]);
    auto O = [&](Id g) { return sub.objMap[g]; };
    auto A = [&](Id f) { return sub.arrMap[f]; };
    StructureMaps maps{[&](Id g, Id h) { return sub.objBack[sg.mul(O(g), O(h))]; },
                       [&](Id f, Id h) { return sub.arrBack[sg.mul_arr(A(f), A(h))]; },
                       [&](Id g, Id h, Id l) { return sub.arrBack[sg.a(O(g), O(h), O(l))]; },
                       [&](Id g) { return sub.arrBack[sg.lambda[O(g)]]; },
                       [&](Id g) { return sub.arrBack[sg.rho[O(g)]]; },
                       [&](Id g) { return sub.arrBack[sg.iota_l[O(g)]]; },
                       [&](Id g) { return sub.arrBack[sg.iota_r[O(g)]]; }};
    r.sg = assemble(M, sub.g, s, s, u, i, maps);
    return r;
}

IsoComma s_fibre(const StackyGroupoid& sg, Id x) {
    if (x < 0 || x >= sg.M->num_objects()) throw StructuralError("base point not in the base");
    GroupoidFunctor at{point_groupoid(), sg.M, {x}, {sg.M->unit(x)}};
    return iso_comma(at, sg.s);
}

// ---- inversion cells ----

bool theta_diagram_holds(const StackyGroupoid& sg, Id g, Id h, Id theta) {
    const auto& G = *sg.G;
    Id gh = sg.mul(g, h);
    Id hi = sg.inverse(h), gi = sg.inverse(g);
    Id ghi = sg.inverse(gh);
    // (θ·g)·h ∘ α((gh)⁻¹, g, h)
    Id top = G.comp_chain({sg.rw(sg.rw(theta, g), h), sg.a(ghi, g, h)});
    // ι_l(h) ∘ (ρ(h⁻¹)·h) ∘ ((h⁻¹·ι_l(g))·h) ∘ (α(h⁻¹, g⁻¹, g)·h)⁻¹
    Id back = sg.rw(sg.a(hi, gi, g), h);
    Id down = G.comp_chain({sg.iota_l[h], sg.rw(sg.rho[hi], h), sg.rw(sg.lw(hi, sg.iota_l[g]), h),
                            back == kNone ? kNone : G.inv(back)});
    return eq(sg.iota_l[gh], G.comp_chain({down, top}));
}

Id derive_theta(const StackyGroupoid& sg, Id g, Id h) {
    if (sg.mul(g, h) == kNone) throw StructuralError("derive_theta: pair not composable");
    Id from = sg.inverse(sg.mul(g, h));
    Id to = sg.mul(sg.inverse(h), sg.inverse(g));
    Id found = kNone;
    for (Id c : sg.G->hom(from, to))
        if (theta_diagram_holds(sg, g, h, c)) {
            if (found != kNone) throw CheckFailed("theta is not unique", Verdict::fail("theta-unique", {g, h, found, c}));
            found = c;
        }
    if (found == kNone) throw CheckFailed("no arrow satisfies the theta diagram", Verdict::fail("theta-exists", {g, h}));
    return found;
}

ThetaTable derive_theta_all(const StackyGroupoid& sg) {
    const int n = sg.n();
    ThetaTable th{n, std::vector<Id>(static_cast<std::size_t>(n) * n, kNone)};
    for (Id g = 0; g < n; ++g)
        for (Id h = 0; h < n; ++h)
            if (sg.src_base(g) == sg.tgt_base(h)) th.at(g, h) = derive_theta(sg, g, h);
    return th;
}

std::vector<Id> derive_chi(const StackyGroupoid& sg) {
    std::vector<Id> chi;
    for (Id x = 0; x < sg.M->num_objects(); ++x) {
        Id one = sg.one(x);
        chi.push_back(sg.G->comp_chain({sg.iota_l[one], sg.G->inv(sg.rho[sg.inverse(one)])}));
    }
    return chi;
}

Verdict check_theta_coherence(const StackyGroupoid& sg, const ThetaTable& th, Exec exec) {
    const int n = sg.n();
    const auto& G = *sg.G;
    if (th.n != n || th.cell.size() != static_cast<std::size_t>(n) * n) throw StructuralError("theta table has the wrong size");
    Buckets byT = bucket(sg.t);
    auto theta = [&](Id g, Id h) { return th.at(g, h); };
    for (Id g = 0; g < n; ++g)
        for (Id h : byT.objs[sg.src_base(g)])
            if (theta(g, h) < 0 || theta(g, h) >= G.num_arrows() || !theta_diagram_holds(sg, g, h, theta(g, h)))
                return Verdict::fail("theta-defining", {g, h});
    // θ(g', h') ∘ i(m(a, b)) = m(i b, i a) ∘ θ(g, h)
    for (Id a = 0; a < G.num_arrows(); ++a)
        for (Id b : byT.arrs[sg.M->src(sg.s.arr[a])]) {
            Id lhs = G.comp_chain({theta(G.tgt(a), G.tgt(b)), sg.i.arr[sg.mul_arr(a, b)]});
            Id rhs = G.comp_chain({sg.mul_arr(sg.i.arr[b], sg.i.arr[a]), theta(G.src(a), G.src(b))});
            if (!eq(lhs, rhs)) return Verdict::fail("theta-natural", {a, b});
        }
    // (θ(h,l)·g⁻¹) ∘ θ(g, hl) = α(l⁻¹, h⁻¹, g⁻¹) ∘ (l⁻¹·θ(g,h)) ∘ θ(gh, l) ∘ i(α(g,h,l))
    auto hexagon = [&](Id g, Ids* out) {
        for (Id h : byT.objs[sg.src_base(g)])
            for (Id l : byT.objs[sg.src_base(h)]) {
                Id gi = sg.inverse(g), hi = sg.inverse(h), li = sg.inverse(l);
                Id lhs = G.comp_chain({sg.rw(theta(h, l), gi), theta(g, sg.mul(h, l))});
                Id rhs = G.comp_chain({sg.a(li, hi, gi), sg.lw(li, theta(g, h)), theta(sg.mul(g, h), l),
                                       sg.i.arr[sg.a(g, h, l)]});
                if (!eq(lhs, rhs)) {
                    if (out) *out = {g, h, l};
                    return true;
                }
            }
        return false;
    };
    std::size_t bad = kernel::first_failure(exec, static_cast<std::size_t>(n),
                                            [&](std::size_t g) { return hexagon(static_cast<Id>(g), nullptr); });
    if (bad != static_cast<std::size_t>(n)) {
        Ids w;
        hexagon(static_cast<Id>(bad), &w);
        return Verdict::fail("theta-hexagon", w);
    }
    auto chi = derive_chi(sg);
    for (Id g = 0; g < n; ++g) {
        Id gi = sg.inverse(g);
        Id one_t = sg.one(sg.tgt_base(g)), one_s = sg.one(sg.src_base(g));
        // ρ(g⁻¹) ∘ (g⁻¹·χ) ∘ θ(1, g) = i(λ_g)
        if (!eq(G.comp_chain({sg.rho[gi], sg.lw(gi, chi[sg.tgt_base(g)]), theta(one_t, g)}), sg.i.arr[sg.lambda[g]]))
            return Verdict::fail("theta-chi-left", {g});
        // λ(g⁻¹) ∘ (χ·g⁻¹) ∘ θ(g, 1) = i(ρ_g)
        if (!eq(G.comp_chain({sg.lambda[gi], sg.rw(chi[sg.src_base(g)], gi), theta(g, one_s)}), sg.i.arr[sg.rho[g]]))
            return Verdict::fail("theta-chi-right", {g});
    }
    for (Id x = 0; x < sg.M->num_objects(); ++x) {
        Id one = sg.one(x);
        if (sg.lambda[one] != sg.rho[one]) return Verdict::fail("unit-lambda-rho", {x});
    }
    return Verdict::ok();
}

Verdict check_theta_coherence(const StackyGroupoid& sg, Exec exec) {
    return check_theta_coherence(sg, derive_theta_all(sg), exec);
}

}  // namespace stacky
