#include "stacky/prequotient.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "detail.hpp"

namespace stacky {

using detail::eq;
using detail::inv_or_none;
using detail::UnionFind;
using Ids = std::vector<Id>;

namespace {

long long key(const WeakAction& wa, Id x, Id g, Id b) {
    return (static_cast<long long>(x) * wa.sg->n() + g) * wa.X->num_arrows() + b;
}

// beta(x, g, h), kNone when any argument is missing.
Id beta_or_none(const WeakAction& wa, Id x, Id g, Id h) {
    return (x < 0 || g < 0 || h < 0) ? kNone : wa.b(x, g, h);
}

}  // namespace

Id PrequotientGroupoid::pair_index(Id x, Id g, Id b) const {
    if (x < 0 || g < 0 || b < 0) return kNone;
    auto it = lookup.find(key(*action, x, g, b));
    return it == lookup.end() ? kNone : it->second;
}

Id PrequotientGroupoid::cls(Id x, Id g, Id b) const {
    Id p = pair_index(x, g, b);
    return p == kNone ? kNone : classOf[p];
}

Id PrequotientGroupoid::gamma0(Id x, Id g) const {
    Id xg = action->act_o(x, g);
    return xg == kNone ? kNone : cls(x, g, action->X->unit(xg));
}

PrequotientGroupoid prequotient(const ActionPtr& wap) {
    const WeakAction& wa = *wap;
    if (wa.side != Side::right) throw StructuralError("prequotient: right actions only");
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    const auto& G = *sg.G;
    PrequotientGroupoid pq;
    pq.action = wap;

    auto tb = detail::bucket(sg.t);
    for (Id x = 0; x < wa.nx(); ++x)
        for (Id g : tb.objs[wa.mu.obj[x]]) {
            Id xg = wa.act_o(x, g);
            for (Id b : X.out(xg)) {
                pq.lookup.emplace(key(wa, x, g, b), static_cast<Id>(pq.pairs.size()));
                pq.pairs.push_back({x, g, b});
            }
        }

    // (g, b) ~ (g', b∘(x·j)⁻¹) for every j : g -> g'
    UnionFind uf(pq.pairs.size());
    for (Id p = 0; p < static_cast<Id>(pq.pairs.size()); ++p) {
        auto [x, g, b] = pq.pairs[p];
        for (Id j : G.out(g)) {
            Id b2 = X.comp_chain({b, inv_or_none(X, wa.act_a(X.unit(x), j))});
            Id p2 = pq.pair_index(x, G.tgt(j), b2);
            if (p2 == kNone) throw CheckFailed("prequotient: pair relation leaves the pairs", Verdict::fail("class-relation", {x, g, b, j}));
            uf.join(p, p2);
        }
    }
    // Members are enumerated in (x, g, out order); the representative is the least (g, b).
    std::map<Id, Id> rootToClass;
    std::vector<std::vector<Id>> byRoot;
    for (Id p = 0; p < static_cast<Id>(pq.pairs.size()); ++p) {
        Id r = uf.find(p);
        auto [it, fresh] = rootToClass.emplace(r, static_cast<Id>(byRoot.size()));
        if (fresh) byRoot.emplace_back();
        byRoot[it->second].push_back(p);
    }
    auto lexLess = [&](Id a, Id b) {
        const auto& A = pq.pairs[a];
        const auto& B = pq.pairs[b];
        return std::tie(A[0], A[1], A[2]) < std::tie(B[0], B[1], B[2]);
    };
    for (auto& m : byRoot) std::sort(m.begin(), m.end(), lexLess);
    std::sort(byRoot.begin(), byRoot.end(), [&](const auto& a, const auto& b) { return lexLess(a[0], b[0]); });
    pq.classOf.assign(pq.pairs.size(), kNone);
    for (Id c = 0; c < static_cast<Id>(byRoot.size()); ++c) {
        pq.rep.push_back(byRoot[c][0]);
        for (Id p : byRoot[c]) pq.classOf[p] = c;
    }
    pq.members = std::move(byRoot);
    const Id nc = static_cast<Id>(pq.rep.size());

    auto srcOf = [&](Id c) { return pq.pairs[pq.rep[c]][0]; };
    auto tgtOf = [&](Id c) { return X.tgt(pq.pairs[pq.rep[c]][2]); };
    // [h, c]∘[g, b] from member pairs p (first) and p2 (second)
    auto composePairs = [&](Id p, Id p2) {
        auto [x, g, b] = pq.pairs[p];
        auto [y, h, c] = pq.pairs[p2];
        Id val = X.comp_chain({c, wa.act_a(b, G.unit(h)), wa.b(x, g, h)});
        return pq.cls(x, sg.mul(g, h), val);
    };

    // Representative independence: vary one side at a time.
    for (Id c1 = 0; c1 < nc; ++c1)
        for (Id c2 = 0; c2 < nc; ++c2) {
            if (srcOf(c2) != tgtOf(c1)) continue;
            Id ref = composePairs(pq.rep[c1], pq.rep[c2]);
            auto witness = [&](Id p, Id p2) {
                auto [x, g, b] = pq.pairs[p];
                auto [y, h, c] = pq.pairs[p2];
                return Verdict::fail("class-composition", {x, g, b, h, c});
            };
            if (ref == kNone) throw CheckFailed("prequotient: composite is not a pair", witness(pq.rep[c1], pq.rep[c2]));
            for (Id p : pq.members[c1])
                if (composePairs(p, pq.rep[c2]) != ref)
                    throw CheckFailed("prequotient: composition depends on representatives", witness(p, pq.rep[c2]));
            for (Id p2 : pq.members[c2])
                if (composePairs(pq.rep[c1], p2) != ref)
                    throw CheckFailed("prequotient: composition depends on representatives", witness(pq.rep[c1], p2));
        }

    std::vector<Id> src(nc), tgt(nc), unit(wa.nx()), inv(nc, kNone);
    for (Id c = 0; c < nc; ++c) src[c] = srcOf(c), tgt[c] = tgtOf(c);
    for (Id x = 0; x < wa.nx(); ++x) {
        unit[x] = pq.cls(x, sg.one(wa.mu.obj[x]), wa.epsilon[x]);
        if (unit[x] == kNone) throw CheckFailed("prequotient: identity is not a pair", Verdict::fail("class-identity", {x}));
    }
    std::map<std::pair<Id, Id>, std::vector<Id>> hom;
    for (Id c = 0; c < nc; ++c) hom[{src[c], tgt[c]}].push_back(c);
    for (Id c = 0; c < nc; ++c) {
        for (Id d : hom[{tgt[c], src[c]}])
            if (composePairs(pq.rep[c], pq.rep[d]) == unit[src[c]]) {
                inv[c] = d;
                break;
            }
        if (inv[c] == kNone) throw CheckFailed("prequotient: class without inverse", Verdict::fail("class-inverse", {c}));
    }
    pq.carrier = share(FiniteGroupoid::build(wa.nx(), src, tgt, unit, inv,
                                             [&](Id d, Id c) { return composePairs(pq.rep[c], pq.rep[d]); }));
    if (Verdict v = validate_groupoid(*pq.carrier); !v) throw CheckFailed("prequotient: not a groupoid", v.scoped("carrier"));

    pq.q = GroupoidFunctor{wa.X, pq.carrier, {}, {}};
    for (Id x = 0; x < wa.nx(); ++x) pq.q.obj.push_back(x);
    for (Id b = 0; b < X.num_arrows(); ++b) {
        Id x = X.src(b);
        pq.q.arr.push_back(pq.cls(x, sg.one(wa.mu.obj[x]), X.comp_chain({b, wa.epsilon[x]})));
    }
    check_structure(pq.q);
    return pq;
}

Verdict check_prestack_wellformed(const ActionPtr& wa) {
    try {
        prequotient(wa);
    } catch (const CheckFailed& e) {
        return e.verdict;
    }
    return Verdict::ok();
}

FiberedAction canonical_gamma0(const PrequotientGroupoid& pq) {
    const auto& wa = *pq.action;
    FiberedAction fa{pq.action, pq.q, {}};
    for (auto [x, g] : wa.dom.objs) fa.gamma.push_back(pq.gamma0(x, g));
    return fa;
}

GroupoidFunctor universal_map(const PrequotientGroupoid& pq, const FiberedAction& fa) {
    if (fa.action != pq.action) throw StructuralError("universal_map: fibred action of another action");
    if (Verdict v = check_action_on_fibers(fa); !v) throw CheckFailed("universal_map: not an action on the fibres", v);
    const auto& wa = *pq.action;
    const auto& S = *fa.P.cod;
    GroupoidFunctor Phi{pq.carrier, fa.P.cod, fa.P.obj, {}};
    auto image = [&](Id p) {
        auto [x, g, b] = pq.pairs[p];
        return S.comp_chain({fa.P.arr[b], fa.gamma[wa.dom.obj(x, g)]});
    };
    for (Id c = 0; c < pq.carrier->num_arrows(); ++c) {
        Id v = image(pq.rep[c]);
        for (Id p : pq.members[c])
            if (image(p) != v) throw CheckFailed("universal_map: depends on representatives", Verdict::fail("phi-representative", {c, p}));
        Phi.arr.push_back(v);
    }
    check_structure(Phi);
    return Phi;
}

Verdict check_universal_map(const PrequotientGroupoid& pq, const FiberedAction& fa, const GroupoidFunctor& Phi) {
    if (Verdict v = validate_functor(Phi); !v) return v.scoped("Phi");
    const auto& wa = *pq.action;
    for (Id x = 0; x < wa.nx(); ++x)
        if (Phi.obj[x] != fa.P.obj[x]) return Verdict::fail("phi-q-object", {x});
    for (Id b = 0; b < wa.X->num_arrows(); ++b)
        if (Phi.arr[pq.q.arr[b]] != fa.P.arr[b]) return Verdict::fail("phi-q", {b});
    for (Id k = 0; k < wa.dom.g->num_objects(); ++k) {
        auto [x, g] = wa.dom.objs[k];
        if (Phi.arr[pq.gamma0(x, g)] != fa.gamma[k]) return Verdict::fail("phi-gamma", {x, g});
    }
    return Verdict::ok();
}

std::vector<Id> comparison_psi(const GroupoidFunctor& Phi, const std::vector<Id>& phi, const GroupoidFunctor& Phibar,
                               const std::vector<Id>& phibar, const std::vector<Id>& rho) {
    const auto& S = *Phi.cod;
    const auto& C = *Phi.dom;
    std::vector<Id> psi;
    for (Id x = 0; x < C.num_objects(); ++x) {
        Id want = S.comp_chain({rho[x], phi[x]});
        Id found = kNone;
        for (Id a : S.hom(Phi.obj[x], Phibar.obj[x]))
            if (S.comp_chain({phibar[x], a}) == want) {
                if (found != kNone) throw CheckFailed("psi is not unique", Verdict::fail("psi-unique", {x}));
                found = a;
            }
        if (found == kNone) throw CheckFailed("no psi component", Verdict::fail("psi-exists", {x}));
        psi.push_back(found);
    }
    for (Id c = 0; c < C.num_arrows(); ++c)
        if (!eq(S.comp_chain({Phibar.arr[c], psi[C.src(c)]}), S.comp_chain({psi[C.tgt(c)], Phi.arr[c]})))
            throw CheckFailed("psi is not natural", Verdict::fail("psi-natural", {c}));
    return psi;
}

InducedMap induced_on_quotients(const EquivariantMorphism& em, const PrequotientGroupoid& pq1,
                                const PrequotientGroupoid& pq2) {
    if (em.a1 != pq1.action || em.a2 != pq2.action) throw StructuralError("induced_on_quotients: prequotients of other actions");
    const auto& a1 = *em.a1;
    const auto& a2 = *em.a2;
    const auto& C2 = *pq2.carrier;
    InducedMap r;
    r.fibred = FiberedAction{em.a1, compose(pq2.q, em.F), {}};
    for (Id k = 0; k < a1.dom.g->num_objects(); ++k) {
        auto [x, g] = a1.dom.objs[k];
        Id fx = em.F.obj[x];
        r.fibred.gamma.push_back(C2.comp_chain({pq2.q.arr[em.delta[k]], pq2.gamma0(fx, g)}));
    }
    (void)a2;
    r.Phi = universal_map(pq1, r.fibred);
    return r;
}

ActionProjectionComparison action_proj_comparison(const PrequotientGroupoid& pq) {
    const auto& wa = *pq.action;
    ActionProjectionComparison r{iso_comma(pq.q, pq.q), {}};
    r.Q = GroupoidFunctor{wa.dom.g, r.XqX.g, {}, {}};
    for (Id k = 0; k < wa.dom.g->num_objects(); ++k) {
        auto [x, g] = wa.dom.objs[k];
        r.Q.obj.push_back(r.XqX.obj(x, pq.gamma0(x, g), wa.act.obj[k]));
    }
    for (Id k = 0; k < wa.dom.g->num_arrows(); ++k) {
        auto [a, j] = wa.dom.arrs[k];
        r.Q.arr.push_back(r.XqX.arr(r.Q.obj[wa.dom.g->src(k)], a, wa.act.arr[k]));
    }
    check_structure(r.Q);
    return r;
}

Verdict check_q_full_by_lift(const PrequotientGroupoid& pq, const ActionProjectionComparison& c) {
    const auto& wa = *pq.action;
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    const auto& G = *sg.G;
    const auto& D = *wa.dom.g;
    const auto& K = *c.XqX.g;
    std::vector<std::vector<Id>> preimage(K.num_objects());
    for (Id k = 0; k < D.num_objects(); ++k) preimage[c.Q.obj[k]].push_back(k);
    for (Id k1 = 0; k1 < D.num_objects(); ++k1) {
        auto [x, g] = wa.dom.objs[k1];
        Id one = sg.one(wa.mu.obj[x]);
        for (Id e : K.out(c.Q.obj[k1]))
            for (Id k2 : preimage[K.tgt(e)]) {
                auto [c1, c2] = c.XqX.arrs[e];
                Id gb = wa.dom.objs[k2][1];
                Id xbgb = wa.act.obj[k2];
                Id xg = wa.act.obj[k1];
                Id one2 = sg.one(sg.src_base(g));
                // [gb, id]∘q(c1) and q(c2)∘[g, id] as pairs over x
                Id bL = X.comp_chain({X.unit(xbgb), wa.act_a(X.comp_chain({c1, wa.epsilon[x]}), G.unit(gb)), wa.b(x, one, gb)});
                Id bR = X.comp_chain({c2, wa.epsilon[xg], wa.act_a(X.unit(xg), G.unit(one2)), wa.b(x, g, one2)});
                Id gL = sg.mul(one, gb), gR = sg.mul(g, one2);
                Id jp = kNone;
                for (Id cand : G.hom(gR, gL))
                    if (eq(X.comp_chain({bL, wa.act_a(X.unit(x), cand)}), bR)) {
                        jp = cand;
                        break;
                    }
                if (jp == kNone) return Verdict::fail("lift", {k1, k2, e});
                Id j = G.comp_chain({sg.lambda[gb], jp, G.inv(sg.rho[g])});
                if (!eq(wa.act_a(c1, j), c2)) return Verdict::fail("lift", {k1, k2, e});
            }
    }
    return Verdict::ok();
}

PrincipalReport check_principal(const ActionPtr& wa) {
    PrincipalReport r;
    r.weakRep = is_weakly_representable(action_projection(*wa).delta);
    PrequotientGroupoid pq = prequotient(wa);
    if (Verdict v = is_essentially_surjective(pq.q); !v)
        r.principal = v.scoped("epimorphism");
    else if (Verdict v2 = check_action_on_fibers(canonical_gamma0(pq)); !v2)
        r.principal = v2.scoped("fibres");
    else if (Verdict v3 = is_equivalence(action_proj_comparison(pq).Q); !v3)
        r.principal = v3.scoped("comparison");
    if (r.principal.passed != r.weakRep.passed)
        throw std::logic_error("check_principal: principality and weak representability of Delta disagree");
    return r;
}

GroupoidFunctor translation_comparison(const PrequotientGroupoid& pq, const TranslationGroupoid& tg, const SetAction& sa) {
    if (sa.side != Side::right) throw StructuralError("translation_comparison: right actions only");
    GroupoidFunctor f{tg.g, pq.carrier, {}, {}};
    for (Id x = 0; x < tg.g->num_objects(); ++x) f.obj.push_back(x);
    for (auto [x, h] : tg.arrs) {
        Id c = pq.gamma0(x, h);
        f.arr.push_back(inv_or_none(*pq.carrier, c));
    }
    check_structure(f);
    return f;
}

// ---- quotient in stages ----

namespace {

struct Factors {
    Pullback PG, PM;
};

Factors factors(const WeakAction& wa, const SgPtr& sg1, const SgPtr& sg2) {
    Factors f{product_groupoid(sg1->G, sg2->G), product_groupoid(sg1->M, sg2->M)};
    if (f.PG.g->num_objects() != wa.sg->n() || f.PM.g->num_objects() != wa.sg->M->num_objects())
        throw StructuralError("action is not of the product presentation of the two factors");
    return f;
}

// (g1, g2) pieces of the product action used in both stages.
struct ProductCells {
    const WeakAction& wa;
    const StackyGroupoid &s1, &s2;
    const Factors& f;

    Id mu1(Id x) const { return f.PM.objs[wa.mu.obj[x]][0]; }
    Id mu2(Id x) const { return f.PM.objs[wa.mu.obj[x]][1]; }
    Id pair(Id g1, Id g2) const { return f.PG.obj(g1, g2); }
    // beta(x, (1, g2), (g1, 1)) : x((1, g2)(g1, 1)) -> (x·g2)·g1
    Id top(Id x, Id g1, Id g2) const {
        return beta_or_none(wa, x, pair(s1.one(mu1(x)), g2), pair(g1, s2.one(s2.src_base(g2))));
    }
    Id bottom(Id x, Id g1, Id g2) const {
        return beta_or_none(wa, x, pair(g1, s2.one(mu2(x))), pair(s1.one(s1.src_base(g1)), g2));
    }
    // x·(1g1, g2 1) -> x·(g1, g2) and x·(g1 1, 1 g2) -> x·(g1, g2)
    Id top_units(Id x, Id g1, Id g2) const {
        return wa.act_a(wa.X->unit(x), f.PG.arr(s1.lambda[g1], s2.rho[g2]));
    }
    Id bottom_units(Id x, Id g1, Id g2) const {
        return wa.act_a(wa.X->unit(x), f.PG.arr(s1.rho[g1], s2.lambda[g2]));
    }
    // xi : x·(g1, g2) -> (x·g2)·g1
    Id xi(Id x, Id g1, Id g2) const {
        const auto& X = *wa.X;
        return X.comp_chain({top(x, g1, g2), inv_or_none(X, top_units(x, g1, g2))});
    }
    // delta : (x·g2)·g1 -> (x·g1)·g2
    Id delta(Id x, Id g1, Id g2) const {
        const auto& X = *wa.X;
        return X.comp_chain({bottom(x, g1, g2), inv_or_none(X, bottom_units(x, g1, g2)), top_units(x, g1, g2),
                             inv_or_none(X, top(x, g1, g2))});
    }
};

}  // namespace

ActionPtr restrict_to_factor(const ActionPtr& wap, const SgPtr& sg1, const SgPtr& sg2, int factor) {
    const WeakAction& wa = *wap;
    if (wa.side != Side::right) throw StructuralError("restrict_to_factor: right actions only");
    if (factor != 1 && factor != 2) throw StructuralError("restrict_to_factor: factor is 1 or 2");
    Factors f = factors(wa, sg1, sg2);
    const auto& X = *wa.X;
    const SgPtr& mine = factor == 1 ? sg1 : sg2;
    const StackyGroupoid& other = factor == 1 ? *sg2 : *sg1;
    const int me = factor - 1, them = 2 - factor;
    auto both = [&](Id a, Id b) { return factor == 1 ? std::array<Id, 2>{a, b} : std::array<Id, 2>{b, a}; };
    auto mbase = [&](Id x) { return f.PM.objs[wa.mu.obj[x]][them]; };
    GroupoidFunctor mu{wa.X, mine->M, {}, {}};
    for (Id x = 0; x < wa.nx(); ++x) mu.obj.push_back(f.PM.objs[wa.mu.obj[x]][me]);
    for (Id a = 0; a < X.num_arrows(); ++a) mu.arr.push_back(f.PM.arrs[wa.mu.arr[a]][me]);
    auto objOf = [&](Id g, Id x) {
        auto p = both(g, other.one(mbase(x)));
        return f.PG.obj(p[0], p[1]);
    };
    ActionMaps maps;
    maps.actObj = [&](Id x, Id g) { return wa.act_o(x, objOf(g, x)); };
    maps.actArr = [&](Id a, Id j) {
        auto p = both(j, other.G->unit(other.one(mbase(X.src(a)))));
        return wa.act_a(a, f.PG.arr(p[0], p[1]));
    };
    maps.beta = [&](Id x, Id g, Id h) {
        Id one = other.one(mbase(x));
        auto fix = both(mine->G->unit(mine->mul(g, h)), other.G->inv(other.rho[one]));
        Id xg = wa.act_o(x, objOf(g, x));
        return X.comp_chain({beta_or_none(wa, x, objOf(g, x), xg == kNone ? kNone : objOf(h, xg)),
                             wa.act_a(X.unit(x), f.PG.arr(fix[0], fix[1]))});
    };
    maps.epsilon = [&](Id x) { return wa.epsilon[x]; };
    return share(assemble_action(mine, Side::right, wa.X, mu, maps));
}

StagedQuotient quotient_in_stages(const ActionPtr& wap, const SgPtr& sg1, const SgPtr& sg2) {
    const WeakAction& wa = *wap;
    Factors f = factors(wa, sg1, sg2);
    ProductCells cells{wa, *sg1, *sg2, f};
    StagedQuotient s;
    s.first = restrict_to_factor(wap, sg1, sg2, 1);
    ActionPtr second = restrict_to_factor(wap, sg1, sg2, 2);
    s.Y = prequotient(s.first);
    const auto& X = *wa.X;
    const auto& Y = s.Y;
    std::vector<Id> mu2(wa.nx());
    for (Id x = 0; x < wa.nx(); ++x) mu2[x] = cells.mu2(x);
    GroupoidFunctor muY = to_discrete(Y.carrier, sg2->M, mu2);
    ActionMaps maps;
    maps.actObj = [&](Id y, Id g2) { return second->act_o(y, g2); };
    // [g1, b]·j2 = [g1, (b·j2)∘delta]
    maps.actArr = [&](Id c, Id j2) {
        auto [x, g1, b] = Y.pairs[Y.rep[c]];
        Id g2 = sg2->G->src(j2);
        Id b2 = X.comp_chain({second->act_a(b, j2), cells.delta(x, g1, g2)});
        return Y.cls(second->act_o(x, g2), g1, b2);
    };
    maps.beta = [&](Id y, Id g, Id h) { return Y.q.arr[second->b(y, g, h)]; };
    maps.epsilon = [&](Id y) { return Y.q.arr[second->epsilon[y]]; };
    s.induced = share(assemble_action(sg2, Side::right, Y.carrier, muY, maps));
    s.Z = prequotient(s.induced);
    s.W = prequotient(wap);
    s.Phi = GroupoidFunctor{s.Z.carrier, s.W.carrier, {}, {}};
    for (Id x = 0; x < wa.nx(); ++x) s.Phi.obj.push_back(x);
    for (Id c = 0; c < s.Z.carrier->num_arrows(); ++c) {
        auto [x, g2, cy] = s.Z.pairs[s.Z.rep[c]];
        auto [xg2, g1, b] = Y.pairs[Y.rep[cy]];
        (void)xg2;
        s.Phi.arr.push_back(s.W.cls(x, cells.pair(g1, g2), X.comp_chain({b, cells.xi(x, g1, g2)})));
    }
    check_structure(s.Phi);
    return s;
}

Verdict check_quotient_in_stages(const StagedQuotient& s) {
    if (Verdict v = check_a2_a4(*s.first); !v) return v.scoped("first");
    if (Verdict v = check_a2_a4(*s.induced); !v) return v.scoped("induced");
    if (Verdict v = validate_functor(s.Phi); !v) return v.scoped("Phi");
    for (Id x = 0; x < s.Z.carrier->num_objects(); ++x)
        if (s.Phi.obj[x] != x) return Verdict::fail("Phi-objects", {x});
    if (Verdict v = is_equivalence(s.Phi); !v) return v.scoped("Phi");
    return Verdict::ok();
}

ActionMapQuotient action_map_quotient(const ActionPtr& wap) {
    const WeakAction& wa = *wap;
    if (wa.side != Side::right) throw StructuralError("action_map_quotient: right actions only");
    const auto& sg = *wa.sg;
    const auto& X = *wa.X;
    const auto& G = *sg.G;
    ActionMapQuotient r;
    r.diagonal = share(diagonal_action(wa, self_action(wa.sg, Side::left)));
    // The diagonal acts on the same pullback X ×_{mu, t} G as the action map.
    if (r.diagonal->nx() != wa.dom.g->num_objects()) throw StructuralError("action_map_quotient: pair groupoids differ");
    GroupoidFunctor P = wa.act;
    P.dom = r.diagonal->X;
    r.fibred = FiberedAction{r.diagonal, P, {}};
    // gamma((x, g), h) : xg -> (xh)(h⁻¹g) is beta(x, h, h⁻¹g) after x·k⁻¹, where
    // k = lambda_g ∘ (iota_r(h)·g) ∘ alpha(h, h⁻¹, g) : h(h⁻¹g) -> g.
    for (auto [p, h] : r.diagonal->dom.objs) {
        auto [x, g] = wa.dom.objs[p];
        Id hi = sg.inverse(h);
        Id k = G.comp_chain({sg.lambda[g], sg.rw(sg.iota_r[h], g), sg.a(h, hi, g)});
        r.fibred.gamma.push_back(
            X.comp_chain({beta_or_none(wa, x, h, sg.mul(hi, g)), wa.act_a(X.unit(x), inv_or_none(G, k))}));
    }
    r.pq = prequotient(r.diagonal);
    r.Phi = universal_map(r.pq, r.fibred);
    return r;
}

}  // namespace stacky
