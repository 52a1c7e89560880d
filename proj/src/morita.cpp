#include "stacky/morita.hpp"

#include <set>

#include "detail.hpp"

namespace stacky {

using detail::eq;
using detail::inv_or_none;
using Ids = std::vector<Id>;

StackyBibundle assemble_bibundle(ActionPtr left, ActionPtr right, const std::function<Id(Id, Id, Id)>& tau) {
    if (left->side != Side::left || right->side != Side::right)
        throw StructuralError("assemble_bibundle: actions on the wrong sides");
    if (left->X != right->X && *left->X != *right->X)
        throw StructuralError("assemble_bibundle: actions on different carriers");
    StackyBibundle bb{std::move(left), std::move(right), {}};
    const auto& L = *bb.left;
    const auto& R = *bb.right;
    const int n1 = bb.sg1()->n(), n2 = bb.sg2()->n(), nx = bb.X()->num_objects();
    bb.tau.assign(static_cast<std::size_t>(n1) * nx * n2, kNone);
    for (Id g1 = 0; g1 < n1; ++g1)
        for (Id x = 0; x < nx; ++x) {
            if (L.act_o(g1, x) == kNone) continue;
            for (Id g2 = 0; g2 < n2; ++g2)
                if (R.act_o(x, g2) != kNone) bb.tau[bb.tau_index(g1, x, g2)] = tau(g1, x, g2);
        }
    return bb;
}

// ---------------------------------------------------------------- coherence

namespace {

struct Ctx {
    const StackyBibundle& bb;
    const WeakAction& L;
    const WeakAction& R;
    const StackyGroupoid& G1;
    const StackyGroupoid& G2;
    const FiniteGroupoid& X;
    explicit Ctx(const StackyBibundle& b)
        : bb(b), L(*b.left), R(*b.right), G1(*b.sg1()), G2(*b.sg2()), X(*b.X()) {}

    Id lo(Id g1, Id x) const { return L.act_o(g1, x); }
    Id ro(Id x, Id g2) const { return R.act_o(x, g2); }
    // g1·a and a·g2 on arrows of X, g fixed
    Id la(Id g1, Id a) const { return a == kNone ? kNone : L.act_a(G1.G->unit(g1), a); }
    Id ra(Id a, Id g2) const { return a == kNone ? kNone : R.act_a(a, G2.G->unit(g2)); }
    Id tau(Id g1, Id x, Id g2) const {
        if (g1 == kNone || x == kNone || g2 == kNone) return kNone;
        return bb.t(g1, x, g2);
    }
    Id comp(std::initializer_list<Id> as) const { return X.comp_chain(as); }
    Id inv(Id a) const { return inv_or_none(X, a); }
};

bool d_g1g1xg2(const Ctx& c, Id g1, Id g1p, Id x, Id g2) {
    Id gg = c.G1.mul(g1, g1p);
    Id lhs = c.comp({c.tau(gg, x, g2), c.inv(c.L.b(c.ro(x, g2), g1, g1p))});
    Id rhs = c.comp({c.ra(c.inv(c.L.b(x, g1, g1p)), g2), c.tau(g1, c.lo(g1p, x), g2),
                     c.la(g1, c.tau(g1p, x, g2))});
    return eq(lhs, rhs);
}

bool d_g1xg2g2(const Ctx& c, Id g1, Id x, Id g2, Id g2p) {
    Id gg = c.G2.mul(g2, g2p);
    Id lhs = c.comp({c.R.b(c.lo(g1, x), g2, g2p), c.tau(g1, x, gg)});
    Id rhs = c.comp({c.ra(c.tau(g1, x, g2), g2p), c.tau(g1, c.ro(x, g2), g2p), c.la(g1, c.R.b(x, g2, g2p))});
    return eq(lhs, rhs);
}

bool d_1xg2(const Ctx& c, Id x, Id g2) {
    Id one = c.G1.one(c.L.mu.obj[x]);
    Id lhs = c.comp({c.ra(c.L.epsilon[x], g2), c.tau(one, x, g2)});
    return eq(lhs, c.L.epsilon[c.ro(x, g2)]);
}

bool d_g1x1(const Ctx& c, Id g1, Id x) {
    Id one = c.G2.one(c.R.mu.obj[x]);
    Id lhs = c.comp({c.R.epsilon[c.lo(g1, x)], c.tau(g1, x, one)});
    return eq(lhs, c.la(g1, c.R.epsilon[x]));
}

}  // namespace

Verdict check_bibundle(const StackyBibundle& bb) {
    if (Verdict v = check_a2_a4(*bb.left); !v) return v.scoped("left");
    if (Verdict v = check_a2_a4(*bb.right); !v) return v.scoped("right");
    Ctx c(bb);
    const auto& X = c.X;
    const auto& G1 = *c.G1.G;
    const auto& G2 = *c.G2.G;
    const int n1 = c.G1.n(), n2 = c.G2.n(), nx = X.num_objects();

    for (Id g1 = 0; g1 < n1; ++g1)
        for (Id x = 0; x < nx; ++x)
            if (Id y = c.lo(g1, x); y != kNone && c.R.mu.obj[y] != c.R.mu.obj[x])
                return Verdict::fail("left-fibre", {g1, x});
    for (Id x = 0; x < nx; ++x)
        for (Id g2 = 0; g2 < n2; ++g2)
            if (Id y = c.ro(x, g2); y != kNone && c.L.mu.obj[y] != c.L.mu.obj[x])
                return Verdict::fail("right-fibre", {x, g2});

    for (Id g1 = 0; g1 < n1; ++g1)
        for (Id x = 0; x < nx; ++x) {
            if (c.lo(g1, x) == kNone) continue;
            for (Id g2 = 0; g2 < n2; ++g2) {
                if (c.ro(x, g2) == kNone) continue;
                if (!detail::endpoints(X, bb.t(g1, x, g2), c.lo(g1, c.ro(x, g2)), c.ro(c.lo(g1, x), g2)))
                    return Verdict::fail("tau-shape", {g1, x, g2});
            }
        }

    // tau(g1', x', g2') ∘ j1·(a·j2) = (j1·a)·j2 ∘ tau(g1, x, g2)
    for (Id a = 0; a < X.num_arrows(); ++a) {
        Id x = X.src(a), xp = X.tgt(a);
        for (Id j1 = 0; j1 < G1.num_arrows(); ++j1) {
            if (c.lo(G1.src(j1), x) == kNone || c.lo(G1.tgt(j1), xp) == kNone) continue;
            for (Id j2 = 0; j2 < G2.num_arrows(); ++j2) {
                if (c.ro(x, G2.src(j2)) == kNone || c.ro(xp, G2.tgt(j2)) == kNone) continue;
                Id lhs = c.comp({c.tau(G1.tgt(j1), xp, G2.tgt(j2)), c.L.act_a(j1, c.R.act_a(a, j2))});
                Id rhs = c.comp({c.R.act_a(c.L.act_a(j1, a), j2), c.tau(G1.src(j1), x, G2.src(j2))});
                if (!eq(lhs, rhs)) return Verdict::fail("tau-natural", {j1, a, j2});
            }
        }
    }

    Verdict v = detail::first_witness(Exec::parallel, static_cast<std::size_t>(nx), "g1g1'xg2",
                                      [&](std::size_t xi, Ids* out) {
        Id x = static_cast<Id>(xi);
        for (Id g1p = 0; g1p < n1; ++g1p) {
            if (c.lo(g1p, x) == kNone) continue;
            for (Id g1 = 0; g1 < n1; ++g1) {
                if (c.G1.mul(g1, g1p) == kNone) continue;
                for (Id g2 = 0; g2 < n2; ++g2) {
                    if (c.ro(x, g2) == kNone) continue;
                    if (!d_g1g1xg2(c, g1, g1p, x, g2)) {
                        if (out) *out = {g1, g1p, x, g2};
                        return true;
                    }
                }
            }
        }
        return false;
    });
    if (!v) return v;
    v = detail::first_witness(Exec::parallel, static_cast<std::size_t>(nx), "g1xg2g2'", [&](std::size_t xi, Ids* out) {
        Id x = static_cast<Id>(xi);
        for (Id g1 = 0; g1 < n1; ++g1) {
            if (c.lo(g1, x) == kNone) continue;
            for (Id g2 = 0; g2 < n2; ++g2) {
                if (c.ro(x, g2) == kNone) continue;
                for (Id g2p = 0; g2p < n2; ++g2p) {
                    if (c.G2.mul(g2, g2p) == kNone) continue;
                    if (!d_g1xg2g2(c, g1, x, g2, g2p)) {
                        if (out) *out = {g1, x, g2, g2p};
                        return true;
                    }
                }
            }
        }
        return false;
    });
    if (!v) return v;
    for (Id x = 0; x < nx; ++x)
        for (Id g2 = 0; g2 < n2; ++g2)
            if (c.ro(x, g2) != kNone && !d_1xg2(c, x, g2)) return Verdict::fail("1xg2", {x, g2});
    for (Id g1 = 0; g1 < n1; ++g1)
        for (Id x = 0; x < nx; ++x)
            if (c.lo(g1, x) != kNone && !d_g1x1(c, g1, x)) return Verdict::fail("g1x1", {g1, x});
    return Verdict::ok();
}

// ---------------------------------------------------------------- principality

namespace {

// The action on the fibres of the other moment, gamma all units.
FiberedAction over_other_moment(const ActionPtr& a, const GroupoidFunctor& P) {
    FiberedAction fa{a, P, {}};
    const auto& M = *P.cod;
    for (const auto& [p, q] : a->dom.objs) {
        Id x = a->side == Side::right ? p : q;
        fa.gamma.push_back(M.unit(P.obj[x]));
    }
    return fa;
}

}  // namespace

BiprincipalReport is_biprincipal(const StackyBibundle& bb) {
    BiprincipalReport r;
    r.left = check_principal_bundle(over_other_moment(bb.left, bb.mu2()));
    r.right = check_principal_bundle(over_other_moment(bb.right, bb.mu1()));
    if (!r.left)
        r.combined = r.left.scoped("left");
    else if (!r.right)
        r.combined = r.right.scoped("right");
    return r;
}

// ---------------------------------------------------------------- constructions

StackyBibundle self_bibundle(const SgPtr& sg) {
    auto L = share(self_action(sg, Side::left));
    auto R = share(self_action(sg, Side::right));
    return assemble_bibundle(L, R, [&](Id g1, Id x, Id g2) { return sg->a(g1, x, g2); });
}

RestrictionBibundle restriction_bibundle(const SgPtr& sgp, Id x0) {
    const auto& sg = *sgp;
    auto iso = isotropy_2group(sg, x0);
    RestrictionBibundle r;
    r.isotropy = share(std::move(iso.sg));
    std::vector<bool> keep(sg.n());
    for (Id g = 0; g < sg.n(); ++g) keep[g] = sg.src_base(g) == x0;
    r.fibre = full_subgroupoid(sg.G, keep);
    const auto& F = r.fibre;
    const auto& I = iso.sub;
    Ids t;
    for (Id g : F.objMap) t.push_back(sg.tgt_base(g));
    auto mu1 = to_discrete(F.g, sg.M, t);
    auto mu2 = to_discrete(F.g, r.isotropy->M, Ids(F.g->num_objects(), 0));

    ActionMaps lm;
    lm.actObj = [&](Id g, Id y) { return F.objBack[sg.mul(g, F.objMap[y])]; };
    lm.actArr = [&](Id j, Id a) { return F.arrBack[sg.mul_arr(j, F.arrMap[a])]; };
    lm.beta = [&](Id h, Id g, Id y) { return F.arrBack[sg.G->inv(sg.a(h, g, F.objMap[y]))]; };
    lm.epsilon = [&](Id y) { return F.arrBack[sg.lambda[F.objMap[y]]]; };
    auto L = share(assemble_action(sgp, Side::left, F.g, mu1, lm));

    ActionMaps rm;
    rm.actObj = [&](Id y, Id k) { return F.objBack[sg.mul(F.objMap[y], I.objMap[k])]; };
    rm.actArr = [&](Id a, Id j) { return F.arrBack[sg.mul_arr(F.arrMap[a], I.arrMap[j])]; };
    rm.beta = [&](Id y, Id k, Id l) { return F.arrBack[sg.a(F.objMap[y], I.objMap[k], I.objMap[l])]; };
    rm.epsilon = [&](Id y) { return F.arrBack[sg.rho[F.objMap[y]]]; };
    auto R = share(assemble_action(r.isotropy, Side::right, F.g, mu2, rm));

    r.bb = assemble_bibundle(L, R, [&](Id g, Id y, Id k) {
        return F.arrBack[sg.a(g, F.objMap[y], I.objMap[k])];
    });
    return r;
}

StackyBibundle lift_strict_bibundle(const StrictBibundle& sb, SgPtr sg1, SgPtr sg2) {
    if (!sg1) sg1 = share(strict_presentation(sb.G));
    if (!sg2) sg2 = share(strict_presentation(sb.H));
    if (*sg1->G != FiniteGroupoid::discrete(sb.G->num_arrows()) || *sg2->G != FiniteGroupoid::discrete(sb.H->num_arrows()))
        throw StructuralError("lift_strict_bibundle: presentations do not match");
    auto X = discrete_groupoid(sb.points);
    // discrete carrier and discrete G's: arrow ids are object ids
    ActionMaps lm;
    lm.actObj = [&](Id g, Id p) { return sb.left.act(p, g); };
    lm.actArr = lm.actObj;
    lm.beta = [&](Id h, Id g, Id p) { return sb.left.act(sb.left.act(p, g), h); };
    lm.epsilon = [](Id p) { return p; };
    auto L = share(assemble_action(sg1, Side::left, X, to_discrete(X, sg1->M, sb.a), lm));
    ActionMaps rm;
    rm.actObj = [&](Id p, Id h) { return sb.right.act(p, h); };
    rm.actArr = rm.actObj;
    rm.beta = [&](Id p, Id h, Id k) { return sb.right.act(sb.right.act(p, h), k); };
    rm.epsilon = [](Id p) { return p; };
    auto R = share(assemble_action(sg2, Side::right, X, to_discrete(X, sg2->M, sb.b), rm));
    return assemble_bibundle(L, R, [&](Id g, Id p, Id h) { return sb.left.act(sb.right.act(p, h), g); });
}

StackyBibundle flip_bibundle(const StackyBibundle& bb) {
    auto L = share(invert_action(*bb.right));
    auto R = share(invert_action(*bb.left));
    const auto& X = *bb.X();
    return assemble_bibundle(L, R, [&](Id g2, Id x, Id g1) {
        Id t = bb.t(bb.sg1()->inverse(g1), x, bb.sg2()->inverse(g2));
        return inv_or_none(X, t);
    });
}

// ---------------------------------------------------------------- composition

ComposedBibundle compose_bibundles(const StackyBibundle& bb1, const StackyBibundle& bb2) {
    if (bb1.sg2() != bb2.sg1()) throw StructuralError("compose_bibundles: middle presentations differ");
    const auto& L1 = *bb1.left;
    const auto& R2 = *bb2.right;
    const auto& G = *bb1.sg2();
    const auto& X = *bb1.X();
    const auto& Y = *bb2.X();
    ComposedBibundle c;
    c.XY = strict_pullback(bb1.right->mu, bb2.left->mu);
    c.middle = share(diagonal_action(*bb1.right, *bb2.left));
    c.pq = prequotient(c.middle);
    const auto& XY = c.XY;
    const auto& pq = c.pq;
    const auto& Z = *pq.carrier;
    auto q = [&](Id b1, Id b2) { return pq.q.arr[XY.arr(b1, b2)]; };

    // Each member of the class must descend to the same class.
    auto descend = [&](Id cArr, Id j, const std::function<Id(Id, Id, Id)>& move) {
        Id out = kNone;
        for (Id m : pq.members[cArr]) {
            auto [z, g, b] = pq.pairs[m];
            Id v = move(z, g, b);
            if (v == kNone || (out != kNone && v != out))
                throw CheckFailed("descent", Verdict::fail("descent", {j, cArr}));
            out = v;
        }
        return out;
    };

    Ids m1, m2;
    for (const auto& [x, y] : XY.objs) {
        m1.push_back(bb1.mu1().obj[x]);
        m2.push_back(bb2.mu2().obj[y]);
    }
    ActionMaps lm;
    lm.actObj = [&](Id g1, Id z) { return XY.obj(L1.act_o(g1, XY.objs[z][0]), XY.objs[z][1]); };
    lm.actArr = [&](Id j1, Id cArr) {
        Id g1 = bb1.sg1()->G->src(j1);
        return descend(cArr, j1, [&](Id z, Id g, Id b) {
            auto [x, y] = XY.objs[z];
            auto [b1, b2] = XY.arrs[b];
            Id nb1 = X.comp(L1.act_a(j1, b1), inv_or_none(X, bb1.t(g1, x, g)));
            Id z2 = XY.obj(L1.act_o(g1, x), y);
            if (nb1 == kNone || z2 == kNone) return kNone;
            return pq.cls(z2, g, XY.arr(nb1, b2));
        });
    };
    lm.beta = [&](Id h1, Id g1, Id z) {
        auto [x, y] = XY.objs[z];
        return q(L1.b(x, h1, g1), Y.unit(y));
    };
    lm.epsilon = [&](Id z) { return q(L1.epsilon[XY.objs[z][0]], Y.unit(XY.objs[z][1])); };
    auto L = share(assemble_action(bb1.sg1(), Side::left, pq.carrier, to_discrete(pq.carrier, bb1.sg1()->M, m1), lm));

    ActionMaps rm;
    rm.actObj = [&](Id z, Id g2) { return XY.obj(XY.objs[z][0], R2.act_o(XY.objs[z][1], g2)); };
    rm.actArr = [&](Id cArr, Id j2) {
        Id g2 = bb2.sg2()->G->src(j2);
        return descend(cArr, j2, [&](Id z, Id g, Id b) {
            auto [x, y] = XY.objs[z];
            auto [b1, b2] = XY.arrs[b];
            Id nb2 = Y.comp(R2.act_a(b2, j2), bb2.t(G.inverse(g), y, g2));
            Id z2 = XY.obj(x, R2.act_o(y, g2));
            if (nb2 == kNone || z2 == kNone) return kNone;
            return pq.cls(z2, g, XY.arr(b1, nb2));
        });
    };
    rm.beta = [&](Id z, Id g2, Id h2) {
        auto [x, y] = XY.objs[z];
        return q(X.unit(x), R2.b(y, g2, h2));
    };
    rm.epsilon = [&](Id z) { return q(X.unit(XY.objs[z][0]), R2.epsilon[XY.objs[z][1]]); };
    auto R = share(assemble_action(bb2.sg2(), Side::right, pq.carrier, to_discrete(pq.carrier, bb2.sg2()->M, m2), rm));

    c.bb = assemble_bibundle(L, R, [&](Id g1, Id z, Id g2) { return Z.unit(L->act_o(g1, R->act_o(z, g2))); });
    return c;
}

CompositionStages composition_stages(const StackyBibundle& bb1, const StackyBibundle& bb2, const ComposedBibundle& c) {
    CompositionStages s;
    if (Verdict v = check_bibundle(bb1); !v)
        s.inputs = v.scoped("bb1");
    else if (Verdict w = check_bibundle(bb2); !w)
        s.inputs = w.scoped("bb2");
    s.f1 = is_biprincipal(bb1).right;
    s.f3 = is_biprincipal(bb2).right;
    s.middle = check_principal(c.middle).principal;
    if (Verdict v = check_bibundle(c.bb); !v)
        s.carrier = v;
    else
        s.carrier = is_biprincipal(c.bb).combined;
    return s;
}

GroupoidFunctor carrier_to_tensor(const ComposedBibundle& c, const StrictBibundle& P, const StrictBibundle& Q,
                                  const StrictBibundle& PQ) {
    const auto& H = *P.H;
    Ids obj;
    for (const auto& [x, y] : c.XY.objs) {
        Id found = kNone;
        for (Id p = 0; p < PQ.points && found == kNone; ++p)
            for (Id h = 0; h < H.num_arrows(); ++h) {
                Id hi = H.inv(h);
                if (!P.right.defined(x, h) || !Q.left.defined(y, hi)) continue;
                if (P.right.act(x, h) == PQ.parts[p][0] && Q.left.act(y, hi) == PQ.parts[p][1]) {
                    found = p;
                    break;
                }
            }
        if (found == kNone) throw CheckFailed("tensor-orbit", Verdict::fail("tensor-orbit", {x, y}));
        obj.push_back(found);
    }
    return to_discrete(c.pq.carrier, discrete_groupoid(PQ.points), obj);
}

// ---------------------------------------------------------------- rigidity

GroupoidFunctor strictify_if_groupoid(const StackyBibundle& bb, const GroupoidFunctor& label) {
    const auto& K = *bb.sg1();
    const auto& S = *bb.sg2();
    const auto& X = *bb.X();
    if (Verdict v = is_representable(X); !v) throw CheckFailed("carrier-representable", v);
    if (Verdict v = is_biprincipal(bb).combined; !v) throw CheckFailed("biprincipal", v);
    if (K.M->num_objects() != S.M->num_objects()) throw StructuralError("strictify: bases differ");
    if (!K.G->is_discrete()) throw StructuralError("strictify: left presentation is not strict");
    if (label.dom != bb.X() || label.cod != K.G) throw StructuralError("strictify: label has the wrong ends");
    if (Verdict v = is_equivalence(label); !v) throw CheckFailed("label", v.scoped("label"));
    for (Id x = 0; x < X.num_objects(); ++x) {
        Id k = label.obj[x];
        if (bb.mu1().obj[x] != K.tgt_base(k) || bb.mu2().obj[x] != K.src_base(k))
            throw CheckFailed("label", Verdict::fail("label-moment", {x}));
        for (Id g = 0; g < K.n(); ++g)
            if (Id y = bb.left->act_o(g, x); y != kNone && label.obj[y] != K.mul(g, k))
                throw CheckFailed("label", Verdict::fail("label-equivariant", {g, x}));
    }
    // x_m: least object labelled by the unit at m
    Ids at(K.M->num_objects(), kNone);
    for (Id x = X.num_objects() - 1; x >= 0; --x)
        if (K.one(K.tgt_base(label.obj[x])) == label.obj[x]) at[K.tgt_base(label.obj[x])] = x;
    Ids F;
    for (Id g = 0; g < S.n(); ++g) {
        Id x = at[S.tgt_base(g)];
        Id y = x == kNone ? kNone : bb.right->act_o(x, g);
        if (y == kNone) throw CheckFailed("strictify", Verdict::fail("no-unit-point", {g}));
        F.push_back(label.obj[y]);
    }
    GroupoidFunctor f;
    try {
        f = to_discrete(S.G, K.G, F);
    } catch (const StructuralError&) {
        throw CheckFailed("strictify", Verdict::fail("not-constant", {}));
    }
    for (Id g = 0; g < S.n(); ++g) {
        if (K.src_base(F[g]) != S.src_base(g)) throw CheckFailed("preserve-s", Verdict::fail("preserve-s", {g}));
        if (K.tgt_base(F[g]) != S.tgt_base(g)) throw CheckFailed("preserve-t", Verdict::fail("preserve-t", {g}));
    }
    for (Id m = 0; m < S.M->num_objects(); ++m)
        if (F[S.one(m)] != K.one(m)) throw CheckFailed("preserve-u", Verdict::fail("preserve-u", {m}));
    for (Id g = 0; g < S.n(); ++g)
        for (Id h = 0; h < S.n(); ++h)
            if (Id gh = S.mul(g, h); gh != kNone && F[gh] != K.mul(F[g], F[h]))
                throw CheckFailed("preserve-m", Verdict::fail("preserve-m", {g, h}));
    if (Verdict v = is_equivalence(f); !v) throw CheckFailed("equivalence", v);
    return f;
}

RepresentableReport representable_pipeline(const StackyBibundle& bb) {
    RepresentableReport r;
    if (Verdict v = check_bibundle(bb); !v)
        r.biprincipal = v;
    else
        r.biprincipal = is_biprincipal(bb).combined;
    r.carrier = is_representable(*bb.X());
    r.source = bb.sg1()->G->is_discrete() ? is_representable(*bb.sg1()->G) : Verdict::fail("source-strict", {});
    r.target = is_representable(*bb.sg2()->G);
    return r;
}

// ---------------------------------------------------------------- prequantization analogue

PrequantizationAnalogue discrete_prequantization_example(const FiniteGroup& K, const FiniteGroup& H,
                                                         const std::vector<Id>& inclusion, int n) {
    if (n < 1) throw StructuralError("prequantization: empty base");
    CrossedModuleData cm{H, K, inclusion};
    if (Verdict v = validate_crossed_module(cm); !v) throw CheckFailed("subgroup", v);
    std::set<Id> image(inclusion.begin(), inclusion.end());
    if (static_cast<int>(image.size()) != H.order) throw CheckFailed("subgroup", Verdict::fail("injective", {}));

    PrequantizationAnalogue p;
    p.quotient2group = share(from_crossed_module(cm));
    p.gauge = share(product_presentation(strict_presentation(pair_groupoid(n)), *p.quotient2group));
    p.restriction = restriction_bibundle(p.gauge, 0);
    p.bibundle = check_bibundle(p.restriction.bb);
    p.principal = is_biprincipal(p.restriction.bb);
    Ids comp = components(*p.quotient2group->G);
    p.pi0 = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    const auto& I = *p.restriction.isotropy->G;
    const auto& Q = *p.quotient2group->G;
    p.isotropyMatches = I.num_objects() == Q.num_objects() && I.num_arrows() == Q.num_arrows();
    return p;
}

}  // namespace stacky
