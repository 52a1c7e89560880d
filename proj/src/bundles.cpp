#include "stacky/bundles.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "detail.hpp"

namespace stacky {

using detail::UnionFind;

namespace {

// Point reached from x along g, kNone when g does not act on x.
Id move(const SetAction& sa, Id x, Id g) { return sa.defined(x, g) ? sa.act(x, g) : kNone; }

}  // namespace

Verdict is_principal_set_bundle(const SetAction& sa, const std::vector<Id>& r, int baseSize) {
    if (Verdict v = validate_set_action(sa); !v) throw CheckFailed("is_principal_set_bundle: invalid action", v);
    if (static_cast<int>(r.size()) != sa.points) throw StructuralError("is_principal_set_bundle: base map length");
    for (Id s : r)
        if (s < 0 || s >= baseSize) throw StructuralError("is_principal_set_bundle: base map out of range");
    const auto& G = *sa.G;
    for (Id x = 0; x < sa.points; ++x)
        for (Id g = 0; g < G.num_arrows(); ++g)
            if (Id y = move(sa, x, g); y != kNone && r[y] != r[x])
                throw CheckFailed("is_principal_set_bundle: not an action on the fibres", Verdict::fail("fibre", {x, g}));

    std::vector<bool> hit(baseSize, false);
    for (Id s : r) hit[s] = true;
    for (Id s = 0; s < baseSize; ++s)
        if (!hit[s]) return Verdict::fail("surjective", {s});
    // (x, y) -> the arrow taking x to y, if any
    std::map<std::pair<Id, Id>, Id> seen;
    for (Id x = 0; x < sa.points; ++x)
        for (Id g = 0; g < G.num_arrows(); ++g) {
            Id y = move(sa, x, g);
            if (y == kNone) continue;
            auto [it, fresh] = seen.emplace(std::pair{x, y}, g);
            if (!fresh) return Verdict::fail("injective", {x, it->second, g});
        }
    for (Id x = 0; x < sa.points; ++x)
        for (Id y = 0; y < sa.points; ++y)
            if (r[x] == r[y] && !seen.count({x, y})) return Verdict::fail("pair", {x, y});
    return Verdict::ok();
}

StrictBibundle make_bibundle(const GroupoidPtr& G, const GroupoidPtr& H, int points, std::vector<Id> a,
                             std::vector<Id> b, const std::function<Id(Id, Id)>& leftAct,
                             const std::function<Id(Id, Id)>& rightAct) {
    StrictBibundle bb{G, H, points, a, b, {}, {}, {}};
    bb.left = make_set_action(G, points, std::move(a), Side::left, leftAct);
    bb.right = make_set_action(H, points, std::move(b), Side::right, rightAct);
    return bb;
}

Verdict validate_bibundle(const StrictBibundle& bb) {
    if (Verdict v = validate_set_action(bb.left); !v) return v.scoped("left");
    if (Verdict v = validate_set_action(bb.right); !v) return v.scoped("right");
    const auto& G = *bb.G;
    const auto& H = *bb.H;
    for (Id p = 0; p < bb.points; ++p)
        for (Id g = 0; g < G.num_arrows(); ++g)
            if (Id q = move(bb.left, p, g); q != kNone && bb.b[q] != bb.b[p]) return Verdict::fail("left-fibre", {g, p});
    for (Id p = 0; p < bb.points; ++p)
        for (Id h = 0; h < H.num_arrows(); ++h)
            if (Id q = move(bb.right, p, h); q != kNone && bb.a[q] != bb.a[p]) return Verdict::fail("right-fibre", {p, h});
    for (Id p = 0; p < bb.points; ++p)
        for (Id g = 0; g < G.num_arrows(); ++g) {
            Id gp = move(bb.left, p, g);
            if (gp == kNone) continue;
            for (Id h = 0; h < H.num_arrows(); ++h) {
                Id ph = move(bb.right, p, h);
                if (ph == kNone) continue;
                if (move(bb.right, gp, h) != move(bb.left, ph, g)) return Verdict::fail("commute", {g, p, h});
            }
        }
    return Verdict::ok();
}

Verdict is_right_principal(const StrictBibundle& bb) {
    return is_principal_set_bundle(bb.right, bb.a, bb.G->num_objects());
}

Verdict is_left_principal(const StrictBibundle& bb) {
    return is_principal_set_bundle(bb.left, bb.b, bb.H->num_objects());
}

Verdict is_biprincipal(const StrictBibundle& bb) {
    if (Verdict v = is_right_principal(bb); !v) return v.scoped("right");
    if (Verdict v = is_left_principal(bb); !v) return v.scoped("left");
    return Verdict::ok();
}

StrictBibundle bibundle_from_morphism(const GroupoidFunctor& phi) {
    if (Verdict v = validate_functor(phi); !v) throw CheckFailed("bibundle_from_morphism: invalid functor", v);
    const auto& G = *phi.dom;
    const auto& H = *phi.cod;
    std::vector<std::array<Id, 2>> parts;
    std::map<std::array<Id, 2>, Id> index;
    for (Id g0 = 0; g0 < G.num_objects(); ++g0)
        for (Id h : H.in(phi.obj[g0])) {
            index[{g0, h}] = static_cast<Id>(parts.size());
            parts.push_back({g0, h});
        }
    std::vector<Id> a, b;
    for (auto [g0, h] : parts) a.push_back(g0), b.push_back(H.src(h));
    auto at = [&](Id g0, Id h) { return index.at({g0, h}); };
    auto bb = make_bibundle(
        phi.dom, phi.cod, static_cast<int>(parts.size()), a, b,
        [&](Id p, Id g) { return at(G.tgt(g), H.comp(phi.arr[g], parts[p][1])); },
        [&](Id p, Id h) { return at(parts[p][0], H.comp(parts[p][1], h)); });
    bb.parts = std::move(parts);
    return bb;
}

StrictBibundle transpose_bibundle(const StrictBibundle& bb) {
    const auto& G = *bb.G;
    const auto& H = *bb.H;
    auto t = make_bibundle(
        bb.H, bb.G, bb.points, bb.b, bb.a, [&](Id p, Id h) { return bb.right.act(p, H.inv(h)); },
        [&](Id p, Id g) { return bb.left.act(p, G.inv(g)); });
    t.parts = bb.parts;
    return t;
}

StrictBibundle tensor_bibundles(const StrictBibundle& P, const StrictBibundle& Q) {
    if (*P.H != *Q.G) throw StructuralError("tensor_bibundles: middle groupoids differ");
    if (Verdict v = is_right_principal(P); !v) throw CheckFailed("tensor_bibundles: P is not right principal", v);
    const auto& H = *P.H;
    std::vector<std::array<Id, 2>> pairs;
    std::map<std::array<Id, 2>, Id> index;
    for (Id z = 0; z < P.points; ++z)
        for (Id w = 0; w < Q.points; ++w)
            if (P.b[z] == Q.a[w]) {
                index[{z, w}] = static_cast<Id>(pairs.size());
                pairs.push_back({z, w});
            }
    UnionFind uf(pairs.size());
    for (Id k = 0; k < static_cast<Id>(pairs.size()); ++k) {
        auto [z, w] = pairs[k];
        for (Id h : H.in(P.b[z])) uf.join(k, index.at({P.right.act(z, h), Q.left.act(w, H.inv(h))}));
    }
    // pairs are enumerated in lexicographic order, so roots are least representatives
    std::vector<Id> orbit(pairs.size(), kNone);
    std::vector<std::array<Id, 2>> reps;
    for (Id k = 0; k < static_cast<Id>(pairs.size()); ++k)
        if (uf.find(k) == k) {
            orbit[k] = static_cast<Id>(reps.size());
            reps.push_back(pairs[k]);
        }
    auto cls = [&](Id z, Id w) { return orbit[uf.find(index.at({z, w}))]; };
    std::vector<Id> a, b;
    for (auto [z, w] : reps) a.push_back(P.a[z]), b.push_back(Q.b[w]);
    auto bb = make_bibundle(
        P.G, Q.H, static_cast<int>(reps.size()), a, b,
        [&](Id o, Id g) { return cls(P.left.act(reps[o][0], g), reps[o][1]); },
        [&](Id o, Id k) { return cls(reps[o][0], Q.right.act(reps[o][1], k)); });
    bb.parts = std::move(reps);
    return bb;
}

std::optional<std::vector<Id>> find_bibundle_isomorphism(const StrictBibundle& P, const StrictBibundle& Q) {
    if (*P.G != *Q.G || *P.H != *Q.H) throw StructuralError("find_bibundle_isomorphism: groupoids differ");
    if (P.points != Q.points) return std::nullopt;
    const int nG = P.G->num_arrows(), nH = P.H->num_arrows();
    // orbits of P under both actions, each listed from its least point
    std::vector<std::vector<Id>> orbits;
    std::vector<bool> placed(P.points, false);
    for (Id p = 0; p < P.points; ++p) {
        if (placed[p]) continue;
        std::vector<Id> orb{p};
        placed[p] = true;
        for (std::size_t i = 0; i < orb.size(); ++i) {
            auto visit = [&](Id q) {
                if (q != kNone && !placed[q]) placed[q] = true, orb.push_back(q);
            };
            for (Id g = 0; g < nG; ++g) visit(move(P.left, orb[i], g));
            for (Id h = 0; h < nH; ++h) visit(move(P.right, orb[i], h));
        }
        orbits.push_back(std::move(orb));
    }

    std::vector<Id> f(P.points, kNone);
    std::vector<bool> used(Q.points, false);
    // Extends f from f(orbit[0]) = q along every generator; false on conflict.
    auto propagate = [&](const std::vector<Id>& orb, Id q) {
        if (P.a[orb[0]] != Q.a[q] || P.b[orb[0]] != Q.b[q] || used[q]) return false;
        f[orb[0]] = q;
        used[q] = true;
        for (Id p : orb) {
            auto step = [&](Id from, Id to) {
                if (from == kNone) return true;
                if (to == kNone) return false;
                if (f[from] == kNone) {
                    if (used[to]) return false;
                    f[from] = to;
                    used[to] = true;
                    return true;
                }
                return f[from] == to;
            };
            for (Id g = 0; g < nG; ++g)
                if (!step(move(P.left, p, g), move(Q.left, f[p], g))) return false;
            for (Id h = 0; h < nH; ++h)
                if (!step(move(P.right, p, h), move(Q.right, f[p], h))) return false;
        }
        return true;
    };
    auto undo = [&](const std::vector<Id>& orb) {
        for (Id p : orb)
            if (f[p] != kNone) used[f[p]] = false, f[p] = kNone;
    };
    std::function<bool(std::size_t)> search = [&](std::size_t i) {
        if (i == orbits.size()) return true;
        for (Id q = 0; q < Q.points; ++q) {
            if (propagate(orbits[i], q) && search(i + 1)) return true;
            undo(orbits[i]);
        }
        return false;
    };
    if (!search(0)) return std::nullopt;
    return f;
}

Verdict is_weak_equivalence(const GroupoidFunctor& phi) {
    if (Verdict v = validate_functor(phi); !v) throw CheckFailed("is_weak_equivalence: invalid functor", v);
    const auto& G = *phi.dom;
    const auto& H = *phi.cod;
    std::vector<bool> reached(H.num_objects(), false);
    for (Id g0 = 0; g0 < G.num_objects(); ++g0)
        for (Id h : H.in(phi.obj[g0])) reached[H.src(h)] = true;
    for (Id h0 = 0; h0 < H.num_objects(); ++h0)
        if (!reached[h0]) return Verdict::fail("surjective", {h0});
    for (Id x = 0; x < G.num_objects(); ++x)
        for (Id y = 0; y < G.num_objects(); ++y) {
            std::set<Id> image;
            for (Id g : G.hom(x, y)) image.insert(phi.arr[g]);
            auto target = H.hom(phi.obj[x], phi.obj[y]);
            if (image.size() != G.hom(x, y).size() || image.size() != target.size())
                return Verdict::fail("cartesian", {x, y});
        }
    return Verdict::ok();
}

GaugeGroupoid gauge_groupoid(const SetAction& left, const std::vector<Id>& r, int baseSize) {
    if (left.side != Side::left) throw StructuralError("gauge_groupoid: left actions only");
    if (Verdict v = is_principal_set_bundle(left, r, baseSize); !v) throw CheckFailed("gauge_groupoid: not principal", v);
    const auto& G = *left.G;
    std::vector<std::array<Id, 2>> pairs;
    std::map<std::array<Id, 2>, Id> index;
    for (Id z = 0; z < left.points; ++z)
        for (Id w = 0; w < left.points; ++w)
            if (left.moment[z] == left.moment[w]) {
                index[{z, w}] = static_cast<Id>(pairs.size());
                pairs.push_back({z, w});
            }
    UnionFind uf(pairs.size());
    for (Id k = 0; k < static_cast<Id>(pairs.size()); ++k) {
        auto [z, w] = pairs[k];
        for (Id g : G.out(left.moment[z])) uf.join(k, index.at({left.act(z, g), left.act(w, g)}));
    }
    GaugeGroupoid gg;
    std::vector<Id> arrowOf(pairs.size(), kNone);
    for (Id k = 0; k < static_cast<Id>(pairs.size()); ++k)
        if (uf.find(k) == k) {
            arrowOf[k] = static_cast<Id>(gg.reps.size());
            gg.reps.push_back(pairs[k]);
        }
    auto cls = [&](Id z, Id w) { return arrowOf[uf.find(index.at({z, w}))]; };
    const int n = static_cast<int>(gg.reps.size());
    std::vector<Id> src(n), tgt(n), inv(n), unit(baseSize, kNone);
    for (Id k = 0; k < n; ++k) {
        auto [z, w] = gg.reps[k];
        src[k] = r[w], tgt[k] = r[z], inv[k] = cls(w, z);
    }
    for (Id z = 0; z < left.points; ++z)
        if (unit[r[z]] == kNone) unit[r[z]] = cls(z, z);
    // the unique g with g·from = to
    auto divide = [&](Id from, Id to) {
        for (Id g : G.out(left.moment[from]))
            if (left.act(from, g) == to) return g;
        return kNone;
    };
    gg.g = share(FiniteGroupoid::build(baseSize, src, tgt, unit, inv, [&](Id k1, Id k2) {
        auto [z, w] = gg.reps[k1];
        auto [w2, v] = gg.reps[k2];
        return cls(z, left.act(v, divide(w2, w)));
    }));
    return gg;
}

StrictBibundle projection_bibundle(const Pullback& XG) {
    const auto& X = *XG.left;
    const auto& G = *XG.right;
    std::vector<std::array<Id, 2>> parts;
    std::map<std::array<Id, 2>, Id> index;
    for (Id g0 = 0; g0 < G.num_objects(); ++g0)
        for (Id x = 0; x < X.num_arrows(); ++x)
            if (XG.obj(X.tgt(x), g0) != kNone) {
                index[{g0, x}] = static_cast<Id>(parts.size());
                parts.push_back({g0, x});
            }
    std::vector<Id> a, b;
    for (auto [g0, x] : parts) a.push_back(XG.obj(X.tgt(x), g0)), b.push_back(X.src(x));
    auto bb = make_bibundle(
        XG.g, XG.left, static_cast<int>(parts.size()), a, b,
        [&](Id p, Id k) {
            auto [x2, g] = XG.arrs[k];
            return index.at({G.tgt(g), X.comp(x2, parts[p][1])});
        },
        [&](Id p, Id x2) { return index.at({parts[p][0], X.comp(parts[p][1], x2)}); });
    bb.parts = std::move(parts);
    return bb;
}

StrictBibundle fibred_bibundle(const StrictBibundle& E1, const StrictBibundle& E2, const Pullback& YZ) {
    if (*E1.G != *E2.G) throw StructuralError("fibred_bibundle: left groupoids differ");
    if (*E1.H != *YZ.left || *E2.H != *YZ.right) throw StructuralError("fibred_bibundle: pullback of other groupoids");
    std::vector<std::array<Id, 2>> parts;
    std::map<std::array<Id, 2>, Id> index;
    for (Id e1 = 0; e1 < E1.points; ++e1)
        for (Id e2 = 0; e2 < E2.points; ++e2)
            if (E1.a[e1] == E2.a[e2]) {
                index[{e1, e2}] = static_cast<Id>(parts.size());
                parts.push_back({e1, e2});
            }
    std::vector<Id> a, b;
    for (auto [e1, e2] : parts) {
        Id o = YZ.obj(E1.b[e1], E2.b[e2]);
        if (o == kNone) throw StructuralError("fibred_bibundle: moments do not agree over the base");
        a.push_back(E1.a[e1]);
        b.push_back(o);
    }
    auto bb = make_bibundle(
        E1.G, YZ.g, static_cast<int>(parts.size()), a, b,
        [&](Id p, Id x) { return index.at({E1.left.act(parts[p][0], x), E2.left.act(parts[p][1], x)}); },
        [&](Id p, Id k) {
            auto [y, z] = YZ.arrs[k];
            return index.at({E1.right.act(parts[p][0], y), E2.right.act(parts[p][1], z)});
        });
    bb.parts = std::move(parts);
    return bb;
}

Verdict check_bibundle_pullback(const GroupoidFunctor& phi) {
    auto P = bibundle_from_morphism(phi);
    const auto& H = *phi.cod;
    auto tg = translation_groupoid(P.left);
    auto comma = iso_comma(phi, object_inclusion(phi.cod));
    GroupoidFunctor F{tg.g, comma.g, {}, {}};
    for (auto [g0, h] : P.parts) F.obj.push_back(comma.obj(g0, H.inv(h), H.src(h)));
    for (auto [p, g] : tg.arrs) F.arr.push_back(comma.arr(F.obj[p], g, comma.G.dom->unit(H.src(P.parts[p][1]))));
    if (Verdict v = validate_functor(F); !v) return v.scoped("functor");
    if (Verdict v = is_equivalence(F); !v) return v.scoped("equivalence");
    return Verdict::ok();
}

}  // namespace stacky
