#include "stacky/constructions.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace stacky {

GroupoidPtr point_groupoid() {
    static const GroupoidPtr pt = share(FiniteGroupoid::discrete(1));
    return pt;
}

GroupoidFunctor to_discrete(const GroupoidPtr& dom, const GroupoidPtr& cod, std::vector<Id> obj) {
    GroupoidFunctor f{dom, cod, std::move(obj), std::vector<Id>(dom->num_arrows())};
    for (Id a = 0; a < dom->num_arrows(); ++a) {
        Id x = f.obj[dom->src(a)];
        if (x != f.obj[dom->tgt(a)]) throw StructuralError("map into a discrete groupoid is not constant along an arrow");
        f.arr[a] = cod->unit(x);
    }
    return f;
}

GroupoidFunctor object_inclusion(const GroupoidPtr& g) {
    auto d = share(FiniteGroupoid::discrete(g->num_objects()));
    GroupoidFunctor f{d, g, std::vector<Id>(g->num_objects()), std::vector<Id>(g->num_objects())};
    for (Id x = 0; x < g->num_objects(); ++x) {
        f.obj[x] = x;
        f.arr[x] = g->unit(x);
    }
    return f;
}

GroupoidFunctor collapse(const GroupoidPtr& g) {
    return GroupoidFunctor{g, point_groupoid(), std::vector<Id>(g->num_objects(), 0),
                           std::vector<Id>(g->num_arrows(), 0)};
}

// ---------------------------------------------------------------- pullbacks

Pullback strict_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g) {
    if (*f.cod != *g.cod && f.cod != g.cod) throw StructuralError("pullback legs have different codomains");
    const auto& A = *f.dom;
    const auto& B = *g.dom;
    Pullback p;
    p.left = f.dom;
    p.right = g.dom;
    p.objIndex.assign(static_cast<std::size_t>(A.num_objects()) * B.num_objects(), kNone);
    p.arrIndex.assign(static_cast<std::size_t>(A.num_arrows()) * B.num_arrows(), kNone);
    for (Id a = 0; a < A.num_objects(); ++a)
        for (Id b = 0; b < B.num_objects(); ++b)
            if (f.obj[a] == g.obj[b]) {
                p.objIndex[static_cast<std::size_t>(a) * B.num_objects() + b] = static_cast<Id>(p.objs.size());
                p.objs.push_back({a, b});
            }
    // Arrows grouped so that images agree: bucket B's arrows by image.
    std::vector<std::vector<Id>> byImage(f.cod->num_arrows());
    for (Id h = 0; h < B.num_arrows(); ++h) byImage[g.arr[h]].push_back(h);
    for (Id a = 0; a < A.num_arrows(); ++a)
        for (Id h : byImage[f.arr[a]]) {
            p.arrIndex[static_cast<std::size_t>(a) * B.num_arrows() + h] = static_cast<Id>(p.arrs.size());
            p.arrs.push_back({a, h});
        }
    const int n = static_cast<int>(p.arrs.size());
    std::vector<Id> src(n), tgt(n), inv(n), unit(p.objs.size());
    for (Id k = 0; k < n; ++k) {
        auto [a, h] = p.arrs[k];
        src[k] = p.obj(A.src(a), B.src(h));
        tgt[k] = p.obj(A.tgt(a), B.tgt(h));
        inv[k] = p.arr(A.inv(a), B.inv(h));
    }
    for (Id o = 0; o < static_cast<Id>(p.objs.size()); ++o) unit[o] = p.arr(A.unit(p.objs[o][0]), B.unit(p.objs[o][1]));
    const Pullback& pc = p;
    p.g = share(FiniteGroupoid::build(static_cast<int>(p.objs.size()), src, tgt, unit, inv, [&](Id k, Id l) {
        return pc.arr(A.comp(pc.arrs[k][0], pc.arrs[l][0]), B.comp(pc.arrs[k][1], pc.arrs[l][1]));
    }));
    return p;
}

Pullback product_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
    return strict_pullback(collapse(a), collapse(b));
}

GroupoidFunctor Pullback::pr1() const {
    GroupoidFunctor f{g, left, {}, {}};
    for (auto& o : objs) f.obj.push_back(o[0]);
    for (auto& a : arrs) f.arr.push_back(a[0]);
    return f;
}

GroupoidFunctor Pullback::pr2() const {
    GroupoidFunctor f{g, right, {}, {}};
    for (auto& o : objs) f.obj.push_back(o[1]);
    for (auto& a : arrs) f.arr.push_back(a[1]);
    return f;
}

GroupoidFunctor pair_functor(const Pullback& from, const Pullback& to, const GroupoidFunctor& f,
                             const GroupoidFunctor& g) {
    GroupoidFunctor r{from.g, to.g, {}, {}};
    for (auto& o : from.objs) {
        Id v = to.obj(f.obj[o[0]], g.obj[o[1]]);
        if (v == kNone) throw StructuralError("pair_functor: image pair outside the target pullback");
        r.obj.push_back(v);
    }
    for (auto& a : from.arrs) {
        Id v = to.arr(f.arr[a[0]], g.arr[a[1]]);
        if (v == kNone) throw StructuralError("pair_functor: image pair outside the target pullback");
        r.arr.push_back(v);
    }
    return r;
}

// ---------------------------------------------------------------- iso-comma

namespace {
long long comma_key(const IsoComma& c, Id x, Id a, Id z) {
    return (static_cast<long long>(x) * c.F.cod->num_arrows() + a) * c.G.dom->num_objects() + z;
}
}  // namespace

Id IsoComma::obj(Id x, Id a, Id z) const {
    auto it = objLookup.find(comma_key(*this, x, a, z));
    return it == objLookup.end() ? kNone : it->second;
}

Id IsoComma::arr(Id o, Id b1, Id b2) const {
    Id z = objs[o][2];
    return arrStart[o] + F.dom->out_rank(b1) * static_cast<Id>(G.dom->out(z).size()) + G.dom->out_rank(b2);
}

GroupoidFunctor IsoComma::pr1() const {
    GroupoidFunctor f{g, F.dom, {}, {}};
    for (auto& o : objs) f.obj.push_back(o[0]);
    for (auto& a : arrs) f.arr.push_back(a[0]);
    return f;
}

GroupoidFunctor IsoComma::pr2() const {
    GroupoidFunctor f{g, G.dom, {}, {}};
    for (auto& o : objs) f.obj.push_back(o[2]);
    for (auto& a : arrs) f.arr.push_back(a[1]);
    return f;
}

IsoComma iso_comma(const GroupoidFunctor& f, const GroupoidFunctor& g) {
    if (f.cod != g.cod && *f.cod != *g.cod) throw StructuralError("iso_comma: functors have different codomains");
    IsoComma c;
    c.F = f;
    c.G = g;
    const auto& X = *f.dom;
    const auto& Z = *g.dom;
    const auto& Y = *f.cod;
    for (Id x = 0; x < X.num_objects(); ++x)
        for (Id z = 0; z < Z.num_objects(); ++z)
            for (Id a : Y.hom(f.obj[x], g.obj[z])) {
                c.objLookup.emplace(comma_key(c, x, a, z), static_cast<Id>(c.objs.size()));
                c.objs.push_back({x, a, z});
            }
    const int n0 = static_cast<int>(c.objs.size());
    c.arrStart.assign(n0 + 1, 0);
    for (Id o = 0; o < n0; ++o)
        c.arrStart[o + 1] = c.arrStart[o] + static_cast<Id>(X.out(c.objs[o][0]).size() * Z.out(c.objs[o][2]).size());
    const int n = c.arrStart[n0];
    c.arrs.resize(n);
    std::vector<Id> src(n), tgt(n), inv(n), unit(n0);
    for (Id o = 0; o < n0; ++o) {
        auto [x, a, z] = c.objs[o];
        for (Id b1 : X.out(x))
            for (Id b2 : Z.out(z)) {
                Id k = c.arr(o, b1, b2);
                c.arrs[k] = {b1, b2};
                src[k] = o;
                Id a2 = Y.comp_chain({g.arr[b2], a, Y.inv(f.arr[b1])});
                tgt[k] = c.obj(X.tgt(b1), a2, Z.tgt(b2));
            }
        unit[o] = c.arr(o, X.unit(x), Z.unit(z));
    }
    for (Id k = 0; k < n; ++k) inv[k] = c.arr(tgt[k], X.inv(c.arrs[k][0]), Z.inv(c.arrs[k][1]));
    const IsoComma& cc = c;
    c.g = share(FiniteGroupoid::build(n0, src, tgt, unit, inv, [&](Id k, Id l) {
        return cc.arr(src[l], X.comp(cc.arrs[k][0], cc.arrs[l][0]), Z.comp(cc.arrs[k][1], cc.arrs[l][1]));
    }));
    return c;
}

// ---------------------------------------------------------------- equivalences

namespace {

// Per-object-pair hom comparison. mode 0: faithful, 1: full.
bool hom_fails(const GroupoidFunctor& f, Id x, int mode, std::vector<Id>* witness) {
    const auto& A = *f.dom;
    const auto& B = *f.cod;
    std::vector<Id> images;
    for (Id y = 0; y < A.num_objects(); ++y) {
        auto h = A.hom(x, y);
        images.clear();
        for (Id a : h) images.push_back(f.arr[a]);
        std::vector<Id> sorted = images;
        std::sort(sorted.begin(), sorted.end());
        if (mode == 0) {
            auto dup = std::adjacent_find(sorted.begin(), sorted.end());
            if (dup != sorted.end()) {
                if (witness) {
                    Id a1 = kNone, a2 = kNone;
                    for (std::size_t i = 0; i < h.size() && a2 == kNone; ++i)
                        for (std::size_t j = i + 1; j < h.size(); ++j)
                            if (images[i] == images[j]) {
                                a1 = h[i];
                                a2 = h[j];
                                break;
                            }
                    *witness = {x, y, a1, a2};
                }
                return true;
            }
        } else {
            for (Id c : B.hom(f.obj[x], f.obj[y]))
                if (!std::binary_search(sorted.begin(), sorted.end(), c)) {
                    if (witness) *witness = {x, y, c};
                    return true;
                }
        }
    }
    return false;
}

Verdict hom_check(const GroupoidFunctor& f, Exec exec, int mode, const char* name) {
    check_structure(f);
    const auto n = static_cast<std::size_t>(f.dom->num_objects());
    std::size_t bad = kernel::first_failure(exec, n, [&](std::size_t x) {
        return hom_fails(f, static_cast<Id>(x), mode, nullptr);
    });
    if (bad == n) return Verdict::ok();
    std::vector<Id> w;
    hom_fails(f, static_cast<Id>(bad), mode, &w);
    return Verdict::fail(name, w);
}

}  // namespace

Verdict is_faithful(const GroupoidFunctor& f, Exec exec) { return hom_check(f, exec, 0, "faithful"); }
Verdict is_full(const GroupoidFunctor& f, Exec exec) { return hom_check(f, exec, 1, "full"); }

Verdict is_fully_faithful(const GroupoidFunctor& f, Exec exec) {
    if (auto v = is_faithful(f, exec); !v) return v;
    return is_full(f, exec);
}

Verdict is_essentially_surjective(const GroupoidFunctor& f) {
    check_structure(f);
    auto comp = components(*f.cod);
    std::vector<bool> hit(f.cod->num_objects(), false);
    for (Id x : f.obj) hit[comp[x]] = true;
    for (Id y = 0; y < f.cod->num_objects(); ++y)
        if (!hit[comp[y]]) return Verdict::fail("essentially-surjective", {y});
    return Verdict::ok();
}

Verdict is_equivalence(const GroupoidFunctor& f, Exec exec) {
    if (auto v = is_fully_faithful(f, exec); !v) return v;
    return is_essentially_surjective(f);
}

Verdict is_representable(const FiniteGroupoid& g) {
    for (Id x = 0; x < g.num_objects(); ++x)
        for (Id a : g.hom(x, x))
            if (a != g.unit(x)) return Verdict::fail("automorphism", {x, a});
    return Verdict::ok();
}

Verdict is_weakly_representable(const GroupoidFunctor& f) {
    IsoComma c = iso_comma(f, object_inclusion(f.cod));
    Verdict v = is_representable(*c.g);
    if (v) return v;
    Id o = v.witness->ids[0], k = v.witness->ids[1];
    return Verdict::fail("comma-automorphism", {o, k, c.objs[o][0], c.arrs[k][0]});
}

GroupoidFunctor quasi_inverse(const GroupoidFunctor& f) {
    if (auto v = is_equivalence(f); !v) throw CheckFailed("quasi_inverse of a non-equivalence", v);
    const auto& A = *f.dom;
    const auto& B = *f.cod;
    // c[y]: F(x_y) -> y, found by breadth-first search from the images.
    std::vector<Id> chosen(B.num_objects(), kNone), via(B.num_objects(), kNone);
    std::deque<Id> queue;
    for (Id x = 0; x < A.num_objects(); ++x) {
        Id y = f.obj[x];
        if (chosen[y] == kNone) {
            chosen[y] = x;
            via[y] = B.unit(y);
            queue.push_back(y);
        }
    }
    while (!queue.empty()) {
        Id y = queue.front();
        queue.pop_front();
        for (Id b : B.out(y)) {
            Id y2 = B.tgt(b);
            if (chosen[y2] != kNone) continue;
            chosen[y2] = chosen[y];
            via[y2] = B.comp(b, via[y]);
            queue.push_back(y2);
        }
    }
    GroupoidFunctor q{f.cod, f.dom, chosen, std::vector<Id>(B.num_arrows(), kNone)};
    for (Id b = 0; b < B.num_arrows(); ++b) {
        Id y = B.src(b), y2 = B.tgt(b);
        Id want = B.comp_chain({B.inv(via[y2]), b, via[y]});
        for (Id a : A.hom(chosen[y], chosen[y2]))
            if (f.arr[a] == want) q.arr[b] = a;
    }
    return q;
}

// ---------------------------------------------------------------- subgroupoids

GroupoidFunctor Subgroupoid::inclusion() const { return GroupoidFunctor{g, parent, objMap, arrMap}; }

Subgroupoid full_subgroupoid(const GroupoidPtr& g, const std::vector<bool>& keepObject) {
    Subgroupoid s;
    s.parent = g;
    s.objBack.assign(g->num_objects(), kNone);
    s.arrBack.assign(g->num_arrows(), kNone);
    for (Id x = 0; x < g->num_objects(); ++x)
        if (keepObject[x]) {
            s.objBack[x] = static_cast<Id>(s.objMap.size());
            s.objMap.push_back(x);
        }
    for (Id a = 0; a < g->num_arrows(); ++a)
        if (keepObject[g->src(a)] && keepObject[g->tgt(a)]) {
            s.arrBack[a] = static_cast<Id>(s.arrMap.size());
            s.arrMap.push_back(a);
        }
    const int n = static_cast<int>(s.arrMap.size());
    std::vector<Id> src(n), tgt(n), inv(n), unit;
    for (Id k = 0; k < n; ++k) {
        Id a = s.arrMap[k];
        src[k] = s.objBack[g->src(a)];
        tgt[k] = s.objBack[g->tgt(a)];
        inv[k] = s.arrBack[g->inv(a)];
    }
    for (Id x : s.objMap) unit.push_back(s.arrBack[g->unit(x)]);
    const Subgroupoid& sc = s;
    s.g = share(FiniteGroupoid::build(static_cast<int>(s.objMap.size()), src, tgt, unit, inv, [&](Id k, Id l) {
        return sc.arrBack[g->comp(sc.arrMap[k], sc.arrMap[l])];
    }));
    return s;
}

Subgroupoid restrict_groupoid(const GroupoidPtr& g, const std::vector<Id>& baseMap, const std::vector<bool>& keepBase) {
    std::vector<bool> keep(g->num_objects());
    for (Id x = 0; x < g->num_objects(); ++x) keep[x] = keepBase.at(baseMap.at(x));
    return full_subgroupoid(g, keep);
}

Subgroupoid isotropy(const GroupoidPtr& g, const std::vector<Id>& baseMap, Id x) {
    Id top = baseMap.empty() ? -1 : *std::max_element(baseMap.begin(), baseMap.end());
    if (x < 0 || x > top || std::find(baseMap.begin(), baseMap.end(), x) == baseMap.end())
        throw StructuralError("isotropy: base point " + std::to_string(x) + " absent");
    std::vector<bool> keep(top + 1, false);
    keep[x] = true;
    return restrict_groupoid(g, baseMap, keep);
}

// ---------------------------------------------------------------- set actions

SetAction make_set_action(const GroupoidPtr& G, int points, std::vector<Id> moment, Side side,
                          const std::function<Id(Id, Id)>& act) {
    SetAction a{G, points, std::move(moment), side, {}};
    a.table.assign(static_cast<std::size_t>(points) * G->num_arrows(), kNone);
    for (Id x = 0; x < points; ++x)
        for (Id g = 0; g < G->num_arrows(); ++g)
            if (a.defined(x, g)) a.table[static_cast<std::size_t>(x) * G->num_arrows() + g] = act(x, g);
    return a;
}

namespace {

void set_action_structure(const SetAction& a) {
    if (static_cast<int>(a.moment.size()) != a.points) throw StructuralError("set action: moment table length");
    if (a.table.size() != static_cast<std::size_t>(a.points) * a.G->num_arrows())
        throw StructuralError("set action: action table length");
    for (Id m : a.moment)
        if (m < 0 || m >= a.G->num_objects()) throw StructuralError("set action: moment out of range");
    for (Id v : a.table)
        if (v < kNone || v >= a.points) throw StructuralError("set action: action value out of range");
}

// The defining laws at one point and arrow (or arrow pair).
bool domain_fails(const SetAction& a, Id x, Id g) { return a.defined(x, g) != (a.act(x, g) != kNone); }
bool moment_fails(const SetAction& a, Id x, Id g) {
    if (!a.defined(x, g)) return false;
    Id want = a.side == Side::right ? a.G->src(g) : a.G->tgt(g);
    return a.moment[a.act(x, g)] != want;
}
bool unit_fails(const SetAction& a, Id x) { return a.act(x, a.G->unit(a.moment[x])) != x; }
// Right: (x·g)·h = x·(g∘h). Left: h·(g·x) = (h∘g)·x.
bool assoc_fails(const SetAction& a, Id x, Id g, Id h) {
    const auto& G = *a.G;
    if (!a.defined(x, g)) return false;
    Id xg = a.act(x, g);
    if (a.side == Side::right) {
        if (!G.composable(g, h)) return false;
        return a.act(xg, h) != a.act(x, G.comp(g, h));
    }
    if (!G.composable(h, g)) return false;
    return a.act(xg, h) != a.act(x, G.comp(h, g));
}

}  // namespace

Verdict validate_set_action(const SetAction& a) {
    set_action_structure(a);
    const auto& G = *a.G;
    for (Id x = 0; x < a.points; ++x)
        for (Id g = 0; g < G.num_arrows(); ++g)
            if (domain_fails(a, x, g)) return Verdict::fail("action-domain", {x, g});
    for (Id x = 0; x < a.points; ++x)
        for (Id g = 0; g < G.num_arrows(); ++g)
            if (moment_fails(a, x, g)) return Verdict::fail("action-moment", {x, g});
    for (Id x = 0; x < a.points; ++x)
        if (unit_fails(a, x)) return Verdict::fail("action-unit", {x});
    for (Id x = 0; x < a.points; ++x)
        for (Id g = 0; g < G.num_arrows(); ++g)
            for (Id h = 0; h < G.num_arrows(); ++h)
                if (assoc_fails(a, x, g, h)) return Verdict::fail("action-assoc", {x, g, h});
    return Verdict::ok();
}

bool replay_set_action(const SetAction& a, const Witness& w) {
    const auto& i = w.ids;
    if (w.axiom == "action-domain") return domain_fails(a, i.at(0), i.at(1));
    if (w.axiom == "action-moment") return moment_fails(a, i.at(0), i.at(1));
    if (w.axiom == "action-unit") return unit_fails(a, i.at(0));
    if (w.axiom == "action-assoc") return assoc_fails(a, i.at(0), i.at(1), i.at(2));
    return false;
}

TranslationGroupoid translation_groupoid(const SetAction& a) {
    if (auto v = validate_set_action(a); !v) throw CheckFailed("translation_groupoid: invalid action", v);
    const auto& G = *a.G;
    const int nG = G.num_arrows();
    TranslationGroupoid t;
    t.arrIndex.assign(static_cast<std::size_t>(a.points) * nG, kNone);
    for (Id x = 0; x < a.points; ++x)
        for (Id g = 0; g < nG; ++g)
            if (a.defined(x, g)) {
                t.arrIndex[static_cast<std::size_t>(x) * nG + g] = static_cast<Id>(t.arrs.size());
                t.arrs.push_back({x, g});
            }
    const int n = static_cast<int>(t.arrs.size());
    std::vector<Id> src(n), tgt(n), inv(n), unit(a.points);
    const bool right = a.side == Side::right;
    for (Id k = 0; k < n; ++k) {
        auto [x, g] = t.arrs[k];
        Id moved = a.act(x, g);
        if (right) {
            // (x, g): x·g -> x
            src[k] = moved;
            tgt[k] = x;
        } else {
            // (g, x): x -> g·x
            src[k] = x;
            tgt[k] = moved;
        }
        inv[k] = t.arr(moved, G.inv(g), nG);
    }
    for (Id x = 0; x < a.points; ++x) unit[x] = t.arr(x, G.unit(a.moment[x]), nG);
    const TranslationGroupoid& tc = t;
    t.g = share(FiniteGroupoid::build(a.points, src, tgt, unit, inv, [&](Id k, Id l) {
        auto [x, g] = tc.arrs[k];
        auto [y, h] = tc.arrs[l];
        // Right: (x, g)∘(x·g, h) = (x, gh). Left: (g, h·y)∘(h, y) = (gh, y).
        return right ? tc.arr(x, G.comp(g, h), nG) : tc.arr(y, G.comp(g, h), nG);
    }));
    return t;
}

// ---------------------------------------------------------------- weak fibred product

WeakFibredProduct weak_fibred_product(const GroupoidFunctor& a, const GroupoidFunctor& b) {
    if (a.cod != b.cod && *a.cod != *b.cod) throw StructuralError("weak_fibred_product: legs have different codomains");
    const auto& X = *a.dom;
    const auto& G = *b.dom;
    const auto& H = *a.cod;
    WeakFibredProduct w;
    std::unordered_map<long long, Id> objIdx, arrIdx;
    auto okey = [&](Id x, Id h, Id g) { return (static_cast<long long>(x) * H.num_arrows() + h) * G.num_objects() + g; };
    auto akey = [&](Id x, Id h, Id g) { return (static_cast<long long>(x) * H.num_arrows() + h) * G.num_arrows() + g; };
    for (Id x = 0; x < X.num_objects(); ++x)
        for (Id g = 0; g < G.num_objects(); ++g)
            for (Id h : H.hom(a.obj[x], b.obj[g])) {
                objIdx[okey(x, h, g)] = static_cast<Id>(w.objs.size());
                w.objs.push_back({x, h, g});
            }
    for (Id x = 0; x < X.num_arrows(); ++x)
        for (Id g = 0; g < G.num_arrows(); ++g)
            for (Id h : H.hom(a.obj[X.src(x)], b.obj[G.src(g)])) {
                arrIdx[akey(x, h, g)] = static_cast<Id>(w.arrs.size());
                w.arrs.push_back({x, h, g});
            }
    const int n = static_cast<int>(w.arrs.size());
    std::vector<Id> src(n), tgt(n), inv(n), unit(w.objs.size());
    for (Id k = 0; k < n; ++k) {
        auto [x, h, g] = w.arrs[k];
        src[k] = objIdx.at(okey(X.src(x), h, G.src(g)));
        Id h2 = H.comp_chain({b.arr[g], h, H.inv(a.arr[x])});
        tgt[k] = objIdx.at(okey(X.tgt(x), h2, G.tgt(g)));
        inv[k] = arrIdx.at(akey(X.inv(x), h2, G.inv(g)));
    }
    for (Id o = 0; o < static_cast<Id>(w.objs.size()); ++o) {
        auto [x, h, g] = w.objs[o];
        unit[o] = arrIdx.at(akey(X.unit(x), h, G.unit(g)));
    }
    const WeakFibredProduct& wc = w;
    w.g = share(FiniteGroupoid::build(static_cast<int>(w.objs.size()), src, tgt, unit, inv, [&](Id k, Id l) {
        // (x, h, g)(x', h', g') = (xx', h', gg')
        auto [x, h, g] = wc.arrs[k];
        auto [x2, h2, g2] = wc.arrs[l];
        (void)h;
        return arrIdx.at(akey(X.comp(x, x2), h2, G.comp(g, g2)));
    }));
    return w;
}

Verdict check_weak_product_comparison(const GroupoidFunctor& a, const GroupoidFunctor& b) {
    WeakFibredProduct w = weak_fibred_product(a, b);
    IsoComma c = iso_comma(a, b);
    GroupoidFunctor f{w.g, c.g, {}, {}};
    for (auto [x, h, g] : w.objs) f.obj.push_back(c.obj(x, h, g));
    for (Id k = 0; k < w.g->num_arrows(); ++k) f.arr.push_back(c.arr(f.obj[w.g->src(k)], w.arrs[k][0], w.arrs[k][2]));
    if (auto v = validate_functor(f); !v) return v.scoped("comparison");
    return is_equivalence(f);
}

}  // namespace stacky
