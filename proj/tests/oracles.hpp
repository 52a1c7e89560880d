// Independent reference checks used by the tests. These work from the raw
// tables with maps and plain loops and share no code with the library's
// checkers beyond the value types.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "stacky/constructions.hpp"
#include "stacky/corpus.hpp"
#include "stacky/weakgroupoid.hpp"

namespace oracle {

using stacky::Id;

inline bool groupoid_ok(const stacky::FiniteGroupoid& g) {
    const auto& src = g.src_table();
    const auto& tgt = g.tgt_table();
    const auto& unit = g.unit_table();
    const auto& inv = g.inv_table();
    std::map<std::pair<Id, Id>, Id> comp;
    for (auto e : g.comp_entries()) comp[{e[0], e[1]}] = e[2];
    const Id n = static_cast<Id>(src.size());
    for (Id x = 0; x < g.num_objects(); ++x)
        if (src[unit[x]] != x || tgt[unit[x]] != x) return false;
    for (auto& [k, v] : comp)
        if (src[k.first] != tgt[k.second]) return false;
    auto c = [&](Id a, Id b) -> Id {
        auto it = comp.find({a, b});
        return it == comp.end() ? -1 : it->second;
    };
    for (Id a = 0; a < n; ++a)
        for (Id b = 0; b < n; ++b) {
            if (src[a] != tgt[b]) continue;
            Id ab = c(a, b);
            if (ab < 0 || src[ab] != src[b] || tgt[ab] != tgt[a]) return false;
        }
    for (Id a = 0; a < n; ++a) {
        if (c(unit[tgt[a]], a) != a || c(a, unit[src[a]]) != a) return false;
        if (c(inv[a], a) != unit[src[a]] || c(a, inv[a]) != unit[tgt[a]]) return false;
    }
    for (Id a = 0; a < n; ++a)
        for (Id b = 0; b < n; ++b)
            for (Id d = 0; d < n; ++d)
                if (src[a] == tgt[b] && src[b] == tgt[d] && c(c(a, b), d) != c(a, c(b, d))) return false;
    return true;
}

inline bool functor_ok(const stacky::GroupoidFunctor& f) {
    const auto& A = *f.dom;
    const auto& B = *f.cod;
    for (Id a = 0; a < A.num_arrows(); ++a)
        if (B.src(f.arr[a]) != f.obj[A.src(a)] || B.tgt(f.arr[a]) != f.obj[A.tgt(a)]) return false;
    for (Id x = 0; x < A.num_objects(); ++x)
        if (f.arr[A.unit(x)] != B.unit(f.obj[x])) return false;
    for (auto e : A.comp_entries())
        if (f.arr[e[2]] != B.comp(f.arr[e[0]], f.arr[e[1]])) return false;
    return true;
}

inline std::vector<Id> arrows_between(const stacky::FiniteGroupoid& g, Id x, Id y) {
    std::vector<Id> out;
    for (Id a = 0; a < g.num_arrows(); ++a)
        if (g.src(a) == x && g.tgt(a) == y) out.push_back(a);
    return out;
}

inline int comma_object_count(const stacky::GroupoidFunctor& f, const stacky::GroupoidFunctor& g) {
    int n = 0;
    for (Id x = 0; x < f.dom->num_objects(); ++x)
        for (Id z = 0; z < g.dom->num_objects(); ++z)
            n += static_cast<int>(arrows_between(*f.cod, f.obj[x], g.obj[z]).size());
    return n;
}

// Hom-count equivalence test: bijection on every hom-set and every object of
// the codomain reachable from an image.
inline bool is_equivalence(const stacky::GroupoidFunctor& f) {
    const auto& A = *f.dom;
    const auto& B = *f.cod;
    for (Id x = 0; x < A.num_objects(); ++x)
        for (Id y = 0; y < A.num_objects(); ++y) {
            auto h = arrows_between(A, x, y);
            std::set<Id> img;
            for (Id a : h) img.insert(f.arr[a]);
            if (img.size() != h.size()) return false;
            if (img.size() != arrows_between(B, f.obj[x], f.obj[y]).size()) return false;
        }
    std::set<Id> reached(f.obj.begin(), f.obj.end());
    bool grew = true;
    while (grew) {
        grew = false;
        for (Id a = 0; a < B.num_arrows(); ++a)
            if (reached.count(B.src(a)) && !reached.count(B.tgt(a))) {
                reached.insert(B.tgt(a));
                grew = true;
            }
    }
    return static_cast<int>(reached.size()) == B.num_objects();
}

inline bool is_free(const stacky::SetAction& a) {
    for (Id x = 0; x < a.points; ++x)
        for (Id g = 0; g < a.G->num_arrows(); ++g)
            if (a.defined(x, g) && a.act(x, g) == x && g != a.G->unit(a.moment[x])) return false;
    return true;
}

// Every right action of g on n points for n = 1..maxPoints, by brute force over
// tables with pruning on the action law.
inline std::vector<stacky::SetAction> group_actions_up_to(const stacky::FiniteGroup& g, int maxPoints) {
    std::vector<stacky::SetAction> out;
    for (int n = 1; n <= maxPoints; ++n) {
        std::vector<std::vector<Id>> perms;
        std::vector<Id> p(n);
        for (Id i = 0; i < n; ++i) p[i] = i;
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        std::vector<std::vector<Id>> img(g.order);
        std::function<void(Id)> rec = [&](Id e) {
            if (e == g.order) {
                auto a = stacky::group_set_action(g, n, [&](Id x, Id h) { return img[h][x]; });
                out.push_back(a);
                return;
            }
            for (const auto& q : perms) {
                if (e == 0 && q != perms[0]) continue;  // the identity acts trivially
                img[e] = q;
                bool ok = true;
                for (Id a = 0; a <= e && ok; ++a)
                    for (Id b = 0; b <= e && ok; ++b) {
                        Id ab = g.mul(a, b);
                        if (ab > e) continue;
                        for (Id x = 0; x < n; ++x)
                            if (img[b][img[a][x]] != img[ab][x]) ok = false;
                    }
                if (ok) rec(e + 1);
            }
        };
        rec(0);
    }
    return out;
}

inline std::vector<stacky::GroupoidPtr> core_corpus() {
    using namespace stacky;
    std::vector<GroupoidPtr> c;
    for (int n = 1; n <= 5; ++n) c.push_back(discrete_groupoid(n));
    for (int n = 2; n <= 4; ++n) c.push_back(pair_groupoid(n));
    auto klein = product_group(cyclic_group(2), cyclic_group(2));
    for (const auto& G : {cyclic_group(2), cyclic_group(3), klein}) {
        c.push_back(delooping(G));
        c.push_back(translation_groupoid(regular_action(G)).g);
        c.push_back(translation_groupoid(trivial_action(G, 2)).g);
    }
    return c;
}

// Group cohomology coboundary of a 3-cochain with values in an abelian group
// with a pi1-action, evaluated directly from the tables:
// k·w(g,h,l) - w(kg,h,l) + w(k,gh,l) - w(k,g,hl) + w(k,g,h).
inline bool is_3cocycle(const stacky::FiniteGroup& pi1, const stacky::FiniteGroup& pi2,
                        const std::vector<Id>& act, const std::vector<Id>& w) {
    const int n = pi1.order, m = pi2.order;
    auto W = [&](Id a, Id b, Id c) { return w[(a * n + b) * n + c]; };
    auto add = [&](Id a, Id b) { return pi2.mul(a, b); };
    auto neg = [&](Id a) { return pi2.inv(a); };
    for (Id k = 0; k < n; ++k)
        for (Id g = 0; g < n; ++g)
            for (Id h = 0; h < n; ++h)
                for (Id l = 0; l < n; ++l) {
                    Id v = act[k * m + W(g, h, l)];
                    v = add(v, neg(W(pi1.mul(k, g), h, l)));
                    v = add(v, W(k, pi1.mul(g, h), l));
                    v = add(v, neg(W(k, g, pi1.mul(h, l))));
                    v = add(v, W(k, g, h));
                    if (v != 0) return false;
                }
    return true;
}

inline bool is_normalized(int n, const std::vector<Id>& w) {
    for (Id a = 0; a < n; ++a)
        for (Id b = 0; b < n; ++b)
            for (Id c = 0; c < n; ++c)
                if ((a == 0 || b == 0 || c == 0) && w[(a * n + b) * n + c] != 0) return false;
    return true;
}

// Every function pi1³ -> Z/m, optionally only the normalized ones.
inline std::vector<std::vector<Id>> all_3cochains(int n, int m, bool normalizedOnly) {
    std::vector<int> free;
    for (int i = 0; i < n * n * n; ++i)
        if (!normalizedOnly || (i / (n * n) != 0 && (i / n) % n != 0 && i % n != 0)) free.push_back(i);
    std::vector<std::vector<Id>> out;
    std::vector<Id> w(n * n * n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == free.size()) {
            out.push_back(w);
            return;
        }
        for (Id v = 0; v < m; ++v) {
            w[free[k]] = v;
            rec(k + 1);
        }
        w[free[k]] = 0;
    };
    rec(0);
    return out;
}

}  // namespace oracle
