// Helpers shared by the checker sources.
#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "stacky/groupoid.hpp"

namespace stacky::detail {

// Objects and arrows of dom(f) grouped by the object their image lies over.
// Meant for functors into a discrete base.
struct Buckets {
    std::vector<std::vector<Id>> objs, arrs;
};

inline Buckets bucket(const GroupoidFunctor& f) {
    Buckets b;
    b.objs.resize(f.cod->num_objects());
    b.arrs.resize(f.cod->num_objects());
    for (Id x = 0; x < f.dom->num_objects(); ++x) b.objs[f.obj[x]].push_back(x);
    for (Id a = 0; a < f.dom->num_arrows(); ++a) b.arrs[f.cod->src(f.arr[a])].push_back(a);
    return b;
}

inline bool eq(Id a, Id b) { return a != kNone && a == b; }

inline bool endpoints(const FiniteGroupoid& G, Id cell, Id from, Id to) {
    return cell != kNone && from != kNone && to != kNone && G.src(cell) == from && G.tgt(cell) == to;
}

inline Id inv_or_none(const FiniteGroupoid& G, Id a) { return a == kNone ? kNone : G.inv(a); }

// First failing index through the kernel, then the witness recomputed serially.
template <class Scan>
Verdict first_witness(Exec exec, std::size_t n, const char* name, Scan&& scan) {
    std::size_t bad = kernel::first_failure(exec, n, [&](std::size_t i) { return scan(i, nullptr); });
    if (bad == n) return Verdict::ok();
    std::vector<Id> w;
    scan(bad, &w);
    return Verdict::fail(name, w);
}

// Roots are the least member of each class.
struct UnionFind {
    std::vector<Id> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    Id find(Id a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void join(Id a, Id b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace stacky::detail
