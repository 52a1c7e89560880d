#include "stacky/corpus.hpp"

namespace stacky {

Id FiniteGroup::inv(Id a) const {
    for (Id b = 0; b < order; ++b)
        if (mul(a, b) == 0) return b;
    return kNone;
}

FiniteGroup cyclic_group(int n) {
    FiniteGroup g{n, std::vector<Id>(static_cast<std::size_t>(n) * n), true};
    for (Id a = 0; a < n; ++a)
        for (Id b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
    return g;
}

FiniteGroup trivial_group() { return cyclic_group(1); }

FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b) {
    const int n = a.order * b.order;
    FiniteGroup g{n, std::vector<Id>(static_cast<std::size_t>(n) * n), a.abelian && b.abelian};
    // (x, y) has identifier x * |b| + y.
    for (Id p = 0; p < n; ++p)
        for (Id q = 0; q < n; ++q)
            g.table[p * n + q] = a.mul(p / b.order, q / b.order) * b.order + b.mul(p % b.order, q % b.order);
    return g;
}

Verdict validate_group(const FiniteGroup& g) {
    const int n = g.order;
    if (n < 1 || g.table.size() != static_cast<std::size_t>(n) * n) throw StructuralError("group table has the wrong size");
    for (Id v : g.table)
        if (v < 0 || v >= n) throw StructuralError("group table entry out of range");
    for (Id a = 0; a < n; ++a)
        if (g.mul(0, a) != a || g.mul(a, 0) != a) return Verdict::fail("group-identity", {a});
    for (Id a = 0; a < n; ++a)
        if (g.inv(a) == kNone || g.mul(g.inv(a), a) != 0) return Verdict::fail("group-inverse", {a});
    for (Id a = 0; a < n; ++a)
        for (Id b = 0; b < n; ++b)
            for (Id c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return Verdict::fail("group-assoc", {a, b, c});
    bool ab = true;
    for (Id a = 0; a < n; ++a)
        for (Id b = 0; b < n; ++b) ab = ab && g.mul(a, b) == g.mul(b, a);
    if (ab != g.abelian) return Verdict::fail("group-abelian-flag", {});
    return Verdict::ok();
}

GroupoidPtr discrete_groupoid(int n) { return share(FiniteGroupoid::discrete(n)); }

GroupoidPtr pair_groupoid(int n) {
    const int m = n * n;
    std::vector<Id> src(m), tgt(m), inv(m), unit(n);
    for (Id i = 0; i < n; ++i)
        for (Id j = 0; j < n; ++j) {
            src[i * n + j] = j;
            tgt[i * n + j] = i;
            inv[i * n + j] = j * n + i;
        }
    for (Id i = 0; i < n; ++i) unit[i] = i * n + i;
    return share(FiniteGroupoid::build(n, src, tgt, unit, inv, [n](Id a, Id b) { return (a / n) * n + (b % n); }));
}

GroupoidPtr delooping(const FiniteGroup& g) {
    const int n = g.order;
    std::vector<Id> zero(n, 0), inv(n);
    for (Id a = 0; a < n; ++a) inv[a] = g.inv(a);
    return share(FiniteGroupoid::build(1, zero, zero, {0}, inv, [&](Id a, Id b) { return g.mul(a, b); }));
}

SetAction group_set_action(const FiniteGroup& g, int points, const std::function<Id(Id, Id)>& act) {
    return make_set_action(delooping(g), points, std::vector<Id>(points, 0), Side::right, act);
}

SetAction regular_action(const FiniteGroup& g) {
    return group_set_action(g, g.order, [&g](Id x, Id h) { return g.mul(x, h); });
}

SetAction trivial_action(const FiniteGroup& g, int points) {
    return group_set_action(g, points, [](Id x, Id) { return x; });
}

}  // namespace stacky
