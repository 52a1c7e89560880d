#include <map>

#include "doctest.h"
#include "stacky/bundles.hpp"
#include "stacky/corpus.hpp"

using namespace stacky;

namespace {

// Functor fixed by its object map, for codomains with at most one arrow per
// hom-set once the source arrow's endpoints are known (pair groupoids, point).
GroupoidFunctor by_endpoints(const GroupoidPtr& dom, const GroupoidPtr& cod, std::vector<Id> obj) {
    GroupoidFunctor f{dom, cod, obj, {}};
    for (Id a = 0; a < dom->num_arrows(); ++a) f.arr.push_back(cod->hom(obj[dom->src(a)], obj[dom->tgt(a)])[0]);
    return f;
}

// B(G1) -> B(G2) from a group homomorphism given on elements.
GroupoidFunctor hom_functor(const FiniteGroup& g1, const FiniteGroup& g2, std::vector<Id> map) {
    return GroupoidFunctor{delooping(g1), delooping(g2), {0}, std::move(map)};
}

GroupoidFunctor into_bz2(const GroupoidPtr& dom) {
    auto c = collapse(dom);
    return compose(hom_functor(trivial_group(), cyclic_group(2), {0}), c);
}

struct NamedFunctor {
    std::string name;
    GroupoidFunctor f;
};

std::vector<NamedFunctor> functor_corpus() {
    auto z2 = cyclic_group(2), z4 = cyclic_group(4);
    auto p2 = pair_groupoid(2), p3 = pair_groupoid(3);
    auto pt = point_groupoid();
    auto tz2 = translation_groupoid(regular_action(z2)).g;
    return {
        {"identity pair(3)", identity_functor(p3)},
        {"identity B(z2)", identity_functor(delooping(z2))},
        {"collapse pair(2)", collapse(p2)},
        {"collapse pair(3)", collapse(p3)},
        {"point into pair(3)", by_endpoints(pt, p3, {1})},
        {"pair(2) into pair(3)", by_endpoints(p2, p3, {0, 2})},
        {"objects of pair(2)", object_inclusion(p2)},
        {"point into two points", by_endpoints(pt, share(FiniteGroupoid::discrete(2)), {1})},
        {"trivial into B(z2)", hom_functor(trivial_group(), z2, {0})},
        {"collapse B(z2)", collapse(delooping(z2))},
        {"doubling z2 -> z4", hom_functor(z2, z4, {0, 2})},
        {"z4 onto z2", hom_functor(z4, z2, {0, 1, 0, 1})},
        {"translation of regular z2", collapse(tz2)},
        {"pair(2) into B(z2)", into_bz2(p2)},
    };
}

bool isomorphic(const StrictBibundle& P, const StrictBibundle& Q) { return find_bibundle_isomorphism(P, Q).has_value(); }

// Pairs-count oracle: principal iff r is onto and each (x, y) in a fibre is
// joined by exactly one arrow.
bool principal_by_count(const SetAction& sa, const std::vector<Id>& r, int base) {
    std::vector<int> fibre(base, 0);
    for (Id s : r) ++fibre[s];
    for (int c : fibre)
        if (c == 0) return false;
    std::map<std::pair<Id, Id>, int> n;
    for (Id x = 0; x < sa.points; ++x)
        for (Id g = 0; g < sa.G->num_arrows(); ++g)
            if (sa.defined(x, g)) ++n[{x, sa.act(x, g)}];
    for (Id x = 0; x < sa.points; ++x)
        for (Id y = 0; y < sa.points; ++y)
            if (r[x] == r[y] && n[{x, y}] != 1) return false;
    return true;
}

}  // namespace

TEST_CASE("principal set bundles") {
    auto z2 = cyclic_group(2);
    auto free = regular_action(z2);
    CHECK(is_principal_set_bundle(free, {0, 0}, 1).passed);
    auto fixed = trivial_action(z2, 1);
    Verdict v = is_principal_set_bundle(fixed, {0}, 1);
    REQUIRE_FALSE(v.passed);
    CHECK(v.witness->axiom == "injective");
    // G on itself by right multiplication over t
    for (const auto& G : {pair_groupoid(3), translation_groupoid(regular_action(z2)).g, delooping(cyclic_group(3))}) {
        std::vector<Id> s, t;
        for (Id g = 0; g < G->num_arrows(); ++g) s.push_back(G->src(g)), t.push_back(G->tgt(g));
        auto self = make_set_action(G, G->num_arrows(), s, Side::right, [&](Id x, Id g) { return G->comp(x, g); });
        CHECK(is_principal_set_bundle(self, t, G->num_objects()).passed);
    }
    // r not constant on orbits
    CHECK_THROWS_AS(is_principal_set_bundle(free, {0, 1}, 2), CheckFailed);
    // r misses a point of the base
    CHECK(is_principal_set_bundle(free, {0, 0}, 2).witness->axiom == "surjective");
    // free but two orbits over one point
    auto two = group_set_action(z2, 4, [](Id x, Id g) { return (x / 2) * 2 + (x % 2 + g) % 2; });
    CHECK(is_principal_set_bundle(two, {0, 0, 0, 0}, 1).witness->axiom == "pair");
    CHECK(is_principal_set_bundle(two, {0, 0, 1, 1}, 2).passed);
}

TEST_CASE("principality agrees with the pair-count oracle") {
    auto k = product_group(cyclic_group(2), cyclic_group(2));
    std::vector<SetAction> acts = {regular_action(k), trivial_action(k, 3), regular_action(cyclic_group(3)),
                                   group_set_action(k, 4, [](Id x, Id g) { return x ^ (g & 1); })};
    for (const auto& sa : acts) {
        // every base map constant on orbits, onto some prefix of a 3-point base
        std::vector<Id> orbit(sa.points);
        for (Id x = 0; x < sa.points; ++x) {
            orbit[x] = x;
            for (Id g = 0; g < sa.G->num_arrows(); ++g) orbit[x] = std::min(orbit[x], sa.act(x, g));
        }
        for (int base = 1; base <= 3; ++base)
            for (int code = 0; code < 81; ++code) {
                std::vector<Id> colour(sa.points);
                int c = code;
                for (Id x = 0; x < sa.points; ++x) colour[x] = c % 3, c /= 3;
                std::vector<Id> r(sa.points);
                bool inRange = true;
                for (Id x = 0; x < sa.points; ++x) {
                    r[x] = colour[orbit[x]];
                    inRange = inRange && r[x] < base;
                }
                if (!inRange) continue;
                CHECK(is_principal_set_bundle(sa, r, base).passed == principal_by_count(sa, r, base));
            }
    }
}

TEST_CASE("bibundles from morphisms") {
    // identity: the unit bibundle is H with left and right multiplication
    auto H = pair_groupoid(3);
    auto unit = unit_bibundle(H);
    std::vector<Id> t, s;
    for (Id h = 0; h < H->num_arrows(); ++h) t.push_back(H->tgt(h)), s.push_back(H->src(h));
    auto direct = make_bibundle(
        H, H, H->num_arrows(), t, s, [&](Id p, Id g) { return H->comp(g, p); }, [&](Id p, Id h) { return H->comp(p, h); });
    REQUIRE(validate_bibundle(direct).passed);
    CHECK(isomorphic(unit, direct));

    auto c = bibundle_from_morphism(collapse(pair_groupoid(2)));
    CHECK(c.points == 2);
    CHECK(is_biprincipal(c).passed);

    auto inc = bibundle_from_morphism(hom_functor(trivial_group(), cyclic_group(2), {0}));
    CHECK(inc.points == 2);
    CHECK(is_right_principal(inc).passed);
    Verdict left = is_left_principal(inc);
    REQUIRE_FALSE(left.passed);
    CHECK(left.witness->axiom == "pair");
}

TEST_CASE("weak equivalences: bibundle biprincipal iff the functor is one") {
    for (const auto& [name, f] : functor_corpus()) {
        CAPTURE(name);
        auto P = bibundle_from_morphism(f);
        CHECK(validate_bibundle(P).passed);
        CHECK(is_right_principal(P).passed);
        bool weq = is_weak_equivalence(f).passed;
        CHECK(is_biprincipal(P).passed == weq);
        // in the discrete model a weak equivalence is an equivalence of groupoids
        CHECK(weq == is_equivalence(f).passed);
        CHECK(check_bibundle_pullback(f).passed);
    }
    CHECK(is_weak_equivalence(identity_functor(pair_groupoid(2))).passed);
    CHECK(is_weak_equivalence(collapse(pair_groupoid(3))).passed);
    Verdict v = is_weak_equivalence(object_inclusion(pair_groupoid(2)));
    REQUIRE_FALSE(v.passed);
    CHECK(v.witness->axiom == "cartesian");
    CHECK(is_weak_equivalence(by_endpoints(pair_groupoid(2), pair_groupoid(3), {0, 1})).passed);
    auto d2 = share(FiniteGroupoid::discrete(2));
    CHECK(is_weak_equivalence(by_endpoints(point_groupoid(), d2, {0})).witness->axiom == "surjective");
}

TEST_CASE("tensor products") {
    auto corpus = functor_corpus();
    for (const auto& [name, f] : corpus) {
        CAPTURE(name);
        auto P = bibundle_from_morphism(f);
        // unit bibundles on either side
        CHECK(isomorphic(tensor_bibundles(unit_bibundle(f.dom), P), P));
        CHECK(isomorphic(tensor_bibundles(P, unit_bibundle(f.cod)), P));
    }
    // composable chains: tensor of the bibundles is the bibundle of the composite
    for (const auto& [n1, f] : corpus)
        for (const auto& [n2, g] : corpus) {
            if (*f.cod != *g.dom) continue;
            CAPTURE(n1);
            CAPTURE(n2);
            auto PQ = tensor_bibundles(bibundle_from_morphism(f), bibundle_from_morphism(g));
            CHECK(validate_bibundle(PQ).passed);
            CHECK(is_right_principal(PQ).passed);
            CHECK(isomorphic(PQ, bibundle_from_morphism(compose(g, f))));
        }
}

TEST_CASE("tensor is associative on a concrete triple") {
    auto z2 = cyclic_group(2), z4 = cyclic_group(4);
    auto P = bibundle_from_morphism(into_bz2(pair_groupoid(2)));
    auto Q = bibundle_from_morphism(hom_functor(z2, z4, {0, 2}));
    auto R = transpose_bibundle(bibundle_from_morphism(collapse(pair_groupoid(2))));
    auto R2 = tensor_bibundles(bibundle_from_morphism(collapse(delooping(z4))), R);
    auto left = tensor_bibundles(tensor_bibundles(P, Q), R2);
    auto right = tensor_bibundles(P, tensor_bibundles(Q, R2));
    CHECK(validate_bibundle(left).passed);
    CHECK(isomorphic(left, right));
    // an isomorphism is a bijection compatible with both moment maps
    auto f = find_bibundle_isomorphism(left, right);
    REQUIRE(f);
    std::vector<bool> hit(right.points, false);
    for (Id p = 0; p < left.points; ++p) {
        CHECK(left.a[p] == right.a[(*f)[p]]);
        CHECK(left.b[p] == right.b[(*f)[p]]);
        hit[(*f)[p]] = true;
    }
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
}

TEST_CASE("Morita chain pair(2) ~ trivial ~ pair(3)") {
    auto E1 = bibundle_from_morphism(collapse(pair_groupoid(2)));
    auto E2 = transpose_bibundle(bibundle_from_morphism(collapse(pair_groupoid(3))));
    CHECK(is_biprincipal(E1).passed);
    CHECK(validate_bibundle(E2).passed);
    CHECK(is_biprincipal(E2).passed);
    auto E = tensor_bibundles(E1, E2);
    CHECK(E.points == 6);
    CHECK(validate_bibundle(E).passed);
    CHECK(is_biprincipal(E).passed);
    // transposing twice gives back the same bibundle
    CHECK(isomorphic(transpose_bibundle(transpose_bibundle(E)), E));
}

TEST_CASE("non-isomorphic bibundles are told apart") {
    auto z2 = cyclic_group(2);
    auto a = bibundle_from_morphism(hom_functor(z2, z2, {0, 1}));
    auto b = bibundle_from_morphism(hom_functor(z2, z2, {0, 0}));
    CHECK(a.points == b.points);
    CHECK_FALSE(isomorphic(a, b));
}

TEST_CASE("validate_bibundle rejects non-commuting actions") {
    auto B = delooping(cyclic_group(2));
    std::vector<Id> zero(3, 0);
    auto bb = make_bibundle(
        B, B, 3, zero, zero, [](Id p, Id g) { return g && p < 2 ? 1 - p : p; },
        [](Id p, Id h) { return h && p > 0 ? 3 - p : p; });
    Verdict v = validate_bibundle(bb);
    REQUIRE_FALSE(v.passed);
    CHECK(v.witness->axiom == "commute");
}

TEST_CASE("gauge groupoids") {
    auto z3 = cyclic_group(3);
    auto B = delooping(z3);
    auto self = make_set_action(B, 3, {0, 0, 0}, Side::left, [&](Id x, Id g) { return z3.mul(g, x); });
    auto g1 = gauge_groupoid(self, {0, 0, 0}, 1);
    CHECK(validate_groupoid(*g1.g).passed);
    CHECK(g1.g->num_objects() == 1);
    CHECK(g1.g->num_arrows() == 3);  // 9 pairs / 3

    // free Z/2 on four points over two
    auto B2 = delooping(cyclic_group(2));
    auto swap = make_set_action(B2, 4, {0, 0, 0, 0}, Side::left, [](Id x, Id g) { return (x / 2) * 2 + (x % 2 + g) % 2; });
    auto g2 = gauge_groupoid(swap, {0, 0, 1, 1}, 2);
    CHECK(validate_groupoid(*g2.g).passed);
    CHECK(g2.g->num_objects() == 2);
    CHECK(g2.g->num_arrows() == 8);
    for (Id x = 0; x < 2; ++x)
        for (Id y = 0; y < 2; ++y) CHECK(g2.g->hom(x, y).size() == 2);

    // trivial group: the pair groupoid of the base
    auto pt = delooping(trivial_group());
    auto none = make_set_action(pt, 3, {0, 0, 0}, Side::left, [](Id x, Id) { return x; });
    auto g3 = gauge_groupoid(none, {0, 1, 2}, 3);
    CHECK(validate_groupoid(*g3.g).passed);
    CHECK(g3.g->num_arrows() == 9);

    // a groupoid on itself by left multiplication over s
    auto P = pair_groupoid(2);
    std::vector<Id> t, s;
    for (Id g = 0; g < P->num_arrows(); ++g) t.push_back(P->tgt(g)), s.push_back(P->src(g));
    auto left = make_set_action(P, 4, t, Side::left, [&](Id x, Id g) { return P->comp(g, x); });
    auto g4 = gauge_groupoid(left, s, 2);
    CHECK(validate_groupoid(*g4.g).passed);
    CHECK(g4.g->num_arrows() == 4);

    CHECK_THROWS_AS(gauge_groupoid(none, {0, 0, 0}, 1), CheckFailed);
}

TEST_CASE("the bibundle of a projection from X ×_M G") {
    auto z2 = cyclic_group(2), z3 = cyclic_group(3);
    auto BZ3 = delooping(z3);
    auto P2 = pair_groupoid(2);
    auto t2 = translation_groupoid(trivial_action(z2, 2)).g;  // two copies of B(Z/2)
    auto M2 = share(FiniteGroupoid::discrete(2));
    std::vector<Pullback> cases = {product_groupoid(BZ3, P2), product_groupoid(P2, delooping(z2)),
                                   strict_pullback(to_discrete(t2, M2, {0, 1}), to_discrete(t2, M2, {0, 1}))};
    for (const auto& XG : cases) {
        auto E = projection_bibundle(XG);
        CHECK(validate_bibundle(E).passed);
        CHECK(is_right_principal(E).passed);
        CHECK(isomorphic(E, bibundle_from_morphism(XG.pr1())));
    }
}

TEST_CASE("paired bibundles into a fibred product") {
    auto X = pair_groupoid(2);
    auto Y = delooping(cyclic_group(2));
    auto Z = pair_groupoid(3);
    auto phi1 = into_bz2(X);
    auto phi2 = by_endpoints(X, Z, {0, 2});
    auto YZ = product_groupoid(Y, Z);
    auto E = fibred_bibundle(bibundle_from_morphism(phi1), bibundle_from_morphism(phi2), YZ);
    CHECK(validate_bibundle(E).passed);
    CHECK(is_right_principal(E).passed);
    GroupoidFunctor paired{X, YZ.g, {}, {}};
    for (Id x = 0; x < X->num_objects(); ++x) paired.obj.push_back(YZ.obj(phi1.obj[x], phi2.obj[x]));
    for (Id a = 0; a < X->num_arrows(); ++a) paired.arr.push_back(YZ.arr(phi1.arr[a], phi2.arr[a]));
    REQUIRE(validate_functor(paired).passed);
    CHECK(isomorphic(E, bibundle_from_morphism(paired)));
}
