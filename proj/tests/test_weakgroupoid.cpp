#include "doctest.h"
#include "oracles.hpp"
#include "stacky/weakgroupoid.hpp"

using namespace stacky;

namespace {

CrossedModuleData cm(const FiniteGroup& A, const FiniteGroup& K, std::vector<Id> phi) { return {A, K, std::move(phi)}; }

CrossedModuleData cm_id_z2() { return cm(cyclic_group(2), cyclic_group(2), {0, 1}); }
CrossedModuleData cm_zero_z2() { return cm(cyclic_group(2), cyclic_group(2), {0, 0}); }
CrossedModuleData cm_z2_in_z4() { return cm(cyclic_group(2), cyclic_group(4), {0, 2}); }
CrossedModuleData cm_bz2() { return cm(cyclic_group(2), trivial_group(), {0, 0}); }

// Z/2, Z/2, trivial action, omega(1,1,1) = 1.
Skeletal2GroupData z2_cocycle() { return cyclic_cocycle_2group(2); }

}  // namespace

TEST_CASE("check_g2 on strict and crossed-module presentations") {
    auto sp = strict_presentation(pair_groupoid(2));
    CHECK(check_g2(sp).passed);
    CHECK(check_g2(group_presentation(cyclic_group(3))).passed);
    auto c = from_crossed_module(cm_id_z2());
    CHECK(check_g2(c).passed);
    CHECK(c.G->num_arrows() == 4);
}

TEST_CASE("swapping s and t on one arrow breaks (g2)") {
    auto sp = strict_presentation(pair_groupoid(2));
    // object 2 of G is the arrow 0 -> 1 of the pair groupoid
    auto bad = sp;
    std::swap(bad.s.obj[2], bad.t.obj[2]);
    std::swap(bad.s.arr[2], bad.t.arr[2]);
    Verdict v = check_g2(bad);
    REQUIRE_FALSE(v.passed);
    CHECK(replay_stacky(bad, *v.witness));
    CHECK_FALSE(replay_stacky(sp, *v.witness));
}

TEST_CASE("check_g4 on strict presentations") {
    for (const auto& g : oracle::core_corpus()) {
        auto sp = strict_presentation(g);
        CHECK(check_g2(sp).passed);
        CHECK(check_g4(sp).passed);
    }
}

TEST_CASE("crossed-module presentations") {
    for (const auto& d : {cm_id_z2(), cm_zero_z2(), cm_z2_in_z4(), cm_bz2()}) {
        auto c = from_crossed_module(d);
        CHECK(check_g2(c).passed);
        CHECK(check_g4(c).passed);
        CHECK(c.G->num_arrows() == d.A.order * d.K.order);
    }
    // phi = id: connected with trivial isotropy, so equivalent to a point
    auto c = from_crossed_module(cm_id_z2());
    CHECK(is_equivalence(collapse(c.G)).passed);
    // Z/2 -> Z/4: pi1 = coker = Z/2 (components), pi2 = ker = 0 (automorphisms)
    auto c4 = from_crossed_module(cm_z2_in_z4());
    auto comp = components(*c4.G);
    CHECK(*std::max_element(comp.begin(), comp.end()) + 1 == 2);
    CHECK(c4.G->hom(0, 0).size() == 1);
    CHECK(is_representable(*c4.G).passed);
    // BZ/2: one object, automorphisms Z/2
    auto b = from_crossed_module(cm_bz2());
    CHECK(b.G->num_objects() == 1);
    CHECK(b.G->hom(0, 0).size() == 2);

    CHECK_THROWS_AS(from_crossed_module(cm(cyclic_group(2), cyclic_group(3), {0, 1})), CheckFailed);
}

TEST_CASE("skeletal presentations") {
    auto zero = trivial_action_skeletal(cyclic_group(2), cyclic_group(2), std::vector<Id>(8, 0));
    CHECK(check_g4(from_skeletal(zero)).passed);
    auto sk = from_skeletal(z2_cocycle());
    CHECK(check_g2(sk).passed);
    CHECK(check_g4(sk).passed);
    CHECK(sk.a(1, 1, 1) != sk.G->unit(1));
    CHECK(oracle::is_3cocycle(cyclic_group(3), cyclic_group(3), cyclic_cocycle_2group(3).act, cyclic_cocycle_2group(3).omega));
    CHECK(check_g4(from_skeletal(cyclic_cocycle_2group(3))).passed);
    CHECK(check_g4(from_skeletal(cyclic_cocycle_2group(3, 2))).passed);

    // Unnormalized data is rejected unless asked for.
    std::vector<Id> w(8, 0);
    w[0] = 1;
    CHECK_THROWS_AS(from_skeletal(trivial_action_skeletal(cyclic_group(2), cyclic_group(2), w)), CheckFailed);
}

TEST_CASE("normalized Z/2 candidates: pass set equals cocycle set") {
    auto z2 = cyclic_group(2);
    auto cands = oracle::all_3cochains(2, 2, true);
    CHECK(cands.size() == 2);
    for (const auto& w : cands) {
        auto d = trivial_action_skeletal(z2, z2, w);
        auto sg = from_skeletal(d);
        bool cocycle = oracle::is_3cocycle(z2, z2, d.act, w);
        CHECK(check_g4_diagram(sg, G4::kghl).passed == cocycle);
        CHECK(check_g4(sg).passed == cocycle);
    }
}

TEST_CASE("all 256 Z/2 cochains: pentagon equals the cocycle identity") {
    auto z2 = cyclic_group(2);
    int cocycles = 0;
    for (const auto& w : oracle::all_3cochains(2, 2, false)) {
        auto d = trivial_action_skeletal(z2, z2, w);
        auto sg = from_skeletal(d, false);
        bool cocycle = oracle::is_3cocycle(z2, z2, d.act, w);
        cocycles += cocycle;
        Verdict v = check_g4_diagram(sg, G4::kghl);
        CHECK(v.passed == cocycle);
        if (!v.passed) CHECK(replay_stacky(sg, *v.witness));
        // The unit diagrams need normalization.
        if (cocycle && !oracle::is_normalized(2, w)) CHECK_FALSE(check_g4(sg).passed);
    }
    // Z^3(Z/2; Z/2) has 2^3 elements: B^3 has 2^2 and H^3 = Z/2.
    CHECK(cocycles == 8);
}

TEST_CASE("normalized Z/3 candidates against the oracle") {
    auto z3 = cyclic_group(3);
    int cocycles = 0, failing = 0;
    for (const auto& w : oracle::all_3cochains(3, 3, true)) {
        auto d = trivial_action_skeletal(z3, z3, w);
        auto sg = from_skeletal(d);
        bool cocycle = oracle::is_3cocycle(z3, z3, d.act, w);
        cocycles += cocycle;
        Verdict v = check_g4(sg, Exec::serial);
        CHECK(v.passed == cocycle);
        if (!v.passed) {
            ++failing;
            CHECK(v.witness->axiom == "kghl");
        }
    }
    CHECK(cocycles > 1);
    CHECK(failing > 0);
}

TEST_CASE("nontrivial action of pi1 on pi2") {
    // Z/2 acting on Z/3 by negation, omega = 0.
    auto z2 = cyclic_group(2), z3 = cyclic_group(3);
    Skeletal2GroupData d{z2, z3, {0, 1, 2, 0, 2, 1}, std::vector<Id>(8, 0)};
    auto sg = from_skeletal(d);
    CHECK(check_g4(sg).passed);
    d.act = {0, 1, 2, 0, 1, 1};
    CHECK_THROWS_AS(from_skeletal(d), CheckFailed);
}

TEST_CASE("alpha mutations are caught and replay") {
    auto sg = from_skeletal(cyclic_cocycle_2group(3));
    int caught = 0, total = 0;
    for (Id g = 0; g < 3; ++g)
        for (Id h = 0; h < 3; ++h)
            for (Id l = 0; l < 3; ++l) {
                auto bad = sg;
                Id c = sg.a(g, h, l);
                bad.a_ref(g, h, l) = (c / 3) * 3 + (c % 3 + 1) % 3;
                ++total;
                Verdict v = check_g4(bad);
                if (!v.passed) {
                    ++caught;
                    CHECK(replay_stacky(bad, *v.witness));
                }
            }
    CHECK(caught == total);
}

TEST_CASE("serial and parallel coherence checks agree") {
    auto sp = strict_presentation(pair_groupoid(5));  // 25 objects
    // Break the last composable triple so the witness sits late in the order.
    auto bad = sp;
    Id last = -1;
    for (std::size_t k = 0; k < sp.alpha.size(); ++k)
        if (sp.alpha[k] != kNone) last = static_cast<Id>(k);
    bad.alpha[last] = sp.G->unit((sp.G->src(sp.alpha[last]) + 1) % sp.n());
    for (const auto* x : {&sp, &bad}) {
        for (G4 d : {G4::kghl, G4::gh_one}) {
            Verdict s = check_g4_diagram(*x, d, Exec::serial), p = check_g4_diagram(*x, d, Exec::parallel);
            CHECK(s.passed == p.passed);
            if (!s.passed) CHECK(*s.witness == *p.witness);
        }
        Verdict s = check_g3(*x, Exec::serial), p = check_g3(*x, Exec::parallel);
        CHECK(s.passed == p.passed);
        if (!s.passed) CHECK(*s.witness == *p.witness);
    }
    CHECK_FALSE(check_g4_diagram(bad, G4::kghl).passed);
    CHECK_FALSE(check_g4(bad).passed);
}

TEST_CASE("product presentations") {
    auto p = product_presentation(from_skeletal(z2_cocycle()), from_crossed_module(cm_id_z2()));
    CHECK(check_g2(p).passed);
    CHECK(check_g4(p).passed);
    CHECK(p.n() == 4);
    auto q = product_presentation(strict_presentation(pair_groupoid(2)), group_presentation(cyclic_group(2)));
    CHECK(check_g4(q).passed);
    CHECK(q.M->num_objects() == 2);
}

TEST_CASE("isotropy 2-groups and s-fibres") {
    auto sp = strict_presentation(pair_groupoid(2));
    auto iso = isotropy_2group(sp, 0);
    CHECK(iso.sg.n() == 1);
    CHECK(check_g4(iso.sg).passed);
    CHECK(s_fibre(sp, 0).g->num_objects() == 2);
    CHECK_THROWS_AS(isotropy_2group(sp, 2), StructuralError);

    auto c = from_crossed_module(cm_id_z2());
    auto ic = isotropy_2group(c, 0);
    CHECK(ic.sg.n() == c.n());
    CHECK(ic.sg.G->num_arrows() == c.G->num_arrows());
    CHECK(check_g4(ic.sg).passed);
    auto f = s_fibre(c, 0);
    CHECK(f.g->num_objects() == c.n());
    CHECK(is_equivalence(f.pr2()).passed);

    auto sk = from_skeletal(cyclic_cocycle_2group(3));
    CHECK(check_g4(isotropy_2group(sk, 0).sg).passed);
}

TEST_CASE("theta and chi") {
    auto sp = strict_presentation(pair_groupoid(3));
    auto th = derive_theta_all(sp);
    for (Id g = 0; g < sp.n(); ++g)
        for (Id h = 0; h < sp.n(); ++h)
            if (th.at(g, h) != kNone) CHECK(th.at(g, h) == sp.G->unit(sp.G->src(th.at(g, h))));
    for (Id c : derive_chi(sp)) CHECK(sp.G->src(c) == sp.G->tgt(c));
    CHECK(check_theta_coherence(sp).passed);

    auto c = from_crossed_module(cm_z2_in_z4());
    for (Id x : derive_chi(c)) CHECK(x == c.G->unit(c.G->src(x)));

    for (const auto& d : {z2_cocycle(), cyclic_cocycle_2group(3), cyclic_cocycle_2group(3, 2)}) {
        auto sk = from_skeletal(d);
        auto t = derive_theta_all(sk);
        for (Id g = 0; g < sk.n(); ++g)
            for (Id h = 0; h < sk.n(); ++h) CHECK(theta_diagram_holds(sk, g, h, t.at(g, h)));
        CHECK(check_theta_coherence(sk, t).passed);
        // A wrong theta fails.
        auto wrong = t;
        Id a = wrong.at(1, 1);
        wrong.at(1, 1) = (a / d.pi2.order) * d.pi2.order + (a + 1) % d.pi2.order;
        Verdict v = check_theta_coherence(sk, wrong);
        CHECK_FALSE(v.passed);
    }
}

TEST_CASE("theta search reports a broken presentation") {
    auto sp = strict_presentation(pair_groupoid(2));
    auto bad = sp;
    bad.iota_l[2] = 3;  // wrong component: no arrow can close the diagram
    CHECK_THROWS_AS(derive_theta_all(bad), CheckFailed);
    CHECK_FALSE(check_g4(bad).passed);
}
