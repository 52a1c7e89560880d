#include "stacky/examples.hpp"

#include "stacky/corpus.hpp"

namespace stacky {

namespace {

FiniteGroup klein() { return product_group(cyclic_group(2), cyclic_group(2)); }

// x·g = x + g on the first |G| points, the rest fixed
SetAction mixed_action(const FiniteGroup& G, int extra) {
    return group_set_action(G, G.order + extra, [G](Id x, Id g) { return x < G.order ? G.mul(x, g) : x; });
}

}  // namespace

std::vector<Named<GroupoidPtr>> groupoid_corpus() {
    std::vector<Named<GroupoidPtr>> c;
    for (int n = 1; n <= 5; ++n) c.push_back({"discrete" + std::to_string(n), discrete_groupoid(n)});
    for (int n = 2; n <= 4; ++n) c.push_back({"pair" + std::to_string(n), pair_groupoid(n)});
    std::vector<Named<FiniteGroup>> groups = {{"z2", cyclic_group(2)}, {"z3", cyclic_group(3)}, {"klein", klein()}};
    for (const auto& [name, G] : groups) {
        c.push_back({"B" + name, delooping(G)});
        c.push_back({name + "-free", translation_groupoid(regular_action(G)).g});
        c.push_back({name + "-trivial2", translation_groupoid(trivial_action(G, 2)).g});
        if (G.order < 4) c.push_back({name + "-mixed", translation_groupoid(mixed_action(G, 1)).g});
    }
    return c;
}

SgPtr crossed_module_presentation(int orderA, int orderK, const std::vector<Id>& phi) {
    return share(from_crossed_module({cyclic_group(orderA), cyclic_group(orderK), phi}));
}

SgPtr bz2_presentation() { return crossed_module_presentation(2, 1, {0, 0}); }

std::vector<Named<SgPtr>> presentation_corpus() {
    std::vector<Named<SgPtr>> c;
    c.push_back({"strict-z2", share(group_presentation(cyclic_group(2)))});
    c.push_back({"strict-z3", share(group_presentation(cyclic_group(3)))});
    c.push_back({"strict-klein", share(group_presentation(klein()))});
    c.push_back({"strict-pair2", share(strict_presentation(pair_groupoid(2)))});
    c.push_back({"strict-pair3", share(strict_presentation(pair_groupoid(3)))});
    c.push_back({"strict-discrete2", share(strict_presentation(discrete_groupoid(2)))});
    c.push_back({"strict-z2-free", share(strict_presentation(translation_groupoid(regular_action(cyclic_group(2))).g))});
    c.push_back({"strict-z2-mixed", share(strict_presentation(translation_groupoid(mixed_action(cyclic_group(2), 1)).g))});
    c.push_back({"cm-zero", bz2_presentation()});
    c.push_back({"cm-id-z2", crossed_module_presentation(2, 2, {0, 1})});
    c.push_back({"cm-z2-z4", crossed_module_presentation(2, 4, {0, 2})});
    c.push_back({"skeletal-z2", share(from_skeletal(cyclic_cocycle_2group(2)))});
    c.push_back({"skeletal-z3", share(from_skeletal(cyclic_cocycle_2group(3)))});
    return c;
}

ActionPtr inert_action(const SgPtr& sg, const GroupoidPtr& X) {
    auto mu = to_discrete(X, sg->M, std::vector<Id>(X->num_objects(), 0));
    ActionMaps maps{[](Id x, Id) { return x; }, [](Id a, Id) { return a; },
                    [&](Id x, Id, Id) { return X->unit(x); }, [&](Id x) { return X->unit(x); }};
    return share(assemble_action(sg, Side::right, X, mu, maps));
}

std::vector<Named<ActionPtr>> right_action_corpus() {
    std::vector<Named<ActionPtr>> v;
    std::vector<Named<FiniteGroup>> groups = {{"z2", cyclic_group(2)}, {"z3", cyclic_group(3)}, {"klein", klein()}};
    for (const auto& [name, G] : groups) {
        auto sg = share(group_presentation(G));
        v.push_back({name + " regular", share(from_set_action(sg, regular_action(G)))});
        v.push_back({name + " trivial on 2", share(from_set_action(sg, trivial_action(G, 2)))});
        v.push_back({name + " mixed", share(from_set_action(sg, mixed_action(G, 1)))});
    }
    v.push_back({"bz2 trivial on point", inert_action(bz2_presentation(), point_groupoid())});
    v.push_back({"bz2 trivial on 2 points", inert_action(bz2_presentation(), discrete_groupoid(2))});
    v.push_back({"bz2 on B(z3)", inert_action(bz2_presentation(), delooping(cyclic_group(3)))});
    v.push_back({"skeletal-z2 trivial on point", inert_action(share(from_skeletal(cyclic_cocycle_2group(2))), point_groupoid())});
    v.push_back({"trivial on pair(2)", inert_action(share(group_presentation(trivial_group())), pair_groupoid(2))});
    for (const auto& [name, sg] : presentation_corpus()) {
        if (name == "strict-klein" || name == "strict-z3") continue;  // covered by the set actions
        auto self = share(self_action(sg, Side::right));
        v.push_back({"self " + name, self});
        v.push_back({"inverted left self " + name, share(invert_action(self_action(sg, Side::left)))});
        if (sg->n() <= 4) v.push_back({"pairs " + name, share(pair_action(*self))});
    }
    return v;
}

std::vector<Named<ActionPtr>> left_action_corpus() {
    std::vector<Named<ActionPtr>> v;
    for (const auto& [name, sg] : presentation_corpus()) v.push_back({"left self " + name, share(self_action(sg, Side::left))});
    std::vector<Named<FiniteGroup>> groups = {{"z2", cyclic_group(2)}, {"z3", cyclic_group(3)}};
    for (const auto& [name, G] : groups) {
        auto sg = share(group_presentation(G));
        v.push_back({"inverted " + name + " regular", share(invert_action(from_set_action(sg, regular_action(G))))});
        v.push_back({"inverted " + name + " mixed", share(invert_action(from_set_action(sg, mixed_action(G, 1))))});
    }
    v.push_back({"inverted bz2 trivial on point", share(invert_action(*inert_action(bz2_presentation(), point_groupoid())))});
    return v;
}

std::vector<std::string> example_names() {
    return {"pair-groupoid",        "crossed-module",       "skeletal-cocycle",
            "z2-regular-action",    "bz2-trivial-on-point", "self-bibundle",
            "restriction-bibundle", "discrete-prequantization"};
}

}  // namespace stacky
