// Small named instances: groups, pair groupoids, deloopings and set actions.
// The weak-structure instances live in examples.hpp.
#pragma once

#include <string>
#include <vector>

#include "stacky/constructions.hpp"

namespace stacky {

// Finite group by multiplication table; element 0 is the identity.
struct FiniteGroup {
    int order = 1;
    std::vector<Id> table;  // order × order
    bool abelian = true;

    Id mul(Id a, Id b) const { return table[static_cast<std::size_t>(a) * order + b]; }
    Id inv(Id a) const;
};

FiniteGroup cyclic_group(int n);
FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup trivial_group();
// Validates the table (closure, identity, inverses, associativity).
Verdict validate_group(const FiniteGroup& g);

GroupoidPtr discrete_groupoid(int n);
// Arrow j -> i has identifier i * n + j.
GroupoidPtr pair_groupoid(int n);
// One object, arrows = group elements, comp(g, h) = gh.
GroupoidPtr delooping(const FiniteGroup& g);

// Right action of a group on {0..points-1}: act(x, g) = x·g.
SetAction group_set_action(const FiniteGroup& g, int points, const std::function<Id(Id, Id)>& act);
// Translation of the group on itself: x·g = xg.
SetAction regular_action(const FiniteGroup& g);
SetAction trivial_action(const FiniteGroup& g, int points);

}  // namespace stacky
