// Named weak-structure instances: the presentation, action and bibundle
// corpora shared by the tests, the acceptance suite and `stackyctl examples`.
#pragma once

#include <string>
#include <vector>

#include "stacky/morita.hpp"

namespace stacky {

template <class T>
struct Named {
    std::string name;
    T value;
};

// Discrete (1-5), pair (2-4), BΓ and translation groupoids of Γ in
// {Z/2, Z/3, Z/2×Z/2} acting freely, trivially and mixed.
std::vector<Named<GroupoidPtr>> groupoid_corpus();
// Strict presentations of a selection of groupoid_corpus, the crossed
// modules 0 : Z/2 -> 1, id : Z/2 -> Z/2, Z/2 -> Z/4 and the skeletal
// cocycle 2-groups on (Z/2, Z/2) and (Z/3, Z/3).
std::vector<Named<SgPtr>> presentation_corpus();
// Right weak actions: strict set actions, inert actions of 2-groups, self,
// inverted left self and pair actions of presentation_corpus.
std::vector<Named<ActionPtr>> right_action_corpus();
// Left weak actions: left self actions and inverted right set actions.
std::vector<Named<ActionPtr>> left_action_corpus();

// Every arrow of G acting as the unit on X over a one-point base.
ActionPtr inert_action(const SgPtr& sg, const GroupoidPtr& X);

// The crossed module presentation [K/H] for H = phi(A).
SgPtr crossed_module_presentation(int orderA, int orderK, const std::vector<Id>& phi);
SgPtr bz2_presentation();

// Names accepted by `stackyctl examples`.
std::vector<std::string> example_names();

}  // namespace stacky
