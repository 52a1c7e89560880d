// Finite groupoids, functors and natural isomorphisms.
//
// Identifiers are dense indices. comp(g, h) is g∘h: apply h first, defined
// when src(g) == tgt(h). Multiplication formulas written as products gh
// with s(g) == t(h) therefore become comp(g, h) with no reordering.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stacky/kernels.hpp"

namespace stacky {

using Id = std::int32_t;
inline constexpr Id kNone = -1;

// A counterexample: the name of the violated law plus the identifiers that
// reproduce it. What the identifiers mean is fixed per law name.
struct Witness {
    std::string axiom;
    std::vector<Id> ids;
    bool operator==(const Witness&) const = default;
};

struct Verdict {
    bool passed = true;
    std::optional<Witness> witness;

    static Verdict ok() { return {}; }
    static Verdict fail(std::string axiom, std::vector<Id> ids) {
        return {false, Witness{std::move(axiom), std::move(ids)}};
    }
    explicit operator bool() const { return passed; }
    // Prefix the witness axiom, used when one check delegates to another.
    Verdict scoped(const std::string& prefix) const;
};

std::string to_string(const Witness& w);

// Out-of-range identifiers and similar table damage. Distinct from an axiom
// failure, which is reported through Verdict.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A construction whose input fails a checked precondition.
class CheckFailed : public std::runtime_error {
public:
    CheckFailed(const std::string& what, Verdict v) : std::runtime_error(what), verdict(std::move(v)) {}
    Verdict verdict;
};

class FiniteGroupoid {
public:
    using CompEntry = std::array<Id, 3>;  // {g, h, g∘h}

    FiniteGroupoid() = default;

    // Raw tables, as they come from a document. Entries for non-composable
    // pairs are kept aside so the validator can report them.
    FiniteGroupoid(int objects, std::vector<Id> src, std::vector<Id> tgt, std::vector<Id> unit,
                   std::vector<Id> inv, const std::vector<CompEntry>& comp);

    // Tables computed by a construction: compose(g, h) is called once for
    // every composable pair.
    static FiniteGroupoid build(int objects, std::vector<Id> src, std::vector<Id> tgt,
                                std::vector<Id> unit, std::vector<Id> inv,
                                const std::function<Id(Id, Id)>& compose);

    static FiniteGroupoid discrete(int objects);

    int num_objects() const { return objects_; }
    int num_arrows() const { return static_cast<int>(src_.size()); }

    Id src(Id a) const { return src_[a]; }
    Id tgt(Id a) const { return tgt_[a]; }
    Id unit(Id x) const { return unit_[x]; }
    Id inv(Id a) const { return inv_[a]; }
    bool composable(Id g, Id h) const { return src_[g] == tgt_[h]; }
    // kNone when not composable or when the table entry is missing.
    Id comp(Id g, Id h) const;
    // Compose a path listed in application order reversed: comp_chain({a, b, c}) = a∘b∘c.
    Id comp_chain(std::initializer_list<Id> arrows) const;

    std::span<const Id> hom(Id x, Id y) const;
    std::span<const Id> out(Id x) const;
    // Arrows with target y, by increasing identifier.
    std::span<const Id> in(Id y) const;
    // Position of a within out(src(a)).
    int out_rank(Id a) const { return outRank_[a]; }
    bool is_discrete() const;

    const std::vector<Id>& src_table() const { return src_; }
    const std::vector<Id>& tgt_table() const { return tgt_; }
    const std::vector<Id>& unit_table() const { return unit_; }
    const std::vector<Id>& inv_table() const { return inv_; }
    const std::vector<CompEntry>& stray_comp() const { return stray_; }
    // Every stored entry, stray ones included, sorted.
    std::vector<CompEntry> comp_entries() const;

    // Replace one composable entry (used by mutation tests).
    FiniteGroupoid with_comp(Id g, Id h, Id value) const;

    bool operator==(const FiniteGroupoid& other) const;

private:
    void index();
    std::size_t slot(Id g, Id h) const { return compOffset_[g] + inRank_[h]; }

    int objects_ = 0;
    std::vector<Id> src_, tgt_, unit_, inv_;
    std::vector<CompEntry> stray_;
    // Arrows sorted by (src, tgt, id); outStart_ indexes by object.
    std::vector<Id> outOrder_, outStart_, outRank_;
    // Arrows sorted by (tgt, id), with the rank of each arrow in its block.
    std::vector<Id> inOrder_, inStart_, inRank_;
    std::vector<std::size_t> compOffset_;
    std::vector<Id> compTable_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidPtr share(FiniteGroupoid g) { return std::make_shared<const FiniteGroupoid>(std::move(g)); }

struct GroupoidFunctor {
    GroupoidPtr dom, cod;
    std::vector<Id> obj, arr;

    Id operator()(Id a) const { return arr[a]; }
    Id on_object(Id x) const { return obj[x]; }
};

// Component form: component[x] : F(x) -> G(x).
struct NatIso {
    GroupoidFunctor dom, cod;
    std::vector<Id> component;
};

// Ranges are enforced when a FiniteGroupoid is constructed; this checks axioms.
Verdict validate_groupoid(const FiniteGroupoid& g, Exec exec = Exec::parallel);
// True when the law named in w fails at w.ids.
bool replay_groupoid(const FiniteGroupoid& g, const Witness& w);

void check_structure(const GroupoidFunctor& f);
Verdict validate_functor(const GroupoidFunctor& f);
bool replay_functor(const GroupoidFunctor& f, const Witness& w);

Verdict validate_natiso(const NatIso& n);

GroupoidFunctor identity_functor(const GroupoidPtr& g);
// g∘f
GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f);
bool same_functor(const GroupoidFunctor& a, const GroupoidFunctor& b);

// Connected component label per object, labels dense from 0 in object order.
std::vector<Id> components(const FiniteGroupoid& g);

}  // namespace stacky
