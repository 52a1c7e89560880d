#include "stacky/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace stacky {

Verdict Verdict::scoped(const std::string& prefix) const {
    if (passed) return *this;
    Verdict v = *this;
    v.witness->axiom = prefix + ":" + v.witness->axiom;
    return v;
}

std::string to_string(const Witness& w) {
    std::ostringstream os;
    os << w.axiom << " [";
    for (std::size_t i = 0; i < w.ids.size(); ++i) os << (i ? "," : "") << w.ids[i];
    os << "]";
    return os.str();
}

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw StructuralError(what);
}

void check_range(const std::vector<Id>& v, int bound, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i)
        require(v[i] >= 0 && v[i] < bound,
                std::string(name) + "[" + std::to_string(i) + "] = " + std::to_string(v[i]) +
                    " out of range 0.." + std::to_string(bound - 1));
}

}  // namespace

FiniteGroupoid::FiniteGroupoid(int objects, std::vector<Id> src, std::vector<Id> tgt,
                               std::vector<Id> unit, std::vector<Id> inv,
                               const std::vector<CompEntry>& comp)
    : objects_(objects), src_(std::move(src)), tgt_(std::move(tgt)), unit_(std::move(unit)),
      inv_(std::move(inv)) {
    require(objects_ >= 0, "negative object count");
    const int n = static_cast<int>(src_.size());
    require(tgt_.size() == src_.size(), "tgt table length differs from src");
    require(inv_.size() == src_.size(), "inv table length differs from src");
    require(static_cast<int>(unit_.size()) == objects_, "unit table length differs from object count");
    check_range(src_, objects_, "src");
    check_range(tgt_, objects_, "tgt");
    check_range(unit_, n, "unit");
    check_range(inv_, n, "inv");
    index();
    std::vector<CompEntry> seen;
    for (const auto& e : comp) {
        for (Id v : e) require(v >= 0 && v < n, "comp entry identifier " + std::to_string(v) + " out of range");
        if (composable(e[0], e[1])) {
            Id& cell = compTable_[slot(e[0], e[1])];
            require(cell == kNone, "duplicate comp entry for (" + std::to_string(e[0]) + "," +
                                       std::to_string(e[1]) + ")");
            cell = e[2];
        } else {
            seen.push_back(e);
        }
    }
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 1; i < seen.size(); ++i)
        require(seen[i][0] != seen[i - 1][0] || seen[i][1] != seen[i - 1][1], "duplicate comp entry");
    stray_ = std::move(seen);
}

FiniteGroupoid FiniteGroupoid::build(int objects, std::vector<Id> src, std::vector<Id> tgt,
                                     std::vector<Id> unit, std::vector<Id> inv,
                                     const std::function<Id(Id, Id)>& compose) {
    FiniteGroupoid g(objects, std::move(src), std::move(tgt), std::move(unit), std::move(inv), {});
    const int n = g.num_arrows();
    for (Id a = 0; a < n; ++a)
        for (Id b : g.in(g.src_[a])) g.compTable_[g.slot(a, b)] = compose(a, b);
    return g;
}

FiniteGroupoid FiniteGroupoid::discrete(int objects) {
    std::vector<Id> ids(objects);
    std::iota(ids.begin(), ids.end(), 0);
    return build(objects, ids, ids, ids, ids, [](Id a, Id) { return a; });
}

void FiniteGroupoid::index() {
    const int n = num_arrows();
    outOrder_.resize(n);
    std::iota(outOrder_.begin(), outOrder_.end(), 0);
    std::sort(outOrder_.begin(), outOrder_.end(), [&](Id a, Id b) {
        if (src_[a] != src_[b]) return src_[a] < src_[b];
        if (tgt_[a] != tgt_[b]) return tgt_[a] < tgt_[b];
        return a < b;
    });
    outStart_.assign(objects_ + 1, 0);
    inStart_.assign(objects_ + 1, 0);
    for (Id a = 0; a < n; ++a) {
        ++outStart_[src_[a] + 1];
        ++inStart_[tgt_[a] + 1];
    }
    for (int x = 0; x < objects_; ++x) {
        outStart_[x + 1] += outStart_[x];
        inStart_[x + 1] += inStart_[x];
    }
    outRank_.assign(n, 0);
    for (int pos = 0; pos < n; ++pos) {
        Id a = outOrder_[pos];
        outRank_[a] = pos - outStart_[src_[a]];
    }
    inRank_.assign(n, 0);
    inOrder_.assign(n, 0);
    std::vector<Id> fill(objects_, 0);
    for (Id a = 0; a < n; ++a) {
        inRank_[a] = fill[tgt_[a]]++;
        inOrder_[inStart_[tgt_[a]] + inRank_[a]] = a;
    }
    compOffset_.assign(n + 1, 0);
    for (Id a = 0; a < n; ++a)
        compOffset_[a + 1] = compOffset_[a] + static_cast<std::size_t>(inStart_[src_[a] + 1] - inStart_[src_[a]]);
    compTable_.assign(compOffset_[n], kNone);
}

Id FiniteGroupoid::comp(Id g, Id h) const {
    if (!composable(g, h)) return kNone;
    return compTable_[slot(g, h)];
}

Id FiniteGroupoid::comp_chain(std::initializer_list<Id> arrows) const {
    Id acc = kNone;
    for (auto it = std::rbegin(arrows); it != std::rend(arrows); ++it) {
        if (*it == kNone) return kNone;
        acc = acc == kNone ? *it : comp(*it, acc);
        if (acc == kNone) return kNone;
    }
    return acc;
}

std::span<const Id> FiniteGroupoid::out(Id x) const {
    return {outOrder_.data() + outStart_[x], static_cast<std::size_t>(outStart_[x + 1] - outStart_[x])};
}

std::span<const Id> FiniteGroupoid::in(Id y) const {
    return {inOrder_.data() + inStart_[y], static_cast<std::size_t>(inStart_[y + 1] - inStart_[y])};
}

std::span<const Id> FiniteGroupoid::hom(Id x, Id y) const {
    auto block = out(x);
    auto lo = std::lower_bound(block.begin(), block.end(), y, [&](Id a, Id v) { return tgt_[a] < v; });
    auto hi = std::upper_bound(lo, block.end(), y, [&](Id v, Id a) { return v < tgt_[a]; });
    return {block.data() + (lo - block.begin()), static_cast<std::size_t>(hi - lo)};
}

bool FiniteGroupoid::is_discrete() const {
    for (Id a = 0; a < num_arrows(); ++a)
        if (src_[a] != tgt_[a] || unit_[src_[a]] != a) return false;
    return true;
}

std::vector<FiniteGroupoid::CompEntry> FiniteGroupoid::comp_entries() const {
    std::vector<CompEntry> out = stray_;
    const int n = num_arrows();
    for (Id g = 0; g < n; ++g)
        for (Id h : in(src_[g]))
            if (compTable_[slot(g, h)] != kNone) out.push_back({g, h, compTable_[slot(g, h)]});
    std::sort(out.begin(), out.end());
    return out;
}

FiniteGroupoid FiniteGroupoid::with_comp(Id g, Id h, Id value) const {
    FiniteGroupoid copy = *this;
    if (!composable(g, h)) throw StructuralError("with_comp on a non-composable pair");
    copy.compTable_[slot(g, h)] = value;
    return copy;
}

bool FiniteGroupoid::operator==(const FiniteGroupoid& o) const {
    return objects_ == o.objects_ && src_ == o.src_ && tgt_ == o.tgt_ && unit_ == o.unit_ && inv_ == o.inv_ &&
           stray_ == o.stray_ && compTable_ == o.compTable_;
}

namespace {

// Laws in the order they are checked. Earlier laws make later ones total.
Verdict groupoid_laws(const FiniteGroupoid& g, Exec exec) {
    const int n0 = g.num_objects(), n = g.num_arrows();
    for (Id x = 0; x < n0; ++x)
        if (g.src(g.unit(x)) != x || g.tgt(g.unit(x)) != x) return Verdict::fail("unit-endpoints", {x});
    if (!g.stray_comp().empty()) {
        const auto& e = g.stray_comp().front();
        return Verdict::fail("comp-domain", {e[0], e[1]});
    }
    // Every composable pair has an entry with the right endpoints.
    for (Id a = 0; a < n; ++a)
        for (Id b : g.in(g.src(a))) {
            Id c = g.comp(a, b);
            if (c == kNone) return Verdict::fail("comp-domain", {a, b});
            if (g.src(c) != g.src(b) || g.tgt(c) != g.tgt(a)) return Verdict::fail("comp-endpoints", {a, b});
        }
    for (Id a = 0; a < n; ++a) {
        if (g.comp(g.unit(g.tgt(a)), a) != a) return Verdict::fail("left-unit", {a});
        if (g.comp(a, g.unit(g.src(a))) != a) return Verdict::fail("right-unit", {a});
    }
    for (Id a = 0; a < n; ++a) {
        Id i = g.inv(a);
        if (g.comp(i, a) != g.unit(g.src(a))) return Verdict::fail("left-inverse", {a});
        if (g.comp(a, i) != g.unit(g.tgt(a))) return Verdict::fail("right-inverse", {a});
    }
    // Associativity, blocked by the outermost arrow.
    auto assoc_fails_at = [&](Id f, Id* wg, Id* wh) {
        for (Id gg : g.in(g.src(f))) {
            Id fg = g.comp(f, gg);
            for (Id h : g.in(g.src(gg))) {
                if (g.comp(fg, h) != g.comp(f, g.comp(gg, h))) {
                    if (wg) *wg = gg, *wh = h;
                    return true;
                }
            }
        }
        return false;
    };
    std::size_t bad = kernel::first_failure(exec, static_cast<std::size_t>(n),
                                            [&](std::size_t f) { return assoc_fails_at(static_cast<Id>(f), nullptr, nullptr); });
    if (bad < static_cast<std::size_t>(n)) {
        Id wg = kNone, wh = kNone;
        assoc_fails_at(static_cast<Id>(bad), &wg, &wh);
        return Verdict::fail("associativity", {static_cast<Id>(bad), wg, wh});
    }
    return Verdict::ok();
}

}  // namespace

Verdict validate_groupoid(const FiniteGroupoid& g, Exec exec) { return groupoid_laws(g, exec); }

bool replay_groupoid(const FiniteGroupoid& g, const Witness& w) {
    auto in_range = [&](Id a) { return a >= 0 && a < g.num_arrows(); };
    const auto& ids = w.ids;
    if (w.axiom == "unit-endpoints") {
        Id x = ids.at(0);
        return g.src(g.unit(x)) != x || g.tgt(g.unit(x)) != x;
    }
    if (w.axiom == "comp-domain") {
        Id a = ids.at(0), b = ids.at(1);
        if (!in_range(a) || !in_range(b)) return false;
        if (!g.composable(a, b)) {
            for (const auto& e : g.stray_comp())
                if (e[0] == a && e[1] == b) return true;
            return false;
        }
        return g.comp(a, b) == kNone;
    }
    if (w.axiom == "comp-endpoints") {
        Id a = ids.at(0), b = ids.at(1), c = g.comp(a, b);
        return c != kNone && (g.src(c) != g.src(b) || g.tgt(c) != g.tgt(a));
    }
    if (w.axiom == "left-unit") return g.comp(g.unit(g.tgt(ids.at(0))), ids.at(0)) != ids.at(0);
    if (w.axiom == "right-unit") return g.comp(ids.at(0), g.unit(g.src(ids.at(0)))) != ids.at(0);
    if (w.axiom == "left-inverse") return g.comp(g.inv(ids.at(0)), ids.at(0)) != g.unit(g.src(ids.at(0)));
    if (w.axiom == "right-inverse") return g.comp(ids.at(0), g.inv(ids.at(0))) != g.unit(g.tgt(ids.at(0)));
    if (w.axiom == "associativity") {
        Id f = ids.at(0), a = ids.at(1), b = ids.at(2);
        if (!g.composable(f, a) || !g.composable(a, b)) return false;
        return g.comp(g.comp(f, a), b) != g.comp(f, g.comp(a, b));
    }
    return false;
}

void check_structure(const GroupoidFunctor& f) {
    if (!f.dom || !f.cod) throw StructuralError("functor without domain or codomain");
    if (static_cast<int>(f.obj.size()) != f.dom->num_objects())
        throw StructuralError("functor object map has the wrong length");
    if (static_cast<int>(f.arr.size()) != f.dom->num_arrows())
        throw StructuralError("functor arrow map has the wrong length");
    check_range(f.obj, f.cod->num_objects(), "functor.obj");
    check_range(f.arr, f.cod->num_arrows(), "functor.arr");
}

Verdict validate_functor(const GroupoidFunctor& f) {
    check_structure(f);
    const auto& A = *f.dom;
    const auto& B = *f.cod;
    for (Id a = 0; a < A.num_arrows(); ++a) {
        if (B.src(f.arr[a]) != f.obj[A.src(a)]) return Verdict::fail("functor-src", {a});
        if (B.tgt(f.arr[a]) != f.obj[A.tgt(a)]) return Verdict::fail("functor-tgt", {a});
    }
    for (Id x = 0; x < A.num_objects(); ++x)
        if (f.arr[A.unit(x)] != B.unit(f.obj[x])) return Verdict::fail("functor-unit", {x});
    for (Id a = 0; a < A.num_arrows(); ++a)
        for (Id b : A.in(A.src(a))) {
            Id ab = A.comp(a, b);
            if (ab == kNone) continue;
            if (f.arr[ab] != B.comp(f.arr[a], f.arr[b])) return Verdict::fail("functor-comp", {a, b});
        }
    return Verdict::ok();
}

bool replay_functor(const GroupoidFunctor& f, const Witness& w) {
    const auto& A = *f.dom;
    const auto& B = *f.cod;
    const auto& ids = w.ids;
    if (w.axiom == "functor-src") return B.src(f.arr[ids.at(0)]) != f.obj[A.src(ids.at(0))];
    if (w.axiom == "functor-tgt") return B.tgt(f.arr[ids.at(0)]) != f.obj[A.tgt(ids.at(0))];
    if (w.axiom == "functor-unit") return f.arr[A.unit(ids.at(0))] != B.unit(f.obj[ids.at(0)]);
    if (w.axiom == "functor-comp") {
        Id ab = A.comp(ids.at(0), ids.at(1));
        return ab != kNone && f.arr[ab] != B.comp(f.arr[ids.at(0)], f.arr[ids.at(1)]);
    }
    return false;
}

Verdict validate_natiso(const NatIso& n) {
    check_structure(n.dom);
    check_structure(n.cod);
    if (n.dom.dom != n.cod.dom || n.dom.cod != n.cod.cod) throw StructuralError("natiso between non-parallel functors");
    const auto& A = *n.dom.dom;
    const auto& B = *n.dom.cod;
    if (static_cast<int>(n.component.size()) != A.num_objects())
        throw StructuralError("natiso component table has the wrong length");
    check_range(n.component, B.num_arrows(), "natiso.component");
    for (Id x = 0; x < A.num_objects(); ++x) {
        Id c = n.component[x];
        if (B.src(c) != n.dom.obj[x] || B.tgt(c) != n.cod.obj[x]) return Verdict::fail("natiso-endpoints", {x});
    }
    for (Id a = 0; a < A.num_arrows(); ++a) {
        Id lhs = B.comp(n.component[A.tgt(a)], n.dom.arr[a]);
        Id rhs = B.comp(n.cod.arr[a], n.component[A.src(a)]);
        if (lhs != rhs) return Verdict::fail("naturality", {a});
    }
    return Verdict::ok();
}

GroupoidFunctor identity_functor(const GroupoidPtr& g) {
    GroupoidFunctor f{g, g, std::vector<Id>(g->num_objects()), std::vector<Id>(g->num_arrows())};
    std::iota(f.obj.begin(), f.obj.end(), 0);
    std::iota(f.arr.begin(), f.arr.end(), 0);
    return f;
}

GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f) {
    if (f.cod != g.dom && !(f.cod && g.dom && *f.cod == *g.dom))
        throw StructuralError("compose: codomain of the first functor is not the domain of the second");
    GroupoidFunctor r{f.dom, g.cod, {}, {}};
    r.obj.reserve(f.obj.size());
    r.arr.reserve(f.arr.size());
    for (Id x : f.obj) r.obj.push_back(g.obj[x]);
    for (Id a : f.arr) r.arr.push_back(g.arr[a]);
    return r;
}

bool same_functor(const GroupoidFunctor& a, const GroupoidFunctor& b) { return a.obj == b.obj && a.arr == b.arr; }

std::vector<Id> components(const FiniteGroupoid& g) {
    const int n0 = g.num_objects();
    std::vector<Id> parent(n0);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Id x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Id a = 0; a < g.num_arrows(); ++a) {
        Id r1 = find(g.src(a)), r2 = find(g.tgt(a));
        if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
    }
    std::vector<Id> label(n0, kNone);
    std::vector<Id> byRoot(n0, kNone);
    Id next = 0;
    for (Id x = 0; x < n0; ++x) {
        Id r = find(x);
        if (byRoot[r] == kNone) byRoot[r] = next++;
        label[x] = byRoot[r];
    }
    return label;
}

}  // namespace stacky
