#include "document.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "stacky/examples.hpp"

namespace stacky::io {

using nlohmann::json;
using Ids = std::vector<Id>;

namespace {

// ---------------------------------------------------------------- writing

json groupoid_json(const FiniteGroupoid& g) {
    json comp = json::array();
    for (const auto& e : g.comp_entries()) comp.push_back({e[0], e[1], e[2]});
    return {{"objects", g.num_objects()}, {"src", g.src_table()}, {"tgt", g.tgt_table()},
            {"unit", g.unit_table()},     {"inv", g.inv_table()}, {"comp", comp}};
}

json maps_json(const GroupoidFunctor& f) { return {{"obj", f.obj}, {"arr", f.arr}}; }

json functor_json(const GroupoidFunctor& f) {
    return {{"dom", groupoid_json(*f.dom)}, {"cod", groupoid_json(*f.cod)}, {"obj", f.obj}, {"arr", f.arr}};
}

json group_json(const FiniteGroup& g) { return {{"order", g.order}, {"table", g.table}}; }

json sg_json(const StackyGroupoid& sg) {
    json mo = json::array(), ma = json::array(), al = json::array();
    for (const auto& [g, h] : sg.GG.objs) mo.push_back({g, h, sg.mul(g, h)});
    for (const auto& [a, b] : sg.GG.arrs) ma.push_back({a, b, sg.mul_arr(a, b)});
    const int n = sg.n();
    for (Id g = 0; g < n; ++g)
        for (Id h = 0; h < n; ++h)
            for (Id l = 0; l < n; ++l)
                if (sg.a(g, h, l) != kNone) al.push_back({g, h, l, sg.a(g, h, l)});
    std::sort(mo.begin(), mo.end());
    std::sort(ma.begin(), ma.end());
    return {{"M", groupoid_json(*sg.M)}, {"G", groupoid_json(*sg.G)}, {"s", maps_json(sg.s)},
            {"t", maps_json(sg.t)},      {"u", maps_json(sg.u)},      {"i", maps_json(sg.i)},
            {"mulObj", mo},              {"mulArr", ma},              {"alpha", al},
            {"lambda", sg.lambda},       {"rho", sg.rho},             {"iotaL", sg.iota_l},
            {"iotaR", sg.iota_r}};
}

// act, beta, epsilon in written order
json action_tables(const WeakAction& wa) {
    json ao = json::array(), aa = json::array(), be = json::array();
    for (std::size_t k = 0; k < wa.dom.objs.size(); ++k)
        ao.push_back({wa.dom.objs[k][0], wa.dom.objs[k][1], wa.act.obj[k]});
    for (std::size_t k = 0; k < wa.dom.arrs.size(); ++k)
        aa.push_back({wa.dom.arrs[k][0], wa.dom.arrs[k][1], wa.act.arr[k]});
    const int n = wa.sg->n();
    for (Id x = 0; x < wa.nx(); ++x)
        for (Id p = 0; p < n; ++p)
            for (Id q = 0; q < n; ++q) {
                Id c = wa.b(x, p, q);
                if (c == kNone) continue;
                if (wa.side == Side::right)
                    be.push_back({x, p, q, c});
                else
                    be.push_back({p, q, x, c});
            }
    std::sort(ao.begin(), ao.end());
    std::sort(aa.begin(), aa.end());
    std::sort(be.begin(), be.end());
    return {{"act", {{"obj", ao}, {"arr", aa}}}, {"beta", be}, {"epsilon", wa.epsilon}};
}

json action_json(const WeakAction& wa) {
    json j = action_tables(wa);
    j["sg"] = sg_json(*wa.sg);
    j["side"] = wa.side == Side::right ? "right" : "left";
    j["X"] = groupoid_json(*wa.X);
    j["mu"] = maps_json(wa.mu);
    return j;
}

json bibundle_json(const StackyBibundle& bb) {
    json tau = json::array();
    const int n1 = bb.sg1()->n(), n2 = bb.sg2()->n(), nx = bb.X()->num_objects();
    for (Id g1 = 0; g1 < n1; ++g1)
        for (Id x = 0; x < nx; ++x)
            for (Id g2 = 0; g2 < n2; ++g2)
                if (Id c = bb.t(g1, x, g2); c != kNone) tau.push_back({g1, x, g2, c});
    return {{"sg1", sg_json(*bb.sg1())},
            {"sg2", sg_json(*bb.sg2())},
            {"X", groupoid_json(*bb.X())},
            {"mu1", maps_json(bb.mu1())},
            {"mu2", maps_json(bb.mu2())},
            {"leftAction", action_tables(*bb.left)},
            {"rightAction", action_tables(*bb.right)},
            {"tau", tau}};
}

// ---------------------------------------------------------------- reading

struct Reader {
    std::string path;

    Reader at(const std::string& key) const { return {path + "/" + key}; }
    Reader at(std::size_t i) const { return {path + "/" + std::to_string(i)}; }

    [[noreturn]] void schema(const std::string& msg) const { throw InputError("schema", path, msg); }
    [[noreturn]] void dangling(const std::string& msg) const { throw InputError("dangling-identifier", path, msg); }

    const json& field(const json& j, const std::string& key) const {
        if (!j.is_object()) schema("expected an object");
        auto it = j.find(key);
        if (it == j.end()) at(key).schema("missing field");
        return *it;
    }
    int integer(const json& j) const {
        if (!j.is_number_integer()) schema("expected an integer");
        auto v = j.get<long long>();
        if (v < -1 || v > (1 << 28)) schema("integer out of range");
        return static_cast<int>(v);
    }
    // Identifiers in [0, bound)
    Ids ids(const json& j, int bound, std::size_t length = std::size_t(-1)) const {
        if (!j.is_array()) schema("expected an array");
        if (length != std::size_t(-1) && j.size() != length)
            schema("expected " + std::to_string(length) + " entries, got " + std::to_string(j.size()));
        Ids out;
        for (std::size_t i = 0; i < j.size(); ++i) {
            int v = at(i).integer(j[i]);
            if (v < 0 || v >= bound) at(i).dangling("identifier " + std::to_string(v) + " out of range");
            out.push_back(v);
        }
        return out;
    }
    // Rows of fixed width, each entry in its own range.
    std::vector<Ids> rows(const json& j, const std::vector<int>& bounds) const {
        if (!j.is_array()) schema("expected an array");
        std::vector<Ids> out;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const Reader r = at(i);
            if (!j[i].is_array() || j[i].size() != bounds.size())
                r.schema("expected a row of " + std::to_string(bounds.size()) + " identifiers");
            Ids row;
            for (std::size_t k = 0; k < bounds.size(); ++k) {
                int v = r.at(k).integer(j[i][k]);
                if (v < 0 || v >= bounds[k]) r.at(k).dangling("identifier " + std::to_string(v) + " out of range");
                row.push_back(v);
            }
            out.push_back(std::move(row));
        }
        return out;
    }
};

GroupoidPtr read_groupoid(const json& j, const Reader& r) {
    int objects = r.at("objects").integer(r.field(j, "objects"));
    if (objects < 0) r.at("objects").schema("negative object count");
    const json& src = r.field(j, "src");
    if (!src.is_array()) r.at("src").schema("expected an array");
    const int n = static_cast<int>(src.size());
    Ids s = r.at("src").ids(src, objects);
    Ids t = r.at("tgt").ids(r.field(j, "tgt"), objects, n);
    Ids u = r.at("unit").ids(r.field(j, "unit"), n, objects);
    Ids i = r.at("inv").ids(r.field(j, "inv"), n, n);
    std::vector<FiniteGroupoid::CompEntry> comp;
    for (const auto& row : r.at("comp").rows(r.field(j, "comp"), {n, n, n})) comp.push_back({row[0], row[1], row[2]});
    try {
        return share(FiniteGroupoid(objects, s, t, u, i, comp));
    } catch (const StructuralError& e) {
        r.at("comp").schema(e.what());
    }
}

GroupoidFunctor read_maps(const json& j, const Reader& r, const GroupoidPtr& dom, const GroupoidPtr& cod) {
    GroupoidFunctor f{dom, cod, {}, {}};
    f.obj = r.at("obj").ids(r.field(j, "obj"), cod->num_objects(), dom->num_objects());
    f.arr = r.at("arr").ids(r.field(j, "arr"), cod->num_arrows(), dom->num_arrows());
    return f;
}

GroupoidFunctor read_functor(const json& j, const Reader& r) {
    auto dom = read_groupoid(r.field(j, "dom"), r.at("dom"));
    auto cod = read_groupoid(r.field(j, "cod"), r.at("cod"));
    return read_maps(j, r, dom, cod);
}

FiniteGroup read_group(const json& j, const Reader& r) {
    FiniteGroup g;
    g.order = r.at("order").integer(r.field(j, "order"));
    if (g.order < 1) r.at("order").schema("a group has at least one element");
    g.table = r.at("table").ids(r.field(j, "table"), g.order, static_cast<std::size_t>(g.order) * g.order);
    for (Id a = 0; a < g.order; ++a)
        for (Id b = 0; b < g.order; ++b) g.abelian = g.abelian && g.mul(a, b) == g.mul(b, a);
    return g;
}

// Missing entries of a lookup table are schema errors at the table's path.
template <int N>
struct Table {
    std::map<std::array<Id, N>, Id> m;
    Reader r;
    Id operator()(std::array<Id, N> k) const {
        auto it = m.find(k);
        if (it == m.end()) {
            std::string s;
            for (Id v : k) s += (s.empty() ? "" : ",") + std::to_string(v);
            r.schema("missing entry for (" + s + ")");
        }
        return it->second;
    }
};

template <int N>
Table<N> read_table(const json& j, const Reader& r, const std::vector<int>& bounds) {
    Table<N> t{{}, r};
    for (const auto& row : r.rows(j, bounds)) {
        std::array<Id, N> k;
        for (int i = 0; i < N; ++i) k[i] = row[i];
        if (!t.m.emplace(k, row[N]).second) r.schema("duplicate entry");
    }
    return t;
}

std::mutex cacheMutex;
std::unordered_map<std::string, SgPtr> sgCache;

SgPtr read_sg(const json& j, const Reader& r) {
    std::string key = j.dump();
    {
        std::lock_guard lock(cacheMutex);
        if (auto it = sgCache.find(key); it != sgCache.end()) return it->second;
    }
    auto M = read_groupoid(r.field(j, "M"), r.at("M"));
    auto G = read_groupoid(r.field(j, "G"), r.at("G"));
    auto s = read_maps(r.field(j, "s"), r.at("s"), G, M);
    auto t = read_maps(r.field(j, "t"), r.at("t"), G, M);
    auto u = read_maps(r.field(j, "u"), r.at("u"), M, G);
    auto i = read_maps(r.field(j, "i"), r.at("i"), G, G);
    const int n = G->num_objects(), na = G->num_arrows();
    auto mo = read_table<2>(r.field(j, "mulObj"), r.at("mulObj"), {n, n, n});
    auto ma = read_table<2>(r.field(j, "mulArr"), r.at("mulArr"), {na, na, na});
    auto al = read_table<3>(r.field(j, "alpha"), r.at("alpha"), {n, n, n, na});
    Ids la = r.at("lambda").ids(r.field(j, "lambda"), na, n);
    Ids rh = r.at("rho").ids(r.field(j, "rho"), na, n);
    Ids il = r.at("iotaL").ids(r.field(j, "iotaL"), na, n);
    Ids ir = r.at("iotaR").ids(r.field(j, "iotaR"), na, n);
    StructureMaps maps{[&](Id g, Id h) { return mo({g, h}); },
                       [&](Id a, Id b) { return ma({a, b}); },
                       [&](Id g, Id h, Id l) { return al({g, h, l}); },
                       [&](Id g) { return la[g]; },
                       [&](Id g) { return rh[g]; },
                       [&](Id g) { return il[g]; },
                       [&](Id g) { return ir[g]; }};
    SgPtr sg;
    try {
        sg = share(assemble(M, G, s, t, u, i, maps));
    } catch (const StructuralError& e) {
        r.schema(e.what());
    }
    std::lock_guard lock(cacheMutex);
    return sgCache.emplace(key, sg).first->second;
}

ActionPtr read_action_tables(const json& j, const Reader& r, const SgPtr& sg, Side side, const GroupoidPtr& X,
                             GroupoidFunctor mu) {
    const int n = sg->n(), na = sg->G->num_arrows(), nx = X->num_objects(), nxa = X->num_arrows();
    const json& act = r.field(j, "act");
    const bool right = side == Side::right;
    auto ao = read_table<2>(r.at("act").field(act, "obj"), r.at("act").at("obj"),
                            right ? std::vector<int>{nx, n, nx} : std::vector<int>{n, nx, nx});
    auto aa = read_table<2>(r.at("act").field(act, "arr"), r.at("act").at("arr"),
                            right ? std::vector<int>{nxa, na, nxa} : std::vector<int>{na, nxa, nxa});
    auto be = read_table<3>(r.field(j, "beta"), r.at("beta"),
                            right ? std::vector<int>{nx, n, n, nxa} : std::vector<int>{n, n, nx, nxa});
    Ids ep = r.at("epsilon").ids(r.field(j, "epsilon"), nxa, nx);
    ActionMaps maps{[&](Id p, Id q) { return ao({p, q}); }, [&](Id p, Id q) { return aa({p, q}); },
                    [&](Id p, Id q, Id s) { return be({p, q, s}); }, [&](Id x) { return ep[x]; }};
    try {
        return share(assemble_action(sg, side, X, std::move(mu), maps));
    } catch (const StructuralError& e) {
        r.schema(e.what());
    }
}

ActionPtr read_action(const json& j, const Reader& r) {
    auto sg = read_sg(r.field(j, "sg"), r.at("sg"));
    const json& sd = r.field(j, "side");
    if (sd != "left" && sd != "right") r.at("side").schema("side must be \"left\" or \"right\"");
    Side side = sd == "right" ? Side::right : Side::left;
    auto X = read_groupoid(r.field(j, "X"), r.at("X"));
    auto mu = read_maps(r.field(j, "mu"), r.at("mu"), X, sg->M);
    return read_action_tables(j, r, sg, side, X, std::move(mu));
}

StackyBibundle read_bibundle(const json& j, const Reader& r) {
    auto sg1 = read_sg(r.field(j, "sg1"), r.at("sg1"));
    auto sg2 = read_sg(r.field(j, "sg2"), r.at("sg2"));
    auto X = read_groupoid(r.field(j, "X"), r.at("X"));
    auto mu1 = read_maps(r.field(j, "mu1"), r.at("mu1"), X, sg1->M);
    auto mu2 = read_maps(r.field(j, "mu2"), r.at("mu2"), X, sg2->M);
    auto L = read_action_tables(r.field(j, "leftAction"), r.at("leftAction"), sg1, Side::left, X, mu1);
    auto R = read_action_tables(r.field(j, "rightAction"), r.at("rightAction"), sg2, Side::right, X, mu2);
    auto tau = read_table<3>(r.field(j, "tau"), r.at("tau"), {sg1->n(), X->num_objects(), sg2->n(), X->num_arrows()});
    return assemble_bibundle(L, R, [&](Id g1, Id x, Id g2) { return tau({g1, x, g2}); });
}

std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string Document::kind() const {
    static const char* names[] = {"groupoid", "functor", "natiso", "stacky-groupoid",
                                  "action",   "bibundle", "crossed-module", "skeletal"};
    return names[value.index()];
}

json to_json(const Document& d) {
    json payload = std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GroupoidPtr>) return groupoid_json(*v);
            else if constexpr (std::is_same_v<T, GroupoidFunctor>) return functor_json(v);
            else if constexpr (std::is_same_v<T, NatIso>)
                return {{"dom", functor_json(v.dom)}, {"cod", maps_json(v.cod)}, {"component", v.component}};
            else if constexpr (std::is_same_v<T, SgPtr>) return sg_json(*v);
            else if constexpr (std::is_same_v<T, ActionPtr>) return action_json(*v);
            else if constexpr (std::is_same_v<T, StackyBibundle>) return bibundle_json(v);
            else if constexpr (std::is_same_v<T, CrossedModuleData>)
                return {{"A", group_json(v.A)}, {"K", group_json(v.K)}, {"phi", v.phi}};
            else
                return {{"pi1", group_json(v.pi1)}, {"pi2", group_json(v.pi2)}, {"act", v.act}, {"omega", v.omega}};
        },
        d.value);
    return {{"schemaVersion", kSchemaVersion}, {"kind", d.kind()}, {"payload", payload}};
}

std::string serialize(const Document& d) { return to_json(d).dump(2) + "\n"; }

Document from_json(const json& j) {
    Reader root{""};
    if (!j.is_object()) root.schema("a document is an object");
    const json& ver = root.field(j, "schemaVersion");
    if (!ver.is_number_integer() || ver.get<long long>() != kSchemaVersion)
        throw InputError("schema-version", "/schemaVersion",
                         "unsupported schema version " + ver.dump() + ", expected " + std::to_string(kSchemaVersion));
    const json& kind = root.field(j, "kind");
    const json& p = root.field(j, "payload");
    Reader r{"/payload"};
    if (kind == "groupoid") return {read_groupoid(p, r)};
    if (kind == "functor") return {read_functor(p, r)};
    if (kind == "natiso") {
        NatIso n;
        n.dom = read_functor(r.field(p, "dom"), r.at("dom"));
        n.cod = read_maps(r.field(p, "cod"), r.at("cod"), n.dom.dom, n.dom.cod);
        n.component = r.at("component").ids(r.field(p, "component"), n.dom.cod->num_arrows(), n.dom.dom->num_objects());
        return {n};
    }
    if (kind == "stacky-groupoid") return {read_sg(p, r)};
    if (kind == "action") return {read_action(p, r)};
    if (kind == "bibundle") return {read_bibundle(p, r)};
    if (kind == "crossed-module") {
        CrossedModuleData cm{read_group(r.field(p, "A"), r.at("A")), read_group(r.field(p, "K"), r.at("K")), {}};
        cm.phi = r.at("phi").ids(r.field(p, "phi"), cm.K.order, cm.A.order);
        return {cm};
    }
    if (kind == "skeletal") {
        Skeletal2GroupData sk{read_group(r.field(p, "pi1"), r.at("pi1")), read_group(r.field(p, "pi2"), r.at("pi2")), {}, {}};
        const auto n1 = static_cast<std::size_t>(sk.pi1.order);
        sk.act = r.at("act").ids(r.field(p, "act"), sk.pi2.order, n1 * sk.pi2.order);
        sk.omega = r.at("omega").ids(r.field(p, "omega"), sk.pi2.order, n1 * n1 * n1);
        return {sk};
    }
    throw InputError("schema", "/kind", "unknown kind " + kind.dump());
}

Document parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("syntax", line_col(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
    return from_json(j);
}

Document read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("schema", path, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("schema", path, "cannot write " + path);
    out << text;
}

Document example_document(const std::string& name) {
    if (name == "pair-groupoid") return {pair_groupoid(2)};
    if (name == "crossed-module") return {CrossedModuleData{cyclic_group(2), cyclic_group(4), {0, 2}}};
    if (name == "skeletal-cocycle") return {cyclic_cocycle_2group(2)};
    if (name == "z2-regular-action")
        return {share(from_set_action(share(group_presentation(cyclic_group(2))), regular_action(cyclic_group(2))))};
    if (name == "bz2-trivial-on-point") return {inert_action(bz2_presentation(), point_groupoid())};
    if (name == "self-bibundle") return {self_bibundle(share(from_skeletal(cyclic_cocycle_2group(2))))};
    if (name == "restriction-bibundle")
        return {restriction_bibundle(share(strict_presentation(pair_groupoid(2))), 0).bb};
    // finite analogue: [Z/4 / 2Z/4] over a 2-point base
    if (name == "discrete-prequantization")
        return {discrete_prequantization_example(cyclic_group(4), cyclic_group(2), {0, 2}, 2).restriction.bb};
    throw std::out_of_range("unknown example " + name);
}

}  // namespace stacky::io
