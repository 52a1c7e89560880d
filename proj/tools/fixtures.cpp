#include "document.hpp"
#include "stacky/examples.hpp"

namespace stacky::io {

using nlohmann::json;

namespace {

std::string text(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::vector<FixtureFile> fixture_files() {
    std::vector<FixtureFile> out;
    for (const auto& name : example_names()) out.push_back({"good/" + name + ".json", serialize(example_document(name))});

    json pair = to_json(example_document("pair-groupoid"));
    // every hom set of pair(2) is a singleton, so any other composite has the wrong ends
    json broken = pair;
    auto& row = broken["payload"]["comp"][1];
    row[2] = (row[2].get<int>() + 1) % 4;
    out.push_back({"failing/broken-groupoid.json", text(broken)});

    json bb = to_json(example_document("self-bibundle"));
    // skeletal arrows come in parallel pairs 2g, 2g + 1
    bb["payload"]["tau"][3][3] = bb["payload"]["tau"][3][3].get<int>() ^ 1;
    out.push_back({"failing/mutated-tau.json", text(bb)});

    auto sk = cyclic_cocycle_2group(3);
    sk.omega[(1 * 3 + 1) * 3 + 1] = (sk.omega[(1 * 3 + 1) * 3 + 1] + 1) % 3;
    out.push_back({"failing/non-cocycle.json", serialize({sk})});

    GroupoidFunctor inc{point_groupoid(), discrete_groupoid(2), {0}, {0}};
    out.push_back({"failing/one-sided.json", serialize({lift_strict_bibundle(bibundle_from_morphism(inc))})});

    json dangling = pair;
    dangling["payload"]["src"][1] = 5;
    out.push_back({"corrupt/dangling.json", text(dangling)});
    std::string full = text(pair);
    out.push_back({"corrupt/syntax.json", full.substr(0, full.size() / 2)});
    json version = pair;
    version["schemaVersion"] = kSchemaVersion + 1;
    out.push_back({"corrupt/version.json", text(version)});
    json missing = pair;
    missing["payload"].erase("inv");
    out.push_back({"corrupt/missing-field.json", text(missing)});
    json kind = pair;
    kind["kind"] = "monoid";
    out.push_back({"corrupt/unknown-kind.json", text(kind)});
    json action = to_json(example_document("z2-regular-action"));
    action["payload"]["beta"].erase(action["payload"]["beta"].size() - 1);
    out.push_back({"corrupt/missing-beta.json", text(action)});
    return out;
}

std::vector<MatrixRow> command_matrix() {
    std::vector<MatrixRow> m;
    for (const auto& name : example_names()) m.push_back({{"validate", "{fixture}/good/" + name + ".json"}, 0});
    auto good = [](const std::string& n) { return "{fixture}/good/" + n + ".json"; };
    m.push_back({{"check", "coherence", good("skeletal-cocycle")}, 0});
    m.push_back({{"check", "coherence", good("crossed-module")}, 0});
    m.push_back({{"check", "coherence", good("self-bibundle")}, 0});
    m.push_back({{"check", "principal", good("z2-regular-action")}, 0});
    m.push_back({{"check", "principal", good("bz2-trivial-on-point")}, 1});
    m.push_back({{"check", "morita", good("restriction-bibundle")}, 0});
    m.push_back({{"check", "morita", good("discrete-prequantization")}, 0});
    m.push_back({{"prequotient", good("z2-regular-action")}, 0});
    m.push_back({{"flip", good("restriction-bibundle")}, 0});
    m.push_back({{"compose", good("self-bibundle"), good("self-bibundle")}, 0});
    m.push_back({{"examples", "pair-groupoid"}, 0});

    m.push_back({{"validate", "{fixture}/failing/broken-groupoid.json"}, 1});
    m.push_back({{"check", "coherence", "{fixture}/failing/mutated-tau.json"}, 1});
    m.push_back({{"check", "coherence", "{fixture}/failing/non-cocycle.json"}, 1});
    m.push_back({{"check", "morita", "{fixture}/failing/one-sided.json"}, 1});
    m.push_back({{"flip", "{fixture}/failing/one-sided.json"}, 1});
    m.push_back({{"compose", "{fixture}/failing/one-sided.json", good("restriction-bibundle")}, 1});

    for (const char* c : {"dangling", "syntax", "version", "missing-field", "unknown-kind"})
        m.push_back({{"validate", std::string("{fixture}/corrupt/") + c + ".json"}, 2});
    m.push_back({{"check", "principal", "{fixture}/corrupt/missing-beta.json"}, 2});
    m.push_back({{"check", "morita", good("pair-groupoid")}, 2});
    m.push_back({{"validate", "{fixture}/no-such-file.json"}, 2});
    m.push_back({{"examples", "no-such-example"}, 2});
    m.push_back({{"check"}, 2});
    return m;
}

}  // namespace stacky::io
