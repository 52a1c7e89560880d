// stackyctl: validate, check and construct finite weak structures from
// JSON documents. Exit status 0 = passed, 1 = a mathematical check failed
// (witness printed), 2 = unreadable or malformed input.

#include <iostream>

#include "CLI11.hpp"
#include "document.hpp"
#include "stacky/examples.hpp"

using namespace stacky;
using nlohmann::json;

namespace {

enum Exit { kPassed = 0, kFailed = 1, kInput = 2 };

std::string format = "human";

json verdict_json(const Verdict& v) {
    json j{{"passed", v.passed}};
    if (v.witness) j["witness"] = {{"axiom", v.witness->axiom}, {"ids", v.witness->ids}};
    return j;
}

// One report per invocation; details hold named sub-verdicts.
struct Report {
    std::string command;
    Verdict verdict;
    json details = json::object();

    int emit() const {
        if (format == "json") {
            json j = verdict_json(verdict);
            j["command"] = command;
            if (!details.empty()) j["details"] = details;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << command << ": " << (verdict.passed ? "passed" : "FAILED") << "\n";
            if (verdict.witness) std::cout << "  witness " << to_string(*verdict.witness) << "\n";
            for (const auto& [k, v] : details.items()) {
                if (v.is_object() && v.contains("passed")) {
                    std::cout << "  " << k << ": " << (v["passed"].get<bool>() ? "passed" : "FAILED");
                    if (v.contains("witness"))
                        std::cout << " " << v["witness"]["axiom"].get<std::string>() << " " << v["witness"]["ids"].dump();
                    std::cout << "\n";
                } else {
                    std::cout << "  " << k << ": " << v.dump() << "\n";
                }
            }
        }
        return verdict.passed ? kPassed : kFailed;
    }
};

int input_error(const std::string& kind, const std::string& location, const std::string& message) {
    if (format == "json") {
        json j{{"error", {{"kind", kind}, {"location", location}, {"message", message}}}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cerr << "input error (" << kind << ") at " << (location.empty() ? "/" : location) << ": " << message << "\n";
    }
    return kInput;
}

// First failing verdict of a sequence, scoped by its name.
Verdict first_failure(const std::vector<std::pair<std::string, Verdict>>& vs, json& details) {
    Verdict out;
    for (const auto& [name, v] : vs) {
        details[name] = verdict_json(v);
        if (out && !v) out = v.scoped(name);
    }
    return out;
}

Verdict coherence(const StackyGroupoid& sg, json& details) {
    Verdict g2 = check_g2(sg);
    if (!g2) return first_failure({{"g2", g2}}, details);
    Verdict g3 = check_g3(sg);
    if (!g3) return first_failure({{"g2", g2}, {"g3", g3}}, details);
    return first_failure({{"g2", g2}, {"g3", g3}, {"g4", check_g4(sg)}}, details);
}

Verdict action_coherence(const WeakAction& wa, json& details) {
    json sub = json::object();
    if (Verdict v = coherence(*wa.sg, sub); !v) {
        details["presentation"] = sub;
        return v.scoped("presentation");
    }
    return first_failure({{"a2-a4", check_a2_a4(wa)}}, details);
}

Verdict bibundle_coherence(const StackyBibundle& bb, json& details) {
    json sub = json::object();
    if (Verdict v = coherence(*bb.sg1(), sub); !v) return v.scoped("sg1");
    if (Verdict v = coherence(*bb.sg2(), sub); !v) return v.scoped("sg2");
    return first_failure({{"bibundle", check_bibundle(bb)}}, details);
}

Verdict biprincipal(const StackyBibundle& bb, json& details) {
    json sub = json::object();
    if (Verdict v = bibundle_coherence(bb, sub); !v) {
        details["coherence"] = sub;
        return v;
    }
    auto r = is_biprincipal(bb);
    details["left"] = verdict_json(r.left);
    details["right"] = verdict_json(r.right);
    return r.combined;
}

Report validate(const io::Document& d) {
    Report r{"validate " + d.kind(), {}};
    auto& det = r.details;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GroupoidPtr>) {
                r.verdict = first_failure({{"groupoid", validate_groupoid(*v)}}, det);
            } else if constexpr (std::is_same_v<T, GroupoidFunctor>) {
                r.verdict = first_failure(
                    {{"dom", validate_groupoid(*v.dom)}, {"cod", validate_groupoid(*v.cod)}, {"functor", validate_functor(v)}},
                    det);
            } else if constexpr (std::is_same_v<T, NatIso>) {
                r.verdict = first_failure({{"dom", validate_functor(v.dom)},
                                           {"cod", validate_functor(v.cod)},
                                           {"natiso", validate_natiso(v)}},
                                          det);
            } else if constexpr (std::is_same_v<T, SgPtr>) {
                r.verdict = coherence(*v, det);
            } else if constexpr (std::is_same_v<T, ActionPtr>) {
                r.verdict = action_coherence(*v, det);
            } else if constexpr (std::is_same_v<T, StackyBibundle>) {
                r.verdict = bibundle_coherence(v, det);
            } else if constexpr (std::is_same_v<T, CrossedModuleData>) {
                r.verdict = first_failure({{"crossed-module", validate_crossed_module(v)}}, det);
            } else {
                r.verdict = first_failure({{"skeletal", validate_skeletal(v)}}, det);
            }
        },
        d.value);
    return r;
}

Report check_coherence(const io::Document& d) {
    Report r{"check coherence " + d.kind(), {}};
    if (auto* cm = std::get_if<CrossedModuleData>(&d.value)) {
        if (Verdict v = validate_crossed_module(*cm); !v) return {r.command, v.scoped("crossed-module")};
        r.verdict = coherence(from_crossed_module(*cm), r.details);
        return r;
    }
    if (auto* sk = std::get_if<Skeletal2GroupData>(&d.value)) {
        if (Verdict v = validate_skeletal(*sk); !v) return {r.command, v.scoped("skeletal")};
        r.verdict = coherence(from_skeletal(*sk), r.details);
        return r;
    }
    Report v = validate(d);
    v.command = r.command;
    return v;
}

template <class T>
const T& expect(const io::Document& d, const char* kind) {
    if (auto* p = std::get_if<T>(&d.value)) return *p;
    throw io::InputError("schema", "/kind", std::string("expected a document of kind ") + kind + ", got " + d.kind());
}

ActionPtr right_action(const ActionPtr& wa) { return wa->side == Side::right ? wa : share(invert_action(*wa)); }

Report check_principal_cmd(const io::Document& d) {
    Report r{"check principal", {}};
    const auto& wa = expect<ActionPtr>(d, "action");
    if (Verdict v = action_coherence(*wa, r.details); !v) return {r.command, v};
    auto pr = check_principal(right_action(wa));
    r.details["principal"] = verdict_json(pr.principal);
    r.details["weaklyRepresentable"] = verdict_json(pr.weakRep);
    r.details["agree"] = pr.principal.passed == pr.weakRep.passed;
    r.verdict = pr.principal;
    return r;
}

Report check_morita_cmd(const io::Document& d) {
    Report r{"check morita", {}};
    r.verdict = biprincipal(expect<StackyBibundle>(d, "bibundle"), r.details);
    return r;
}

void write_or_print(const std::string& out, const io::Document& d) {
    std::string text = io::serialize(d);
    if (out.empty())
        std::cout << text;
    else
        io::write_file(out, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite models of stacky groupoids, weak actions and Morita bibundles."};
    app.require_subcommand(1);
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "json"}))->capture_default_str();

    std::string file, file2, out, name;
    auto* validate_cmd = app.add_subcommand("validate", "Validate a document of any kind");
    validate_cmd->add_option("file", file)->required();

    auto* check = app.add_subcommand("check", "Run a named check");
    check->require_subcommand(1);
    auto* coherence_cmd = check->add_subcommand("coherence", "Groupoid, action or bibundle coherence");
    coherence_cmd->add_option("file", file)->required();
    auto* principal_cmd = check->add_subcommand("principal", "Principality of an action and the weak representability of Delta");
    principal_cmd->add_option("file", file)->required();
    auto* morita_cmd = check->add_subcommand("morita", "Biprincipality of a bibundle");
    morita_cmd->add_option("file", file)->required();

    auto* pq_cmd = app.add_subcommand("prequotient", "Prequotient carrier and projection q, as a functor document");
    pq_cmd->add_option("file", file)->required();
    pq_cmd->add_option("-o,--output", out);

    auto* compose_cmd = app.add_subcommand("compose", "Compose two biprincipal bibundles");
    compose_cmd->add_option("bb1", file)->required();
    compose_cmd->add_option("bb2", file2)->required();
    compose_cmd->add_option("-o,--output", out);

    auto* flip_cmd = app.add_subcommand("flip", "Flip a biprincipal bibundle");
    flip_cmd->add_option("file", file)->required();
    flip_cmd->add_option("-o,--output", out);

    auto* examples_cmd = app.add_subcommand("examples", "Emit a built-in instance, or list the names");
    examples_cmd->add_option("name", name);
    examples_cmd->add_option("-o,--output", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPassed : kInput;
    }

    try {
        if (*validate_cmd) return validate(io::read_file(file)).emit();
        if (*coherence_cmd) return check_coherence(io::read_file(file)).emit();
        if (*principal_cmd) return check_principal_cmd(io::read_file(file)).emit();
        if (*morita_cmd) return check_morita_cmd(io::read_file(file)).emit();

        if (*pq_cmd) {
            auto d = io::read_file(file);
            const auto& wa = expect<ActionPtr>(d, "action");
            Report r{"prequotient", {}};
            if (Verdict v = action_coherence(*wa, r.details); !v) return Report{r.command, v}.emit();
            auto pq = prequotient(right_action(wa));
            write_or_print(out, {pq.q});
            if (!out.empty()) return r.emit();
            return kPassed;
        }
        if (*compose_cmd) {
            auto d1 = io::read_file(file);
            auto d2 = io::read_file(file2);
            const auto& bb1 = expect<StackyBibundle>(d1, "bibundle");
            const auto& bb2 = expect<StackyBibundle>(d2, "bibundle");
            Report r{"compose", {}};
            json det1, det2;
            if (Verdict v = biprincipal(bb1, det1); !v) return Report{r.command, v.scoped("bb1")}.emit();
            if (Verdict v = biprincipal(bb2, det2); !v) return Report{r.command, v.scoped("bb2")}.emit();
            if (bb1.sg2() != bb2.sg1())
                throw io::InputError("schema", "/payload/sg1", "middle presentations differ");
            auto c = compose_bibundles(bb1, bb2);
            auto st = composition_stages(bb1, bb2, c);
            r.verdict = first_failure({{"inputs", st.inputs},
                                       {"F1", st.f1},
                                       {"F3", st.f3},
                                       {"middle", st.middle},
                                       {"carrier", st.carrier}},
                                      r.details);
            if (!r.verdict) return r.emit();
            write_or_print(out, {c.bb});
            if (!out.empty()) return r.emit();
            return kPassed;
        }
        if (*flip_cmd) {
            auto d = io::read_file(file);
            const auto& bb = expect<StackyBibundle>(d, "bibundle");
            Report r{"flip", {}};
            if (Verdict v = biprincipal(bb, r.details); !v) return Report{r.command, v}.emit();
            auto f = flip_bibundle(bb);
            json det;
            r.verdict = biprincipal(f, det);
            r.details["flipped"] = det;
            if (!r.verdict) return r.emit();
            write_or_print(out, {f});
            if (!out.empty()) return r.emit();
            return kPassed;
        }
        if (*examples_cmd) {
            if (name.empty()) {
                for (const auto& n : example_names()) std::cout << n << "\n";
                return kPassed;
            }
            io::Document d;
            try {
                d = io::example_document(name);
            } catch (const std::out_of_range&) {
                throw io::InputError("schema", "name", "unknown example " + name);
            }
            write_or_print(out, d);
            return kPassed;
        }
    } catch (const io::InputError& e) {
        return input_error(e.kind, e.location, e.what());
    } catch (const CheckFailed& e) {
        return Report{e.what(), e.verdict}.emit();
    } catch (const StructuralError& e) {
        return input_error("structural", "", e.what());
    }
    return kInput;
}
