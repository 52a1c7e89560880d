// Versioned JSON documents for the library types. The canonical form is
// nlohmann's sorted-key dump with two-space indent and a trailing newline;
// tables are dense arrays indexed by identifier, entry lists are sorted.
// The field list per kind is in docs/schema.md.
#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"
#include "stacky/morita.hpp"

namespace stacky::io {

inline constexpr int kSchemaVersion = 1;

// Input problems, as opposed to failed checks. kind is one of "syntax",
// "schema-version", "schema", "dangling-identifier"; location is a JSON
// pointer, or "line L, column C" for syntax errors.
class InputError : public std::runtime_error {
public:
    InputError(std::string kind, std::string location, const std::string& message)
        : std::runtime_error(message), kind(std::move(kind)), location(std::move(location)) {}
    std::string kind, location;
};

using Value = std::variant<GroupoidPtr, GroupoidFunctor, NatIso, SgPtr, ActionPtr, StackyBibundle, CrossedModuleData,
                           Skeletal2GroupData>;

struct Document {
    Value value;
    std::string kind() const;
};

nlohmann::json to_json(const Document& d);
std::string serialize(const Document& d);
// Presentations are interned by canonical payload, so two documents naming
// the same presentation share one SgPtr (composition relies on it).
Document from_json(const nlohmann::json& j);
Document parse(const std::string& text);
Document read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// The built-in instance behind `stackyctl examples <name>`; names from
// example_names(). std::out_of_range for an unknown name.
Document example_document(const std::string& name);

// The shipped fixture set: good/ (every example), failing/ (well-formed,
// some check fails) and corrupt/ (input errors), with the scripted command
// matrix run against stackyctl. Paths are relative to the fixture root.
struct FixtureFile {
    std::string path, text;
};
struct MatrixRow {
    std::vector<std::string> args;  // {fixture} stands for the fixture root
    int exitCode;
};
std::vector<FixtureFile> fixture_files();
std::vector<MatrixRow> command_matrix();

}  // namespace stacky::io
