// Writes the fixture set under the given directory.
#include <filesystem>
#include <iostream>

#include "document.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <dir>\n";
        return 2;
    }
    namespace fs = std::filesystem;
    for (const auto& f : stacky::io::fixture_files()) {
        fs::path p = fs::path(argv[1]) / f.path;
        fs::create_directories(p.parent_path());
        stacky::io::write_file(p.string(), f.text);
    }
    return 0;
}
