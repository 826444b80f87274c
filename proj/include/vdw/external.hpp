#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "vdw/cnf.hpp"
#include "vdw/error.hpp"
#include "vdw/outcome.hpp"

namespace vdw {

// File-based delegation to an external SAT solver: the formula is written
// as DIMACS to a temporary path, "{in}" in the command template is replaced
// by that path, and the command's stdout is read back through
// parse_solver_output. Exit codes are ignored (SAT solvers conventionally
// return 10/20).
inline SolveOutcome run_external_solver(const CnfFormula& cnf, const EncodingMeta& meta,
                                        const std::string& command_template) {
    namespace fs = std::filesystem;
    static std::atomic<unsigned> counter{0};
    const fs::path path =
        fs::temp_directory_path() /
        ("vdw-" + std::to_string(::getpid()) + "-" +
         std::to_string(counter.fetch_add(1)) + ".cnf");

    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write DIMACS file: " + path.string());
        out << to_dimacs(cnf, meta);
    }

    std::string cmd = command_template;
    const std::string quoted = "'" + path.string() + "'";
    bool substituted = false;
    for (std::size_t at = cmd.find("{in}"); at != std::string::npos;
         at = cmd.find("{in}", at + quoted.size())) {
        cmd.replace(at, 4, quoted);
        substituted = true;
    }
    if (!substituted) cmd += " " + quoted;

    std::string output;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        fs::remove(path);
        throw Error("failed to run solver command: " + cmd);
    }
    char buffer[4096];
    std::size_t got;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0)
        output.append(buffer, got);
    ::pclose(pipe);
    std::error_code ignored;
    fs::remove(path, ignored);

    return parse_solver_output(output);
}

}  // namespace vdw
