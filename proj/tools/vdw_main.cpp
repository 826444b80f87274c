// Command-line front end: certificate verification, CNF encoding, SAT
// solving, W(r,k) searches, period analysis and the bundled certificate
// database.
//
// Exit codes: 0 success/valid, 1 invalid certificate or UNSAT where SAT
// was the goal, 2 usage or parse error, 3 resource-limit UNKNOWN.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vdw/vdw.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

constexpr int kCertificateLineWidth = 80;

struct SolverFlags {
    std::string solver_cmd;
    std::int64_t max_conflicts = 0;
    double timeout_seconds = 0.0;

    vdw::SolveLimits limits() const {
        vdw::SolveLimits l;
        if (max_conflicts > 0) l.max_conflicts = max_conflicts;
        if (timeout_seconds > 0.0)
            l.max_time = std::chrono::duration<double>(timeout_seconds);
        return l;
    }

    vdw::SolveBackend backend() const {
        if (!solver_cmd.empty()) return vdw::external_backend(solver_cmd);
        return vdw::internal_backend();
    }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& flags) {
    cmd->add_option("--solver-cmd", flags.solver_cmd,
                    "external solver command; {in} is replaced by the DIMACS path");
    cmd->add_option("--max-conflicts", flags.max_conflicts,
                    "stop with UNKNOWN after this many conflicts");
    cmd->add_option("--timeout", flags.timeout_seconds,
                    "stop with UNKNOWN after this many seconds");
}

ordered_json witness_to_json(const vdw::ApWitness& w) {
    return {{"start", w.start}, {"diff", w.diff}, {"color", w.color}};
}

ordered_json witnesses_to_json(const std::vector<vdw::ApWitness>& witnesses) {
    ordered_json arr = ordered_json::array();
    for (const auto& w : witnesses) arr.push_back(witness_to_json(w));
    return arr;
}

void print_witness_lines(const std::vector<vdw::ApWitness>& witnesses, int k,
                         bool all) {
    const std::size_t shown = all ? witnesses.size()
                                  : std::min<std::size_t>(witnesses.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& w = witnesses[i];
        std::cout << "  start=" << w.start << " diff=" << w.diff
                  << " color=" << w.color << " (positions";
        for (int j = 0; j < k; ++j) std::cout << (j ? "," : " ") << w.start + j * w.diff;
        std::cout << ")\n";
    }
    if (shown < witnesses.size())
        std::cout << "  ... " << witnesses.size() - shown
                  << " more (use --all-witnesses to list all)\n";
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

std::string verdict_name(vdw::Verdict v) { return vdw::to_string(v); }

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw vdw::Error("cannot write file: " + out_path);
    out << text;
}

// --- subcommand handlers --------------------------------------------------

int run_verify(const std::string& file, int r, int k, bool json, bool all_witnesses) {
    const vdw::Coloring coloring = vdw::load_certificate_file(file, r);
    const auto report = vdw::verify(coloring, k, r);

    if (json) {
        emit({{"command", "verify"},
              {"valid", report.valid},
              {"n", coloring.size()},
              {"r", r},
              {"k", k},
              {"colors_used", report.colors_used},
              {"ap_count_checked", report.ap_count_checked},
              {"implied_lower_bound", report.implied_lower_bound},
              {"witnesses", witnesses_to_json(report.witnesses)}});
    } else if (report.valid) {
        std::cout << "VALID: no monochromatic " << k << "-term AP in "
                  << coloring.size() << " positions\n"
                  << "colors: declared r=" << r << ", used " << report.colors_used
                  << "; APs checked: " << report.ap_count_checked << "\n"
                  << "W(" << r << "," << k << ") > " << coloring.size() << "\n";
    } else {
        std::cout << "INVALID: " << report.witnesses.size() << " monochromatic "
                  << k << "-term AP" << (report.witnesses.size() == 1 ? "" : "s")
                  << " in " << coloring.size() << " positions\n";
        print_witness_lines(report.witnesses, k, all_witnesses);
    }
    return report.valid ? kExitValid : kExitInvalid;
}

int run_encode(int r, int k, int n, bool symmetry, int periodic,
               const std::string& out_path, bool json) {
    std::optional<int> p;
    if (periodic > 0) p = periodic;
    const auto enc = vdw::encode({r, k, n}, symmetry, p);
    const std::string dimacs = vdw::to_dimacs(enc.cnf, enc.meta);

    if (json) {
        ordered_json doc{{"command", "encode"},
                         {"r", r},
                         {"k", k},
                         {"n", n},
                         {"symmetry", symmetry},
                         {"periodic", periodic > 0 ? ordered_json(periodic) : ordered_json(nullptr)},
                         {"vars", enc.cnf.num_vars},
                         {"clauses", enc.cnf.clauses.size()}};
        if (out_path.empty()) {
            doc["dimacs"] = dimacs;
        } else {
            write_or_print(dimacs, out_path);
            doc["out"] = out_path;
        }
        emit(doc);
        return kExitValid;
    }
    write_or_print(dimacs, out_path);
    if (!out_path.empty())
        std::cout << "wrote " << out_path << ": " << enc.cnf.num_vars << " vars, "
                  << enc.cnf.clauses.size() << " clauses\n";
    return kExitValid;
}

int run_solve(int r, int k, int n, bool symmetry, int periodic,
              const SolverFlags& flags, bool json) {
    std::optional<int> p;
    if (periodic > 0) p = periodic;
    const auto enc = vdw::encode({r, k, n}, symmetry, p);
    const auto outcome = flags.backend()(enc.cnf, enc.meta, flags.limits());

    std::optional<vdw::Coloring> certificate;
    if (outcome.verdict == vdw::Verdict::Sat)
        certificate = vdw::decode_model(outcome.assignment, enc.meta);

    if (json) {
        ordered_json doc{{"command", "solve"},
                         {"r", r},
                         {"k", k},
                         {"n", n},
                         {"verdict", verdict_name(outcome.verdict)},
                         {"stats",
                          {{"decisions", outcome.stats.decisions},
                           {"propagations", outcome.stats.propagations},
                           {"conflicts", outcome.stats.conflicts}}}};
        doc["certificate"] = certificate
                                 ? ordered_json(vdw::format_certificate(*certificate, certificate->size()))
                                 : ordered_json(nullptr);
        emit(doc);
    } else {
        switch (outcome.verdict) {
            case vdw::Verdict::Sat:
                std::cout << "SATISFIABLE\ncertificate (N=" << n << "):\n"
                          << vdw::format_certificate(*certificate, kCertificateLineWidth)
                          << "\n";
                break;
            case vdw::Verdict::Unsat:
                std::cout << "UNSATISFIABLE\n";
                break;
            case vdw::Verdict::Unknown:
                std::cout << "UNKNOWN (resource limit)\n";
                break;
        }
        std::cout << "stats: decisions=" << outcome.stats.decisions
                  << " propagations=" << outcome.stats.propagations
                  << " conflicts=" << outcome.stats.conflicts << "\n";
    }
    switch (outcome.verdict) {
        case vdw::Verdict::Sat: return kExitValid;
        case vdw::Verdict::Unsat: return kExitInvalid;
        default: return kExitUnknown;
    }
}

int run_decode(const std::string& file, int r, int k, int n, int periodic, bool json) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw vdw::Error("cannot open solver output file: " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto outcome = vdw::parse_solver_output(buf.str());

    vdw::EncodingMeta meta{r, k, n, false, std::nullopt};
    if (periodic > 0) meta.periodic_block = periodic;

    std::optional<vdw::Coloring> certificate;
    if (outcome.verdict == vdw::Verdict::Sat)
        certificate = vdw::decode_model(outcome.assignment, meta);

    if (json) {
        ordered_json doc{{"command", "decode"},
                         {"r", r},
                         {"k", k},
                         {"n", n},
                         {"verdict", verdict_name(outcome.verdict)}};
        doc["certificate"] = certificate
                                 ? ordered_json(vdw::format_certificate(*certificate, certificate->size()))
                                 : ordered_json(nullptr);
        emit(doc);
    } else if (certificate) {
        std::cout << vdw::format_certificate(*certificate, kCertificateLineWidth) << "\n";
    } else {
        std::cout << verdict_name(outcome.verdict) << "\n";
    }
    switch (outcome.verdict) {
        case vdw::Verdict::Sat: return kExitValid;
        case vdw::Verdict::Unsat: return kExitInvalid;
        default: return kExitUnknown;
    }
}

void print_search_result(const vdw::SearchResult& result) {
    const std::string wname =
        "W(" + std::to_string(result.num_colors) + "," + std::to_string(result.ap_length) + ")";
    if (result.status == vdw::SearchStatus::Exact) {
        std::cout << wname << " = " << result.w << "\n";
    } else {
        std::cout << wname << " > " << result.best_n
                  << (result.hit_resource_limit ? " (resource limit)" : " (cap reached)")
                  << "\n";
    }
    if (result.certificate) {
        std::cout << "certificate (N=" << result.best_n << "):\n"
                  << vdw::format_certificate(*result.certificate, kCertificateLineWidth)
                  << "\n";
    }
}

ordered_json search_result_to_json(const char* command, const vdw::SearchResult& result) {
    ordered_json doc{{"command", command},
                     {"r", result.num_colors},
                     {"k", result.ap_length},
                     {"status", result.status == vdw::SearchStatus::Exact
                                    ? "exact"
                                    : "lower-bound-only"},
                     {"best_n", result.best_n},
                     {"hit_resource_limit", result.hit_resource_limit}};
    doc["w"] = result.status == vdw::SearchStatus::Exact ? ordered_json(result.w)
                                                         : ordered_json(nullptr);
    doc["certificate"] =
        result.certificate
            ? ordered_json(vdw::format_certificate(*result.certificate,
                                                   result.certificate->size()))
            : ordered_json(nullptr);
    return doc;
}

int search_exit_code(const vdw::SearchResult& result, bool exact_requested) {
    if (result.status == vdw::SearchStatus::Exact) return kExitValid;
    if (result.hit_resource_limit || exact_requested) return kExitUnknown;
    return kExitValid;
}

int run_search(const char* command, int r, int k, int start_n, int cap_n,
               const SolverFlags& flags, bool json, bool exact_requested) {
    const auto result =
        vdw::find_max_sat(r, k, start_n, cap_n, flags.limits(), flags.backend());
    if (json)
        emit(search_result_to_json(command, result));
    else
        print_search_result(result);
    return search_exit_code(result, exact_requested);
}

int run_period(const std::string& file, int r, bool json) {
    const vdw::Coloring coloring = vdw::load_certificate_file(file, r);
    const int period = vdw::detect_period(coloring);
    if (json) {
        emit({{"command", "period"},
              {"n", coloring.size()},
              {"period", period},
              {"proper", period < coloring.size()}});
    } else {
        std::cout << "period = " << period << " (N = " << coloring.size()
                  << (period < coloring.size() ? "" : "; aperiodic") << ")\n";
    }
    return kExitValid;
}

int run_db_list(bool json) {
    if (json) {
        ordered_json rows = ordered_json::array();
        for (const auto& rec : vdw::db_entries())
            rows.push_back({{"name", rec.name},
                            {"r", rec.num_colors},
                            {"k", rec.ap_length},
                            {"claimed_bound", rec.claimed_bound},
                            {"old_bound", rec.old_bound}});
        emit({{"command", "db-list"}, {"records", rows}});
        return kExitValid;
    }
    for (const auto& rec : vdw::db_entries())
        std::cout << rec.name << ": r=" << rec.num_colors << " k=" << rec.ap_length
                  << " claimed > " << rec.claimed_bound << " (old > "
                  << rec.old_bound << ")\n";
    return kExitValid;
}

int run_db_verify_all(bool json, bool all_witnesses) {
    const auto rows = vdw::compare_bounds_report();
    bool all_valid = true;
    for (const auto& row : rows)
        all_valid = all_valid && row.verified && row.actual_length == row.claimed_bound;

    if (json) {
        ordered_json jrows = ordered_json::array();
        for (const auto& row : rows)
            jrows.push_back({{"name", row.name},
                             {"old_bound", row.old_bound},
                             {"claimed_bound", row.claimed_bound},
                             {"verified", row.verified},
                             {"actual_length", row.actual_length},
                             {"witnesses", witnesses_to_json(row.witnesses)}});
        emit({{"command", "db-verify-all"},
              {"all_valid", all_valid},
              {"rows", jrows}});
        return all_valid ? kExitValid : kExitInvalid;
    }

    for (const auto& row : rows) {
        if (row.verified && row.actual_length == row.claimed_bound) {
            std::cout << row.name << ": VALID, N=" << row.actual_length
                      << ", bound > " << row.actual_length << "\n";
        } else if (row.verified) {
            std::cout << row.name << ": VALID but length " << row.actual_length
                      << " != claimed " << row.claimed_bound << "\n";
        } else {
            std::cout << row.name << ": INVALID, N=" << row.actual_length << ", "
                      << row.witnesses.size() << " witness"
                      << (row.witnesses.size() == 1 ? "" : "es") << "\n";
            print_witness_lines(row.witnesses, 3, all_witnesses);
        }
    }
    return all_valid ? kExitValid : kExitInvalid;
}

int run_db_export(const std::string& name, const std::string& out_path, bool json) {
    for (const auto& rec : vdw::db_entries()) {
        if (rec.name != name) continue;
        if (json) {
            emit({{"command", "db-export"},
                  {"name", rec.name},
                  {"r", rec.num_colors},
                  {"k", rec.ap_length},
                  {"text", rec.text}});
        } else {
            write_or_print(rec.text + "\n", out_path);
        }
        return kExitValid;
    }
    throw vdw::Error("no such certificate: " + name +
                     " (try `vdw db list` for names)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"van der Waerden certificate toolkit"};
    app.require_subcommand(1);

    // verify
    std::string verify_file;
    int verify_r = 0, verify_k = 3;
    bool verify_json = false, verify_all_witnesses = false;
    auto* verify = app.add_subcommand("verify", "verify a certificate file");
    verify->add_option("--file", verify_file, "certificate file")->required();
    verify->add_option("-r,--colors", verify_r, "declared number of colors")->required();
    verify->add_option("-k,--ap-length", verify_k, "AP length (default 3)");
    verify->add_flag("--json", verify_json, "machine-readable output");
    verify->add_flag("--all-witnesses", verify_all_witnesses, "list every witness");

    // encode
    int enc_r = 0, enc_k = 3, enc_n = 0, enc_p = 0;
    bool enc_sym = false, enc_json = false;
    std::string enc_out;
    auto* encode_cmd = app.add_subcommand("encode", "write the DIMACS encoding");
    encode_cmd->add_option("-r,--colors", enc_r)->required();
    encode_cmd->add_option("-k,--ap-length", enc_k);
    encode_cmd->add_option("-n,--length", enc_n)->required();
    encode_cmd->add_flag("--symmetry", enc_sym, "pin position 1 to color 0");
    encode_cmd->add_option("--periodic", enc_p, "fold variables over a block of this length")->check(CLI::PositiveNumber);
    encode_cmd->add_option("-o,--out", enc_out, "output path (default stdout)");
    encode_cmd->add_flag("--json", enc_json);

    // solve
    int solve_r = 0, solve_k = 3, solve_n = 0, solve_p = 0;
    bool solve_sym = false, solve_json = false;
    SolverFlags solve_flags;
    auto* solve_cmd = app.add_subcommand("solve", "encode and solve one instance");
    solve_cmd->add_option("-r,--colors", solve_r)->required();
    solve_cmd->add_option("-k,--ap-length", solve_k);
    solve_cmd->add_option("-n,--length", solve_n)->required();
    solve_cmd->add_flag("--symmetry", solve_sym);
    solve_cmd->add_option("--periodic", solve_p)->check(CLI::PositiveNumber);
    add_solver_flags(solve_cmd, solve_flags);
    solve_cmd->add_flag("--json", solve_json);

    // decode
    std::string dec_file;
    int dec_r = 0, dec_k = 3, dec_n = 0, dec_p = 0;
    bool dec_json = false;
    auto* decode_cmd = app.add_subcommand("decode", "decode solver output into a certificate");
    decode_cmd->add_option("--file", dec_file, "solver output file")->required();
    decode_cmd->add_option("-r,--colors", dec_r)->required();
    decode_cmd->add_option("-k,--ap-length", dec_k);
    decode_cmd->add_option("-n,--length", dec_n)->required();
    decode_cmd->add_option("--periodic", dec_p)->check(CLI::PositiveNumber);
    decode_cmd->add_flag("--json", dec_json);

    // search
    int search_r = 0, search_k = 3, search_start = 1, search_cap = 100;
    bool search_json = false;
    SolverFlags search_flags;
    auto* search_cmd = app.add_subcommand("search", "sweep N upward for the longest valid coloring");
    search_cmd->add_option("-r,--colors", search_r)->required();
    search_cmd->add_option("-k,--ap-length", search_k);
    search_cmd->add_option("--start", search_start, "first N to try (default 1)");
    search_cmd->add_option("--cap", search_cap, "last N to try (default 100)");
    add_solver_flags(search_cmd, search_flags);
    search_cmd->add_flag("--json", search_json);

    // exact
    int exact_r = 0, exact_k = 3, exact_cap = 100;
    bool exact_json = false;
    SolverFlags exact_flags;
    auto* exact_cmd = app.add_subcommand("exact", "compute W(r,k) by sweeping from N=1");
    exact_cmd->add_option("-r,--colors", exact_r)->required();
    exact_cmd->add_option("-k,--ap-length", exact_k);
    exact_cmd->add_option("--cap", exact_cap, "give up beyond this N (default 100)");
    add_solver_flags(exact_cmd, exact_flags);
    exact_cmd->add_flag("--json", exact_json);

    // period
    std::string period_file;
    int period_r = 36;
    bool period_json = false;
    auto* period_cmd = app.add_subcommand("period", "smallest shift under which the sequence repeats");
    period_cmd->add_option("--file", period_file)->required();
    period_cmd->add_option("-r,--colors", period_r, "declared colors (default 36)");
    period_cmd->add_flag("--json", period_json);

    // db
    auto* db = app.add_subcommand("db", "bundled certificate database");
    db->require_subcommand(1);
    bool db_list_json = false;
    auto* db_list = db->add_subcommand("list", "list bundled certificates");
    db_list->add_flag("--json", db_list_json);
    bool db_verify_json = false, db_verify_all_witnesses = false;
    auto* db_verify = db->add_subcommand("verify-all", "re-verify every bundled certificate");
    db_verify->add_flag("--json", db_verify_json);
    db_verify->add_flag("--all-witnesses", db_verify_all_witnesses);
    std::string db_export_name, db_export_out;
    bool db_export_json = false;
    auto* db_export = db->add_subcommand("export", "print one bundled certificate body");
    db_export->add_option("name", db_export_name, "certificate name, e.g. W(7,3)")->required();
    db_export->add_option("-o,--out", db_export_out, "output path (default stdout)");
    db_export->add_flag("--json", db_export_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (verify->parsed())
            return run_verify(verify_file, verify_r, verify_k, verify_json,
                              verify_all_witnesses);
        if (encode_cmd->parsed())
            return run_encode(enc_r, enc_k, enc_n, enc_sym, enc_p, enc_out, enc_json);
        if (solve_cmd->parsed())
            return run_solve(solve_r, solve_k, solve_n, solve_sym, solve_p,
                             solve_flags, solve_json);
        if (decode_cmd->parsed())
            return run_decode(dec_file, dec_r, dec_k, dec_n, dec_p, dec_json);
        if (search_cmd->parsed())
            return run_search("search", search_r, search_k, search_start,
                              search_cap, search_flags, search_json, false);
        if (exact_cmd->parsed())
            return run_search("exact", exact_r, exact_k, 1, exact_cap,
                              exact_flags, exact_json, true);
        if (period_cmd->parsed()) return run_period(period_file, period_r, period_json);
        if (db->parsed()) {
            if (db_list->parsed()) return run_db_list(db_list_json);
            if (db_verify->parsed())
                return run_db_verify_all(db_verify_json, db_verify_all_witnesses);
            if (db_export->parsed())
                return run_db_export(db_export_name, db_export_out, db_export_json);
        }
    } catch (const vdw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
