// Acceptance suite. Runs every top-level requirement at its stated
// tolerance and prints one [PASS]/[FAIL] line per check; exits nonzero if
// anything failed.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "oracle.hpp"
#include "vdw/vdw.hpp"

using namespace vdw;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    CliResult result;
    const std::string cmd = std::string(VDW_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return result;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

// --- criterion 1: bundled-certificate reproduction -------------------------

void check_certificate_database() {
    const auto start = Clock::now();
    const auto rows = compare_bounds_report();
    const double elapsed = seconds_since(start);

    const int expected_lengths[] = {336, 449, 559, 701, 816};
    bool lengths_ok = rows.size() == 5;
    for (std::size_t i = 0; lengths_ok && i < rows.size(); ++i)
        lengths_ok = rows[i].actual_length == expected_lengths[i] &&
                     rows[i].claimed_bound == expected_lengths[i];
    criterion("db-lengths", lengths_ok,
              "stripped lengths are 336/449/559/701/816 and match the claimed bounds");

    // Three of the five bodies verify outright; their implied bounds must
    // line up with the published table entries exactly.
    const int expected_old[] = {273, 354, 454, 592, 731};
    for (int i : {0, 1, 2}) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        const bool ok = row.verified && row.witnesses.empty() &&
                        row.actual_length == expected_lengths[i] &&
                        row.old_bound == expected_old[i];
        criterion("db-verify " + row.name, ok,
                  ok ? "valid, zero monochromatic 3-APs, bound > " +
                           std::to_string(row.actual_length) + " (old > " +
                           std::to_string(row.old_bound) + ")"
                     : "expected a clean verification");
    }

    // The W(10,3) and W(11,3) bodies fail verification as transcribed
    // (defects localized near positions 616/621 and 408/431). Per the
    // fallback contract this suite asserts transcription-audit mode: the
    // bitmask verifier and the independent naive oracle must report the
    // identical witness set. See README for the documented discrepancy.
    for (int i : {3, 4}) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        const auto& record = db_entries()[static_cast<std::size_t>(i)];
        const Coloring coloring = parse_certificate(record.text, record.num_colors);
        const auto naive = oracle::naive_witnesses(coloring, record.ap_length);
        const bool identical = row.witnesses == naive;
        const bool ok = !row.verified && !naive.empty() && identical;
        std::ostringstream detail;
        detail << "transcription defect: " << naive.size()
               << " monochromatic 3-APs; verifier and naive oracle report the "
                  "identical witness set";
        if (!naive.empty())
            detail << " (first: start=" << naive.front().start
                   << " diff=" << naive.front().diff
                   << " color=" << naive.front().color << ")";
        criterion("db-audit " + row.name, ok, detail.str());
    }

    criterion("db-runtime", elapsed < 1.0,
              "verified all five certificates in " + std::to_string(elapsed) +
                  " s (< 1 s)");

    const auto cli = run_cli("db verify-all");
    int valid_lines = 0, invalid_lines = 0;
    std::istringstream lines(cli.out);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find(": VALID") != std::string::npos) ++valid_lines;
        if (line.find(": INVALID") != std::string::npos) ++invalid_lines;
    }
    criterion("db-cli", cli.exit_code == 1 && valid_lines == 3 && invalid_lines == 2,
              "`vdw db verify-all` prints 3 VALID / 2 INVALID lines and exits 1");
}

// --- criterion 2: exact small numbers via the SAT pipeline ------------------

void check_exact_numbers() {
    struct Case {
        int r, k, expected_w, cap;
        double budget_seconds;
    };
    const Case cases[] = {
        {2, 3, 9, 20, 0.1},
        {3, 3, 27, 40, 300.0},
        {2, 4, 35, 50, 300.0},
    };
    for (const auto& c : cases) {
        const auto start = Clock::now();
        const auto result = exact_w(c.r, c.k, c.cap);
        const double elapsed = seconds_since(start);
        const bool exact = result.status == SearchStatus::Exact;
        const bool cert_ok = result.certificate.has_value() &&
                             result.certificate->size() == c.expected_w - 1 &&
                             verify(*result.certificate, c.k, c.r).valid;
        const bool ok = exact && result.w == c.expected_w && cert_ok &&
                        elapsed < c.budget_seconds;
        std::ostringstream detail;
        detail << "W(" << c.r << "," << c.k << ") = "
               << (exact ? std::to_string(result.w) : std::string("<not exact>"))
               << ", certificate of length " << result.best_n << " re-verified, "
               << elapsed << " s (< " << c.budget_seconds << " s)";
        criterion("exact W(" + std::to_string(c.r) + "," + std::to_string(c.k) + ")",
                  ok, detail.str());
    }

    // cross-check the frontier explicitly: UNSAT at W, SAT at W-1
    const bool frontier_ok =
        solve(encode({3, 3, 27}, true).cnf).verdict == Verdict::Unsat &&
        solve(encode({3, 3, 26}, true).cnf).verdict == Verdict::Sat &&
        solve(encode({2, 4, 35}, true).cnf).verdict == Verdict::Unsat &&
        solve(encode({2, 4, 34}, true).cnf).verdict == Verdict::Sat;
    criterion("frontier cross-check", frontier_ok,
              "UNSAT at 27/35, SAT at 26/34 for (3,3) and (2,4)");
}

// --- criterion 3: solver vs brute-force equivalence -------------------------

void check_oracle_equivalence() {
    int cells = 0;
    bool all_agree = true;
    std::string first_mismatch;
    const auto check_cell = [&](int r, int k, int n) {
        ++cells;
        const bool sat_side = solve(encode({r, k, n}, true).cnf).verdict == Verdict::Sat;
        const bool brute_side =
            brute_force_w(r, k, n).status == SearchStatus::LowerBoundOnly;
        if (sat_side != brute_side && all_agree) {
            all_agree = false;
            first_mismatch = "first mismatch at (r=" + std::to_string(r) +
                             ",k=" + std::to_string(k) + ",N=" + std::to_string(n) + ")";
        }
    };
    for (int r = 1; r <= 3; ++r)
        for (int n = 1; n <= 12; ++n) check_cell(r, 3, n);
    for (int k = 2; k <= 4; ++k)
        for (int n = 1; n <= 12; ++n) check_cell(2, k, n);
    criterion("oracle equivalence", all_agree,
              all_agree ? "encode+solve satisfiability equals brute-force "
                          "existence on all " +
                              std::to_string(cells) + " cells"
                        : first_mismatch);
}

// --- criterion 4: closed-form clause counts ---------------------------------

void check_clause_counts() {
    int cells = 0;
    bool all_match = true;
    for (int r : {1, 2, 3, 5, 7})
        for (int k : {3, 4, 5})
            for (int n : {4, 9}) {
                ++cells;
                for (bool sym : {false, true}) {
                    std::int64_t aps = 0;
                    for (std::int64_t d = 1; (k - 1) * d <= n - 1; ++d)
                        aps += n - (k - 1) * d;
                    const std::int64_t expected =
                        n + static_cast<std::int64_t>(n) * r * (r - 1) / 2 + r * aps +
                        (sym ? 1 : 0);
                    const auto enc = encode({r, k, n}, sym);
                    all_match = all_match &&
                                static_cast<std::int64_t>(enc.cnf.clauses.size()) ==
                                    expected &&
                                enc.cnf.num_vars == n * r;
                }
            }
    criterion("clause counts", all_match,
              "encoder output matches N + N*r(r-1)/2 + r*sum(N-(k-1)d) (+1 "
              "with symmetry) on " +
                  std::to_string(cells) + " (r,k,N) cells, exact");
}

// --- criterion 5: round-trip property suite ---------------------------------

void check_round_trips() {
    std::mt19937_64 rng(0xC0FFEE);

    // 100 solver models decode to verifiable colorings
    int models_ok = 0;
    struct Family {
        int r, k, max_n;
    };
    const Family families[] = {{2, 3, 8}, {3, 3, 26}, {2, 4, 34}, {2, 5, 40}};
    for (int iter = 0; iter < 100; ++iter) {
        const auto& fam = families[static_cast<std::size_t>(iter) % 4];
        const int n = std::uniform_int_distribution<int>(1, fam.max_n)(rng);
        const bool sym = iter % 2 == 0;
        const auto enc = encode({fam.r, fam.k, n}, sym);
        const auto outcome = solve(enc.cnf);
        if (outcome.verdict != Verdict::Sat) continue;
        const Coloring c = decode_model(outcome.assignment, enc.meta);
        if (c.size() == n && verify(c, fam.k, fam.r).valid) ++models_ok;
    }
    criterion("model round-trip", models_ok == 100,
              std::to_string(models_ok) + "/100 random SAT models decode to "
                                          "colorings that pass verify");

    // 200 random colorings survive format -> parse
    int formats_ok = 0;
    for (int iter = 0; iter < 200; ++iter) {
        const int r = std::uniform_int_distribution<int>(1, 36)(rng);
        const int n = std::uniform_int_distribution<int>(1, 120)(rng);
        const int width = std::uniform_int_distribution<int>(1, 90)(rng);
        const auto c = oracle::random_coloring(rng, n, r);
        if (parse_certificate(format_certificate(c, width), r) == c) ++formats_ok;
    }
    criterion("format round-trip", formats_ok == 200,
              std::to_string(formats_ok) + "/200 random colorings round-trip "
                                           "through format/parse");

    // 500 random colorings: bitmask verifier == naive triple loop
    int verifies_ok = 0;
    for (int iter = 0; iter < 500; ++iter) {
        const int r = std::uniform_int_distribution<int>(1, 6)(rng);
        const int n = std::uniform_int_distribution<int>(1, 64)(rng);
        const int k = std::uniform_int_distribution<int>(2, 5)(rng);
        const auto c = oracle::random_coloring(rng, n, r);
        const auto report = verify(c, k, r);
        const auto naive = oracle::naive_witnesses(c, k);
        if (report.witnesses == naive && report.valid == naive.empty()) ++verifies_ok;
    }
    criterion("verify vs naive oracle", verifies_ok == 500,
              std::to_string(verifies_ok) +
                  "/500 random colorings (N <= 64) agree witness-for-witness");
}

// --- criterion 6: trivial families ------------------------------------------

void check_trivial_families() {
    bool single_color = true;
    for (int k = 2; k <= 5; ++k) {
        const auto result = exact_w(1, k, k + 3);
        single_color = single_color &&
                       result.status == SearchStatus::Exact && result.w == k;
    }
    criterion("W(1,k) = k", single_color, "exact_w agrees for k in {2,3,4,5}");

    bool pigeonhole = true;
    for (int r = 1; r <= 6; ++r) {
        const auto result = exact_w(r, 2, r + 3);
        pigeonhole = pigeonhole &&
                     result.status == SearchStatus::Exact && result.w == r + 1;
    }
    criterion("W(r,2) = r+1", pigeonhole, "exact_w agrees for r in {1..6}");
}

}  // namespace

int main() {
    const auto start = Clock::now();
    check_certificate_database();
    check_exact_numbers();
    check_oracle_equivalence();
    check_clause_counts();
    check_round_trips();
    check_trivial_families();
    std::cout << (failures == 0 ? "all acceptance criteria passed"
                                : std::to_string(failures) + " criteria FAILED")
              << " (" << seconds_since(start) << " s total)\n";
    return failures == 0 ? 0 : 1;
}
