#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vdw/certificates.hpp"
#include "vdw/cnf.hpp"
#include "vdw/core.hpp"
#include "vdw/error.hpp"
#include "vdw/external.hpp"
#include "vdw/solver.hpp"

namespace vdw {

enum class SearchStatus {
    Exact,           // the sweep hit UNSAT: W is known
    LowerBoundOnly,  // stopped at the cap or on a resource limit
};

struct SearchResult {
    int num_colors = 0;
    int ap_length = 0;
    SearchStatus status = SearchStatus::LowerBoundOnly;
    int w = 0;       // least N with no valid coloring; meaningful iff Exact
    int best_n = 0;  // longest valid coloring found
    std::optional<Coloring> certificate;  // for best_n, absent if no SAT seen
    bool hit_resource_limit = false;      // a solve returned Unknown
};

// Pluggable solve step so sweeps can run on the internal solver or an
// external command.
using SolveBackend =
    std::function<SolveOutcome(const CnfFormula&, const EncodingMeta&, const SolveLimits&)>;

inline SolveBackend internal_backend() {
    return [](const CnfFormula& cnf, const EncodingMeta&, const SolveLimits& limits) {
        return solve(cnf, limits);
    };
}

inline SolveBackend external_backend(std::string command_template) {
    return [cmd = std::move(command_template)](const CnfFormula& cnf,
                                               const EncodingMeta& meta,
                                               const SolveLimits&) {
        return run_external_solver(cnf, meta, cmd);
    };
}

// Sweeps N upward, solving the symmetry-broken encoding at each step. The
// first UNSAT pins W exactly; an Unknown downgrades the result instead of
// guessing. Every certificate is re-verified before it is stored.
inline SearchResult find_max_sat(int r, int k, int start_n, int cap_n,
                                 const SolveLimits& limits = {},
                                 const SolveBackend& backend = internal_backend()) {
    VdwInstance{r, k, start_n}.validate();
    if (start_n > cap_n)
        throw InvalidParameterError("start_N must not exceed cap_N");

    SearchResult result;
    result.num_colors = r;
    result.ap_length = k;
    result.best_n = start_n - 1;

    for (int n = start_n; n <= cap_n; ++n) {
        const Encoding enc = encode({r, k, n}, /*symmetry=*/true);
        const SolveOutcome outcome = backend(enc.cnf, enc.meta, limits);
        switch (outcome.verdict) {
            case Verdict::Sat: {
                Coloring certificate = decode_model(outcome.assignment, enc.meta);
                if (!verify(certificate, k, r).valid)
                    throw std::logic_error(
                        "search produced a certificate that fails verification");
                result.best_n = n;
                result.certificate = std::move(certificate);
                break;
            }
            case Verdict::Unsat:
                result.status = SearchStatus::Exact;
                result.w = n;
                return result;
            case Verdict::Unknown:
                result.hit_resource_limit = true;
                return result;
        }
    }
    return result;  // cap reached while still satisfiable
}

inline SearchResult exact_w(int r, int k, int cap_n = 100,
                            const SolveLimits& limits = {},
                            const SolveBackend& backend = internal_backend()) {
    return find_max_sat(r, k, 1, cap_n, limits, backend);
}

// Independent oracle: exhaustive backtracking over colorings, pruning as
// soon as the freshly placed position closes a monochromatic AP. Shares
// nothing with the SAT pipeline.
inline SearchResult brute_force_w(int r, int k, int cap_n) {
    VdwInstance{r, k, cap_n}.validate();
    long double space = 1;
    for (int i = 0; i < cap_n; ++i) {
        space *= r;
        if (space > 1e8)
            throw GuardError("enumeration guard exceeded: " + std::to_string(r) +
                             "^" + std::to_string(cap_n) + " > 1e8 colorings");
    }

    std::vector<Color> colors;
    std::vector<Color> best_coloring;
    int best_n = 0;
    bool reached_cap = false;

    // does placing color c at position i close a k-term AP ending there?
    const auto closes_ap = [&](int i, Color c) {
        for (int d = 1; i - (k - 1) * d >= 1; ++d) {
            bool mono = true;
            for (int j = 1; j < k; ++j) {
                if (colors[static_cast<std::size_t>(i - j * d) - 1] != c) {
                    mono = false;
                    break;
                }
            }
            if (mono) return true;
        }
        return false;
    };

    const std::function<bool()> dfs = [&]() {
        const int n = static_cast<int>(colors.size());
        if (n > best_n) {
            best_n = n;
            best_coloring = colors;
        }
        if (n == cap_n) return true;
        for (Color c = 0; c < r; ++c) {
            if (closes_ap(n + 1, c)) continue;
            colors.push_back(c);
            if (dfs()) return true;
            colors.pop_back();
        }
        return false;
    };
    reached_cap = dfs();

    SearchResult result;
    result.num_colors = r;
    result.ap_length = k;
    result.best_n = best_n;
    if (best_n > 0) {
        Coloring certificate{best_coloring};
        if (!verify(certificate, k, r).valid)
            throw std::logic_error(
                "brute force produced a coloring that fails verification");
        result.certificate = std::move(certificate);
    }
    if (reached_cap) {
        result.status = SearchStatus::LowerBoundOnly;
    } else {
        result.status = SearchStatus::Exact;
        result.w = best_n + 1;
    }
    return result;
}

struct BoundsRow {
    std::string name;
    int old_bound = 0;
    int claimed_bound = 0;
    bool verified = false;  // zero monochromatic APs
    int actual_length = 0;
    std::vector<ApWitness> witnesses;
};

// Re-verifies every bundled certificate and lines its published bounds up
// against what the verifier finds.
inline std::vector<BoundsRow> compare_bounds_report() {
    std::vector<BoundsRow> rows;
    rows.reserve(db_entries().size());
    for (const CertificateRecord& record : db_entries()) {
        const Coloring coloring = parse_certificate(record.text, record.num_colors);
        VerificationReport report =
            verify(coloring, record.ap_length, record.num_colors);
        rows.push_back({record.name, record.old_bound, record.claimed_bound,
                        report.valid, coloring.size(), std::move(report.witnesses)});
    }
    return rows;
}

}  // namespace vdw
