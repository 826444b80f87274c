#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vdw/core.hpp"
#include "vdw/error.hpp"
#include "vdw/outcome.hpp"

namespace vdw {

struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    void validate() const {
        for (const auto& clause : clauses) {
            if (clause.empty()) throw InvalidFormulaError("empty clause");
            for (int lit : clause) {
                if (lit == 0) throw InvalidFormulaError("zero literal in clause");
                const int v = lit > 0 ? lit : -lit;
                if (v > num_vars)
                    throw InvalidFormulaError("literal " + std::to_string(lit) +
                                              " out of range (num_vars=" +
                                              std::to_string(num_vars) + ")");
            }
        }
    }
};

// Variable layout of the direct encoding. x(i,c) states "position i has
// color c"; with a periodic block of length p, position indices fold
// modulo p so the whole sequence shares the block's variables.
struct EncodingMeta {
    int num_colors = 0;  // r
    int ap_length = 0;   // k
    int length = 0;      // N
    bool symmetry_broken = false;
    std::optional<int> periodic_block;

    int block_length() const { return periodic_block.value_or(length); }

    int var(int pos, Color color) const {
        const int folded = periodic_block ? (pos - 1) % *periodic_block : pos - 1;
        return folded * num_colors + color + 1;
    }

    int var_count() const { return block_length() * num_colors; }
};

struct Encoding {
    CnfFormula cnf;
    EncodingMeta meta;
};

namespace detail {

// Sort within the clause by variable then sign, drop repeated literals.
inline void canonicalize_clause(std::vector<int>& clause) {
    std::sort(clause.begin(), clause.end(), [](int a, int b) {
        const int va = a > 0 ? a : -a;
        const int vb = b > 0 ? b : -b;
        return va != vb ? va < vb : a < b;
    });
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
}

}  // namespace detail

// Direct (one-hot) encoding of a VdwInstance:
//   (a) at-least-one color per position,
//   (b) pairwise at-most-one,
//   (c) one all-negative clause per AP and color,
//   (d) optionally the unit x(1,0) to pin down color symmetry.
// With a periodic block the variables fold and duplicate clauses are
// removed after canonicalization.
inline Encoding encode(const VdwInstance& instance, bool symmetry,
                       std::optional<int> periodic = std::nullopt) {
    instance.validate();
    if (periodic && (*periodic < 1 || *periodic > instance.length))
        throw InvalidParameterError("periodic block must be in 1..N");

    const int r = instance.num_colors;
    const int n = instance.length;
    const int k = instance.ap_length;

    EncodingMeta meta{r, k, n, symmetry, periodic};
    CnfFormula cnf;
    cnf.num_vars = meta.var_count();

    for (int i = 1; i <= n; ++i) {
        std::vector<int> clause;
        clause.reserve(static_cast<std::size_t>(r));
        for (Color c = 0; c < r; ++c) clause.push_back(meta.var(i, c));
        cnf.clauses.push_back(std::move(clause));
    }
    for (int i = 1; i <= n; ++i)
        for (Color c = 0; c < r; ++c)
            for (Color c2 = c + 1; c2 < r; ++c2)
                cnf.clauses.push_back({-meta.var(i, c), -meta.var(i, c2)});
    for (const Ap& ap : enumerate_aps(n, k)) {
        for (Color c = 0; c < r; ++c) {
            std::vector<int> clause;
            clause.reserve(static_cast<std::size_t>(k));
            for (int j = 0; j < k; ++j)
                clause.push_back(-meta.var(ap.start + j * ap.diff, c));
            cnf.clauses.push_back(std::move(clause));
        }
    }
    if (symmetry) cnf.clauses.push_back({meta.var(1, 0)});

    if (periodic) {
        std::vector<std::vector<int>> unique_clauses;
        unique_clauses.reserve(cnf.clauses.size());
        std::set<std::vector<int>> seen;
        for (auto& clause : cnf.clauses) {
            detail::canonicalize_clause(clause);
            if (seen.insert(clause).second) unique_clauses.push_back(std::move(clause));
        }
        cnf.clauses = std::move(unique_clauses);
    }
    return {std::move(cnf), meta};
}

// DIMACS CNF with a fixed comment header. ASCII, LF endings, single
// spaces, every clause line terminated by " 0".
inline std::string to_dimacs(const CnfFormula& cnf, const EncodingMeta& meta) {
    std::string out;
    out += "c vdw r=" + std::to_string(meta.num_colors) +
           " k=" + std::to_string(meta.ap_length) +
           " n=" + std::to_string(meta.length) +
           " sym=" + (meta.symmetry_broken ? "1" : "0") +
           " p=" + std::to_string(meta.periodic_block.value_or(0)) + "\n";
    out += "p cnf " + std::to_string(cnf.num_vars) + " " +
           std::to_string(cnf.clauses.size()) + "\n";
    for (const auto& clause : cnf.clauses) {
        for (int lit : clause) {
            out += std::to_string(lit);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

// Plain DIMACS reader: 'c' lines are skipped, a 'p cnf V C' header is
// required, clauses are 0-terminated literal streams and may span lines.
inline CnfFormula parse_dimacs(std::string_view text) {
    CnfFormula cnf;
    bool header_seen = false;
    std::size_t declared_clauses = 0;
    std::vector<int> pending;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream hdr(line);
            std::string p, fmt;
            long long vars = -1, clauses = -1;
            hdr >> p >> fmt >> vars >> clauses;
            if (p != "p" || fmt != "cnf" || vars < 0 || clauses < 0)
                throw ParseError("malformed DIMACS header: " + line);
            if (header_seen) throw ParseError("duplicate DIMACS header");
            header_seen = true;
            cnf.num_vars = static_cast<int>(vars);
            declared_clauses = static_cast<std::size_t>(clauses);
            continue;
        }
        if (!header_seen)
            throw ParseError("clause line before DIMACS header: " + line);
        std::istringstream body(line);
        long long lit;
        while (body >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(pending);
                pending.clear();
            } else {
                pending.push_back(static_cast<int>(lit));
            }
        }
        if (!body.eof()) throw ParseError("non-numeric token in clause line: " + line);
    }
    if (!header_seen) throw ParseError("missing DIMACS header");
    if (!pending.empty()) throw ParseError("unterminated clause at end of input");
    if (cnf.clauses.size() != declared_clauses)
        throw ParseError("clause count mismatch: header declares " +
                         std::to_string(declared_clauses) + ", found " +
                         std::to_string(cnf.clauses.size()));
    cnf.validate();
    return cnf;
}

// SAT-competition output convention: one "s <STATUS>" line; for SAT, "v"
// lines carrying signed literals terminated by a 0 (possibly across lines).
inline SolveOutcome parse_solver_output(std::string_view text) {
    std::optional<Verdict> verdict;
    Assignment assignment;
    bool model_terminated = false;
    bool saw_values = false;

    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("s ", 0) == 0 || line == "s") {
            std::istringstream body(line);
            std::string s, status;
            body >> s >> status;
            if (status == "SATISFIABLE")
                verdict = verdict ? verdict : std::optional(Verdict::Sat);
            else if (status == "UNSATISFIABLE")
                verdict = verdict ? verdict : std::optional(Verdict::Unsat);
            else if (status == "UNKNOWN")
                verdict = verdict ? verdict : std::optional(Verdict::Unknown);
            else
                throw MalformedOutputError("unrecognized status line: " + line);
        } else if (line.rfind("v ", 0) == 0 || line == "v") {
            saw_values = true;
            std::istringstream body(line.substr(1));
            long long lit;
            while (body >> lit) {
                if (lit == 0) {
                    model_terminated = true;
                } else {
                    assignment[static_cast<int>(lit > 0 ? lit : -lit)] = lit > 0;
                }
            }
            if (!body.eof())
                throw MalformedOutputError("non-numeric token in value line: " + line);
        }
        // anything else (comments, timing noise) is ignored
    }

    if (!verdict) throw MalformedOutputError("no status ('s') line in solver output");
    SolveOutcome outcome;
    outcome.verdict = *verdict;
    if (*verdict == Verdict::Sat) {
        if (!saw_values || !model_terminated)
            throw MalformedOutputError("SATISFIABLE without a complete 0-terminated model");
        outcome.assignment = std::move(assignment);
    }
    return outcome;
}

// Reads the coloring back out of a model. With a periodic block, positions
// beyond the block follow the folded variables automatically.
inline Coloring decode_model(const Assignment& assignment, const EncodingMeta& meta) {
    std::vector<Color> colors(static_cast<std::size_t>(meta.length));
    for (int i = 1; i <= meta.length; ++i) {
        Color found = -1;
        for (Color c = 0; c < meta.num_colors; ++c) {
            const auto it = assignment.find(meta.var(i, c));
            if (it != assignment.end() && it->second) {
                if (found >= 0)
                    throw InconsistentModelError(
                        "colors " + std::to_string(found) + " and " +
                            std::to_string(c) + " both true at position " +
                            std::to_string(i),
                        i);
                found = c;
            }
        }
        if (found < 0)
            throw InconsistentModelError(
                "no color true at position " + std::to_string(i), i);
        colors[static_cast<std::size_t>(i) - 1] = found;
    }
    return Coloring(std::move(colors));
}

}  // namespace vdw
