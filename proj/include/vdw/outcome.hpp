#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>

namespace vdw {

enum class Verdict {
    Sat,
    Unsat,
    Unknown,  // a resource limit fired
};

// Truth value per variable index (1-based, as in DIMACS).
using Assignment = std::map<int, bool>;

struct SolveStats {
    std::int64_t decisions = 0;
    std::int64_t propagations = 0;
    std::int64_t conflicts = 0;
};

struct SolveOutcome {
    Verdict verdict = Verdict::Unknown;
    Assignment assignment;  // populated iff verdict == Sat
    SolveStats stats;
};

struct SolveLimits {
    std::optional<std::int64_t> max_conflicts;
    std::optional<std::chrono::duration<double>> max_time;
};

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Sat: return "SAT";
        case Verdict::Unsat: return "UNSAT";
        default: return "UNKNOWN";
    }
}

}  // namespace vdw
