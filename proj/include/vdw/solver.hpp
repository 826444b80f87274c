#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vdw/cnf.hpp"
#include "vdw/error.hpp"
#include "vdw/outcome.hpp"

namespace vdw {

// Conflict-driven clause learning solver: two watched literals, first-UIP
// learning, activity-ordered branching and geometric restarts. A Solver is
// single-use: construct it on a formula, call solve() once. Everything is
// deterministic; variable-order ties break toward the lower index.
class Solver {
public:
    explicit Solver(const CnfFormula& formula) : input_(formula) {
        input_.validate();
        num_vars_ = input_.num_vars;
        assigns_.assign(num_vars_, -1);
        level_.assign(num_vars_, 0);
        reason_.assign(num_vars_, -1);
        saved_phase_.assign(num_vars_, 0);
        seen_.assign(num_vars_, 0);
        activity_.assign(num_vars_, 0.0);
        watches_.assign(2 * static_cast<std::size_t>(num_vars_), {});
        heap_pos_.assign(num_vars_, -1);
        for (int v = 0; v < num_vars_; ++v) heap_insert(v);

        for (const auto& clause : input_.clauses) {
            if (!ok_) break;
            add_input_clause(clause);
        }
    }

    SolveOutcome solve(const SolveLimits& limits = {}) {
        const auto start = std::chrono::steady_clock::now();
        Verdict verdict = Verdict::Unknown;

        if (!ok_) {
            verdict = Verdict::Unsat;
        } else if (propagate() >= 0) {
            ok_ = false;
            verdict = Verdict::Unsat;
        } else {
            std::int64_t restart_budget = 100;
            std::int64_t conflicts_since_restart = 0;
            std::vector<int> learnt;
            while (verdict == Verdict::Unknown) {
                const int confl = propagate();
                if (confl >= 0) {
                    ++stats_.conflicts;
                    ++conflicts_since_restart;
                    if (decision_level() == 0) {
                        ok_ = false;
                        verdict = Verdict::Unsat;
                        break;
                    }
                    int bt_level = 0;
                    analyze(confl, learnt, bt_level);
                    record_learnt(learnt, bt_level);
                    var_inc_ *= kActivityScale;
                    if (limits.max_conflicts &&
                        stats_.conflicts >= *limits.max_conflicts)
                        break;  // Unknown
                    if (limits.max_time && (stats_.conflicts & 255) == 0 &&
                        std::chrono::steady_clock::now() - start >= *limits.max_time)
                        break;  // Unknown
                } else {
                    if (conflicts_since_restart >= restart_budget &&
                        decision_level() > 0) {
                        backtrack(0);
                        conflicts_since_restart = 0;
                        restart_budget += restart_budget / 2;
                        continue;
                    }
                    if (limits.max_time && (stats_.decisions & 1023) == 0 &&
                        std::chrono::steady_clock::now() - start >= *limits.max_time)
                        break;  // Unknown
                    const int v = pick_branch_var();
                    if (v < 0) {
                        verdict = Verdict::Sat;
                        break;
                    }
                    ++stats_.decisions;
                    trail_lim_.push_back(static_cast<int>(trail_.size()));
                    enqueue(make_lit(v, saved_phase_[static_cast<std::size_t>(v)] == 0), -1);
                }
            }
        }

        SolveOutcome out;
        out.verdict = verdict;
        out.stats = stats_;
        if (verdict == Verdict::Sat) {
            for (int v = 0; v < num_vars_; ++v)
                out.assignment[v + 1] = assigns_[static_cast<std::size_t>(v)] == 1;
            check_model(out.assignment);
        }
        return out;
    }

private:
    static constexpr double kActivityDecay = 0.95;
    static constexpr double kActivityScale = 1.0 / kActivityDecay;
    static constexpr double kActivityLimit = 1e100;

    struct Clause {
        std::vector<int> lits;  // internal literals
    };
    struct Watcher {
        int clause = -1;
        int blocker = 0;
    };

    // internal literal: variable v (0-based) with sign bit; bit set = negated
    static int make_lit(int var, bool neg) { return var * 2 + (neg ? 1 : 0); }
    static int lit_var(int lit) { return lit >> 1; }

    // 1 true, 0 false, -1 unassigned
    int value(int lit) const {
        const int a = assigns_[static_cast<std::size_t>(lit >> 1)];
        return a < 0 ? -1 : (a ^ (lit & 1));
    }

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    void add_input_clause(const std::vector<int>& external) {
        std::vector<int> lits;
        lits.reserve(external.size());
        for (int lit : external) lits.push_back(make_lit(std::abs(lit) - 1, lit < 0));
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (std::size_t i = 1; i < lits.size(); ++i)
            if ((lits[i] ^ 1) == lits[i - 1]) return;  // tautology
        if (lits.size() == 1) {
            const int v = value(lits[0]);
            if (v == 0)
                ok_ = false;
            else if (v < 0)
                enqueue(lits[0], -1);
            return;
        }
        const int index = static_cast<int>(clauses_.size());
        clauses_.push_back({std::move(lits)});
        attach(index);
    }

    void attach(int clause_index) {
        const auto& lits = clauses_[static_cast<std::size_t>(clause_index)].lits;
        watch_list(lits[0]).push_back({clause_index, lits[1]});
        watch_list(lits[1]).push_back({clause_index, lits[0]});
    }

    std::vector<Watcher>& watch_list(int lit) {
        return watches_[static_cast<std::size_t>(lit)];
    }

    void enqueue(int lit, int reason) {
        const int v = lit_var(lit);
        assigns_[static_cast<std::size_t>(v)] = (lit & 1) ? 0 : 1;
        level_[static_cast<std::size_t>(v)] = decision_level();
        reason_[static_cast<std::size_t>(v)] = reason;
        trail_.push_back(lit);
    }

    // Returns the index of a conflicting clause, or -1.
    int propagate() {
        while (qhead_ < trail_.size()) {
            const int p = trail_[qhead_++];
            ++stats_.propagations;
            const int false_lit = p ^ 1;
            auto& watchers = watch_list(false_lit);
            std::size_t i = 0, kept = 0;
            while (i < watchers.size()) {
                const Watcher w = watchers[i++];
                if (value(w.blocker) == 1) {
                    watchers[kept++] = w;
                    continue;
                }
                auto& lits = clauses_[static_cast<std::size_t>(w.clause)].lits;
                if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
                const int first = lits[0];
                if (first != w.blocker && value(first) == 1) {
                    watchers[kept++] = {w.clause, first};
                    continue;
                }
                bool moved = false;
                for (std::size_t t = 2; t < lits.size(); ++t) {
                    if (value(lits[t]) != 0) {
                        std::swap(lits[1], lits[t]);
                        watch_list(lits[1]).push_back({w.clause, first});
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                // unit or conflicting
                watchers[kept++] = {w.clause, first};
                if (value(first) == 0) {
                    while (i < watchers.size()) watchers[kept++] = watchers[i++];
                    watchers.resize(kept);
                    qhead_ = trail_.size();
                    return w.clause;
                }
                enqueue(first, w.clause);
            }
            watchers.resize(kept);
        }
        return -1;
    }

    // First-UIP conflict analysis. learnt[0] ends up as the asserting
    // literal; level-0 literals never enter the clause.
    void analyze(int confl, std::vector<int>& learnt, int& bt_level) {
        learnt.clear();
        learnt.push_back(-1);
        const int current = decision_level();
        int counter = 0;
        int p = -1;
        std::size_t index = trail_.size();
        while (true) {
            const auto& lits = clauses_[static_cast<std::size_t>(confl)].lits;
            for (const int q : lits) {
                if (q == p) continue;
                const int v = lit_var(q);
                if (!seen_[static_cast<std::size_t>(v)] &&
                    level_[static_cast<std::size_t>(v)] > 0) {
                    seen_[static_cast<std::size_t>(v)] = 1;
                    bump_activity(v);
                    if (level_[static_cast<std::size_t>(v)] >= current)
                        ++counter;
                    else
                        learnt.push_back(q);
                }
            }
            while (!seen_[static_cast<std::size_t>(lit_var(trail_[index - 1]))]) --index;
            --index;
            p = trail_[index];
            seen_[static_cast<std::size_t>(lit_var(p))] = 0;
            if (--counter == 0) break;
            confl = reason_[static_cast<std::size_t>(lit_var(p))];
        }
        learnt[0] = p ^ 1;

        if (learnt.size() == 1) {
            bt_level = 0;
        } else {
            std::size_t max_i = 1;
            for (std::size_t i = 2; i < learnt.size(); ++i)
                if (level_[static_cast<std::size_t>(lit_var(learnt[i]))] >
                    level_[static_cast<std::size_t>(lit_var(learnt[max_i]))])
                    max_i = i;
            std::swap(learnt[1], learnt[max_i]);
            bt_level = level_[static_cast<std::size_t>(lit_var(learnt[1]))];
        }
        for (const int q : learnt) seen_[static_cast<std::size_t>(lit_var(q))] = 0;
    }

    void record_learnt(const std::vector<int>& learnt, int bt_level) {
        backtrack(bt_level);
        if (learnt.size() == 1) {
            enqueue(learnt[0], -1);
            return;
        }
        const int index = static_cast<int>(clauses_.size());
        clauses_.push_back({learnt});
        attach(index);
        enqueue(learnt[0], index);
    }

    void backtrack(int target_level) {
        if (decision_level() <= target_level) return;
        const int bound = trail_lim_[static_cast<std::size_t>(target_level)];
        for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
            const int v = lit_var(trail_[static_cast<std::size_t>(i)]);
            saved_phase_[static_cast<std::size_t>(v)] = assigns_[static_cast<std::size_t>(v)];
            assigns_[static_cast<std::size_t>(v)] = -1;
            reason_[static_cast<std::size_t>(v)] = -1;
            heap_insert(v);
        }
        trail_.resize(static_cast<std::size_t>(bound));
        trail_lim_.resize(static_cast<std::size_t>(target_level));
        qhead_ = static_cast<std::size_t>(bound);
    }

    int pick_branch_var() {
        while (!heap_.empty()) {
            const int v = heap_pop_top();
            if (assigns_[static_cast<std::size_t>(v)] < 0) return v;
        }
        return -1;
    }

    void bump_activity(int v) {
        activity_[static_cast<std::size_t>(v)] += var_inc_;
        if (activity_[static_cast<std::size_t>(v)] > kActivityLimit) {
            for (auto& a : activity_) a *= 1.0 / kActivityLimit;
            var_inc_ *= 1.0 / kActivityLimit;
        }
        if (heap_pos_[static_cast<std::size_t>(v)] >= 0)
            heap_sift_up(heap_pos_[static_cast<std::size_t>(v)]);
    }

    // --- indexed max-heap over variables ---------------------------------

    bool heap_before(int a, int b) const {
        const double aa = activity_[static_cast<std::size_t>(a)];
        const double ab = activity_[static_cast<std::size_t>(b)];
        return aa != ab ? aa > ab : a < b;
    }

    void heap_insert(int v) {
        if (heap_pos_[static_cast<std::size_t>(v)] >= 0) return;
        heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
        heap_.push_back(v);
        heap_sift_up(static_cast<int>(heap_.size()) - 1);
    }

    int heap_pop_top() {
        const int top = heap_[0];
        heap_pos_[static_cast<std::size_t>(top)] = -1;
        if (heap_.size() > 1) {
            heap_[0] = heap_.back();
            heap_pos_[static_cast<std::size_t>(heap_[0])] = 0;
            heap_.pop_back();
            heap_sift_down(0);
        } else {
            heap_.pop_back();
        }
        return top;
    }

    void heap_sift_up(int pos) {
        const int v = heap_[static_cast<std::size_t>(pos)];
        while (pos > 0) {
            const int parent = (pos - 1) / 2;
            if (!heap_before(v, heap_[static_cast<std::size_t>(parent)])) break;
            heap_[static_cast<std::size_t>(pos)] = heap_[static_cast<std::size_t>(parent)];
            heap_pos_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(pos)])] = pos;
            pos = parent;
        }
        heap_[static_cast<std::size_t>(pos)] = v;
        heap_pos_[static_cast<std::size_t>(v)] = pos;
    }

    void heap_sift_down(int pos) {
        const int v = heap_[static_cast<std::size_t>(pos)];
        const int size = static_cast<int>(heap_.size());
        while (true) {
            int child = 2 * pos + 1;
            if (child >= size) break;
            if (child + 1 < size &&
                heap_before(heap_[static_cast<std::size_t>(child + 1)],
                            heap_[static_cast<std::size_t>(child)]))
                ++child;
            if (!heap_before(heap_[static_cast<std::size_t>(child)], v)) break;
            heap_[static_cast<std::size_t>(pos)] = heap_[static_cast<std::size_t>(child)];
            heap_pos_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(pos)])] = pos;
            pos = child;
        }
        heap_[static_cast<std::size_t>(pos)] = v;
        heap_pos_[static_cast<std::size_t>(v)] = pos;
    }

    // Every SAT answer is re-checked against the original clause list
    // before it leaves the solver.
    void check_model(const Assignment& model) const {
        for (const auto& clause : input_.clauses) {
            bool satisfied = false;
            for (const int lit : clause) {
                const auto it = model.find(lit > 0 ? lit : -lit);
                if (it != model.end() && it->second == (lit > 0)) {
                    satisfied = true;
                    break;
                }
            }
            if (!satisfied)
                throw std::logic_error("solver produced a model violating a clause");
        }
    }

    CnfFormula input_;
    int num_vars_ = 0;
    bool ok_ = true;

    std::vector<Clause> clauses_;
    std::vector<std::vector<Watcher>> watches_;
    std::vector<signed char> assigns_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<signed char> saved_phase_;
    std::vector<signed char> seen_;
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;

    std::vector<double> activity_;
    double var_inc_ = 1.0;
    std::vector<int> heap_;
    std::vector<int> heap_pos_;

    SolveStats stats_;
};

inline SolveOutcome solve(const CnfFormula& cnf, const SolveLimits& limits = {}) {
    Solver solver(cnf);
    return solver.solve(limits);
}

}  // namespace vdw
