#pragma once

#include "chtouca/rational.hpp"

#include <vector>

namespace chtouca {

enum class Rel { LE, GE, EQ };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// maximize objective . x subject to rows; variables are free unless marked nonnegative.
struct LinearProgram {
    struct Row {
        std::vector<Q> coef;
        Rel rel;
        Q rhs;
    };

    explicit LinearProgram(std::size_t n) : num_vars(n), nonneg(n, false), objective(n, Q(0)) {}

    std::size_t num_vars;
    std::vector<bool> nonneg;
    std::vector<Row> rows;
    std::vector<Q> objective;

    void add(std::vector<Q> coef, Rel rel, Q rhs) { rows.push_back({std::move(coef), rel, std::move(rhs)}); }
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Q value;
    std::vector<Q> x;
};

// Exact two-phase tableau simplex with Bland's rule.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace chtouca
