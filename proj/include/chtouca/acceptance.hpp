#pragma once

#include "chtouca/hn.hpp"

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace chtouca {

using SplitFn = std::function<SplitResult(const Polygon&, const Z&, const Composition&)>;

struct AcceptanceOptions {
    std::size_t cap = 12;  // enumeration cap on |S^{r,n}|; TooLarge becomes a skip
    unsigned jobs = 1;
    SplitFn split = split_truncation;
    std::uint64_t seed = 20240601;
};

enum class Status { Pass, Fail, Skip };

struct CriterionResult {
    int id = 0;
    std::string name;
    Status status = Status::Fail;
    std::string detail;
    double seconds = 0;
};

constexpr int kCriteria = 14;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
// Runs the criteria in order and prints one line per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& log,
                                            const std::vector<int>& only = {});
std::string format_result(const CriterionResult& r);
bool no_failures(const std::vector<CriterionResult>& rs);

}  // namespace chtouca
