#include "chtouca/acceptance.hpp"

#include <cstdlib>
#include <iostream>

// One line per acceptance criterion; a nonzero exit status means some criterion failed.
int main() {
    chtouca::AcceptanceOptions opt;
    if (const char* jobs = std::getenv("CHTOUCA_JOBS")) opt.jobs = static_cast<unsigned>(std::max(1, std::atoi(jobs)));
    auto results = chtouca::run_acceptance(opt, std::cout);
    return chtouca::no_failures(results) ? 0 : 1;
}
