// Dedicated acceptance binary: runs every repro criterion at its pinned
// tolerance, prints one pass/fail line per criterion, exits nonzero on any
// failure. `parityq repro` runs the same suite.

#include <iostream>

#include "parityq/acceptance.hpp"

int main() {
    auto results = parityq::run_acceptance(std::cout);
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}
