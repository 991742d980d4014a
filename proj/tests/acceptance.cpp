// Runs the fourteen reproduction criteria; one line per criterion, nonzero exit on any failure.

#include "akhsylv/acceptance.hpp"

#include <iostream>

int main() {
    const auto results = akhsylv::run_criteria(akhsylv::suite_criteria("all"));
    const bool ok = akhsylv::report_results(std::cout, results);
    std::cout << (ok ? "all criteria passed" : "some criteria failed") << '\n';
    return ok ? 0 : 1;
}
