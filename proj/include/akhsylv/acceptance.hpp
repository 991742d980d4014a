#pragma once

// Reproduction checks shared by the acceptance test binary and `akhsylv verify`.

#include "akhsylv/oracles.hpp"
#include "akhsylv/solvers.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace akhsylv {

struct AcceptanceOptions {
    /// Added to every problem seed; 0 reproduces the reference runs.
    std::uint64_t seed = 0;
    /// Multiplies every tolerance and runtime budget. Values below 1 tighten the checks.
    double tolerance_scale = 1.0;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string measured;
    double seconds = 0.0;
};

/// Seeded X A - B X = C with A, B symmetric of known spectrum (eigenvalues uniform in ia and
/// ib, which also become the domain hints), C = U V of rank r with U, V Gaussian scaled by
/// 1/sqrt(rows) and 1/sqrt(cols), and X the eigenbasis solution.
struct BenchmarkProblem {
    KnownFactorization fa;
    KnownFactorization fb;
    SylvesterProblem p;
    Matrix X;
};

BenchmarkProblem benchmark_problem(int n, int m, Interval ia, Interval ib, int r, std::uint64_t seed);

/// Criterion ids 1..14 belonging to a suite: "rates", "coeffs", "oracles", "solvers" or "all".
/// Throws ParseError for other names.
std::vector<int> suite_criteria(const std::string& suite);

/// Runs a set of criteria. Criteria 4, 5 and 10 share their solver runs.
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const AcceptanceOptions& options = {});

/// "PASS  4 method1-bound  <measured>  (1.23 s)"
std::string format_result(const CriterionResult& result);

/// Prints one line per result and returns true when all passed.
bool report_results(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace akhsylv
