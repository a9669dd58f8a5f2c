/**
 * @file suites.hpp
 * @brief Invariant suites shared by the command line tool and the acceptance
 * runner. Each suite reports a check count and the first few failures.
 */
#pragma once

#include <string>
#include <vector>

#include "qbr/qbrauer.hpp"

namespace qbr {

struct SuiteResult {
    std::string name;
    bool ok = true;
    size_t checks = 0;
    std::vector<std::string> failures;  // at most kMaxFailures entries
    std::string detail;

    static constexpr size_t kMaxFailures = 10;
    void check(bool cond, const std::string& what);
};

// Normal and cellular basis counts against (2n-1)!!.
SuiteResult suite_dimension(const QBrAlgebra& A);
// certify() together with the slide and absorption identities of e_(k).
SuiteResult suite_relations(const QBrAlgebra& A);
// Exhaustive for n <= 3, otherwise `samples` random basis triples.
SuiteResult suite_associativity(const QBrAlgebra& A, size_t samples = 1000, unsigned seed = 1);
// star(star x) = x and star(xy) = star(y) star(x) on random pairs.
SuiteResult suite_involution(const QBrAlgebra& A, size_t samples = 1000, unsigned seed = 2);
// Every cellular basis element times every generator stays in its row
// modulo strictly more dominant labels.
SuiteResult suite_cellularity(const QBrAlgebra& A);
// Murphy transition matrices of every window Hecke algebra are invertible
// and to_murphy inverts from_murphy.
SuiteResult suite_murphy(const QBrAlgebra& A);
// N-version at q = 1 against diagram multiplication in D_n(N).
SuiteResult suite_brauer_oracle(int n, long N);

const std::vector<std::string>& suite_names();  // without "all"

}  // namespace qbr
