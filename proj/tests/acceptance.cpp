// Acceptance runner: executes every verification suite and prints one
// pass/fail line per criterion.  Exit status 0 iff everything passed.

#include "qcyc/suites.hpp"

#include <cstdio>

int main() {
    bool all_pass = true;
    for (const auto& entry : qcyc::all_suites()) {
        auto report = entry.run();
        all_pass = all_pass && report.pass;
        std::printf("%s criterion %2d %-14s %6lld ms%s%s\n", report.pass ? "PASS" : "FAIL",
                    entry.criterion, report.suite.c_str(), report.millis,
                    report.pass ? "" : "  witness: ", report.witness.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
