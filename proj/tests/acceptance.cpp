// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <cstdio>
#include <string>

#include "gdist/verify.hpp"

int main(int argc, char** argv) {
    gdist::VerifyOptions opt;
    if (argc > 1) opt.filter = argv[1];
    bool ok = true;
    gdist::runAcceptance(opt, [&](const gdist::CriterionResult& r) {
        std::printf("%s\n", gdist::formatCriterionLine(r).c_str());
        for (const auto& n : r.notes) std::printf("    %s\n", n.c_str());
        for (std::size_t i = 1; i < r.failures.size(); ++i) std::printf("    failure: %s\n", r.failures[i].c_str());
        std::printf("    %.1f s\n", r.seconds);
        std::fflush(stdout);
        ok = ok && r.passed;
    });
    return ok ? 0 : 1;
}
