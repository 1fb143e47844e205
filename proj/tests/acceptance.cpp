// One line per criterion: PASS/FAIL, instance count, wall time against its budget.

#include <cstdio>
#include <iostream>

#include "drinfeld/certify.hpp"

using namespace drinfeld;

int main() {
    CertifyOptions o;
    bool ok = true;
    o.on_result = [&](const CriterionResult& r) {
        bool in_time = r.seconds <= r.budget_seconds;
        bool pass = r.status == Status::pass && in_time;
        ok = ok && pass;
        std::printf("%s criterion %2d %-44s instances=%-6lld time=%.2fs (budget %.0fs)%s\n", pass ? "PASS" : "FAIL",
                    r.id, r.name.c_str(), static_cast<long long>(r.instances), r.seconds, r.budget_seconds,
                    in_time ? "" : " OVER BUDGET");
        if (!r.summary.empty())
            std::printf("     summary: %s\n", r.summary.dump().c_str());
        for (const auto& f : r.failures)
            std::printf("     failure: %s\n", f.dump().substr(0, 400).c_str());
        std::fflush(stdout);
    };
    Bundle b = certify_all(o);
    std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return ok ? 0 : 1;
}
