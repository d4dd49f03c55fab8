#include <chrono>
#include <iostream>

#include "chindex/checks.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    chindex::CheckOptions options;
    bool gating_ok = true;
    const auto run = [&](chindex::CheckResult (*check)(const chindex::CheckOptions&)) {
        const auto start = clock::now();
        const chindex::CheckResult res = check(options);
        const double secs = std::chrono::duration<double>(clock::now() - start).count();
        std::cout << chindex::format_check(res) << " [" << secs << " s]" << std::endl;
        if (res.gating && !res.passed) gating_ok = false;
    };
    run(chindex::check_regular_triviality);
    run(chindex::check_generator_law);
    run(chindex::check_invariance);
    run(chindex::check_norm_relations);
    run(chindex::check_kurihara);
    run(chindex::check_linear_algebra);
    run(chindex::check_dlog);
    run(chindex::check_worked_example);
    run(chindex::check_nontrivial_experiment);
    return gating_ok ? 0 : 1;
}
