#include <cstdlib>
#include <iostream>
#include <thread>

#include "ringdens/acceptance.hpp"
#include "ringdens/errors.hpp"

int main() {
    int threads = 0;
    if (const char* env = std::getenv("RINGDENS_THREADS")) threads = std::atoi(env);
    if (threads < 1) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
        if (threads > 8) threads = 8;
    }

    std::vector<ringdens::acceptance::CriterionResult> results;
    try {
        results = ringdens::acceptance::run_all(threads, 30);
    } catch (const ringdens::BudgetError& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    }

    int failed = 0;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  " << r.detail << "\n";
        if (!r.passed) ++failed;
    }
    std::cout << (failed == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " (" << results.size()
              << " total, " << failed << " failed)\n";
    return failed == 0 ? 0 : 1;
}
