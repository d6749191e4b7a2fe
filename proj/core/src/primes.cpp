#include "ringdens/primes.hpp"

#include <algorithm>
#include <mutex>

namespace ringdens {

void PrimeSieve::grow(std::uint64_t bound) {
    if (bound <= limit_) return;
    std::uint64_t new_limit = std::max<std::uint64_t>(bound, std::max<std::uint64_t>(2 * limit_, 1024));
    std::vector<bool> comp(new_limit, false);
    primes_.clear();
    for (std::uint64_t i = 2; i < new_limit; ++i) {
        if (comp[i]) continue;
        primes_.push_back(i);
        for (std::uint64_t j = i * i; j < new_limit; j += i) comp[j] = true;
    }
    composite_ = std::move(comp);
    limit_ = new_limit;
}

const std::vector<std::uint64_t>& PrimeSieve::primes_below(std::uint64_t bound) {
    grow(bound);
    auto it = std::lower_bound(primes_.begin(), primes_.end(), bound);
    view_.assign(primes_.begin(), it);
    return view_;
}

bool PrimeSieve::is_prime(std::uint64_t n) {
    if (n < 2) return false;
    grow(n + 1);
    return !composite_[n];
}

std::uint64_t PrimeSieve::next_prime(std::uint64_t n) {
    if (n < 2) return 2;
    for (std::uint64_t k = n;; ++k)
        if (is_prime(k)) return k;
}

PrimeSieve& shared_sieve() {
    thread_local PrimeSieve sieve;
    return sieve;
}

}  // namespace ringdens
