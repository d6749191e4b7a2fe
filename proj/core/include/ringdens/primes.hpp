#pragma once

#include <cstdint>
#include <vector>

namespace ringdens {

/// Deterministic incremental sieve of Eratosthenes.  The table grows on
/// demand and is never shrunk, so repeated queries are cheap.
class PrimeSieve {
  public:
    /// All primes p < bound, in increasing order (view valid until next growth).
    const std::vector<std::uint64_t>& primes_below(std::uint64_t bound);

    bool is_prime(std::uint64_t n);

    /// Smallest prime >= n.
    std::uint64_t next_prime(std::uint64_t n);

  private:
    void grow(std::uint64_t bound);

    std::uint64_t limit_ = 0;  // sieved for all n < limit_
    std::vector<bool> composite_;
    std::vector<std::uint64_t> primes_;
    std::vector<std::uint64_t> view_;
};

/// Process-wide sieve for pure queries.
PrimeSieve& shared_sieve();

}  // namespace ringdens
