#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ringdens/polyint.hpp"
#include "ringdens/profile.hpp"
#include "ringdens/rational.hpp"

namespace ringdens::sampler {

enum class Mode { exhaustive, montecarlo };

struct EnumSpec {
    int degree = 2;
    std::int64_t height = 10;
    Mode mode = Mode::exhaustive;
    std::uint64_t sample_count = 0;  // montecarlo only
    std::uint64_t seed = 0;          // montecarlo only
    bool monic_only = false;
    std::uint64_t budget = 1ull << 32;  // max tuples visited (exhaustive)
};

/// Mergeable counters for one enumeration run.  Counts are per representative
/// polynomial; every statistic here is a function of the minimal polynomial,
/// so the root multiplicity n cancels in all ratios and is omitted.
struct StatAccumulator {
    std::uint64_t total_weight = 0;  // accepted representatives
    std::uint64_t draws = 0;         // montecarlo: tuples drawn (after a_n != 0 redraw)
    std::map<std::uint64_t, std::uint64_t> e_histogram;
    std::map<std::string, std::map<int, std::uint64_t>> xsize_histograms;  // profile id -> t -> count
    std::map<Integer, std::uint64_t> disc_squareclass_counts;              // requested m -> count
    std::uint64_t exceptional_count = 0;
    std::map<std::pair<std::uint64_t, int>, std::uint64_t> splitting_histogram;  // (p, i)

    void merge(const StatAccumulator& o);
    bool operator==(const StatAccumulator& o) const = default;
};

/// Contiguous leading-coefficient range [lead_lo, lead_hi] (monic runs range
/// over the next-highest coefficient instead); montecarlo blocks carry a
/// sample share and a block seed derived from the master seed.
struct Block {
    int index = 0;
    std::int64_t lead_lo = 0;
    std::int64_t lead_hi = 0;
    std::uint64_t samples = 0;
    std::uint64_t block_seed = 0;
};

std::vector<Block> partition_blocks(const EnumSpec& spec, int block_count);

/// Visit every primitive irreducible degree-n polynomial with height <= H and
/// positive leading coefficient exactly once (exhaustive mode only).
void enumerate_representatives(const EnumSpec& spec,
                               const std::function<void(const polyint::NormalizedRep&)>& visit);

/// Deterministic Monte-Carlo stream: uniform tuples in [-H,H]^(n+1), leading
/// coefficient redrawn while zero, tuple negated when the lead is negative,
/// rejected unless primitive and irreducible.
void mc_sample(const EnumSpec& spec,
               const std::function<void(const polyint::NormalizedRep&)>& visit);

/// Run one block and accumulate the empirical statistics: e(gamma), the
/// stable-lift |X(K,gamma)| = sum_{p | e} r_K(p) per profile (degree-2
/// representatives generating a quadratic profile's own field are counted as
/// exceptional and excluded from that histogram), and discriminant square
/// classes for the requested squarefree m.
StatAccumulator accumulate_block(const EnumSpec& spec, const Block& block,
                                 const std::vector<profile::SplittingProfile>& profiles,
                                 const std::vector<Integer>& disc_classes);

/// Partition into blocks, run (optionally in parallel), merge in block order.
/// With a run_log path, finished blocks are appended as JSON lines and blocks
/// already present in the log are skipped on resumption.
StatAccumulator accumulate(const EnumSpec& spec,
                           const std::vector<profile::SplittingProfile>& profiles,
                           const std::vector<Integer>& disc_classes, int block_count = 1,
                           int threads = 1, const std::string& run_log = "");

struct CountResult {
    std::uint64_t count = 0;
    CertifiedInterval predicted;
};

/// Exact count of irreducible (over Z: primitive and irreducible over Q)
/// degree-n polynomials of height <= H, both signs of the leading
/// coefficient; prediction (2H)^(n+1)/zeta(n+1).
CountResult count_irreducible(int n, std::int64_t H, std::uint64_t budget = 1ull << 32);

/// Exact count of k-tuples in [-H,H]^k with gcd 1 (gcd(0,x) = |x|);
/// prediction (2H)^k/zeta(k).
CountResult count_coprime_tuples(int k, std::int64_t H, std::uint64_t budget = 1ull << 32);

std::string accumulator_json(const StatAccumulator& acc);

struct RunLog {
    std::set<int> completed_blocks;
    StatAccumulator merged;
};

void append_run_log(const std::string& path, const EnumSpec& spec, const Block& block,
                    const StatAccumulator& acc);
/// Load records matching this EnumSpec; other records are ignored.
RunLog load_run_log(const std::string& path, const EnumSpec& spec);

}  // namespace ringdens::sampler
