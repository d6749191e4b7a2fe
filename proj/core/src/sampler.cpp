#include "ringdens/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "ringdens/errors.hpp"
#include "ringdens/exact.hpp"

namespace ringdens::sampler {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() { return splitmix64(state); }
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t threshold = (-span) % span;
        std::uint64_t v;
        do v = next();
        while (v < threshold);
        return lo + static_cast<std::int64_t>(v % span);
    }
};

bool is_square_i64(std::int64_t x) {
    if (x < 0) return false;
    auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
    for (std::int64_t c = std::max<std::int64_t>(s - 2, 0); c <= s + 2; ++c)
        if (c * c == x) return true;
    return false;
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

/// coeffs low-to-high, primitive, positive lead.  n == 2 runs without big
/// integers; higher degrees defer to the exact pipeline.
bool irreducible_tuple(const std::vector<std::int64_t>& c) {
    int n = static_cast<int>(c.size()) - 1;
    if (n == 1) return true;
    if (n == 2) {
        std::int64_t disc = c[1] * c[1] - 4 * c[2] * c[0];
        return !is_square_i64(disc);
    }
    std::vector<Integer> big(c.begin(), c.end());
    return polyint::is_irreducible(polyint::IntPolynomial(std::move(big)));
}

struct ProfileCtx {
    const profile::SplittingProfile* prof;
    std::map<std::uint64_t, int> r_cache;
    std::int64_t m = 0;  // quadratic generator when present, else 0

    int r(std::uint64_t p) {
        auto it = r_cache.find(p);
        if (it != r_cache.end()) return it->second;
        int v = prof->r(p);
        r_cache.emplace(p, v);
        return v;
    }
};

std::vector<std::uint64_t> factor_distinct_u64(std::uint64_t e) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= e; ++d) {
        if (e % d) continue;
        out.push_back(d);
        while (e % d == 0) e /= d;
    }
    if (e > 1) out.push_back(e);
    return out;
}

/// disc = m * y^2 with y > 0?
bool matches_square_class_i64(std::int64_t disc, std::int64_t m) {
    if (m == 0 || disc % m != 0) return false;
    std::int64_t q = disc / m;
    return q > 0 && is_square_i64(q);
}

bool matches_square_class_big(const Integer& disc, const Integer& m) {
    if (m == 0 || disc % m != 0) return false;
    Integer q = disc / m;
    return q > 0 && is_perfect_square(q);
}

struct TupleContext {
    int n;
    std::vector<ProfileCtx> profiles;
    std::vector<Integer> disc_classes;
    bool need_disc = false;
};

TupleContext make_context(const EnumSpec& spec,
                          const std::vector<profile::SplittingProfile>& profiles,
                          const std::vector<Integer>& disc_classes) {
    TupleContext ctx;
    ctx.n = spec.degree;
    for (const auto& p : profiles) {
        ProfileCtx pc;
        pc.prof = &p;
        if (p.quadratic_m) pc.m = p.quadratic_m->get_si();
        ctx.profiles.push_back(std::move(pc));
    }
    ctx.disc_classes = disc_classes;
    ctx.need_disc =
        spec.degree >= 2 &&
        (!disc_classes.empty() ||
         std::any_of(profiles.begin(), profiles.end(), [](const auto& p) {
             return p.quadratic_m.has_value();
         }));
    return ctx;
}

/// Record one accepted representative (primitive, irreducible, lead > 0).
void record(const std::vector<std::int64_t>& c, TupleContext& ctx, StatAccumulator& acc) {
    int n = ctx.n;
    ++acc.total_weight;
    std::uint64_t e = 0;
    for (int i = 1; i <= n; ++i) e = std::gcd(e, static_cast<std::uint64_t>(std::llabs(c[i])));
    ++acc.e_histogram[e];

    std::int64_t disc64 = 0;
    Integer disc_big;
    bool have_big = false;
    if (ctx.need_disc) {
        if (n == 2) {
            disc64 = c[1] * c[1] - 4 * c[2] * c[0];
        } else {
            std::vector<Integer> big(c.begin(), c.end());
            disc_big = polyint::discriminant(polyint::IntPolynomial(std::move(big)));
            have_big = true;
        }
    }

    std::vector<std::uint64_t> e_primes;
    bool e_factored = false;
    for (auto& pc : ctx.profiles) {
        if (pc.m != 0 && n == 2) {
            bool exceptional = have_big
                                   ? matches_square_class_big(disc_big, Integer(pc.m))
                                   : matches_square_class_i64(disc64, pc.m);
            if (exceptional) {
                ++acc.exceptional_count;
                continue;
            }
        }
        int t = 0;
        if (e > 1) {
            if (!e_factored) {
                e_primes = factor_distinct_u64(e);
                e_factored = true;
            }
            for (std::uint64_t p : e_primes) t += pc.r(p);
        }
        ++acc.xsize_histograms[pc.prof->id][t];
    }

    for (const Integer& m : ctx.disc_classes) {
        bool hit = have_big ? matches_square_class_big(disc_big, m)
                            : (n == 2 && matches_square_class_i64(disc64, m.get_si()));
        if (hit) ++acc.disc_squareclass_counts[m];
    }
}

void check_spec(const EnumSpec& spec) {
    if (spec.degree < 1 || spec.height < 1)
        throw std::domain_error("sampler: need degree >= 1, height >= 1");
    if (spec.mode == Mode::montecarlo && spec.sample_count < 1)
        throw std::domain_error("sampler: montecarlo needs sample_count >= 1");
}

/// Dimensions that vary freely in [-H,H]: everything below the block
/// coordinate.  Non-monic runs block over the lead, monic over the
/// next-highest coefficient (or the constant term for monic degree 1).
int block_coordinate(const EnumSpec& spec) { return spec.monic_only ? spec.degree - 1 : spec.degree; }

std::uint64_t exhaustive_tuples(const EnumSpec& spec) {
    int bidx = block_coordinate(spec);
    std::uint64_t span = static_cast<std::uint64_t>(2 * spec.height + 1);
    double total = spec.monic_only ? 1.0 : static_cast<double>(spec.height);
    if (spec.monic_only && bidx >= 0) total = static_cast<double>(span);
    for (int i = 0; i < bidx; ++i) total *= static_cast<double>(span);
    if (total > 1.8e19) return UINT64_MAX;
    return static_cast<std::uint64_t>(total);
}

template <typename Handler>
void run_exhaustive_block(const EnumSpec& spec, const Block& block, Handler&& handle) {
    int n = spec.degree;
    int bidx = block_coordinate(spec);
    std::vector<std::int64_t> c(static_cast<size_t>(n) + 1, 0);
    if (spec.monic_only) c[static_cast<size_t>(n)] = 1;
    std::int64_t H = spec.height;
    for (std::int64_t lead = block.lead_lo; lead <= block.lead_hi; ++lead) {
        if (bidx >= 0) c[static_cast<size_t>(bidx)] = lead;
        for (int i = 0; i < bidx; ++i) c[static_cast<size_t>(i)] = -H;
        while (true) {
            std::uint64_t content = spec.monic_only ? 1 : 0;
            for (int i = 0; i <= n && content != 1; ++i)
                content = std::gcd(content, static_cast<std::uint64_t>(std::llabs(c[static_cast<size_t>(i)])));
            if (content == 1 && irreducible_tuple(c)) handle(c);
            int i = 0;
            while (i < bidx && c[static_cast<size_t>(i)] == H) {
                c[static_cast<size_t>(i)] = -H;
                ++i;
            }
            if (i >= bidx) break;
            ++c[static_cast<size_t>(i)];
        }
    }
}

template <typename Handler>
void run_mc_block(const EnumSpec& spec, const Block& block, std::uint64_t* draws,
                  Handler&& handle) {
    int n = spec.degree;
    std::int64_t H = spec.height;
    Rng rng(block.block_seed);
    std::vector<std::int64_t> c(static_cast<size_t>(n) + 1, 0);
    for (std::uint64_t s = 0; s < block.samples; ++s) {
        for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] = rng.uniform(-H, H);
        if (spec.monic_only) {
            c[static_cast<size_t>(n)] = 1;
        } else {
            do c[static_cast<size_t>(n)] = rng.uniform(-H, H);
            while (c[static_cast<size_t>(n)] == 0);
            if (c[static_cast<size_t>(n)] < 0)
                for (auto& v : c) v = -v;
        }
        if (draws) ++*draws;
        std::uint64_t content = spec.monic_only ? 1 : 0;
        for (int i = 0; i <= n && content != 1; ++i)
            content = std::gcd(content, static_cast<std::uint64_t>(std::llabs(c[static_cast<size_t>(i)])));
        if (content != 1) continue;
        if (!irreducible_tuple(c)) continue;
        handle(c);
    }
}

json spec_json(const EnumSpec& spec) {
    return json{{"degree", spec.degree},
                {"height", spec.height},
                {"mode", spec.mode == Mode::exhaustive ? "exhaustive" : "montecarlo"},
                {"sample_count", spec.sample_count},
                {"seed", spec.seed},
                {"monic_only", spec.monic_only}};
}

json acc_json(const StatAccumulator& acc) {
    json j;
    j["total_weight"] = acc.total_weight;
    j["draws"] = acc.draws;
    json e = json::object();
    for (const auto& [k, v] : acc.e_histogram) e[std::to_string(k)] = v;
    j["e_histogram"] = e;
    json xs = json::object();
    for (const auto& [id, hist] : acc.xsize_histograms) {
        json h = json::object();
        for (const auto& [t, v] : hist) h[std::to_string(t)] = v;
        xs[id] = h;
    }
    j["xsize_histograms"] = xs;
    json dc = json::object();
    for (const auto& [m, v] : acc.disc_squareclass_counts) dc[m.get_str()] = v;
    j["disc_squareclass_counts"] = dc;
    j["exceptional_count"] = acc.exceptional_count;
    json sh = json::array();
    for (const auto& [key, v] : acc.splitting_histogram)
        sh.push_back(json{{"p", key.first}, {"i", key.second}, {"count", v}});
    j["splitting_histogram"] = sh;
    return j;
}

StatAccumulator acc_from_json(const json& j) {
    StatAccumulator acc;
    acc.total_weight = j.at("total_weight").get<std::uint64_t>();
    acc.draws = j.at("draws").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("e_histogram").items())
        acc.e_histogram[std::stoull(k)] = v.get<std::uint64_t>();
    for (const auto& [id, hist] : j.at("xsize_histograms").items())
        for (const auto& [t, v] : hist.items())
            acc.xsize_histograms[id][std::stoi(t)] = v.get<std::uint64_t>();
    for (const auto& [m, v] : j.at("disc_squareclass_counts").items())
        acc.disc_squareclass_counts[Integer(m)] = v.get<std::uint64_t>();
    acc.exceptional_count = j.at("exceptional_count").get<std::uint64_t>();
    for (const auto& rec : j.at("splitting_histogram"))
        acc.splitting_histogram[{rec.at("p").get<std::uint64_t>(), rec.at("i").get<int>()}] =
            rec.at("count").get<std::uint64_t>();
    return acc;
}

}  // namespace

void StatAccumulator::merge(const StatAccumulator& o) {
    total_weight += o.total_weight;
    draws += o.draws;
    for (const auto& [k, v] : o.e_histogram) e_histogram[k] += v;
    for (const auto& [id, hist] : o.xsize_histograms)
        for (const auto& [t, v] : hist) xsize_histograms[id][t] += v;
    for (const auto& [m, v] : o.disc_squareclass_counts) disc_squareclass_counts[m] += v;
    exceptional_count += o.exceptional_count;
    for (const auto& [key, v] : o.splitting_histogram) splitting_histogram[key] += v;
}

std::vector<Block> partition_blocks(const EnumSpec& spec, int block_count) {
    check_spec(spec);
    if (block_count < 1) throw std::domain_error("partition_blocks: block_count >= 1");
    std::vector<Block> blocks;
    if (spec.mode == Mode::montecarlo) {
        std::uint64_t base = spec.sample_count / static_cast<std::uint64_t>(block_count);
        std::uint64_t extra = spec.sample_count % static_cast<std::uint64_t>(block_count);
        for (int i = 0; i < block_count; ++i) {
            Block b;
            b.index = i;
            b.samples = base + (static_cast<std::uint64_t>(i) < extra ? 1 : 0);
            std::uint64_t s = spec.seed;
            splitmix64(s);
            s ^= static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ull;
            b.block_seed = splitmix64(s);
            if (b.samples > 0) blocks.push_back(b);
        }
        return blocks;
    }
    if (exhaustive_tuples(spec) > spec.budget)
        throw BudgetError("partition_blocks: exhaustive enumeration exceeds budget",
                          exhaustive_tuples(spec));
    std::int64_t lo = spec.monic_only ? -spec.height : 1;
    std::int64_t hi = spec.height;
    std::int64_t span = hi - lo + 1;
    std::int64_t count = std::min<std::int64_t>(block_count, span);
    for (std::int64_t i = 0; i < count; ++i) {
        Block b;
        b.index = static_cast<int>(i);
        b.lead_lo = lo + span * i / count;
        b.lead_hi = lo + span * (i + 1) / count - 1;
        blocks.push_back(b);
    }
    return blocks;
}

void enumerate_representatives(const EnumSpec& spec,
                               const std::function<void(const polyint::NormalizedRep&)>& visit) {
    check_spec(spec);
    if (spec.mode != Mode::exhaustive)
        throw std::domain_error("enumerate_representatives: exhaustive mode only");
    for (const Block& b : partition_blocks(spec, 1))
        run_exhaustive_block(spec, b, [&](const std::vector<std::int64_t>& c) {
            std::vector<Integer> big(c.begin(), c.end());
            visit(polyint::NormalizedRep{polyint::IntPolynomial(std::move(big)), spec.degree});
        });
}

void mc_sample(const EnumSpec& spec,
               const std::function<void(const polyint::NormalizedRep&)>& visit) {
    check_spec(spec);
    if (spec.mode != Mode::montecarlo) throw std::domain_error("mc_sample: montecarlo mode only");
    for (const Block& b : partition_blocks(spec, 1))
        run_mc_block(spec, b, nullptr, [&](const std::vector<std::int64_t>& c) {
            std::vector<Integer> big(c.begin(), c.end());
            visit(polyint::NormalizedRep{polyint::IntPolynomial(std::move(big)), spec.degree});
        });
}

StatAccumulator accumulate_block(const EnumSpec& spec, const Block& block,
                                 const std::vector<profile::SplittingProfile>& profiles,
                                 const std::vector<Integer>& disc_classes) {
    check_spec(spec);
    TupleContext ctx = make_context(spec, profiles, disc_classes);
    StatAccumulator acc;
    if (spec.mode == Mode::exhaustive) {
        run_exhaustive_block(spec, block,
                             [&](const std::vector<std::int64_t>& c) { record(c, ctx, acc); });
    } else {
        run_mc_block(spec, block, &acc.draws,
                     [&](const std::vector<std::int64_t>& c) { record(c, ctx, acc); });
    }
    return acc;
}

StatAccumulator accumulate(const EnumSpec& spec,
                           const std::vector<profile::SplittingProfile>& profiles,
                           const std::vector<Integer>& disc_classes, int block_count, int threads,
                           const std::string& run_log) {
    std::vector<Block> blocks = partition_blocks(spec, block_count);
    RunLog prior;
    if (!run_log.empty()) prior = load_run_log(run_log, spec);

    std::vector<StatAccumulator> results(blocks.size());
    std::vector<char> done(blocks.size(), 0);
    std::atomic<size_t> cursor{0};
    std::mutex log_mutex;
    auto worker = [&] {
        while (true) {
            size_t i = cursor.fetch_add(1);
            if (i >= blocks.size()) return;
            if (prior.completed_blocks.count(blocks[i].index)) continue;
            results[i] = accumulate_block(spec, blocks[i], profiles, disc_classes);
            done[i] = 1;
            if (!run_log.empty()) {
                std::lock_guard<std::mutex> lock(log_mutex);
                append_run_log(run_log, spec, blocks[i], results[i]);
            }
        }
    };
    int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(blocks.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    StatAccumulator total = prior.merged;
    for (size_t i = 0; i < blocks.size(); ++i)
        if (done[i]) total.merge(results[i]);
    return total;
}

CountResult count_irreducible(int n, std::int64_t H, std::uint64_t budget) {
    EnumSpec spec;
    spec.degree = n;
    spec.height = H;
    spec.budget = budget;
    check_spec(spec);
    if (exhaustive_tuples(spec) > budget)
        throw BudgetError("count_irreducible: enumeration exceeds budget", exhaustive_tuples(spec));
    std::uint64_t count = 0;
    for (const Block& b : partition_blocks(spec, 1))
        run_exhaustive_block(spec, b, [&](const std::vector<std::int64_t>&) { ++count; });
    count *= 2;  // lead < 0 mirrors
    CertifiedInterval z = exact::zeta_interval(n + 1, make_rational(1, 100000000));
    Rational main(pow_int(Integer(2 * H), static_cast<unsigned long>(n + 1)));
    return {count, CertifiedInterval(main / z.hi, main / z.lo)};
}

CountResult count_coprime_tuples(int k, std::int64_t H, std::uint64_t budget) {
    if (k < 2 || H < 1) throw std::domain_error("count_coprime_tuples: k >= 2, H >= 1");
    double total = std::pow(2.0 * static_cast<double>(H) + 1.0, k);
    if (total > static_cast<double>(budget))
        throw BudgetError("count_coprime_tuples: enumeration exceeds budget",
                          total > 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(total));
    std::vector<std::int64_t> c(static_cast<size_t>(k), -H);
    std::uint64_t count = 0;
    while (true) {
        std::uint64_t g = 0;
        for (std::int64_t v : c) g = std::gcd(g, static_cast<std::uint64_t>(std::llabs(v)));
        if (g == 1) ++count;
        int i = 0;
        while (i < k && c[static_cast<size_t>(i)] == H) {
            c[static_cast<size_t>(i)] = -H;
            ++i;
        }
        if (i >= k) break;
        ++c[static_cast<size_t>(i)];
    }
    CertifiedInterval z = exact::zeta_interval(k, make_rational(1, 100000000));
    Rational main(pow_int(Integer(2 * H), static_cast<unsigned long>(k)));
    return {count, CertifiedInterval(main / z.hi, main / z.lo)};
}

std::string accumulator_json(const StatAccumulator& acc) { return acc_json(acc).dump(); }

void append_run_log(const std::string& path, const EnumSpec& spec, const Block& block,
                    const StatAccumulator& acc) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("append_run_log: cannot open " + path);
    json rec{{"spec", spec_json(spec)},
             {"block", json{{"index", block.index},
                            {"lead_lo", block.lead_lo},
                            {"lead_hi", block.lead_hi},
                            {"samples", block.samples},
                            {"block_seed", block.block_seed}}},
             {"acc", acc_json(acc)}};
    out << rec.dump() << "\n";
}

RunLog load_run_log(const std::string& path, const EnumSpec& spec) {
    RunLog log;
    std::ifstream in(path);
    if (!in) return log;
    json want = spec_json(spec);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec = json::parse(line);
        if (rec.at("spec") != want) continue;
        int index = rec.at("block").at("index").get<int>();
        if (!log.completed_blocks.insert(index).second) continue;
        log.merged.merge(acc_from_json(rec.at("acc")));
    }
    return log;
}

}  // namespace ringdens::sampler
