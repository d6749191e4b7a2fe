#include <chrono>
#include <cstdlib>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ringdens/acceptance.hpp"
#include "ringdens/density.hpp"
#include "ringdens/errors.hpp"
#include "ringdens/exact.hpp"
#include "ringdens/factorstats.hpp"
#include "ringdens/polyint.hpp"
#include "ringdens/primes.hpp"
#include "ringdens/profile.hpp"
#include "ringdens/quadfield.hpp"
#include "ringdens/rational.hpp"
#include "ringdens/sampler.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace ringdens;

// Exact tolerance parsing: "1/10000", "1e-4", "0.0001", "25e-3".
Rational parse_rational(const std::string& text) {
    static const std::regex sci(R"(^([+-]?\d+)(?:\.(\d+))?(?:[eE]([+-]?\d+))?$)");
    if (text.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(text, 10) != 0) throw std::domain_error("bad rational: " + text);
        q.canonicalize();
        if (q == 0 && text != "0" && text.substr(0, 2) != "0/")
            throw std::domain_error("bad rational: " + text);
        return q;
    }
    std::smatch m;
    if (!std::regex_match(text, m, sci)) throw std::domain_error("bad rational: " + text);
    // base 10 explicitly: the default base-0 constructor reads "012" as octal
    Integer num(m[1].str() + m[2].str(), 10);
    long shift = -static_cast<long>(m[2].length());
    if (m[3].matched) shift += std::stol(m[3].str());
    Rational q(num);
    Integer scale = pow_int(Integer(10), static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0) q *= Rational(scale);
    else q /= Rational(scale);
    q.canonicalize();
    return q;
}

// "rational" | "quadratic:m" | "cyclotomic:m"
profile::SplittingProfile parse_profile(const std::string& text) {
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "rational") {
        if (!arg.empty()) throw std::domain_error("rational profile takes no argument");
        return profile::make_rational_profile();
    }
    if (arg.empty()) throw std::domain_error("profile " + kind + " needs an argument");
    if (kind == "quadratic") return profile::make_quadratic_profile(Integer(arg, 10));
    if (kind == "cyclotomic") return profile::make_cyclotomic_profile(std::stoull(arg));
    throw std::domain_error("unknown profile kind: " + kind);
}

int default_threads() {
    if (const char* env = std::getenv("RINGDENS_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

struct Report {
    std::string command;
    json config = json::object();
    json rows = json::array();
    json warnings = json::array();
    json timings = json::object();
    std::string csv;  // used when format == csv

    json body() const {
        return json{{"command", command},
                    {"config", config},
                    {"rows", rows},
                    {"warnings", warnings},
                    {"timings", timings}};
    }
};

struct GlobalOpts {
    std::string format = "json";
    int digits = 9;
    int threads = default_threads();
    bool timings = false;
};

json interval_json(const CertifiedInterval& iv, int digits) {
    return json{{"lo", iv.lo.get_str()},
                {"hi", iv.hi.get_str()},
                {"lo_dec", decimal_lower(iv.lo, digits)},
                {"hi_dec", decimal_upper(iv.hi, digits)}};
}

json rational_json(const Rational& q, int digits) {
    return json{{"value", q.get_str()},
                {"lo_dec", decimal_lower(q, digits)},
                {"hi_dec", decimal_upper(q, digits)}};
}

std::string csv_interval(const CertifiedInterval& iv, int digits) {
    return iv.lo.get_str() + "," + iv.hi.get_str() + "," + decimal_lower(iv.lo, digits) + "," +
           decimal_upper(iv.hi, digits);
}

void emit(const Report& report, const GlobalOpts& opts) {
    if (opts.format == "csv" && !report.csv.empty()) {
        std::cout << report.csv;
        return;
    }
    std::cout << report.body().dump(2) << "\n";
}

class Timer {
  public:
    explicit Timer(Report& report, const GlobalOpts& opts) : report_(report), opts_(opts) {}
    ~Timer() {
        if (opts_.timings) {
            auto dt = std::chrono::steady_clock::now() - t0_;
            report_.timings["total_ms"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
        }
    }

  private:
    Report& report_;
    const GlobalOpts& opts_;
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string strip_timing(const std::string& detail) {
    static const std::regex tail(R"(\s*\([0-9.e+-]+ s\)\s*$)");
    return std::regex_replace(detail, tail, "");
}

void add_global_flags(CLI::App* app, GlobalOpts& opts) {
    app->add_option("--format", opts.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app->add_option("--digits", opts.digits, "decimal digits in rendered brackets")
        ->check(CLI::Range(1, 40))
        ->capture_default_str();
    app->add_option("--threads", opts.threads, "worker threads (default $RINGDENS_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    app->add_flag("--timings", opts.timings, "include wall-clock timings in the report");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ringdens: certified densities and empirical statistics for monogenized rings"};
    app.require_subcommand(1);

    GlobalOpts opts;
    int exit_code = 0;

    // constants
    {
        auto* cmd = app.add_subcommand("constants", "local factors and the zeta ratio");
        auto n = std::make_shared<int>(2);
        auto ps = std::make_shared<std::vector<std::uint64_t>>(std::vector<std::uint64_t>{2, 3, 5});
        auto tol = std::make_shared<std::string>("1e-6");
        cmd->add_option("--n", *n, "degree parameter")->check(CLI::Range(2, 64));
        cmd->add_option("--p", *ps, "primes to report");
        cmd->add_option("--tol", *tol, "zeta-ratio bracket width");
        add_global_flags(cmd, opts);
        cmd->callback([&, n, ps, tol] {
            Report report;
            report.command = "constants";
            report.config = {{"n", *n}, {"p", *ps}, {"tol", *tol}};
            Timer timer(report, opts);
            std::string csv = "p,alpha,beta\n";
            for (std::uint64_t p : *ps) {
                auto lf = exact::local_factors(p, *n);
                report.rows.push_back({{"p", p},
                                       {"alpha", lf.alpha.get_str()},
                                       {"beta", lf.beta.get_str()}});
                csv += std::to_string(p) + "," + lf.alpha.get_str() + "," + lf.beta.get_str() + "\n";
            }
            auto zr = exact::zeta_ratio_with_cutoff(*n, parse_rational(*tol));
            report.rows.push_back({{"zeta_ratio", interval_json(zr.interval, opts.digits)},
                                   {"prime_cutoff", zr.cutoff}});
            report.csv = csv;
            emit(report, opts);
        });
    }

    // density-e / density-ring share a shape
    for (const std::string name : {"density-e", "density-ring"}) {
        auto* cmd = app.add_subcommand(
            name, name == "density-e" ? "certified P[e = k]" : "certified P[ring index = k]");
        auto n = std::make_shared<int>(2);
        auto ks = std::make_shared<std::vector<std::uint64_t>>();
        auto tol = std::make_shared<std::string>("1e-6");
        cmd->add_option("--n", *n, "degree parameter")->check(CLI::Range(2, 64));
        cmd->add_option("--k", *ks, "values of k (default 1..10)");
        cmd->add_option("--tol", *tol, "bracket width per value");
        add_global_flags(cmd, opts);
        cmd->callback([&, name, n, ks, tol] {
            Report report;
            report.command = name;
            if (ks->empty())
                for (std::uint64_t k = 1; k <= 10; ++k) ks->push_back(k);
            report.config = {{"n", *n}, {"k", *ks}, {"tol", *tol}};
            Timer timer(report, opts);
            Rational t = parse_rational(*tol);
            std::string csv = "k,lo,hi,lo_dec,hi_dec\n";
            for (std::uint64_t k : *ks) {
                CertifiedInterval iv = name == "density-e" ? density::prob_e(k, *n, t)
                                                          : density::prob_ring_equals(k, *n, t);
                report.rows.push_back({{"k", k}, {"density", interval_json(iv, opts.digits)}});
                csv += std::to_string(k) + "," + csv_interval(iv, opts.digits) + "\n";
            }
            report.csv = csv;
            emit(report, opts);
        });
    }

    // density-xsize
    {
        auto* cmd = app.add_subcommand("density-xsize", "certified coefficient table P[|X| = t]");
        auto prof = std::make_shared<std::string>("rational");
        auto n = std::make_shared<int>(2);
        auto tmax = std::make_shared<int>(10);
        auto tol = std::make_shared<std::string>("1e-4");
        auto budget = std::make_shared<std::uint64_t>(1u << 22);
        cmd->add_option("--profile", *prof, "rational | quadratic:m | cyclotomic:m");
        cmd->add_option("--n", *n, "degree parameter")->check(CLI::Range(2, 64));
        cmd->add_option("--tmax", *tmax, "largest t")->check(CLI::Range(0, 64));
        cmd->add_option("--tol", *tol, "bracket width per entry");
        cmd->add_option("--prime-budget", *budget, "largest prime cutoff tried");
        add_global_flags(cmd, opts);
        cmd->callback([&, prof, n, tmax, tol, budget] {
            Report report;
            report.command = "density-xsize";
            report.config = {{"profile", *prof}, {"n", *n},
                             {"tmax", *tmax},    {"tol", *tol},
                             {"prime_budget", *budget}};
            Timer timer(report, opts);
            auto table = density::coefficient_table(parse_profile(*prof), *n, *tmax,
                                                    parse_rational(*tol), *budget);
            report.config["prime_cutoff"] = table.N;
            for (int t = 0; t <= table.t_max; ++t)
                report.rows.push_back(
                    {{"t", t}, {"density", interval_json(table.intervals[t], opts.digits)}});
            report.csv = density::table_csv(table, opts.digits);
            emit(report, opts);
        });
    }

    // moments
    {
        auto* cmd = app.add_subcommand("moments", "moments of |X| by two independent routes");
        auto prof = std::make_shared<std::string>("rational");
        auto n = std::make_shared<int>(2);
        auto s = std::make_shared<int>(1);
        auto tol = std::make_shared<std::string>("1e-4");
        auto budget = std::make_shared<std::uint64_t>(1u << 22);
        cmd->add_option("--profile", *prof, "rational | quadratic:m | cyclotomic:m");
        cmd->add_option("--n", *n, "degree parameter")->check(CLI::Range(2, 64));
        cmd->add_option("--s", *s, "moment order")->check(CLI::Range(1, 4));
        cmd->add_option("--tol", *tol, "bracket width");
        cmd->add_option("--prime-budget", *budget, "largest prime cutoff tried");
        add_global_flags(cmd, opts);
        cmd->callback([&, prof, n, s, tol, budget] {
            Report report;
            report.command = "moments";
            report.config = {{"profile", *prof}, {"n", *n},
                             {"s", *s},          {"tol", *tol},
                             {"prime_budget", *budget}};
            Timer timer(report, opts);
            auto profile = parse_profile(*prof);
            Rational t = parse_rational(*tol);
            auto mom = density::moment(profile, *n, *s, t, *budget);
            auto [ev, var] = density::expectation_variance(profile, *n, t, *budget);
            report.rows.push_back({{"route", "series"},
                                   {"moment", interval_json(mom.series, opts.digits)}});
            report.rows.push_back({{"route", "combinatorial"},
                                   {"moment", interval_json(mom.combinatorial, opts.digits)}});
            report.rows.push_back({{"route", "closed-form-expectation"},
                                   {"moment", interval_json(ev, opts.digits)}});
            report.rows.push_back({{"route", "closed-form-variance"},
                                   {"moment", interval_json(var, opts.digits)}});
            std::string csv = "route,lo,hi,lo_dec,hi_dec\n";
            csv += "series," + csv_interval(mom.series, opts.digits) + "\n";
            csv += "combinatorial," + csv_interval(mom.combinatorial, opts.digits) + "\n";
            csv += "closed-form-expectation," + csv_interval(ev, opts.digits) + "\n";
            csv += "closed-form-variance," + csv_interval(var, opts.digits) + "\n";
            report.csv = csv;
            emit(report, opts);
        });
    }

    // monotonicity
    {
        auto* cmd = app.add_subcommand("monotonicity", "strict comparisons a_t vs a_{t+step}");
        auto prof = std::make_shared<std::string>("rational");
        auto n = std::make_shared<int>(2);
        auto tmax = std::make_shared<int>(12);
        auto tol = std::make_shared<std::string>("1e-5");
        auto budget = std::make_shared<std::uint64_t>(1u << 22);
        cmd->add_option("--profile", *prof, "rational | quadratic:m | cyclotomic:m");
        cmd->add_option("--n", *n, "degree parameter")->check(CLI::Range(2, 64));
        cmd->add_option("--tmax", *tmax, "largest t")->check(CLI::Range(0, 64));
        cmd->add_option("--tol", *tol, "bracket width per entry");
        cmd->add_option("--prime-budget", *budget, "largest prime cutoff tried");
        add_global_flags(cmd, opts);
        cmd->callback([&, prof, n, tmax, tol, budget] {
            Report report;
            report.command = "monotonicity";
            report.config = {{"profile", *prof}, {"n", *n},
                             {"tmax", *tmax},    {"tol", *tol},
                             {"prime_budget", *budget}};
            Timer timer(report, opts);
            auto rep = density::monotonicity_scan(parse_profile(*prof), *n, *tmax,
                                                  parse_rational(*tol), *budget);
            report.config["d"] = rep.d;
            report.config["general_threshold"] = rep.general_threshold;
            if (rep.galois) report.config["galois_threshold"] = rep.galois_threshold;
            for (const auto& c : rep.comparisons) {
                const char* rel = c.relation == density::Relation::greater   ? ">"
                                  : c.relation == density::Relation::less    ? "<"
                                                                            : "undecided";
                report.rows.push_back({{"t", c.t},
                                       {"step", c.step},
                                       {"relation", rel},
                                       {"a_t", interval_json(c.a_t, opts.digits)},
                                       {"a_t_step", interval_json(c.a_t_step, opts.digits)}});
            }
            report.csv = density::monotonicity_csv(rep, opts.digits);
            emit(report, opts);
        });
    }

    // enumerate
    {
        auto* cmd = app.add_subcommand("enumerate", "empirical statistics over polynomials");
        auto degree = std::make_shared<int>(2);
        auto height = std::make_shared<std::int64_t>(10);
        auto mode = std::make_shared<std::string>("exhaustive");
        auto samples = std::make_shared<std::uint64_t>(0);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto monic = std::make_shared<bool>(false);
        auto profiles = std::make_shared<std::vector<std::string>>();
        auto discs = std::make_shared<std::vector<std::string>>();
        auto blocks = std::make_shared<int>(1);
        auto run_log = std::make_shared<std::string>();
        auto budget = std::make_shared<std::uint64_t>(1ull << 32);
        cmd->add_option("--degree", *degree, "polynomial degree")->check(CLI::Range(1, 16));
        cmd->add_option("--height", *height, "coefficient bound H")->check(CLI::PositiveNumber);
        cmd->add_option("--mode", *mode, "exhaustive or montecarlo")
            ->check(CLI::IsMember({"exhaustive", "montecarlo"}));
        cmd->add_option("--samples", *samples, "montecarlo sample count");
        auto* seed_opt = cmd->add_option("--seed", *seed, "montecarlo seed");
        cmd->add_flag("--monic", *monic, "monic polynomials only");
        cmd->add_option("--profiles", *profiles, "splitting profiles for |X| histograms");
        cmd->add_option("--disc-classes", *discs, "squarefree m for disc square-class counts");
        cmd->add_option("--blocks", *blocks, "work blocks")->check(CLI::PositiveNumber);
        cmd->add_option("--run-log", *run_log, "JSONL block log (enables resumption)");
        cmd->add_option("--budget", *budget, "tuple budget (exhaustive)");
        add_global_flags(cmd, opts);
        cmd->callback([&, degree, height, mode, samples, seed, seed_opt, monic, profiles, discs,
                       blocks, run_log, budget] {
            Report report;
            report.command = "enumerate";
            sampler::EnumSpec spec;
            spec.degree = *degree;
            spec.height = *height;
            spec.mode = *mode == "exhaustive" ? sampler::Mode::exhaustive
                                              : sampler::Mode::montecarlo;
            spec.sample_count = *samples;
            spec.seed = *seed;
            spec.monic_only = *monic;
            spec.budget = *budget;
            if (spec.mode == sampler::Mode::montecarlo) {
                if (seed_opt->count() == 0)
                    throw std::domain_error("montecarlo mode requires --seed");
                if (spec.sample_count == 0)
                    throw std::domain_error("montecarlo mode requires --samples > 0");
            }
            report.config = {{"degree", *degree},   {"height", *height}, {"mode", *mode},
                             {"samples", *samples}, {"seed", *seed},     {"monic", *monic},
                             {"profiles", *profiles}, {"disc_classes", *discs},
                             {"blocks", *blocks},   {"budget", *budget}};
            Timer timer(report, opts);
            std::vector<profile::SplittingProfile> profs;
            for (const auto& p : *profiles) profs.push_back(parse_profile(p));
            std::vector<Integer> classes;
            for (const auto& m : *discs) classes.emplace_back(m, 10);
            auto acc = sampler::accumulate(spec, profs, classes, *blocks, opts.threads, *run_log);
            report.rows.push_back(json::parse(sampler::accumulator_json(acc)));
            std::string csv = "e,count\n";
            for (const auto& [e, c] : acc.e_histogram)
                csv += std::to_string(e) + "," + std::to_string(c) + "\n";
            report.csv = csv;
            emit(report, opts);
        });
    }

    // counts
    {
        auto* cmd = app.add_subcommand("counts", "exact counts vs zeta predictions");
        auto kind = std::make_shared<std::string>("irreducible");
        auto n = std::make_shared<int>(2);
        auto height = std::make_shared<std::int64_t>(50);
        auto budget = std::make_shared<std::uint64_t>(1ull << 32);
        cmd->add_option("--kind", *kind, "irreducible or coprime")
            ->check(CLI::IsMember({"irreducible", "coprime"}));
        cmd->add_option("--n", *n, "degree (irreducible) or tuple length (coprime)")
            ->check(CLI::Range(1, 16));
        cmd->add_option("--height", *height, "coefficient bound H")->check(CLI::PositiveNumber);
        cmd->add_option("--budget", *budget, "tuple budget");
        add_global_flags(cmd, opts);
        cmd->callback([&, kind, n, height, budget] {
            Report report;
            report.command = "counts";
            report.config = {{"kind", *kind}, {"n", *n}, {"height", *height}, {"budget", *budget}};
            Timer timer(report, opts);
            auto res = *kind == "irreducible"
                           ? sampler::count_irreducible(*n, *height, *budget)
                           : sampler::count_coprime_tuples(*n, *height, *budget);
            report.rows.push_back({{"count", res.count},
                                   {"predicted", interval_json(res.predicted, opts.digits)}});
            report.csv = "count,predicted_lo,predicted_hi,predicted_lo_dec,predicted_hi_dec\n" +
                         std::to_string(res.count) + "," + csv_interval(res.predicted, opts.digits) +
                         "\n";
            emit(report, opts);
        });
    }

    // quad-class
    {
        auto* cmd = app.add_subcommand("quad-class", "reduced forms and the class group");
        auto d = std::make_shared<std::string>("-23");
        auto prime_bound = std::make_shared<std::uint64_t>(50);
        auto budget = std::make_shared<std::uint64_t>(1u << 26);
        cmd->add_option("--d", *d, "fundamental discriminant < 0");
        cmd->add_option("--prime-bound", *prime_bound, "report class orders of primes below");
        cmd->add_option("--budget", *budget, "form-scan budget");
        add_global_flags(cmd, opts);
        cmd->callback([&, d, prime_bound, budget] {
            Report report;
            report.command = "quad-class";
            report.config = {{"d", *d}, {"prime_bound", *prime_bound}, {"budget", *budget}};
            Timer timer(report, opts);
            auto table = quadfield::reduced_forms(Integer(*d, 10), *budget);
            report.config["h"] = table.h;
            for (const auto& f : table.forms)
                report.rows.push_back({{"a", f.a.get_str()},
                                       {"b", f.b.get_str()},
                                       {"c", f.c.get_str()}});
            json orders = json::array();
            for (std::uint64_t p : shared_sieve().primes_below(*prime_bound)) {
                auto ord = quadfield::prime_class_order(table.d_K, p, table);
                orders.push_back({{"p", p},
                                  {"class_order", ord ? json(*ord) : json(nullptr)}});
            }
            report.rows.push_back({{"prime_class_orders", orders}});
            report.csv = quadfield::class_table_csv(table, *prime_bound);
            emit(report, opts);
        });
    }

    // quad-torsion
    {
        auto* cmd = app.add_subcommand("quad-torsion", "t-torsion violators and their density");
        auto d = std::make_shared<std::string>("-23");
        auto t = std::make_shared<int>(1);
        auto n = std::make_shared<int>(2);
        auto bound = std::make_shared<std::uint64_t>(10);
        auto tol = std::make_shared<std::string>("1e-4");
        cmd->add_option("--d", *d, "fundamental discriminant < 0");
        cmd->add_option("--t", *t, "torsion exponent")->check(CLI::PositiveNumber);
        cmd->add_option("--n", *n, "degree parameter")->check(CLI::Range(2, 64));
        cmd->add_option("--violator-bound", *bound, "list violators below this bound");
        cmd->add_option("--tol", *tol, "density bracket width");
        add_global_flags(cmd, opts);
        cmd->callback([&, d, t, n, bound, tol] {
            Report report;
            report.command = "quad-torsion";
            report.config = {{"d", *d}, {"t", *t}, {"n", *n},
                             {"violator_bound", *bound}, {"tol", *tol}};
            Timer timer(report, opts);
            Integer dk(*d, 10);
            auto violators = quadfield::t_torsion_violators(dk, *t, *bound);
            auto density = quadfield::torsion_density(dk, *t, *n, parse_rational(*tol));
            json vs = json::array();
            for (std::uint64_t p : violators) vs.push_back(p);
            report.rows.push_back({{"violators", vs},
                                   {"density", interval_json(density, opts.digits)}});
            std::string csv = "violators,density_lo,density_hi,density_lo_dec,density_hi_dec\n\"";
            bool first = true;
            for (std::uint64_t p : violators) {
                if (!first) csv += " ";
                csv += std::to_string(p);
                first = false;
            }
            csv += "\"," + csv_interval(density, opts.digits) + "\n";
            report.csv = csv;
            emit(report, opts);
        });
    }

    // quad-products
    {
        auto* cmd = app.add_subcommand("quad-products", "character-restricted alpha products");
        auto d = std::make_shared<std::string>("-23");
        auto n = std::make_shared<int>(2);
        auto cutoff = std::make_shared<std::uint64_t>(1000);
        cmd->add_option("--d", *d, "fundamental discriminant < 0");
        cmd->add_option("--n", *n, "degree parameter")->check(CLI::Range(2, 64));
        cmd->add_option("--cutoff", *cutoff, "prime cutoff N");
        add_global_flags(cmd, opts);
        cmd->callback([&, d, n, cutoff] {
            Report report;
            report.command = "quad-products";
            report.config = {{"d", *d}, {"n", *n}, {"cutoff", *cutoff}};
            Timer timer(report, opts);
            auto prods = quadfield::character_products(Integer(*d, 10), *n, *cutoff);
            report.rows.push_back({{"f_n", interval_json(prods.f_n, opts.digits)},
                                   {"g_n", interval_json(prods.g_n, opts.digits)}});
            std::string csv = "product,lo,hi,lo_dec,hi_dec\n";
            csv += "f_n," + csv_interval(prods.f_n, opts.digits) + "\n";
            csv += "g_n," + csv_interval(prods.g_n, opts.digits) + "\n";
            report.csv = csv;
            emit(report, opts);
        });
    }

    // factor-census
    {
        auto* cmd = app.add_subcommand("factor-census", "exhaustive monic factor census over F_p");
        auto m = std::make_shared<int>(3);
        auto p = std::make_shared<std::uint64_t>(7);
        auto budget = std::make_shared<std::uint64_t>(1u << 27);
        cmd->add_option("--m", *m, "degree")->check(CLI::Range(1, 16));
        cmd->add_option("--p", *p, "prime (p > m)");
        cmd->add_option("--budget", *budget, "max polynomials visited");
        add_global_flags(cmd, opts);
        cmd->callback([&, m, p, budget] {
            Report report;
            report.command = "factor-census";
            report.config = {{"m", *m}, {"p", *p}, {"budget", *budget}};
            Timer timer(report, opts);
            auto census = factorstats::exact_factor_census(*m, *p, *budget);
            for (const auto& [i, count] : census.counts) {
                auto sq = census.squarefree_counts.find(i);
                report.rows.push_back(
                    {{"i", i},
                     {"count", count},
                     {"squarefree_count",
                      sq == census.squarefree_counts.end() ? 0 : sq->second},
                     {"fraction", rational_json(census.fraction(i), opts.digits)}});
            }
            report.csv = factorstats::census_csv(census, opts.digits);
            emit(report, opts);
        });
    }

    // factor-limit
    {
        auto* cmd = app.add_subcommand("factor-limit", "limit law of the distinct-factor count");
        auto m = std::make_shared<int>(3);
        cmd->add_option("--m", *m, "degree")->check(CLI::Range(1, 12));
        add_global_flags(cmd, opts);
        cmd->callback([&, m] {
            Report report;
            report.command = "factor-limit";
            report.config = {{"m", *m}};
            Timer timer(report, opts);
            std::string csv = "i,density,lo_dec,hi_dec\n";
            for (int i = 1; i <= *m; ++i) {
                Rational q = factorstats::limit_density(*m, i);
                report.rows.push_back({{"i", i}, {"density", rational_json(q, opts.digits)}});
                csv += std::to_string(i) + "," + q.get_str() + "," +
                       decimal_lower(q, opts.digits) + "," + decimal_upper(q, opts.digits) + "\n";
            }
            report.csv = csv;
            emit(report, opts);
        });
    }

    // split-sample
    {
        auto* cmd = app.add_subcommand("split-sample", "empirical splitting of p via sampling");
        auto m = std::make_shared<int>(2);
        auto p = std::make_shared<std::uint64_t>(11);
        auto height = std::make_shared<std::int64_t>(100);
        auto samples = std::make_shared<std::uint64_t>(100000);
        auto seed = std::make_shared<std::uint64_t>(0);
        cmd->add_option("--m", *m, "degree")->check(CLI::Range(1, 16));
        cmd->add_option("--p", *p, "prime (p > m)");
        cmd->add_option("--height", *height, "coefficient bound H")->check(CLI::PositiveNumber);
        cmd->add_option("--samples", *samples, "sample count")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", *seed, "sampler seed")->required();
        add_global_flags(cmd, opts);
        cmd->callback([&, m, p, height, samples, seed] {
            Report report;
            report.command = "split-sample";
            report.config = {{"m", *m}, {"p", *p}, {"height", *height},
                             {"samples", *samples}, {"seed", *seed}};
            Timer timer(report, opts);
            auto sample = factorstats::empirical_splitting(*m, *p, *height, *samples, *seed);
            report.config["usable"] = sample.usable;
            report.config["skipped"] = sample.skipped;
            std::string csv = "i,count,fraction_lo_dec,fraction_hi_dec\n";
            for (const auto& [i, count] : sample.counts) {
                Rational frac = make_rational(Integer(static_cast<unsigned long>(count)),
                                              Integer(static_cast<unsigned long>(sample.usable)));
                report.rows.push_back(
                    {{"i", i}, {"count", count}, {"fraction", rational_json(frac, opts.digits)}});
                csv += std::to_string(i) + "," + std::to_string(count) + "," +
                       decimal_lower(frac, opts.digits) + "," + decimal_upper(frac, opts.digits) +
                       "\n";
            }
            report.csv = csv;
            emit(report, opts);
        });
    }

    // verify
    {
        auto* cmd = app.add_subcommand("verify", "run the full acceptance suite");
        auto budget = std::make_shared<int>(30);
        cmd->add_option("--budget-minutes", *budget, "declared wall-clock budget");
        add_global_flags(cmd, opts);
        cmd->callback([&, budget] {
            Report report;
            report.command = "verify";
            report.config = {{"budget_minutes", *budget}, {"threads", opts.threads}};
            Timer timer(report, opts);
            auto results = acceptance::run_all(opts.threads, *budget);
            bool all_pass = true;
            std::string csv = "criterion,status\n";
            for (const auto& r : results) {
                all_pass = all_pass && r.passed;
                report.rows.push_back(
                    {{"criterion", r.name},
                     {"status", r.passed ? "PASS" : "FAIL"},
                     {"detail", opts.timings ? r.detail : strip_timing(r.detail)}});
                csv += r.name + "," + (r.passed ? "PASS" : "FAIL") + "\n";
                std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << "\n";
            }
            report.csv = csv;
            emit(report, opts);
            if (!all_pass) exit_code = 1;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const ConsistencyFault& e) {
        std::cerr << "consistency fault: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
