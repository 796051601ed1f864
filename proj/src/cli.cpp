#include "hitcalc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "hitcalc/arith.hpp"
#include "hitcalc/cache.hpp"
#include "hitcalc/glt.hpp"
#include "hitcalc/suite.hpp"
#include "hitcalc/sum_maps.hpp"

namespace hitcalc::cli {

namespace {

// Monolithic runs whose unfiltered column scope would need more than this are refused
// without --confirm-heavy.
constexpr std::uint64_t kHeavyBytes = std::uint64_t{1} << 30;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Flags {
    std::string cache_dir;
    bool no_cache = false;
    std::optional<unsigned> threads;
    std::string mem_limit;
    std::string strategy;
    std::string format;
};

RunConfig resolve_config(const Flags& f, const Environment& env)
{
    RunConfig c;
    auto lookup = [&](const char* key) -> std::optional<std::string> {
        auto it = env.find(key);
        if (it == env.end() || it->second.empty()) return std::nullopt;
        return it->second;
    };
    if (auto v = lookup("HITCALC_CACHE_DIR")) c.cache_dir = *v;
    if (auto v = lookup("HITCALC_THREADS")) {
        try {
            c.threads = static_cast<unsigned>(std::stoul(*v));
        } catch (const std::exception&) {
            throw UsageError("HITCALC_THREADS: not a number: " + *v);
        }
    }
    if (auto v = lookup("HITCALC_MEM_LIMIT")) c.memory_limit = parse_byte_size(*v);

    if (!f.cache_dir.empty()) c.cache_dir = f.cache_dir;
    if (f.no_cache) c.cache_dir.reset();
    if (f.threads) c.threads = *f.threads;
    if (!f.mem_limit.empty()) c.memory_limit = parse_byte_size(f.mem_limit);
    if (!f.strategy.empty()) c.strategy = parse_strategy(f.strategy);
    if (!f.format.empty()) c.format = parse_format(f.format);
    c.validate();
    return c;
}

void print_report(const BasisReport& r, Format format, bool dim_only, std::ostream& out, std::ostream& err)
{
    if (format == Format::Json) {
        auto j = to_json(r);
        if (dim_only) j.erase("admissibles");
        out << j.dump(2) << '\n';
        return;
    }
    if (dim_only) {
        out << r.dim() << '\n';
        return;
    }
    for (const auto& m : r.admissibles) {
        if (format == Format::Csv) {
            for (int j = 0; j < m.arity(); ++j) out << (j ? "," : "") << m[j];
            out << '\n';
        } else {
            out << to_string(m) << '\n';
        }
    }
    err << fmt::format("dim={} strategy={} elapsed={:.3f}s\n", r.dim(), r.strategy, r.elapsed_seconds);
}

std::string join(const std::vector<Monomial>& xs, std::size_t limit = 20)
{
    std::string s;
    for (std::size_t k = 0; k < xs.size() && k < limit; ++k) s += (k ? ", " : "") + to_string(xs[k]);
    if (xs.size() > limit) s += fmt::format(", ... ({} more)", xs.size() - limit);
    return s;
}

}  // namespace

Format parse_format(const std::string& s)
{
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw std::invalid_argument("unknown format '" + s + "'");
}

void RunConfig::validate() const
{
    if (threads < 1) throw std::invalid_argument("thread count must be at least 1");
    if (memory_limit < (std::uint64_t{64} << 20)) throw std::invalid_argument("memory ceiling must be at least 64 MiB");
}

EngineOptions RunConfig::engine_options() const
{
    EngineOptions o;
    o.strategy = strategy;
    o.threads = threads;
    o.memory_limit = memory_limit;
    return o;
}

std::uint64_t parse_byte_size(const std::string& text)
{
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid byte size '" + text + "'");
    }
    std::string suffix = text.substr(pos);
    if (suffix.size() == 3 && (suffix[1] == 'i' || suffix[1] == 'I') && (suffix[2] == 'B' || suffix[2] == 'b'))
        suffix.resize(1);
    int shift = 0;
    if (suffix.empty()) shift = 0;
    else if (suffix == "K" || suffix == "k") shift = 10;
    else if (suffix == "M" || suffix == "m") shift = 20;
    else if (suffix == "G" || suffix == "g") shift = 30;
    else if (suffix == "T" || suffix == "t") shift = 40;
    else throw std::invalid_argument("invalid byte size suffix in '" + text + "'");
    if (shift && value > (~0ULL >> shift)) throw std::invalid_argument("byte size overflows: " + text);
    return static_cast<std::uint64_t>(value) << shift;
}

Environment process_environment()
{
    Environment env;
    for (const char* key : {"HITCALC_CACHE_DIR", "HITCALC_THREADS", "HITCALC_MEM_LIMIT"})
        if (const char* v = std::getenv(key)) env[key] = v;
    return env;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env)
{
    CLI::App app{"Admissible monomial bases of QP_t over the mod-2 Steenrod algebra", "hitcalc"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags flags;
    app.add_option("--cache-dir", flags.cache_dir, "Result cache directory (env HITCALC_CACHE_DIR)");
    app.add_flag("--no-cache", flags.no_cache, "Do not read or write the result cache");
    app.add_option("--threads", flags.threads, "Worker threads (env HITCALC_THREADS)");
    app.add_option("--mem-limit", flags.mem_limit, "Memory ceiling, e.g. 8G (env HITCALC_MEM_LIMIT)");
    app.add_option("--strategy", flags.strategy, "monolithic, stratified or auto")
        ->check(CLI::IsMember({"monolithic", "stratified", "auto"}));
    app.add_option("--format", flags.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));

    // arith
    auto* arith = app.add_subcommand("arith", "Dyadic arithmetic helpers");
    std::string arith_fn;
    std::vector<long long> arith_args;
    arith->add_option("function", arith_fn, "alpha, mu, binom-parity, u-set, predict, generic-degree")
        ->required()
        ->check(CLI::IsMember({"alpha", "mu", "binom-parity", "u-set", "predict", "generic-degree"}));
    arith->add_option("args", arith_args, "Integer arguments");

    // basis
    auto* basis = app.add_subcommand("basis", "Admissible monomial basis of (QP_t)_n");
    int t = 0, n = 0;
    std::string weight, part = "all";
    bool dim_only = false, confirm_heavy = false;
    basis->add_option("-t", t, "Number of variables")->required()->check(CLI::Range(1, kMaxArity));
    basis->add_option("-n", n, "Degree")->required()->check(CLI::NonNegativeNumber);
    basis->add_option("--weight", weight, "Restrict to one weight block, e.g. 4,3,2,1,1");
    basis->add_option("--part", part, "zero, positive or all")->check(CLI::IsMember({"zero", "positive", "all"}));
    basis->add_flag("--dim-only", dim_only, "Print only the dimension");
    basis->add_flag("--confirm-heavy", confirm_heavy, "Allow a heavy monolithic run");

    // verify
    auto* verify = app.add_subcommand("verify", "Run a verification");
    std::string check;
    std::string variant = "both";
    bool stretch = false;
    verify->add_option("check", check, "kameko, gtS, gtP, efc, invariants, blocks, paper-suite")
        ->required()
        ->check(CLI::IsMember({"kameko", "gtS", "gtP", "efc", "invariants", "blocks", "paper-suite"}));
    verify->add_option("-t", t, "Number of variables")->check(CLI::Range(1, kMaxArity));
    verify->add_option("-n", n, "Degree")->check(CLI::NonNegativeNumber);
    verify->add_option("--weight", weight, "Weight vector (gtP)");
    verify->add_option("--variant", variant, "rho>=1, rho>=0 or both (gtP)")
        ->check(CLI::IsMember({"rho>=1", "rho>=0", "both"}));
    verify->add_flag("--stretch", stretch, "Include the non-gating (5, 89) row (paper-suite)");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "Canonical form of a polynomial modulo hits");
    std::string input;
    reduce->add_option("-t", t, "Number of variables")->required()->check(CLI::Range(1, kMaxArity));
    reduce->add_option("-n", n, "Degree")->required()->check(CLI::NonNegativeNumber);
    reduce->add_option("--input", input, "File holding the polynomial (default stdin)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    RunConfig config;
    std::optional<ReportCache> cache;
    try {
        config = resolve_config(flags, env);
        if (config.cache_dir) cache.emplace(*config.cache_dir);
    } catch (const std::exception& e) {
        err << "hitcalc: " << e.what() << '\n';
        return kUsage;
    }
    Engine engine(config.engine_options(), cache ? &*cache : nullptr);
    const bool json = config.format == Format::Json;

    try {
        if (arith->parsed()) {
            auto need = [&](std::size_t k) {
                if (arith_args.size() != k)
                    throw UsageError(fmt::format("arith {} takes {} argument(s)", arith_fn, k));
            };
            if (arith_fn == "alpha") {
                need(1);
                out << alpha(arith_args[0]) << '\n';
            } else if (arith_fn == "mu") {
                need(1);
                out << mu(arith_args[0]) << '\n';
            } else if (arith_fn == "binom-parity") {
                need(2);
                out << binom_parity(arith_args[0], arith_args[1]) << '\n';
            } else if (arith_fn == "u-set") {
                need(2);
                const auto u = u_set(static_cast<int>(arith_args[0]), arith_args[1]);
                for (std::size_t k = 0; k < u.size(); ++k) out << (k ? " " : "") << u[k];
                out << '\n';
            } else if (arith_fn == "predict") {
                need(2);
                out << predict_dim_inductive(static_cast<int>(arith_args[0]), arith_args[1]) << '\n';
            } else {
                need(3);
                out << generic_degree(arith_args[0], static_cast<int>(arith_args[1]), arith_args[2]) << '\n';
            }
            return kOk;
        }

        if (basis->parsed()) {
            if (config.strategy == Strategy::Monolithic && !confirm_heavy &&
                HitSpace::projected_bytes(static_cast<std::size_t>(binomial(n + t - 1, t - 1))) > kHeavyBytes) {
                err << fmt::format("hitcalc: monolithic (t={}, n={}) is a heavy run; pass --confirm-heavy\n", t, n);
                return kUsage;
            }
            BasisReport r;
            const Part p = parse_part(part);
            if (!weight.empty()) {
                WeightVector w;
                try {
                    w = parse_weight_vector(weight);
                } catch (const std::exception& e) {
                    throw UsageError(e.what());
                }
                if (w.degree() != n) throw UsageError("weight vector degree differs from -n");
                r = engine.weight_block_basis(t, n, w);
                if (p != Part::All) {
                    std::erase_if(r.admissibles,
                                  [&](const Monomial& m) { return m.has_zero_exponent() != (p == Part::Zero); });
                    r.part = p;
                }
            } else {
                r = engine.admissible_basis(t, n);
                if (p != Part::All) {
                    auto [zero, positive] = split_parts(r);
                    r = p == Part::Zero ? zero : positive;
                    if (cache) cache->store(r);
                }
            }
            print_report(r, config.format, dim_only, out, err);
            return kOk;
        }

        if (reduce->parsed()) {
            std::string text;
            if (input.empty()) {
                text.assign(std::istreambuf_iterator<char>(in), {});
            } else {
                std::ifstream f(input);
                if (!f) throw UsageError("cannot read " + input);
                text.assign(std::istreambuf_iterator<char>(f), {});
            }
            Polynomial f(t, n);
            try {
                f = parse_polynomial(text, t);
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
            if (!f.is_zero() && f.degree() != n)
                throw UsageError(fmt::format("polynomial has degree {}, expected {}", f.degree(), n));
            if (f.is_zero()) f = Polynomial(t, n);
            const Polynomial g = engine.hit_space(t, n)->reduce(f);
            out << (g.is_zero() ? std::string("HIT") : to_string(g)) << '\n';
            return kOk;
        }

        // verify
        const bool needs_tn = check != "paper-suite";
        if (needs_tn && (verify->count("-t") == 0 || verify->count("-n") == 0))
            throw UsageError("verify " + check + " requires -t and -n");

        if (check == "kameko") {
            const auto v = engine.kameko_check(t, n);
            const bool pass = v.map_rank == v.dim_low && (!v.mu_condition || v.bijective);
            if (json) {
                out << nlohmann::json{{"t", t}, {"n", n}, {"mu_condition", v.mu_condition}, {"dim_high", v.dim_high},
                                      {"dim_low", v.dim_low}, {"rank", v.map_rank}, {"bijective", v.bijective},
                                      {"pass", pass}}
                           .dump(2)
                    << '\n';
            } else {
                out << fmt::format("mu({})={} dim_high={} dim_low={} rank={} {}{}\n", 2 * n + t, mu(2 * n + t),
                                   v.dim_high, v.dim_low, v.map_rank, v.bijective ? "bijective " : "",
                                   pass ? "PASS" : "FAIL");
            }
            return pass ? kOk : kVerifyFailed;
        }
        if (check == "gtS") {
            const auto v = conjecture_gtS_check(engine, t, n);
            if (json)
                out << to_json(v).dump(2) << '\n';
            else
                out << fmt::format("gtS t={} n={} checked={} violations={} {}\n", t, n, v.checked,
                                   v.violations.size(), v.holds ? "PASS" : "FAIL");
            return v.holds ? kOk : kVerifyFailed;
        }
        if (check == "gtP") {
            std::vector<WeightVector> omegas;
            if (!weight.empty()) {
                omegas.push_back(parse_weight_vector(weight));
            } else {
                std::set<WeightVector> seen;
                for (const auto& m : engine.admissible_basis(t - 1, n).admissibles) seen.insert(weight_vector(m));
                for (const auto& m : engine.admissible_basis(t, n).admissibles) seen.insert(weight_vector(m));
                omegas.assign(seen.begin(), seen.end());
            }
            std::vector<RhoVariant> variants;
            if (variant != "rho>=0") variants.push_back(RhoVariant::PositiveOnly);
            if (variant != "rho>=1") variants.push_back(RhoVariant::IncludeZero);
            bool failed = false;
            nlohmann::json all = nlohmann::json::array();
            for (const auto& w : omegas)
                for (auto var : variants) {
                    const auto v = conjecture_gtP_check(engine, t, n, w, var);
                    failed = failed || v.status() == "fails";
                    if (json) {
                        all.push_back(to_json(v));
                    } else {
                        out << fmt::format("gtP t={} n={} omega={} variant={} status={} missing={} extra={}\n", t, n,
                                           to_string(w), to_string(var), v.status(), v.missing.size(),
                                           v.extra.size());
                        if (!v.missing.empty()) out << "  missing: " << join(v.missing) << '\n';
                        if (!v.extra.empty()) out << "  extra: " << join(v.extra) << '\n';
                    }
                }
            if (json) out << all.dump(2) << '\n';
            return failed ? kVerifyFailed : kOk;
        }
        if (check == "efc") {
            const auto p = efc_partition(engine, t, n);
            const bool pass = p.disjoint_cover() && p.violations.empty();
            if (json) {
                out << nlohmann::json{{"t", t}, {"n", n}, {"omega", to_string(p.omega)}, {"E", p.E.size()},
                                      {"F", p.F.size()}, {"C", p.C.size()}, {"block", p.block.size()},
                                      {"violations", p.violations.size()}, {"pass", pass}}
                           .dump(2)
                    << '\n';
            } else {
                out << fmt::format("E={} F={} C={} total={} {}\n", p.E.size(), p.F.size(), p.C.size(),
                                   p.block.size(), pass ? "PASS" : "FAIL");
                if (!p.violations.empty()) out << "  outside the block: " << join(p.violations) << '\n';
            }
            return pass ? kOk : kVerifyFailed;
        }
        if (check == "invariants") {
            auto space = engine.hit_space(t, n);
            const auto gens = standard_generators(t);
            const auto inv = invariant_subspace(*space, gens);
            // Each returned vector must be fixed by every generator.
            bool pass = true;
            for (const auto& g : gens) {
                const auto m = action_matrix(g, *space);
                for (const auto& v : inv.vectors) {
                    BitRow image(v.width());
                    for (auto c : v.set_columns()) image ^= m[c];
                    pass = pass && image == v;
                }
            }
            if (json) {
                auto j = to_json(inv);
                j["pass"] = pass;
                out << j.dump(2) << '\n';
            } else {
                out << fmt::format("dim={} {}\n", inv.dim(), pass ? "PASS" : "FAIL");
            }
            return pass ? kOk : kVerifyFailed;
        }
        if (check == "blocks") {
            const auto d = engine.block_decomposition_check(t, n);
            if (json) {
                nlohmann::json blocks = nlohmann::json::array();
                for (const auto& [w, k] : d.blocks) blocks.push_back({{"omega", to_string(w)}, {"dim", k}});
                out << nlohmann::json{{"t", t}, {"n", n}, {"full", d.full_dim}, {"blocks", blocks}, {"holds", d.holds}}
                           .dump(2)
                    << '\n';
            } else {
                std::size_t sum = 0;
                for (const auto& [w, k] : d.blocks) {
                    sum += k;
                    if (k) out << fmt::format("{} {}\n", to_string(w), k);
                }
                out << fmt::format("full={} sum={} {}\n", d.full_dim, sum, d.holds ? "PASS" : "FAIL");
            }
            return d.holds ? kOk : kVerifyFailed;
        }

        // paper-suite
        SuiteOptions so;
        so.engine = config.engine_options();
        so.cache = cache ? &*cache : nullptr;
        so.stretch = stretch;
        if (!json) out << fmt::format("{:<3} {:<6} {:<28} {:<40} {}\n", "id", "result", "expected", "computed", "time");
        const auto rows = run_reference_suite(so, [&](const SuiteRow& r) {
            if (json) return;
            out << fmt::format("{:<3} {:<6} {:<28} {:<40} {:.2f}s  {}\n", r.id,
                               r.pass ? "PASS" : (r.gating ? "FAIL" : "MISS"), r.expected, r.computed, r.seconds,
                               r.description);
            out.flush();
        });
        bool ok = true;
        nlohmann::json all = nlohmann::json::array();
        for (const auto& r : rows) {
            if (r.gating && !r.pass) ok = false;
            all.push_back({{"id", r.id}, {"description", r.description}, {"expected", r.expected},
                           {"computed", r.computed}, {"pass", r.pass}, {"gating", r.gating}, {"seconds", r.seconds}});
        }
        if (json) out << all.dump(2) << '\n';
        return ok ? kOk : kVerifyFailed;
    } catch (const MemoryCeilingExceeded& e) {
        err << "hitcalc: " << e.what() << '\n';
        return kMemoryCeiling;
    } catch (const UsageError& e) {
        err << "hitcalc: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "hitcalc: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace hitcalc::cli
