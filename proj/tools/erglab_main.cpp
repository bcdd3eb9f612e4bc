#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "erglab/bernoulli.hpp"
#include "erglab/box.hpp"
#include "erglab/errors.hpp"
#include "erglab/io.hpp"
#include "erglab/randomgen.hpp"
#include "erglab/recurrence.hpp"

using nlohmann::json;
using namespace erglab;

namespace {

// Exit codes: 0 all-pass, 1 property violated, 2 input error.
constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

void put_rat(json& j, const std::string& key, const Rat& r) {
    j[key] = rat_str(r);
    j[key + "_decimal"] = rat_double(r);
}

struct LoadedSystem {
    CommutingSystem sys;
    std::string digest;
};

LoadedSystem load_system(const std::string& path, int max_points) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrKind::ParseError, "cannot read \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    SystemDocument doc = parse_system_document(text);
    if (doc.points > max_points)
        throw Error(ErrKind::SizeLimitExceeded,
                    "document has " + std::to_string(doc.points) +
                        " points, limit is " + std::to_string(max_points) +
                        " (raise with --max-points)");
    return LoadedSystem{system_from_document(doc), digest_hex(text)};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_inspect(const std::string& path, int max_points) {
    Timer timer;
    LoadedSystem in = load_system(path, max_points);
    const CommutingSystem& sys = in.sys;
    json j;
    j["command"] = "inspect";
    j["input_digest"] = in.digest;
    j["name"] = sys.name;
    j["points"] = sys.size();
    j["period"] = system_period(sys);
    j["ergodic"] = is_ergodic(sys);
    j["orbit_blocks"] = {
        {"t1", invariant_partition(sys, Which::T1).count()},
        {"t2", invariant_partition(sys, Which::T2).count()},
        {"t3", invariant_partition(sys, Which::T3).count()},
        {"group", group_orbit_partition(sys).count()},
    };
    json comps = json::array();
    for (const ErgodicComponent& c : ergodic_components(sys)) {
        json e;
        e["points"] = c.support.size();
        put_rat(e, "mass", c.mass);
        comps.push_back(e);
    }
    j["components"] = comps;
    j["timing_ms"] = timer.ms();
    emit(j);
    return kPass;
}

int cmd_seminorm(const std::string& path, const std::string& f_text,
                 int max_points) {
    Timer timer;
    LoadedSystem in = load_system(path, max_points);
    Observable f = parse_observable_literal(f_text, in.sys.size());
    SeminormValue by_box = seminorm4(f, in.sys);
    Rat by_avg = seminorm4_by_averages(f, in.sys);
    json j;
    j["command"] = "seminorm";
    j["input_digest"] = in.digest;
    j["name"] = in.sys.name;
    put_rat(j, "fourth_power", by_box.fourth_power);
    j["root"] = by_box.root;
    put_rat(j, "by_averages", by_avg);
    bool equal = by_box.fourth_power == by_avg;
    j["equal"] = equal;
    j["timing_ms"] = timer.ms();
    emit(j);
    return equal ? kPass : kViolation;
}

int cmd_magic_extend(const std::string& path, int max_points) {
    Timer timer;
    LoadedSystem in = load_system(path, max_points);
    MagicExtension ext = magic_extension(in.sys);
    json j;
    j["command"] = "magic-extend";
    j["input_digest"] = in.digest;
    j["name"] = in.sys.name;
    j["base_points"] = in.sys.size();
    j["extension_points"] = ext.ext.size();
    j["pushforward_exact"] = true; // magic_extension validates it

    bool violated = false;
    bool checked = true;
    try {
        MagicVerdict v = is_magic(ext.ext);
        j["extension_magic"] = v.verdict;
        if (!v.verdict) {
            violated = true;
            json w;
            w["points"] = json::array();
            for (const Rat& x : v.witness->v) w["points"].push_back(rat_str(x));
            put_rat(w, "seminorm_fourth", v.witness_seminorm4);
            j["witness"] = w;
        }
        auto comps = ergodic_components(ext.ext);
        j["extension_components"] = comps.size();
        bool all = true;
        for (const ErgodicComponent& c : comps)
            all = is_magic(component_system(ext.ext, c)).verdict && all;
        j["components_all_magic"] = all;
        violated = violated || !all;
    } catch (const Error& e) {
        if (e.kind != ErrKind::SizeLimitExceeded) throw;
        checked = false;
        j["extension_magic"] = nullptr;
        j["magic_check_skipped"] = e.what();
    }
    j["magic_checked"] = checked;
    j["timing_ms"] = timer.ms();
    emit(j);
    return violated ? kViolation : kPass;
}

int cmd_recurrence_scan(const std::string& path, const std::vector<int>& set,
                        int exponent, const std::string& epsilon,
                        std::optional<unsigned long long> horizon,
                        bool allow_nonergodic, const std::string& format,
                        int max_points) {
    Timer timer;
    LoadedSystem in = load_system(path, max_points);
    Rat eps = rat_parse(epsilon);
    RecurrenceReport rep =
        recurrence_set(in.sys, set, exponent, eps, horizon, allow_nonergodic);

    if (format == "csv") {
        std::ostringstream out;
        out << "n,I_n,hit\n";
        std::size_t next_hit = 0;
        for (unsigned long long n = 0; n < rep.scanned; ++n) {
            bool hit = next_hit < rep.hits.size() && rep.hits[next_hit] == n;
            if (hit) ++next_hit;
            out << n << "," << rat_str(rep.values[n]) << "," << (hit ? 1 : 0)
                << "\n";
        }
        std::cout << out.str();
    } else {
        json j;
        j["command"] = "recurrence-scan";
        j["input_digest"] = in.digest;
        j["name"] = in.sys.name;
        put_rat(j, "measure_a", rep.measure_a);
        put_rat(j, "threshold", rep.threshold);
        j["exponent"] = rep.exponent;
        j["period"] = rep.period;
        j["scanned"] = rep.scanned;
        j["complete"] = rep.complete;
        j["ergodic"] = rep.ergodic;
        if (!rep.ergodic) j["warning"] = "ergodicity hypothesis violated";
        j["hits"] = rep.hits;
        json vals = json::array();
        for (const Rat& v : rep.values) vals.push_back(rat_str(v));
        j["values"] = vals;
        j["max_gap"] = rep.max_gap;
        j["syndetic"] = rep.syndetic;
        j["timing_ms"] = timer.ms();
        emit(j);
    }
    // A complete ergodic scan with no hits would falsify the gap theorem.
    bool violated = rep.complete && rep.ergodic && !rep.syndetic;
    return violated ? kViolation : kPass;
}

int cmd_bounds_check(const std::string& path, const std::string& f_text,
                     const std::string& t_text, int max_points) {
    Timer timer;
    LoadedSystem in = load_system(path, max_points);
    Observable f = parse_observable_literal(f_text, in.sys.size());
    Rat t = rat_parse(t_text);

    CesaroBound ces = cesaro_bound_check(in.sys, f, f, f, t);
    J0Check j0 = j0_lower_bound_check(in.sys, f);
    DiffBound diff = diff_bound_check(in.sys, f);

    json j;
    j["command"] = "bounds-check";
    j["input_digest"] = in.digest;
    j["name"] = in.sys.name;

    json jc;
    jc["t"] = rat_str(ces.t);
    jc["order"] = ces.order;
    jc["avg_abs"] = ces.avg_abs;
    if (ces.avg_abs_fourth) put_rat(jc, "avg_abs_fourth", *ces.avg_abs_fourth);
    put_rat(jc, "bound_f0_t1t2", ces.bounds[0]);
    put_rat(jc, "bound_f1_t1t3", ces.bounds[1]);
    put_rat(jc, "bound_f2_t2t3", ces.bounds[2]);
    jc["exact"] = ces.exact;
    jc["holds"] = ces.holds;
    j["cesaro"] = jc;

    json jj;
    put_rat(jj, "j0", j0.j0);
    put_rat(jj, "bound", j0.bound);
    jj["holds"] = j0.holds;
    j["j0"] = jj;

    json jd;
    put_rat(jd, "avg_abs", diff.avg_abs);
    put_rat(jd, "seminorm_h_g0", diff.bounds[0]);
    put_rat(jd, "seminorm_h_g1", diff.bounds[1]);
    put_rat(jd, "seminorm_h_g2", diff.bounds[2]);
    jd["bound_sum"] = diff.bound_sum;
    jd["holds"] = diff.holds;
    jd["exact_zero"] = diff.exact_zero;
    j["diff"] = jd;

    bool all = ces.holds && j0.holds && diff.holds;
    j["all_hold"] = all;
    j["timing_ms"] = timer.ms();
    emit(j);
    return all ? kPass : kViolation;
}

int cmd_counterexample(const std::string& c_text, long long shift) {
    Timer timer;
    Rat c = rat_parse(c_text);
    json j;
    j["command"] = "counterexample";
    j["input_digest"] = digest_hex("counterexample c=" + rat_str(c) +
                                   " shift=" + std::to_string(shift));
    put_rat(j, "mu", counterexample_mu());

    json corr;
    for (long long n : {shift, 1ll, -1ll, 5ll, -7ll}) {
        if (corr.contains(std::to_string(n))) continue;
        corr[std::to_string(n)] = rat_str(counterexample_value(n));
    }
    j["correlation"] = corr;

    Rat value = counterexample_value(1);
    Rat scaled = Rat(24, 25) * rat_pow(counterexample_mu(), 3);
    json ineq;
    put_rat(ineq, "lhs", value);
    put_rat(ineq, "rhs", scaled);
    ineq["holds"] = value < scaled;
    j["strict_inequality"] = ineq;

    PowerCertificate pc = counterexample_power(c);
    json jp;
    jp["c"] = rat_str(c);
    jp["l"] = pc.l;
    put_rat(jp, "lhs", pc.lhs);
    put_rat(jp, "rhs", pc.rhs);
    jp["certificate"] = pc.certificate;
    j["power"] = jp;

    j["timing_ms"] = timer.ms();
    emit(j);
    return (value < scaled && pc.certificate) ? kPass : kViolation;
}

json system_to_json(const CommutingSystem& sys) {
    json j;
    j["points"] = sys.size();
    json w = json::array();
    for (const Rat& x : sys.space.w) w.push_back(rat_str(x));
    j["weights"] = w;
    j["t1"] = sys.t1.fwd;
    j["t2"] = sys.t2.fwd;
    return j;
}

json observable_to_json(const Observable& f) {
    json a = json::array();
    for (const Rat& x : f.v) a.push_back(rat_str(x));
    return a;
}

// Returns a failure object or null.
json fuzz_inequality(Rng& rng) {
    int m = 1 + static_cast<int>(rand_below(rng, 10));
    std::vector<Rat> w(m);
    Rat denom = 0;
    for (int x = 0; x < m; ++x) {
        w[x] = 1 + static_cast<unsigned long>(rand_below(rng, 8));
        denom += w[x];
    }
    for (int x = 0; x < m; ++x) w[x] /= denom;
    WeightedSpace sp = make_space(w);
    Observable f = random_observable_nonneg(rng, m);
    int k = 1 + static_cast<int>(rand_below(rng, 4));
    std::vector<Partition> parts;
    for (int i = 0; i < k; ++i) {
        std::vector<int> raw(m);
        int blocks = 1 + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(m)));
        for (int x = 0; x < m; ++x)
            raw[x] = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(blocks)));
        parts.push_back(partition_from_block_of(raw));
    }
    HolderBound hb = holder_product_bound(sp, f, parts);
    if (hb.holds) return nullptr;
    json fail;
    fail["suite"] = "inequality";
    json ws = json::array();
    for (const Rat& x : sp.w) ws.push_back(rat_str(x));
    fail["weights"] = ws;
    fail["f"] = observable_to_json(f);
    fail["k"] = k;
    put_rat(fail, "lhs", hb.lhs);
    put_rat(fail, "rhs", hb.rhs);
    return fail;
}

json fuzz_seminorm(Rng& rng) {
    CommutingSystem sys = random_commuting_system(rng, 8);
    Observable f = random_observable_band(rng, sys.size());
    Rat by_box = seminorm4(f, sys).fourth_power;
    Rat by_avg = seminorm4_by_averages(f, sys);
    if (by_box == by_avg && sgn(by_box) >= 0) return nullptr;
    json fail;
    fail["suite"] = "seminorm";
    fail["system"] = system_to_json(sys);
    fail["f"] = observable_to_json(f);
    put_rat(fail, "by_box", by_box);
    put_rat(fail, "by_averages", by_avg);
    return fail;
}

json fuzz_recurrence(Rng& rng) {
    CommutingSystem sys = random_commuting_system(rng, 8);
    std::vector<int> a = random_nonempty_subset(rng, sys.size());
    int exponent = rand_below(rng, 2) ? 4 : 3;
    Rat mu_a = 0;
    for (int x : a) mu_a += sys.space.w[x];
    Rat eps = rat_pow(mu_a, static_cast<unsigned long>(exponent)) / 2;
    RecurrenceReport rep = recurrence_set(sys, a, exponent, eps, {}, true);

    // Brute force over the same period with fresh transformation powers.
    Observable fa = indicator(sys.size(), a);
    std::vector<unsigned long long> hits;
    for (unsigned long long n = 0; n < rep.period; ++n) {
        Rat corr = multi_corr(sys, fa, fa, fa, static_cast<long long>(n));
        if (corr != rep.values[n]) {
            json fail;
            fail["suite"] = "recurrence";
            fail["system"] = system_to_json(sys);
            fail["set"] = a;
            fail["n"] = n;
            put_rat(fail, "scan_value", rep.values[n]);
            put_rat(fail, "brute_value", corr);
            return fail;
        }
        if (corr > rep.threshold) hits.push_back(n);
    }
    bool ok = hits == rep.hits && rep.syndetic == !hits.empty();
    if (rep.ergodic && !rep.syndetic) ok = false;
    if (ok) return nullptr;
    json fail;
    fail["suite"] = "recurrence";
    fail["system"] = system_to_json(sys);
    fail["set"] = a;
    fail["scan_hits"] = rep.hits;
    fail["brute_hits"] = hits;
    fail["syndetic"] = rep.syndetic;
    return fail;
}

json fuzz_bounds(Rng& rng) {
    CommutingSystem sys = random_commuting_system(rng, 6);
    Observable f = random_observable_unit(rng, sys.size());
    CesaroBound ces = cesaro_bound_check(sys, f, f, f, Rat(0));
    J0Check j0 = j0_lower_bound_check(sys, f);
    DiffBound diff = diff_bound_check(sys, f);
    if (ces.holds && j0.holds && diff.holds) return nullptr;
    json fail;
    fail["suite"] = "bounds";
    fail["system"] = system_to_json(sys);
    fail["f"] = observable_to_json(f);
    fail["cesaro_holds"] = ces.holds;
    fail["j0_holds"] = j0.holds;
    fail["diff_holds"] = diff.holds;
    return fail;
}

int cmd_fuzz(std::uint64_t seed, std::uint64_t count, const std::string& suite) {
    std::function<json(Rng&)> one;
    if (suite == "inequality") one = fuzz_inequality;
    else if (suite == "seminorm") one = fuzz_seminorm;
    else if (suite == "recurrence") one = fuzz_recurrence;
    else if (suite == "bounds") one = fuzz_bounds;
    else
        throw Error(ErrKind::UnknownSuite,
                    "unknown suite \"" + suite +
                        "\" (inequality, seminorm, recurrence, bounds)");

    Rng rng(seed);
    json j;
    j["command"] = "fuzz";
    j["suite"] = suite;
    j["seed"] = seed;
    j["count"] = count;
    j["input_digest"] =
        digest_hex("fuzz suite=" + suite + " seed=" + std::to_string(seed) +
                   " count=" + std::to_string(count));
    json failure = nullptr;
    std::uint64_t ran = 0;
    for (; ran < count; ++ran) {
        json fail = one(rng);
        if (!fail.is_null()) {
            fail["instance"] = ran;
            failure = fail;
            break;
        }
    }
    j["ran"] = failure.is_null() ? count : ran + 1;
    j["all_pass"] = failure.is_null();
    j["failure"] = failure;
    emit(j);
    return failure.is_null() ? kPass : kViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic laboratory for pairs of commuting "
                 "measure-preserving permutations"};
    app.require_subcommand(1);

    std::string path, f_text = "const:1", t_text = "0", epsilon = "1/1000";
    std::string c_text = "1", suite = "inequality", format = "csv";
    std::vector<int> set;
    int exponent = 4;
    long long shift = 1;
    std::uint64_t seed = 0, count = 100;
    unsigned long long horizon_val = 0;
    bool allow_nonergodic = false;
    int max_small = 40, max_large = 4096;

    auto* inspect = app.add_subcommand("inspect", "validate a system document and "
                                                  "report its orbit structure");
    inspect->add_option("path", path, "system document (JSON)")->required();
    inspect->add_option("--max-points", max_large, "point limit")
        ->envname("ERGLAB_MAX_POINTS");

    auto* seminorm = app.add_subcommand("seminorm", "fourth power of the box "
                                                    "seminorm, two ways");
    seminorm->add_option("path", path, "system document (JSON)")->required();
    seminorm->add_option("--f", f_text, "observable literal")->required();
    seminorm->add_option("--max-points", max_small, "point limit")
        ->envname("ERGLAB_MAX_POINTS");

    auto* magic = app.add_subcommand("magic-extend", "build the box-measure "
                                                     "extension and test it");
    magic->add_option("path", path, "system document (JSON)")->required();
    magic->add_option("--max-points", max_small, "point limit")
        ->envname("ERGLAB_MAX_POINTS");

    auto* scan = app.add_subcommand("recurrence-scan", "correlation scan of a "
                                                       "set against its "
                                                       "threshold");
    scan->add_option("path", path, "system document (JSON)")->required();
    scan->add_option("--set", set, "members of A (point indices)")
        ->required()
        ->delimiter(',');
    scan->add_option("--exponent", exponent, "3 or 4")
        ->check(CLI::IsMember({3, 4}));
    scan->add_option("--epsilon", epsilon, "threshold slack p/q");
    auto* horizon_opt = scan->add_option("--horizon", horizon_val,
                                         "scan only the first N steps");
    scan->add_flag("--allow-nonergodic", allow_nonergodic,
                   "scan even when the system is not ergodic");
    scan->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    scan->add_option("--max-points", max_large, "point limit")
        ->envname("ERGLAB_MAX_POINTS");

    auto* bounds = app.add_subcommand("bounds-check", "period-average bounds: "
                                                      "character average, J0, "
                                                      "difference");
    bounds->add_option("path", path, "system document (JSON)")->required();
    bounds->add_option("--f", f_text, "observable literal with values in [0,1]")
        ->required();
    bounds->add_option("--t", t_text, "character frequency p/q");
    bounds->add_option("--max-points", max_small, "point limit")
        ->envname("ERGLAB_MAX_POINTS");

    auto* cex = app.add_subcommand("counterexample", "exact Bernoulli "
                                                     "counterexample data");
    cex->add_option("--c", c_text, "target constant in (0,1]");
    cex->add_option("--shift", shift, "extra correlation shift to report");

    auto* fuzz = app.add_subcommand("fuzz", "seeded random property suites");
    fuzz->add_option("--seed", seed, "RNG seed");
    fuzz->add_option("--count", count, "number of instances");
    fuzz->add_option("--suite", suite,
                     "inequality, seminorm, recurrence, or bounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kInputError;
    }

    try {
        if (inspect->parsed()) return cmd_inspect(path, max_large);
        if (seminorm->parsed()) return cmd_seminorm(path, f_text, max_small);
        if (magic->parsed()) return cmd_magic_extend(path, max_small);
        if (scan->parsed()) {
            std::optional<unsigned long long> horizon;
            if (horizon_opt->count() > 0) horizon = horizon_val;
            return cmd_recurrence_scan(path, set, exponent, epsilon, horizon,
                                       allow_nonergodic, format, max_large);
        }
        if (bounds->parsed()) return cmd_bounds_check(path, f_text, t_text, max_small);
        if (cex->parsed()) return cmd_counterexample(c_text, shift);
        if (fuzz->parsed()) return cmd_fuzz(seed, count, suite);
    } catch (const Error& e) {
        json err;
        err["error"] = err_kind_name(e.kind);
        err["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"Unexpected\", \"message\": \""
                  << e.what() << "\"}\n";
        return kInputError;
    }
    return kInputError;
}
