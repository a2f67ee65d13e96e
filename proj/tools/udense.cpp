// Command line front end. Every subcommand reads one JSON config, runs the
// corresponding library routine, and emits a single JSON document (or CSV
// where a tabular view exists). Exit code 0 means every required check in
// the emitted report passed; 1 means some check failed; 2 means the
// invocation or config itself was unusable.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "udense/chaos_audit.hpp"
#include "udense/ctype.hpp"
#include "udense/density.hpp"
#include "udense/equivalences.hpp"
#include "udense/errors.hpp"
#include "udense/furstenberg.hpp"
#include "udense/prop3.hpp"
#include "udense/serialize.hpp"
#include "udense/sparse_thick.hpp"
#include "udense/util.hpp"
#include "udense/weight_sequence.hpp"

namespace {

using nlohmann::json;
using namespace udense;

struct Emit {
    std::string out_path; // empty: stdout
    std::string format = "json";
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    json j;
    in >> j;
    return j;
}

void write_out(const Emit& emit, const std::string& content) {
    if (emit.out_path.empty()) {
        std::cout << content << '\n';
        return;
    }
    std::ofstream out(emit.out_path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + emit.out_path);
    out << content << '\n';
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Weight from an optional config field, with a named fallback.
WeightSequence weight_or(const json& cfg, const char* key, WeightSequence fallback) {
    if (cfg.contains(key))
        return weight_from_json(cfg.at(key));
    return fallback;
}

std::vector<std::uint64_t> horizons_from(const json& cfg) {
    if (cfg.is_array())
        return cfg.get<std::vector<std::uint64_t>>();
    std::vector<std::uint64_t> out;
    std::uint64_t first = cfg.at("first").get<std::uint64_t>();
    const std::uint64_t last = cfg.at("last").get<std::uint64_t>();
    for (std::uint64_t h = first; h < last; h *= 2)
        out.push_back(h);
    out.push_back(last);
    return out;
}

// Wraps one command: stamps hash and timestamp, measures runtime, prints,
// and turns the report verdict into the exit code.
int finish(const Emit& emit, const json& config, json document, AuditReport* report,
           std::chrono::steady_clock::time_point started,
           std::optional<std::string> csv = std::nullopt) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const std::string hash = fnv1a64_hex(config.dump());
    bool ok = true;
    if (report != nullptr) {
        report->config_hash = hash;
        report->runtime_seconds = elapsed;
        document["report"] = report_to_json(*report);
        ok = report->pass();
    }
    document["schema_version"] = schema_version;
    document["config_hash"] = hash;
    document["timestamp"] = iso_timestamp();
    if (emit.format == "csv") {
        if (!csv)
            throw std::runtime_error("this command has no csv view; use --format json");
        write_out(emit, *csv);
    } else {
        write_out(emit, document.dump(2));
    }
    return ok ? 0 : 1;
}

int cmd_density(const json& cfg, const Emit& emit) {
    const auto started = std::chrono::steady_clock::now();
    const auto a = weight_or(cfg, "weight", WeightSequence::constant_one());
    const IndexSet set = index_set_from_json(cfg.at("set"));

    json document;
    std::optional<std::string> csv;
    if (cfg.contains("horizons")) {
        const auto horizons = horizons_from(cfg.at("horizons"));
        const std::uint64_t tail_start =
            cfg.value("tail_start", horizons.back() / 8);
        const auto profile = upper_density_profile(a, set, horizons, tail_start);
        document["profile"] = profile_to_json(profile);
        csv = profile_to_csv(profile);
    }
    if (cfg.contains("banach")) {
        const auto& b = cfg.at("banach");
        const auto profile =
            banach_density_profile(set, b.at("window_lens").get<std::vector<std::uint64_t>>(),
                                   b.at("scan_horizon").get<std::uint64_t>());
        document["banach"] = profile_to_json(profile);
        if (!csv)
            csv = profile_to_csv(profile);
    }
    if (!document.contains("profile") && !document.contains("banach"))
        throw std::runtime_error("config needs \"horizons\" or \"banach\"");
    return finish(emit, cfg, std::move(document), nullptr, started, csv);
}

int cmd_build_prop3(const json& cfg, const Emit& emit) {
    const auto started = std::chrono::steady_clock::now();
    std::vector<IndexSet> sets;
    for (const auto& s : cfg.at("sets"))
        sets.push_back(index_set_from_json(s));
    auto deltas = cfg.at("deltas").get<std::vector<double>>();
    const auto p_max = cfg.at("p_max").get<std::uint64_t>();

    Prop3Input input;
    if (cfg.contains("k_seq")) {
        input.sets = std::move(sets);
        input.deltas = std::move(deltas);
        input.classes = cfg.value("classes", static_cast<std::uint64_t>(input.sets.size()));
        input.k_seq = cfg.at("k_seq").get<std::vector<std::uint64_t>>();
    } else {
        input = make_prop3_input(std::move(sets), std::move(deltas), p_max,
                                 cfg.value("search_cap", std::uint64_t{1} << 20));
    }
    const std::uint64_t horizon = cfg.value("horizon", input.k_seq.back() + p_max + 1);
    const auto weight = build_prop3_weight(input, horizon);
    AuditReport report = prop3_post_audit(weight, input, horizon);

    json document;
    document["input"] = prop3_input_to_json(input);
    document["weight"] = weight_to_json(weight);
    return finish(emit, cfg, std::move(document), &report, started);
}

int cmd_sparse_set(const json& cfg, const Emit& emit) {
    const auto started = std::chrono::steady_clock::now();
    const auto a = weight_or(cfg, "weight", WeightSequence::power(1.0));
    const auto eps = cfg.at("eps").get<std::vector<double>>();
    const auto result =
        build_sparse_thick_set(a, eps, cfg.value("index_cap", std::uint64_t{1} << 26));

    AuditReport report{"sparse_thick_set"};
    for (std::size_t k = 0; k < eps.size(); ++k) {
        std::ostringstream name, note;
        name << "interval_" << k + 1 << "_bounds";
        note << "starts at " << result.n_seq[k];
        report.add(name.str(), result.term1[k] <= eps[k] && result.term2[k] <= eps[k],
                   std::max(result.term1[k], result.term2[k]), eps[k], note.str());
    }
    json document;
    document["result"] = sparse_thick_to_json(result);
    return finish(emit, cfg, std::move(document), &report, started);
}

int cmd_furstenberg_check(const json& cfg, const Emit& emit) {
    const auto started = std::chrono::steady_clock::now();
    const IndexSet set = index_set_from_json(cfg.at("set"));

    json document;
    AuditReport report{"furstenberg_check"};
    if (cfg.contains("family")) {
        const auto& f = cfg.at("family");
        FamilySpec spec;
        const std::string kind = f.at("kind").get<std::string>();
        if (kind == "ud")
            spec.kind = FamilyKind::natural_upper;
        else if (kind == "uBd")
            spec.kind = FamilyKind::banach_upper;
        else if (kind == "ud_a")
            spec.kind = FamilyKind::weighted_upper;
        else
            throw std::runtime_error("unknown family kind: " + kind);
        spec.delta = f.at("delta").get<double>();
        spec.n = f.at("n").get<std::uint64_t>();
        if (spec.kind == FamilyKind::weighted_upper)
            spec.a = weight_from_json(f.at("weight"));
        const auto verdict =
            family_member(spec, set, cfg.at("search_bound").get<std::uint64_t>());
        document["verdict"] = {{"member", verdict.member},
                               {"witness", verdict.witness},
                               {"note", verdict.note}};
    }
    if (cfg.contains("shift")) {
        const auto& s = cfg.at("shift");
        const auto a = weight_or(s, "weight", WeightSequence::power(1.0));
        const auto sub = shift_density_audit(a, set, s.at("k").get<std::uint64_t>(),
                                             horizons_from(s.at("horizons")),
                                             s.value("n0", std::uint64_t{1}));
        for (const auto& c : sub.checks)
            report.add("shift_" + c.name, c.pass, c.value, c.threshold, c.context, c.severity);
    }
    if (cfg.contains("gaps")) {
        const auto& g = cfg.at("gaps");
        const auto a = weight_or(g, "weight", WeightSequence::power(1.0));
        const auto gaps =
            bounded_gaps_audit(a, set, g.at("delta").get<double>(),
                               g.at("kmax").get<std::uint64_t>(),
                               g.at("horizon").get<std::uint64_t>());
        document["gaps"] = gap_report_to_json(gaps);
        report.add("gaps_precondition", gaps.precondition_ok, gaps.density_estimate,
                   g.at("delta").get<double>(), "weighted estimate above the target",
                   Severity::warn);
    }
    if (!document.contains("verdict") && !cfg.contains("shift") && !cfg.contains("gaps"))
        throw std::runtime_error("config needs \"family\", \"shift\", or \"gaps\"");
    return finish(emit, cfg, std::move(document), &report, started);
}

int cmd_ctype_simulate(const json& cfg, const Emit& emit) {
    const auto started = std::chrono::steady_clock::now();
    const auto levels = levels_from_json(cfg.at("levels"));
    const auto T = build_c_plus_1(levels);

    SparseVector x;
    if (cfg.at("x").contains("basis"))
        x = SparseVector::basis(cfg.at("x").at("basis").get<std::uint64_t>());
    else
        x = sparse_vector_from_json(cfg.at("x"));
    const auto steps = cfg.at("steps").get<std::uint64_t>();
    const auto image = T.iterate(x, steps);

    json document;
    document["levels"] = levels_to_json(levels);
    document["result"] = sparse_vector_to_json(image);
    if (cfg.contains("block")) {
        const auto l = cfg.at("block").get<std::uint64_t>();
        const auto bad = T.bad_time_set(l, x, steps);
        json b;
        b["bad_times"] = bad.bad_times;
        b["j0_found"] = bad.j0_found;
        b["j0"] = bad.j0;
        b["inclusion"] = bad.inclusion;
        b["window_width"] = 2 * T.block(l).delta;
        b["period"] = T.block(l).length;
        document["bad_times"] = std::move(b);
    }
    return finish(emit, cfg, std::move(document), nullptr, started);
}

int cmd_validate_params(const json& cfg, const Emit& emit) {
    const auto started = std::chrono::steady_clock::now();
    auto delta = cfg.at("delta").get<std::vector<std::uint64_t>>();
    std::vector<std::uint64_t> Delta;
    json document;
    if (cfg.contains("Delta")) {
        Delta = cfg.at("Delta").get<std::vector<std::uint64_t>>();
    } else {
        const auto a = weight_or(cfg, "weight", WeightSequence::power(1.0));
        Delta = suggest_Delta(a, delta, cfg.value("Delta0", std::uint64_t{2}));
        document["suggested_Delta"] = Delta;
    }
    std::vector<std::uint64_t> tau;
    if (cfg.contains("tau"))
        tau = cfg.at("tau").get<std::vector<std::uint64_t>>();
    else
        tau = make_half_delta_levels(delta, Delta).tau;
    const std::uint64_t kmax = cfg.value("kmax", static_cast<std::uint64_t>(delta.size() - 1));
    AuditReport report = validate_chaos_params(delta, tau, Delta, kmax);
    document["levels"] = levels_to_json(CPlusOneLevels{delta, Delta, tau});
    return finish(emit, cfg, std::move(document), &report, started);
}

int cmd_chaos_audit(const json& cfg, const Emit& emit) {
    const auto started = std::chrono::steady_clock::now();
    ChaosAuditConfig config;
    config.a = weight_or(cfg, "weight", WeightSequence::power(1.0));
    config.delta = cfg.at("delta").get<std::vector<std::uint64_t>>();
    if (cfg.contains("Delta"))
        config.Delta = cfg.at("Delta").get<std::vector<std::uint64_t>>();
    config.Delta0 = cfg.value("Delta0", config.Delta0);
    config.kmax = cfg.value("kmax", std::min<std::uint64_t>(config.delta.size() - 1, 4));
    config.s_max_factor = cfg.value("s_max_factor", config.s_max_factor);
    config.exhaustive_j0_cap = cfg.value("exhaustive_j0_cap", config.exhaustive_j0_cap);
    config.stratified_j0_samples =
        cfg.value("stratified_j0_samples", config.stratified_j0_samples);
    if (cfg.contains("small_delta"))
        config.small_delta = cfg.at("small_delta").get<std::vector<std::uint64_t>>();
    if (cfg.contains("small_Delta"))
        config.small_Delta = cfg.at("small_Delta").get<std::vector<std::uint64_t>>();

    auto result = run_chaos_audit(config);
    json document;
    document["levels"] = levels_to_json(result.levels);
    document["margins"] = margin_rows_to_json(result.rows);
    return finish(emit, cfg, std::move(document), &result.report, started,
                  margin_rows_to_csv(result.rows));
}

int cmd_equivalences(const json& cfg, const Emit& emit) {
    const auto started = std::chrono::steady_clock::now();
    EquivalenceAuditOptions options;
    options.horizon = cfg.value("horizon", options.horizon);
    options.chain_tolerance = cfg.value("chain_tolerance", options.chain_tolerance);
    options.banach_tolerance = cfg.value("banach_tolerance", options.banach_tolerance);
    options.checkpoint_tolerance =
        cfg.value("checkpoint_tolerance", options.checkpoint_tolerance);
    options.blockweight_p_max = cfg.value("blockweight_p_max", options.blockweight_p_max);
    options.blockweight_delta = cfg.value("blockweight_delta", options.blockweight_delta);
    options.thick_intervals = cfg.value("thick_intervals", options.thick_intervals);
    AuditReport report = run_equivalence_audit(options);
    return finish(emit, cfg, json::object(), &report, started);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"density, weight and operator audits"};
    app.require_subcommand(1);

    std::string config_path;
    Emit emit;
    app.add_option("--config", config_path, "JSON config file")->required();
    app.add_option("--out", emit.out_path, "output file (default: stdout)");
    app.add_option("--format", emit.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* density = app.add_subcommand("density", "ratio profiles for a set");
    auto* weights = app.add_subcommand("weights", "weight sequence builders");
    auto* build_prop3 =
        weights->add_subcommand("build-prop3", "block-recursive weight from target sets");
    auto* sparse_set =
        weights->add_subcommand("sparse-set", "thick set that a weight cannot see");
    auto* furstenberg = app.add_subcommand("furstenberg", "density family probes");
    auto* fcheck = furstenberg->add_subcommand("check", "membership, shifts, gap structure");
    auto* ctype = app.add_subcommand("ctype", "block-cyclic operator tools");
    auto* simulate = ctype->add_subcommand("simulate", "exact orbit of a sparse vector");
    auto* validate = ctype->add_subcommand("validate-params", "parameter chain inspection");
    auto* audit = app.add_subcommand("audit", "composite acceptance audits");
    auto* chaos = audit->add_subcommand("chaos-not-ufhca", "orbit suppression margins");
    auto* equiv = audit->add_subcommand("equivalences", "estimator consistency corpus");
    weights->require_subcommand(1);
    furstenberg->require_subcommand(1);
    ctype->require_subcommand(1);
    audit->require_subcommand(1);
    // global flags may follow the subcommand name
    for (auto* sub : {density, weights, build_prop3, sparse_set, furstenberg, fcheck, ctype,
                      simulate, validate, audit, chaos, equiv})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        const json cfg = load_config(config_path);
        if (density->parsed())
            return cmd_density(cfg, emit);
        if (build_prop3->parsed())
            return cmd_build_prop3(cfg, emit);
        if (sparse_set->parsed())
            return cmd_sparse_set(cfg, emit);
        if (fcheck->parsed())
            return cmd_furstenberg_check(cfg, emit);
        if (simulate->parsed())
            return cmd_ctype_simulate(cfg, emit);
        if (validate->parsed())
            return cmd_validate_params(cfg, emit);
        if (chaos->parsed())
            return cmd_chaos_audit(cfg, emit);
        if (equiv->parsed())
            return cmd_equivalences(cfg, emit);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const construction_error& e) {
        std::cerr << "construction error: " << e.what() << '\n';
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
