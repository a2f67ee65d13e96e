#include "udense/serialize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace udense {

using nlohmann::json;

json json_number(double value) {
    if (!std::isfinite(value))
        return nullptr;
    return value;
}

json weight_to_json(const WeightSequence& a) {
    json j;
    j["schema_version"] = schema_version;
    switch (a.kind()) {
    case WeightSequence::Kind::constant_one:
        j["kind"] = "constant-one";
        break;
    case WeightSequence::Kind::power:
        j["kind"] = "power";
        j["alpha"] = a.power_alpha();
        break;
    case WeightSequence::Kind::prop3_built:
        j["kind"] = "prop3-built";
        j["block_starts"] = a.prop3_k_seq();
        break;
    case WeightSequence::Kind::custom_rule:
        throw std::domain_error("a custom weight rule has no serialized form");
    }
    return j;
}

WeightSequence weight_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant-one")
        return WeightSequence::constant_one();
    if (kind == "power")
        return WeightSequence::power(j.at("alpha").get<double>());
    if (kind == "prop3-built")
        return WeightSequence::prop3_built(j.at("block_starts").get<std::vector<std::uint64_t>>());
    throw std::domain_error("unknown weight kind: " + kind);
}

json index_set_to_json(const IndexSet& s) {
    json j;
    j["schema_version"] = schema_version;
    std::visit(
        [&](const auto& repr) {
            using R = std::decay_t<decltype(repr)>;
            if constexpr (std::is_same_v<R, IndexSet::Explicit>) {
                j["kind"] = "explicit";
                j["members"] = repr.members;
            } else if constexpr (std::is_same_v<R, IndexSet::Residue>) {
                j["kind"] = "residue";
                j["modulus"] = repr.modulus;
                std::vector<std::uint64_t> residues;
                for (std::uint64_t r = 0; r < repr.modulus; ++r)
                    if (repr.mask[r])
                        residues.push_back(r);
                j["residues"] = residues;
            } else if constexpr (std::is_same_v<R, IndexSet::Intervals>) {
                j["kind"] = "intervals";
                json parts = json::array();
                for (const auto& part : repr.parts)
                    parts.push_back({part.lo, part.hi});
                j["parts"] = parts;
            } else {
                j["kind"] = "periodic-window";
                j["period"] = repr.period;
                j["width"] = repr.width;
                j["anchor"] = repr.anchor;
            }
        },
        s.repr());
    return j;
}

IndexSet index_set_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "explicit")
        return IndexSet::explicit_set(j.at("members").get<std::vector<std::uint64_t>>());
    if (kind == "residue")
        return IndexSet::residue_set(j.at("modulus").get<std::uint64_t>(),
                                     j.at("residues").get<std::vector<std::uint64_t>>());
    if (kind == "intervals") {
        std::vector<IndexSet::Interval> parts;
        for (const auto& part : j.at("parts")) {
            if (!part.is_array() || part.size() != 2)
                throw std::domain_error("interval parts must be [lo, hi] pairs");
            parts.push_back({part[0].get<std::uint64_t>(), part[1].get<std::uint64_t>()});
        }
        return IndexSet::interval_union(std::move(parts));
    }
    if (kind == "periodic-window")
        return IndexSet::periodic_window(j.at("period").get<std::uint64_t>(),
                                         j.at("width").get<std::uint64_t>(),
                                         j.at("anchor").get<std::int64_t>());
    throw std::domain_error("unknown index set kind: " + kind);
}

json sparse_vector_to_json(const SparseVector& x) {
    json entries = json::array();
    for (const auto& [idx, c] : x.entries()) {
        json e;
        e["index"] = idx;
        std::ostringstream mantissa;
        if (c.sign() < 0)
            mantissa << '-';
        mantissa << c.mantissa().str();
        e["mantissa"] = mantissa.str();
        e["exponent"] = c.exponent();
        entries.push_back(std::move(e));
    }
    json j;
    j["schema_version"] = schema_version;
    j["entries"] = std::move(entries);
    return j;
}

SparseVector sparse_vector_from_json(const json& j) {
    std::vector<SparseVector::Entry> entries;
    for (const auto& e : j.at("entries")) {
        const Dyadic::Mantissa m(e.at("mantissa").get<std::string>());
        entries.emplace_back(e.at("index").get<std::uint64_t>(),
                             Dyadic(m, e.at("exponent").get<std::int64_t>()));
    }
    return SparseVector(std::move(entries));
}

json levels_to_json(const CPlusOneLevels& levels) {
    json j;
    j["schema_version"] = schema_version;
    j["delta"] = levels.delta;
    j["Delta"] = levels.Delta;
    j["tau"] = levels.tau;
    return j;
}

CPlusOneLevels levels_from_json(const json& j) {
    if (j.contains("tau"))
        return CPlusOneLevels{j.at("delta").get<std::vector<std::uint64_t>>(),
                              j.at("Delta").get<std::vector<std::uint64_t>>(),
                              j.at("tau").get<std::vector<std::uint64_t>>()};
    return make_half_delta_levels(j.at("delta").get<std::vector<std::uint64_t>>(),
                                  j.at("Delta").get<std::vector<std::uint64_t>>());
}

json report_to_json(const AuditReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["severity"] = c.severity == Severity::require ? "require" : "warn";
        e["value"] = json_number(c.value);
        e["threshold"] = json_number(c.threshold);
        e["context"] = c.context;
        checks.push_back(std::move(e));
    }
    json j;
    j["schema_version"] = schema_version;
    j["name"] = report.name;
    j["pass"] = report.pass();
    j["checks"] = std::move(checks);
    j["config_hash"] = report.config_hash;
    j["runtime_seconds"] = json_number(report.runtime_seconds);
    return j;
}

json profile_to_json(const DensityProfile& profile) {
    json samples = json::array();
    for (const auto& s : profile.samples)
        samples.push_back({{"horizon", s.horizon}, {"ratio", json_number(s.ratio)}});
    json j;
    j["schema_version"] = schema_version;
    j["samples"] = std::move(samples);
    j["tail_start"] = profile.tail_start;
    j["limsup_estimate"] = json_number(profile.limsup_estimate());
    j["liminf_estimate"] = json_number(profile.liminf_estimate());
    return j;
}

json gap_report_to_json(const GapReport& gaps) {
    json j;
    j["schema_version"] = schema_version;
    j["kset"] = gaps.kset;
    j["kmax"] = gaps.kmax;
    j["horizon"] = gaps.horizon;
    j["max_gap"] = gaps.max_gap;
    j["gap_positions"] = gaps.gap_positions;
    j["density_estimate"] = json_number(gaps.density_estimate);
    j["threshold"] = json_number(gaps.threshold);
    j["r_bound"] = json_number(gaps.r_bound);
    j["precondition_ok"] = gaps.precondition_ok;
    return j;
}

json prop3_input_to_json(const Prop3Input& input) {
    json sets = json::array();
    for (const auto& s : input.sets)
        sets.push_back(index_set_to_json(s));
    json j;
    j["schema_version"] = schema_version;
    j["sets"] = std::move(sets);
    j["deltas"] = input.deltas;
    j["classes"] = input.classes;
    j["block_starts"] = input.k_seq;
    return j;
}

json sparse_thick_to_json(const SparseThickSet& sts) {
    json j;
    j["schema_version"] = schema_version;
    j["n_seq"] = sts.n_seq;
    j["set"] = index_set_to_json(sts.set);
    j["eps"] = sts.eps;
    j["term1"] = sts.term1;
    j["term2"] = sts.term2;
    return j;
}

json margin_rows_to_json(const std::vector<ChaosMarginRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json e;
        e["k"] = r.k;
        e["delta"] = r.delta;
        e["Delta"] = r.Delta;
        e["N_l"] = r.N_l;
        e["worst_j0"] = r.worst_j0;
        e["j0_sweep_exhaustive"] = r.j0_sweep_exhaustive;
        e["coverage_direct"] = json_number(r.coverage_direct);
        e["coverage_bound"] = json_number(r.coverage_bound);
        e["margin_direct"] = json_number(r.margin_direct);
        e["margin_bound"] = json_number(r.margin_bound);
        arr.push_back(std::move(e));
    }
    return arr;
}

namespace {

// CSV numbers: enough digits to round-trip a double, no trailing noise
std::string csv_double(double value) {
    if (!std::isfinite(value))
        return "nan";
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str();
}

} // namespace

std::string profile_to_csv(const DensityProfile& profile) {
    std::ostringstream out;
    out << "horizon,ratio\n";
    for (const auto& s : profile.samples)
        out << s.horizon << ',' << csv_double(s.ratio) << '\n';
    return out.str();
}

std::string margin_rows_to_csv(const std::vector<ChaosMarginRow>& rows) {
    std::ostringstream out;
    out << "k,delta,Delta,N_l,margin_direct,margin_bound\n";
    for (const auto& r : rows)
        out << r.k << ',' << r.delta << ',' << r.Delta << ',' << r.N_l << ','
            << csv_double(r.margin_direct) << ',' << csv_double(r.margin_bound) << '\n';
    return out.str();
}

} // namespace udense
