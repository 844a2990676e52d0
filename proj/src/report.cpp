#include "fwc/report.hpp"

#include <chrono>
#include <sstream>

#include "fwc/errors.hpp"

namespace fwc {

using nlohmann::json;

namespace {

constexpr const char* kLeeSlotErratum = "lee_weight_formula_first_slot";
constexpr const char* kCeilingErratum = "griesmer_ceiling_identity";

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

json weight_rows(const std::vector<WeightRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) out.push_back({{"weight", r.weight}, {"frequency", r.frequency}});
    return out;
}

json prediction_json(const Prediction& p) {
    json conds = json::array();
    for (const auto& [name, ok] : p.conditions) conds.push_back({{"name", name}, {"holds", ok}});
    json j = {
        {"regime", to_string(p.regime)},
        {"applicable", p.applicable},
        {"subcode", p.subcode},
        {"conditions", conds},
        {"rows", weight_rows(p.rows)},
    };
    if (!p.printed_rows.empty()) j["printed_rows"] = weight_rows(p.printed_rows);
    if (p.l) j["l"] = *p.l;
    if (p.t) j["t"] = *p.t;
    if (p.lower_bound) j["min_distance_lower_bound"] = *p.lower_bound;
    if (p.upper_bound) j["min_distance_upper_bound"] = *p.upper_bound;
    if (p.max_nonzero_weights) j["max_nonzero_weights"] = *p.max_nonzero_weights;
    if (!p.errata.empty()) j["errata"] = p.errata;
    return j;
}

json ring_json(const RingElem& r) { return json::array({r.a.idx, r.b.idx, r.c.idx, r.d.idx}); }

json griesmer_json(const GriesmerVerdict& v) {
    return {
        {"n", v.n},
        {"k", v.k},
        {"d", v.d},
        {"p", v.p},
        {"sum_at_d", v.sum_at_d},
        {"sum_at_d_plus_1", v.sum_at_d_plus_1},
        {"optimal", v.optimal},
        {"inconclusive", v.inconclusive},
        {"infeasible", v.infeasible},
        {"verdict", v.label()},
    };
}

json dual_json(const TraceCode& code, const DualDistanceResult& d) {
    json witness = json::array();
    for (const auto& e : d.witness)
        witness.push_back({{"index", e.index}, {"coordinate", ring_json(code.coords().at(e.index))}, {"value", ring_json(e.value)}});
    json j = {
        {"cap", d.cap},
        {"lower_bound", d.lower_bound},
        {"complete", d.complete},
        {"witness", witness},
        {"witness_lee_weight", d.witness_lee_weight},
        {"syndrome_verified", d.syndrome_verified},
        {"orthogonality_verified", d.orthogonality_verified},
        {"candidates_examined", d.candidates_examined},
        {"notes", d.notes},
    };
    j["distance"] = d.distance ? json(*d.distance) : json(nullptr);
    return j;
}

json sss_json(const SssVerdict& v) {
    json j = {
        {"w_min", v.w_min},
        {"w_max", v.w_max},
        {"all_minimal", v.all_minimal},
        {"ratio_margin", v.margin},
        {"classification", to_string(v.classification)},
    };
    j["dual_distance"] = v.dual_distance ? json(*v.dual_distance) : json(nullptr);
    return j;
}

json check_json(const IdentityCheck& c) {
    return {
        {"name", c.name},
        {"trials", c.trials},
        {"exact", c.exact},
        {"max_residual", c.max_residual},
        {"tolerance", c.tolerance},
        {"passed", c.passed},
        {"witness", c.witness},
    };
}

// The dual distance as used by the access-structure classification:
// exact when found, 3 when the search proved d >= 3, unknown otherwise.
std::optional<std::uint64_t> classification_distance(const DualDistanceResult& d) {
    if (d.distance) return d.distance;
    if (d.complete && d.lower_bound >= 3) return d.lower_bound;
    return std::nullopt;
}

void add_flag(json& flags, const char* flag) {
    for (const auto& f : flags)
        if (f == flag) return;
    flags.push_back(flag);
}

}  // namespace

MethodChoice parse_method(const std::string& text) {
    if (text == "auto") return MethodChoice::Auto;
    if (text == "exhaustive") return MethodChoice::Exhaustive;
    if (text == "class") return MethodChoice::Class;
    if (text == "ideal") return MethodChoice::Ideal;
    fail(ErrorKind::InvalidArgument, "method must be one of auto, exhaustive, class, ideal");
}

json params_json(const TraceCode& code) {
    const auto& dp = code.derived();
    const auto mod = code.field().modulus();
    json d = json::array();
    for (Fq x : dp.D) d.push_back(x.idx);
    return {
        {"p", code.p()},
        {"m", code.m()},
        {"N", code.params().N},
        {"variant", to_string(code.params().variant)},
        {"modulus", std::vector<std::uint32_t>(mod.begin(), mod.end())},
        {"field", code.field().describe()},
        {"N1", dp.N1},
        {"N2", dp.N2},
        {"n", dp.n},
        {"D", d},
        {"L_size", dp.L_size},
        {"gray_length", dp.gray_length},
        {"codewords", dp.ring_size},
        {"ordering_version", kOrderingVersion},
    };
}

json rows_json(const WeightDistribution& dist) {
    json rows = json::array();
    for (const auto& [w, f] : dist.entries)
        if (f) rows.push_back({{"weight", w}, {"frequency", f}});
    return rows;
}

std::string rows_csv(const json& rows) {
    std::ostringstream os;
    os << "weight,frequency\n";
    for (const auto& r : rows) os << r.at("weight").get<std::uint64_t>() << ',' << r.at("frequency").get<std::uint64_t>() << '\n';
    return os.str();
}

Report run_analyze(const TraceCode& code, const AnalyzeConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const auto& dp = code.derived();
    Report rep;
    json& out = rep.body;
    out["report_version"] = kReportVersion;
    out["command"] = "analyze";
    out["params"] = params_json(code);
    json notes = dp.notes;
    json flags = json::array();
    add_flag(flags, kLeeSlotErratum);

    MethodChoice method = cfg.method;
    if (method == MethodChoice::Auto) {
        method = exhaustive_work(code) <= cfg.run.work_budget ? MethodChoice::Exhaustive : MethodChoice::Class;
        notes.push_back(std::string("auto method selected ") + (method == MethodChoice::Exhaustive ? "exhaustive" : "class-based"));
    }

    WeightDistribution dist;
    std::vector<RingElem> representatives;
    json classes = json::array();
    switch (method) {
        case MethodChoice::Exhaustive:
            dist = distribution_exhaustive(code, cfg.run);
            break;
        case MethodChoice::Class: {
            auto res = distribution_by_class(code, cfg.run);
            dist = res.distribution;
            for (const auto& c : res.classes) {
                representatives.push_back(c.representative);
                classes.push_back({{"name", c.name},
                                   {"representative", ring_json(c.representative)},
                                   {"weight", c.weight},
                                   {"cardinality", c.cardinality},
                                   {"samples_checked", c.samples_checked}});
            }
            out["samples_per_class"] = res.samples_per_class;
            break;
        }
        case MethodChoice::Ideal: {
            auto res = distribution_ideal_sweep(code, cfg.run);
            dist = res.distribution;
            json uv = json::array(), other = json::array();
            for (const auto& [w, f] : res.uv_line) uv.push_back({{"weight", w}, {"frequency", f}});
            for (const auto& [w, f] : res.other_maximal) other.push_back({{"weight", w}, {"frequency", f}});
            out["ideal_sweep"] = {{"ideal_rows", rows_json(res.ideal)},
                                  {"uv_line", uv},
                                  {"other_maximal", other},
                                  {"unit_weight", res.unit_weight},
                                  {"unit_samples", res.unit_samples}};
            out["samples_per_class"] = res.unit_samples;
            break;
        }
        case MethodChoice::Auto: break;
    }
    out["method"] = to_string(dist.method);
    out["rows"] = rows_json(dist);
    out["total"] = dist.total();
    // Frequencies count ring elements r; the kernel of Ev shows up as weight 0.
    {
        const std::uint64_t kernel = dist.entries.count(0) ? dist.entries.at(0) : 0;
        json image = {{"kernel_size", kernel}};
        if (kernel) {
            std::uint64_t size = dist.total() / kernel, dim = 0;
            for (std::uint64_t s = size; s > 1; s /= code.p()) ++dim;
            image["image_size"] = size;
            image["dimension"] = dim;
        }
        out["image"] = image;
        if (kernel > 1) notes.push_back("evaluation map is not injective; frequencies count ring elements, not distinct codewords");
    }
    if (!classes.empty()) out["classes"] = classes;
    if (dist.method != Method::Exhaustive) out["seed"] = cfg.run.seed;
    else out["seed"] = nullptr;

    // Predictions and comparisons (full-code regimes only; the subcode is verify's business).
    const auto preds = predict(code);
    json pj = json::array(), cj = json::array();
    for (const auto& p : preds) {
        pj.push_back(prediction_json(p));
        if (!p.applicable || p.subcode) continue;
        const auto cmp = compare(dist, p);
        cj.push_back({{"regime", to_string(p.regime)}, {"match", cmp.match}, {"mismatches", cmp.mismatches}});
        rep.passed = rep.passed && cmp.match;
        for (const auto& e : p.errata) add_flag(flags, e.c_str());
    }
    out["predictions"] = pj;
    out["comparisons"] = cj;
    if (dist.method == Method::Exhaustive && dist.total() != dp.ring_size) {
        rep.passed = false;
        notes.push_back("exhaustive total differs from p^{4m}");
    }

    // Character-sum cross-check of the Lee weight on a few representatives.
    {
        if (representatives.empty()) {
            const Ring& ring = code.ring();
            representatives = {ring.one(), ring.u(), ring.uv()};
        }
        const WeightEngine engine(code);
        const std::uint32_t p = code.p();
        double worst = 0.0;
        for (const auto& r : representatives) {
            std::complex<double> sum = 0;
            for (std::uint32_t tau = 1; tau < p; ++tau)
                sum += theta_from_histogram(engine.symbol_histogram(code.ring().scale(Fq{tau}, r)), p);
            const std::complex<double> formula = (static_cast<double>((p - 1) * dp.gray_length) - sum) / static_cast<double>(p);
            worst = std::max(worst, std::abs(static_cast<double>(engine.lee_weight(r)) - formula));
        }
        const bool ok = worst < kResidualTolerance * std::max(1.0, static_cast<double>(dp.gray_length));
        out["residuals"] = {{"lee_weight_character_formula",
                             {{"checked", representatives.size()}, {"max_residual", worst}, {"relative_tolerance", kResidualTolerance}, {"passed", ok}}}};
        rep.passed = rep.passed && ok;
    }

    const auto dmin = dist.min_nonzero();
    if (dmin) {
        const std::uint64_t k = out["image"].contains("dimension") ? out["image"]["dimension"].get<std::uint64_t>() : 4 * code.m();
        const auto gv = griesmer_optimal(dp.gray_length, k, *dmin, code.p());
        json g = griesmer_json(gv);
        const bool two_weight = code.params().variant == Variant::Units || dp.N2 == 1;
        if (two_weight) {
            const auto ci = griesmer_ceiling_identity(code.p(), code.m(), code.params().variant);
            json c = {{"d", ci.d}, {"holds", ci.holds}};
            if (ci.first_bad_j) {
                c["first_bad_j"] = *ci.first_bad_j;
                c["exact_ceiling"] = ci.exact_ceiling;
                c["closed_form"] = ci.closed_form;
                add_flag(flags, kCeilingErratum);
            }
            g["ceiling_identity"] = c;
        }
        out["griesmer"] = g;
    }

    std::optional<std::uint64_t> dual_d;
    if (cfg.dual) {
        const auto dd = dual_lee_distance(code, cfg.dual_cap, cfg.run.work_budget, cfg.run.threads);
        out["dual_distance"] = dual_json(code, dd);
        dual_d = classification_distance(dd);
    } else {
        out["dual_distance"] = nullptr;
    }
    if (dmin) {
        json s = sss_json(minimality_check(dist, code.p(), dual_d));
        if (code.params().variant == Variant::Lift && dp.N2 > 1)
            s["few_weight_condition"] = few_weight_minimality_condition(code.p(), code.m(), dp.N2);
        out["sss"] = s;
    }

    out["erratum_flags"] = flags;
    out["notes"] = notes;
    out["passed"] = rep.passed;
    out["runtime_ms"] = elapsed_ms(start);
    return rep;
}

Report run_dual(const TraceCode& code, unsigned cap, std::uint64_t work_budget, unsigned threads) {
    const auto start = std::chrono::steady_clock::now();
    const auto& dp = code.derived();
    Report rep;
    json& out = rep.body;
    out["report_version"] = kReportVersion;
    out["command"] = "dual";
    out["params"] = params_json(code);
    const auto dd = dual_lee_distance(code, cap, work_budget, threads);
    out["dual_distance"] = dual_json(code, dd);
    const std::uint64_t k = 4 * code.m();
    out["sphere_packing"] = {{"n", dp.gray_length},
                             {"k", k},
                             {"p", code.p()},
                             {"excludes_distance_3", sphere_packing_excludes(dp.gray_length, k, code.p())}};
    if (dd.distance) rep.passed = dd.syndrome_verified && dd.orthogonality_verified;
    out["passed"] = rep.passed;
    out["runtime_ms"] = elapsed_ms(start);
    return rep;
}

Report run_verify(const TraceCode& code, const VerifyConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    json& out = rep.body;
    out["report_version"] = kReportVersion;
    out["command"] = "verify";
    out["params"] = params_json(code);
    out["seed"] = cfg.seed;
    out["trials"] = cfg.trials;
    json flags = json::array();

    if (!cfg.subcode_only) {
        const auto ids = verify_identities(code, cfg.trials, cfg.seed);
        json checks = json::array();
        for (const auto& c : ids.checks) checks.push_back(check_json(c));
        out["identities"] = checks;
        rep.passed = rep.passed && ids.passed();

        if (code.coords().size() <= 10'000) {
            const auto ga = group_action_spotcheck(code, std::min<std::uint64_t>(cfg.trials, 50), cfg.seed);
            out["group_action"] = {{"trials", ga.trials},
                                   {"failures", ga.failures},
                                   {"scaled_coordinates", ga.scaled_coordinates},
                                   {"witnesses", ga.witnesses},
                                   {"passed", ga.passed()}};
            rep.passed = rep.passed && ga.passed();
        }
        add_flag(flags, kLeeSlotErratum);
    }

    if (code.q() <= kBruteForceCodewordLimit) {
        const auto dist = subcode_distribution(code);
        json sub = {{"length", code.derived().n}, {"codewords", dist.total()}, {"rows", rows_json(dist)}};
        json cmps = json::array();
        for (const auto& p : predict(code)) {
            if (!p.subcode || !p.applicable) continue;
            const auto cmp = compare(dist, p);
            cmps.push_back({{"regime", to_string(p.regime)}, {"rows", weight_rows(p.rows)}, {"match", cmp.match}, {"mismatches", cmp.mismatches}});
            rep.passed = rep.passed && cmp.match;
        }
        sub["comparisons"] = cmps;
        if (dist.min_nonzero()) {
            const auto v = minimality_check(dist, code.p());
            const auto minimal = minimal_codewords_bruteforce(subcode_explicit(code));
            const std::uint64_t nonzero = dist.total() - (dist.entries.count(0) ? dist.entries.at(0) : 0);
            const bool all = minimal.size() == nonzero;
            // the ratio test is sufficient, not necessary
            const bool consistent = !v.all_minimal || all;
            sub["minimality"] = {{"ratio_test", v.all_minimal},
                                 {"ratio_margin", v.margin},
                                 {"minimal_codewords", minimal.size()},
                                 {"nonzero_codewords", nonzero},
                                 {"all_minimal_bruteforce", all},
                                 {"consistent", consistent}};
            rep.passed = rep.passed && consistent;
        }
        out["subcode"] = sub;
    }

    out["erratum_flags"] = flags;
    out["passed"] = rep.passed;
    out["runtime_ms"] = elapsed_ms(start);
    return rep;
}

}  // namespace fwc
