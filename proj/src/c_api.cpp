#include "fwc/fwc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fwc/errors.hpp"
#include "fwc/report.hpp"

struct fwc_field {
    fwc::Field field;
};

struct fwc_code {
    fwc::TraceCode code;
};

namespace {

thread_local std::string last_error;

fwc_status status_of(fwc::ErrorKind kind) {
    switch (kind) {
        case fwc::ErrorKind::InvalidArgument: return FWC_ERR_INVALID_ARGUMENT;
        case fwc::ErrorKind::Domain: return FWC_ERR_DOMAIN;
        case fwc::ErrorKind::BudgetExceeded: return FWC_ERR_BUDGET;
        case fwc::ErrorKind::Mismatch: return FWC_ERR_MISMATCH;
        case fwc::ErrorKind::ConstancyViolation: return FWC_ERR_CONSTANCY;
        case fwc::ErrorKind::Io: return FWC_ERR_IO;
    }
    return FWC_ERR_INTERNAL;
}

template <class Fn>
fwc_status guarded(Fn&& fn) {
    last_error.clear();
    try {
        return fn();
    } catch (const fwc::Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return FWC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return FWC_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

fwc_status null_argument(const char* what) {
    last_error = std::string(what) + " must not be null";
    return FWC_ERR_INVALID_ARGUMENT;
}

fwc_status emit(const fwc::Report& rep, char** json_out) {
    *json_out = dup_string(rep.body.dump(2) + "\n");
    if (!rep.passed) {
        last_error = "one or more checks failed; see the report";
        return FWC_ERR_MISMATCH;
    }
    return FWC_OK;
}

}  // namespace

extern "C" {

const char* fwc_version(void) { return "1.0.0"; }

const char* fwc_last_error_message(void) { return last_error.c_str(); }

const char* fwc_status_name(fwc_status status) {
    switch (status) {
        case FWC_OK: return "ok";
        case FWC_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case FWC_ERR_DOMAIN: return "domain";
        case FWC_ERR_BUDGET: return "budget_exceeded";
        case FWC_ERR_MISMATCH: return "mismatch";
        case FWC_ERR_CONSTANCY: return "constancy_violation";
        case FWC_ERR_IO: return "io";
        case FWC_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void fwc_string_free(char* s) { std::free(s); }

fwc_status fwc_field_create(uint32_t p, uint32_t m, const uint32_t* modulus, size_t modulus_len, fwc_field** out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        std::optional<std::vector<std::uint32_t>> mod;
        if (modulus) mod.emplace(modulus, modulus + modulus_len);
        *out = new fwc_field{fwc::Field::build(p, m, mod)};
        return FWC_OK;
    });
}

void fwc_field_destroy(fwc_field* field) { delete field; }

fwc_status fwc_field_describe(const fwc_field* field, char** out) {
    if (!field || !out) return null_argument("field and out");
    return guarded([&] {
        *out = dup_string(field->field.describe());
        return FWC_OK;
    });
}

fwc_status fwc_field_info_json(const fwc_field* field, char** out) {
    if (!field || !out) return null_argument("field and out");
    return guarded([&] {
        const fwc::Field& f = field->field;
        const auto mod = f.modulus();
        nlohmann::json j = {
            {"description", f.describe()},
            {"p", f.p()},
            {"m", f.m()},
            {"q", f.q()},
            {"modulus", std::vector<std::uint32_t>(mod.begin(), mod.end())},
            {"xi", f.render(f.xi())},
            {"xi_index", f.xi().idx},
            {"xi_order", f.order_of(f.xi())},
            {"dlog_tables", f.has_tables()},
        };
        if (f.q() <= 729) {
            nlohmann::json tr = nlohmann::json::array();
            for (std::uint64_t x = 0; x < f.q(); ++x) tr.push_back(f.trace(fwc::Fq{x}));
            j["trace_by_index"] = tr;
        }
        *out = dup_string(j.dump(2) + "\n");
        return FWC_OK;
    });
}

fwc_status fwc_code_create(const fwc_field* field, uint64_t N, const char* variant, fwc_code** out) {
    if (!field || !variant || !out) return null_argument("field, variant and out");
    return guarded([&] {
        *out = new fwc_code{fwc::TraceCode(fwc::CodeParams{field->field, N, fwc::parse_variant(variant)})};
        return FWC_OK;
    });
}

void fwc_code_destroy(fwc_code* code) { delete code; }

fwc_status fwc_code_params_json(const fwc_code* code, char** out) {
    if (!code || !out) return null_argument("code and out");
    return guarded([&] {
        *out = dup_string(fwc::params_json(code->code).dump(2) + "\n");
        return FWC_OK;
    });
}

fwc_status fwc_code_lee_weight(const fwc_code* code, const uint64_t r[4], uint64_t* out) {
    if (!code || !r || !out) return null_argument("code, r and out");
    return guarded([&] {
        *out = fwc::codeword_lee_weight({fwc::Fq{r[0]}, fwc::Fq{r[1]}, fwc::Fq{r[2]}, fwc::Fq{r[3]}}, code->code);
        return FWC_OK;
    });
}

void fwc_analyze_options_init(fwc_analyze_options* opts) {
    if (!opts) return;
    opts->method = "auto";
    opts->samples = fwc::kDefaultSamplesPerClass;
    opts->seed = fwc::kDefaultSeed;
    opts->work_budget = fwc::kDefaultWorkBudget;
    opts->threads = 0;
    opts->dual = 1;
    opts->dual_cap = 3;
}

void fwc_verify_options_init(fwc_verify_options* opts) {
    if (!opts) return;
    opts->trials = 100;
    opts->seed = fwc::kDefaultSeed;
    opts->subcode_only = 0;
}

fwc_status fwc_analyze(const fwc_code* code, const fwc_analyze_options* opts, char** json_out) {
    if (!code || !json_out) return null_argument("code and json_out");
    return guarded([&] {
        fwc_analyze_options o;
        fwc_analyze_options_init(&o);
        if (opts) o = *opts;
        fwc::AnalyzeConfig cfg;
        cfg.method = fwc::parse_method(o.method ? o.method : "auto");
        cfg.run.samples = o.samples;
        cfg.run.seed = o.seed;
        cfg.run.work_budget = o.work_budget;
        cfg.run.threads = o.threads;
        cfg.dual = o.dual != 0;
        cfg.dual_cap = o.dual_cap;
        return emit(fwc::run_analyze(code->code, cfg), json_out);
    });
}

fwc_status fwc_dual(const fwc_code* code, unsigned cap, uint64_t work_budget, unsigned threads, char** json_out) {
    if (!code || !json_out) return null_argument("code and json_out");
    return guarded([&] { return emit(fwc::run_dual(code->code, cap, work_budget, threads), json_out); });
}

fwc_status fwc_verify(const fwc_code* code, const fwc_verify_options* opts, char** json_out) {
    if (!code || !json_out) return null_argument("code and json_out");
    return guarded([&] {
        fwc_verify_options o;
        fwc_verify_options_init(&o);
        if (opts) o = *opts;
        fwc::VerifyConfig cfg;
        cfg.trials = o.trials;
        cfg.seed = o.seed;
        cfg.subcode_only = o.subcode_only != 0;
        return emit(fwc::run_verify(code->code, cfg), json_out);
    });
}

fwc_status fwc_export_codewords(const fwc_code* code, const char* path, uint64_t first, uint64_t count) {
    if (!code || !path) return null_argument("code and path");
    return guarded([&] {
        fwc::export_codewords(code->code, path, first, count);
        return FWC_OK;
    });
}

fwc_status fwc_griesmer_sum(uint64_t k, uint64_t d, uint64_t p, uint64_t* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = fwc::griesmer_sum(k, d, p);
        return FWC_OK;
    });
}

fwc_status fwc_griesmer_json(uint64_t n, uint64_t k, uint64_t d, uint64_t p, char** json_out) {
    if (!json_out) return null_argument("json_out");
    return guarded([&] {
        const auto v = fwc::griesmer_optimal(n, k, d, p);
        nlohmann::json j = {
            {"n", v.n}, {"k", v.k}, {"d", v.d}, {"p", v.p}, {"sum_at_d", v.sum_at_d},
            {"sum_at_d_plus_1", v.sum_at_d_plus_1}, {"optimal", v.optimal}, {"inconclusive", v.inconclusive},
            {"infeasible", v.infeasible}, {"verdict", v.label()},
        };
        *json_out = dup_string(j.dump(2) + "\n");
        return FWC_OK;
    });
}

fwc_status fwc_report_rows_csv(const char* report_json, char** csv_out) {
    if (!report_json || !csv_out) return null_argument("report_json and csv_out");
    return guarded([&] {
        const auto j = nlohmann::json::parse(report_json, nullptr, false);
        if (j.is_discarded() || !j.contains("rows")) fwc::fail(fwc::ErrorKind::InvalidArgument, "report has no rows array");
        *csv_out = dup_string(fwc::rows_csv(j.at("rows")));
        return FWC_OK;
    });
}

}  // extern "C"
