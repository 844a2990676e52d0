// Command-line front end. Talks to the library only through fwc.h.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fwc/fwc.h"

namespace {

enum Exit : int {
    kOk = 0,
    kInternal = 1,
    kInvalid = 2,
    kBudget = 3,
    kMismatch = 4,
    kConstancy = 5,
    kIo = 6,
};

int exit_code(fwc_status s) {
    switch (s) {
        case FWC_OK: return kOk;
        case FWC_ERR_INVALID_ARGUMENT:
        case FWC_ERR_DOMAIN: return kInvalid;
        case FWC_ERR_BUDGET: return kBudget;
        case FWC_ERR_MISMATCH: return kMismatch;
        case FWC_ERR_CONSTANCY: return kConstancy;
        case FWC_ERR_IO: return kIo;
        case FWC_ERR_INTERNAL: return kInternal;
    }
    return kInternal;
}

struct CodeArgs {
    std::uint32_t p = 0;
    std::uint32_t m = 0;
    std::uint64_t N = 1;
    std::string variant = "lift";
    std::string modulus;
    unsigned threads = 0;
};

struct OutputArgs {
    std::string path;
    std::string format = "json";
};

struct FieldDeleter {
    void operator()(fwc_field* f) const { fwc_field_destroy(f); }
};
struct CodeDeleter {
    void operator()(fwc_code* c) const { fwc_code_destroy(c); }
};
struct StringDeleter {
    void operator()(char* s) const { fwc_string_free(s); }
};
using FieldPtr = std::unique_ptr<fwc_field, FieldDeleter>;
using CodePtr = std::unique_ptr<fwc_code, CodeDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

class Failure {
  public:
    explicit Failure(fwc_status s) : status(s) {}
    fwc_status status;
};

void check(fwc_status s) {
    if (s != FWC_OK) throw Failure(s);
}

std::uint64_t default_budget() {
    if (const char* env = std::getenv("FWC_WORK_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && end != env) return v;
        std::cerr << "warning: ignoring malformed FWC_WORK_BUDGET\n";
    }
    return 10'000'000'000ULL;
}

std::vector<std::uint32_t> split_coefficients(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--modulus", "not a comma-separated coefficient list: " + text);
        }
    }
    return out;
}

FieldPtr make_field(const CodeArgs& a) {
    fwc_field* f = nullptr;
    if (a.modulus.empty()) {
        check(fwc_field_create(a.p, a.m, nullptr, 0, &f));
    } else {
        const auto coeffs = split_coefficients(a.modulus);
        check(fwc_field_create(a.p, a.m, coeffs.data(), coeffs.size(), &f));
    }
    return FieldPtr(f);
}

CodePtr make_code(const CodeArgs& a) {
    const auto field = make_field(a);
    fwc_code* c = nullptr;
    check(fwc_code_create(field.get(), a.N, a.variant.c_str(), &c));
    return CodePtr(c);
}

void write_output(const OutputArgs& o, const std::string& text) {
    if (o.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.path);
    if (!out || !(out << text)) {
        std::cerr << "error: cannot write " << o.path << '\n';
        throw Failure(FWC_ERR_IO);
    }
}

// Writes a report that came back OK or with a mismatch, then rethrows the mismatch.
void emit_report(fwc_status s, char* raw, const OutputArgs& o) {
    StringPtr json(raw);
    if (s != FWC_OK && s != FWC_ERR_MISMATCH) throw Failure(s);
    if (o.format == "csv") {
        char* csv = nullptr;
        check(fwc_report_rows_csv(json.get(), &csv));
        StringPtr holder(csv);
        write_output(o, csv);
    } else {
        write_output(o, json.get());
    }
    if (s == FWC_ERR_MISMATCH) {
        std::cerr << "check failed: " << fwc_last_error_message() << '\n';
        throw Failure(s);
    }
}

void add_code_options(CLI::App* cmd, CodeArgs& a) {
    cmd->add_option("-p", a.p, "odd prime")->required();
    cmd->add_option("-m", a.m, "extension degree")->required()->check(CLI::PositiveNumber);
    cmd->add_option("-N", a.N, "divisor of p^m - 1 (lift variant)")->capture_default_str();
    cmd->add_option("--variant", a.variant, "defining set")->check(CLI::IsMember({"lift", "units"}))->capture_default_str();
    cmd->add_option("--modulus", a.modulus, "monic modulus, constant-first comma-separated coefficients");
    cmd->add_option("--threads", a.threads, "worker threads (0: hardware parallelism)")->capture_default_str();
}

void add_output_options(CLI::App* cmd, OutputArgs& o, bool csv) {
    cmd->add_option("-o,--output", o.path, "output file (default: stdout)");
    if (csv) cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace codes over F_p + uF_p + vF_p + uvF_p: weight distributions, bounds and identity checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(fwc_version()));

    CodeArgs code_args;
    OutputArgs out_args;
    std::uint64_t budget = default_budget();
    std::uint64_t seed = 0x5eed2017;

    // analyze
    auto* analyze = app.add_subcommand("analyze", "weight distribution, predictions, Griesmer, dual distance, minimality");
    add_code_options(analyze, code_args);
    add_output_options(analyze, out_args, true);
    std::string method = "auto";
    std::uint64_t samples = 500;
    bool no_dual = false;
    analyze->add_option("--method", method, "distribution method")
        ->check(CLI::IsMember({"auto", "exhaustive", "class", "ideal"}))
        ->capture_default_str();
    analyze->add_option("--samples", samples, "samples per class")->capture_default_str();
    analyze->add_option("--seed", seed, "sampling seed")->capture_default_str();
    analyze->add_option("--budget", budget, "work budget in entry operations (env FWC_WORK_BUDGET)")->capture_default_str();
    analyze->add_flag("--no-dual", no_dual, "skip the dual-distance search");

    // dual
    auto* dual = app.add_subcommand("dual", "minimum Lee distance of the dual code");
    add_code_options(dual, code_args);
    add_output_options(dual, out_args, false);
    unsigned cap = 3;
    dual->add_option("--cap", cap, "search Lee weights below cap")->check(CLI::IsMember({2, 3}))->capture_default_str();
    dual->add_option("--budget", budget, "work budget (env FWC_WORK_BUDGET)")->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "character-sum identities, Gray/trace structure, field subcode");
    add_code_options(verify, code_args);
    add_output_options(verify, out_args, false);
    std::uint64_t trials = 100;
    bool subcode_only = false;
    verify->add_option("--trials", trials, "random inputs per identity")->capture_default_str();
    verify->add_option("--seed", seed, "seed")->capture_default_str();
    verify->add_flag("--subcode", subcode_only, "only the field subcode C_D");

    // export
    auto* exp = app.add_subcommand("export", "write Gray-mapped codewords as bytes plus a JSON sidecar");
    add_code_options(exp, code_args);
    std::string export_path;
    std::uint64_t first = 0, count = 1;
    exp->add_option("-o,--output", export_path, "binary output file")->required();
    exp->add_option("--first", first, "first codeword index")->capture_default_str();
    exp->add_option("--count", count, "number of codewords")->capture_default_str();

    // field
    auto* field = app.add_subcommand("field", "describe the field F_{p^m}");
    field->add_option("-p", code_args.p, "odd prime")->required();
    field->add_option("-m", code_args.m, "extension degree")->required();
    field->add_option("--modulus", code_args.modulus, "monic modulus, constant-first");

    // griesmer
    auto* gr = app.add_subcommand("griesmer", "Griesmer sums and optimality verdict for [n, k, d]_p");
    std::uint64_t gn = 0, gk = 0, gd = 0, gp = 0;
    gr->add_option("-n", gn, "length")->required();
    gr->add_option("-k", gk, "dimension")->required();
    gr->add_option("-d", gd, "minimum distance")->required();
    gr->add_option("-p", gp, "alphabet size")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            const auto code = make_code(code_args);
            fwc_analyze_options o;
            fwc_analyze_options_init(&o);
            o.method = method.c_str();
            o.samples = samples;
            o.seed = seed;
            o.work_budget = budget;
            o.threads = code_args.threads;
            o.dual = no_dual ? 0 : 1;
            char* json = nullptr;
            const fwc_status s = fwc_analyze(code.get(), &o, &json);
            if (s == FWC_ERR_BUDGET) std::cerr << "hint: rerun with --method class\n";
            emit_report(s, json, out_args);
        } else if (*dual) {
            const auto code = make_code(code_args);
            char* json = nullptr;
            const fwc_status s = fwc_dual(code.get(), cap, budget, code_args.threads, &json);
            emit_report(s, json, out_args);
        } else if (*verify) {
            const auto code = make_code(code_args);
            fwc_verify_options o;
            fwc_verify_options_init(&o);
            o.trials = trials;
            o.seed = seed;
            o.subcode_only = subcode_only ? 1 : 0;
            char* json = nullptr;
            const fwc_status s = fwc_verify(code.get(), &o, &json);
            emit_report(s, json, out_args);
        } else if (*exp) {
            const auto code = make_code(code_args);
            check(fwc_export_codewords(code.get(), export_path.c_str(), first, count));
            std::cout << "wrote " << count << " rows to " << export_path << " (sidecar " << export_path << ".json)\n";
        } else if (*field) {
            const auto f = make_field(code_args);
            char* json = nullptr;
            check(fwc_field_info_json(f.get(), &json));
            StringPtr holder(json);
            std::cout << json;
        } else if (*gr) {
            char* json = nullptr;
            check(fwc_griesmer_json(gn, gk, gd, gp, &json));
            StringPtr holder(json);
            std::cout << json;
        }
    } catch (const Failure& f) {
        if (f.status != FWC_ERR_MISMATCH && f.status != FWC_ERR_IO)
            std::cerr << "error: " << fwc_last_error_message() << '\n';
        return exit_code(f.status);
    } catch (const CLI::ValidationError& e) {
        return app.exit(e);
    }
    return kOk;
}
