#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "fwc/fwc.h"

using nlohmann::json;

namespace {

struct Owned {
    char* s = nullptr;
    ~Owned() { fwc_string_free(s); }
};

struct Handles {
    fwc_field* field = nullptr;
    fwc_code* code = nullptr;
    ~Handles() {
        fwc_code_destroy(code);
        fwc_field_destroy(field);
    }
};

Handles make(uint32_t p, uint32_t m, uint64_t N, const char* variant = "lift") {
    Handles h;
    REQUIRE(fwc_field_create(p, m, nullptr, 0, &h.field) == FWC_OK);
    REQUIRE(fwc_code_create(h.field, N, variant, &h.code) == FWC_OK);
    return h;
}

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(fwc_version()) == "1.0.0");
    CHECK(std::string(fwc_status_name(FWC_OK)) == "ok");
    CHECK(std::string(fwc_status_name(FWC_ERR_BUDGET)) == "budget_exceeded");
    CHECK(std::string(fwc_status_name(FWC_ERR_CONSTANCY)) == "constancy_violation");
}

TEST_CASE("field creation errors") {
    fwc_field* f = nullptr;
    CHECK(fwc_field_create(2, 1, nullptr, 0, &f) != FWC_OK);
    CHECK(std::string(fwc_last_error_message()).find("p must be odd") != std::string::npos);
    CHECK(f == nullptr);
    CHECK(fwc_field_create(9, 1, nullptr, 0, &f) != FWC_OK);
    CHECK(fwc_field_create(3, 0, nullptr, 0, &f) != FWC_OK);
    const uint32_t reducible[] = {0, 0, 1};  // x^2
    CHECK(fwc_field_create(3, 2, reducible, 3, &f) != FWC_OK);
    CHECK(fwc_field_create(3, 2, nullptr, 0, nullptr) == FWC_ERR_INVALID_ARGUMENT);
    CHECK(std::string(fwc_last_error_message()).find("must not be null") != std::string::npos);

    const uint32_t modulus[] = {2, 1, 1};
    REQUIRE(fwc_field_create(3, 2, modulus, 3, &f) == FWC_OK);
    CHECK(std::string(fwc_last_error_message()).empty());
    Owned info;
    REQUIRE(fwc_field_info_json(f, &info.s) == FWC_OK);
    const auto j = json::parse(info.s);
    CHECK(j["q"] == 9);
    CHECK(j["xi_order"] == 8);
    Owned desc;
    CHECK(fwc_field_describe(f, &desc.s) == FWC_OK);
    CHECK(std::string(desc.s).find("p=3") != std::string::npos);
    fwc_field_destroy(f);
}

TEST_CASE("code creation errors") {
    fwc_field* f = nullptr;
    REQUIRE(fwc_field_create(3, 2, nullptr, 0, &f) == FWC_OK);
    fwc_code* c = nullptr;
    CHECK(fwc_code_create(f, 7, "lift", &c) == FWC_ERR_INVALID_ARGUMENT);
    CHECK(fwc_code_create(f, 1, "bogus", &c) != FWC_OK);
    CHECK(fwc_code_create(nullptr, 1, "lift", &c) == FWC_ERR_INVALID_ARGUMENT);
    CHECK(c == nullptr);
    fwc_field_destroy(f);
    fwc_field_destroy(nullptr);
    fwc_code_destroy(nullptr);
}

TEST_CASE("lee weight of a codeword") {
    const Handles h = make(3, 2, 1);
    uint64_t w = 0;
    const uint64_t uv[4] = {0, 0, 0, 1};
    REQUIRE(fwc_code_lee_weight(h.code, uv, &w) == FWC_OK);
    CHECK(w == 8748);
    const uint64_t one[4] = {1, 0, 0, 0};
    REQUIRE(fwc_code_lee_weight(h.code, one, &w) == FWC_OK);
    CHECK(w == 7776);
    const uint64_t bad[4] = {9, 0, 0, 0};
    CHECK(fwc_code_lee_weight(h.code, bad, &w) != FWC_OK);
    CHECK(fwc_code_lee_weight(h.code, nullptr, &w) == FWC_ERR_INVALID_ARGUMENT);

    Owned params;
    REQUIRE(fwc_code_params_json(h.code, &params.s) == FWC_OK);
    CHECK(json::parse(params.s)["L_size"] == 2916);
}

TEST_CASE("analyze through the C API") {
    const Handles h = make(3, 2, 1);
    fwc_analyze_options o;
    fwc_analyze_options_init(&o);
    CHECK(std::string(o.method) == "auto");
    CHECK(o.dual == 1);
    Owned out;
    REQUIRE(fwc_analyze(h.code, &o, &out.s) == FWC_OK);
    const auto j = json::parse(out.s);
    CHECK(j["passed"] == true);
    CHECK(j["rows"][1]["weight"] == 7776);

    Owned csv;
    REQUIRE(fwc_report_rows_csv(out.s, &csv.s) == FWC_OK);
    CHECK(std::string(csv.s) == "weight,frequency\n0,1\n7776,6552\n8748,8\n");
    Owned bad;
    CHECK(fwc_report_rows_csv("{}", &bad.s) == FWC_ERR_INVALID_ARGUMENT);
    CHECK(fwc_report_rows_csv("not json", &bad.s) == FWC_ERR_INVALID_ARGUMENT);

    Owned nulls;
    CHECK(fwc_analyze(h.code, nullptr, &nulls.s) == FWC_OK);
    CHECK(fwc_analyze(nullptr, &o, &out.s) == FWC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("budget and method errors") {
    const Handles h = make(3, 2, 1);
    fwc_analyze_options o;
    fwc_analyze_options_init(&o);
    o.method = "exhaustive";
    o.work_budget = 1000;
    Owned out;
    CHECK(fwc_analyze(h.code, &o, &out.s) == FWC_ERR_BUDGET);
    CHECK(out.s == nullptr);
    CHECK(std::string(fwc_last_error_message()).find("class") != std::string::npos);
    o.method = "nope";
    CHECK(fwc_analyze(h.code, &o, &out.s) == FWC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("dual and verify") {
    const Handles h = make(3, 2, 1);
    Owned d;
    REQUIRE(fwc_dual(h.code, 3, 10'000'000'000ULL, 0, &d.s) == FWC_OK);
    CHECK(json::parse(d.s)["dual_distance"]["distance"] == 2);
    Owned e;
    CHECK(fwc_dual(h.code, 4, 1000, 0, &e.s) == FWC_ERR_INVALID_ARGUMENT);

    fwc_verify_options v;
    fwc_verify_options_init(&v);
    v.trials = 10;
    Owned r;
    REQUIRE(fwc_verify(h.code, &v, &r.s) == FWC_OK);
    CHECK(json::parse(r.s)["passed"] == true);
}

TEST_CASE("export") {
    const Handles h = make(3, 1, 1);
    const std::string path = "c_api_export.bin";
    REQUIRE(fwc_export_codewords(h.code, path.c_str(), 0, 2) == FWC_OK);
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    REQUIRE(fp);
    std::fseek(fp, 0, SEEK_END);
    CHECK(std::ftell(fp) == 2 * 108);
    std::fclose(fp);
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
    CHECK(fwc_export_codewords(h.code, "/nonexistent-dir/x.bin", 0, 1) == FWC_ERR_IO);
    CHECK(fwc_export_codewords(h.code, path.c_str(), 0, 100000) == FWC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("griesmer") {
    uint64_t s = 0;
    REQUIRE(fwc_griesmer_sum(8, 7776, 3, &s) == FWC_OK);
    CHECK(s == 11663);
    Owned j;
    REQUIRE(fwc_griesmer_json(11664, 8, 7776, 3, &j.s) == FWC_OK);
    CHECK(json::parse(j.s)["verdict"] == "griesmer-optimal");
    CHECK(fwc_griesmer_sum(8, 7776, 3, nullptr) == FWC_ERR_INVALID_ARGUMENT);
}
