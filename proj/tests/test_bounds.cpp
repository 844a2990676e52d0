#include <doctest.h>

#include <random>

#include "fwc/bounds.hpp"
#include "fwc/errors.hpp"

using namespace fwc;

namespace {

TraceCode lift(std::uint32_t p, std::uint32_t m, std::uint64_t N) {
    return TraceCode(CodeParams{Field::build(p, m), N, Variant::Lift});
}

TraceCode units(std::uint32_t p, std::uint32_t m) {
    return TraceCode(CodeParams{Field::build(p, m), 1, Variant::Units});
}

std::uint64_t naive_griesmer(std::uint64_t k, std::uint64_t d, std::uint64_t p) {
    std::uint64_t s = 0, pj = 1;
    for (std::uint64_t j = 0; j < k; ++j, pj *= p) s += (d + pj - 1) / pj;
    return s;
}

WeightDistribution dist_of(std::initializer_list<std::pair<const std::uint64_t, std::uint64_t>> rows) {
    WeightDistribution d;
    d.entries = rows;
    return d;
}

// Minimum Lee weight (< 3) of a nonzero vector orthogonal to every codeword,
// by enumerating all such vectors against the explicit codewords.
std::optional<std::uint64_t> dual_distance_oracle(const TraceCode& code) {
    const Ring& base = code.base_ring();
    const std::uint64_t L = code.coords().size();
    std::vector<std::vector<RingElem>> words;
    for (std::uint64_t k = 0; k < code.derived().ring_size; ++k) words.push_back(code.evaluate(code.ring_element(k)));
    const std::uint32_t p = code.p();
    std::vector<RingElem> nonzero;
    for (std::uint64_t k = 1; k < std::uint64_t{p} * p * p * p; ++k)
        nonzero.push_back({Fq{k / (p * p * p)}, Fq{k / (p * p) % p}, Fq{k / p % p}, Fq{k % p}});
    auto orthogonal = [&](const std::vector<std::pair<std::uint64_t, RingElem>>& y) {
        for (const auto& w : words) {
            RingElem acc = base.zero();
            for (const auto& [i, v] : y) acc = base.add(acc, base.mul(w[i], v));
            if (acc != base.zero()) return false;
        }
        return true;
    };
    std::optional<std::uint64_t> best;
    for (std::uint64_t i = 0; i < L; ++i)
        for (const auto& a : nonzero)
            if (base.lee_weight(a) <= 2 && orthogonal({{i, a}})) best = std::min<std::uint64_t>(best.value_or(9), base.lee_weight(a));
    for (std::uint64_t i = 0; i < L; ++i)
        for (std::uint64_t j = i + 1; j < L; ++j)
            for (const auto& a : nonzero)
                for (const auto& b : nonzero)
                    if (base.lee_weight(a) == 1 && base.lee_weight(b) == 1 && orthogonal({{i, a}, {j, b}}))
                        best = std::min<std::uint64_t>(best.value_or(9), 2);
    return best;
}

}  // namespace

TEST_CASE("griesmer sums") {
    CHECK(griesmer_sum(8, 7776, 3) == 11663);
    CHECK(griesmer_sum(8, 7777, 3) == 11669);
    CHECK(griesmer_sum(1, 5, 3) == 5);
    CHECK(griesmer_sum(0, 5, 3) == 0);
    CHECK(griesmer_sum(3, 1, 5) == 3);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 500; ++t) {
        const std::uint64_t p = std::vector<std::uint64_t>{3, 5, 7, 11}[rng() % 4];
        const std::uint64_t k = 1 + rng() % 12, d = 1 + rng() % 100000;
        CHECK(griesmer_sum(k, d, p) == naive_griesmer(k, d, p));
        CHECK(griesmer_sum(k, d + 1, p) >= griesmer_sum(k, d, p));
    }
    // saturation instead of overflow
    CHECK(griesmer_sum(200, UINT64_MAX - 1, 3) == UINT64_MAX);
}

TEST_CASE("griesmer verdicts") {
    const auto v = griesmer_optimal(11664, 8, 7776, 3);
    CHECK(v.optimal);
    CHECK(std::string(v.label()) == "griesmer-optimal");
    CHECK(v.sum_at_d == 11663);
    CHECK(v.sum_at_d_plus_1 == 11669);

    const auto w = griesmer_optimal(11664, 8, 7000, 3);
    CHECK(w.inconclusive);
    CHECK_FALSE(w.optimal);
    CHECK(std::string(w.label()) == "inconclusive");

    const auto x = griesmer_optimal(100, 8, 7776, 3);
    CHECK(x.infeasible);
    CHECK(std::string(x.label()) == "infeasible");
}

TEST_CASE("griesmer ceiling closed form") {
    const auto c = griesmer_ceiling_identity(3, 2, Variant::Lift);
    CHECK(c.d == 7776);
    CHECK_FALSE(c.holds);
    REQUIRE(c.first_bad_j);
    CHECK(*c.first_bad_j == 6);
    CHECK(c.exact_ceiling == 11);
    CHECK(c.closed_form == 12);

    const auto u = griesmer_ceiling_identity(3, 2, Variant::Units);
    CHECK(u.d == 15552);
    CHECK_FALSE(u.holds);

    // the exact sum at the two-weight distance never exceeds the length
    for (auto [p, m] : {std::pair{3u, 1u}, {3u, 2u}, {3u, 3u}, {7u, 1u}, {7u, 2u}}) {
        const std::uint64_t q = static_cast<std::uint64_t>(std::pow(p, m));
        const std::uint64_t n = 4 * (q - 1) / (p - 1) * q * q * q;
        const auto ci = griesmer_ceiling_identity(p, m, Variant::Lift);
        CHECK(griesmer_sum(4 * m, ci.d, p) <= n);
    }
}

TEST_CASE("sphere packing") {
    CHECK(sphere_packing_excludes(11664, 8, 3));
    CHECK_FALSE(sphere_packing_excludes(4, 2, 3));
    CHECK(sphere_packing_excludes(5, 2, 3));
    CHECK_FALSE(sphere_packing_excludes(0, 2, 3));
}

TEST_CASE("dual distance") {
    for (const TraceCode& code : {lift(3, 2, 1), units(3, 2), lift(3, 2, 2), lift(5, 1, 2)}) {
        const auto r = dual_lee_distance(code);
        REQUIRE(r.distance);
        CHECK(*r.distance == 2);
        CHECK(r.complete);
        CHECK(r.syndrome_verified);
        CHECK(r.orthogonality_verified);
        CHECK(r.witness.size() == 2);
        CHECK(r.witness_lee_weight == 2);
        CHECK(syndrome(code, r.witness) == code.ring().zero());
    }
    const TraceCode code = lift(3, 2, 1);
    const auto c2 = dual_lee_distance(code, 2);
    CHECK_FALSE(c2.distance);
    CHECK(c2.lower_bound == 2);
    CHECK_THROWS_AS(dual_lee_distance(code, 4), Error);
    CHECK_THROWS_AS(dual_lee_distance(code, 1), Error);

    const auto small = dual_lee_distance(code, 3, 10);
    CHECK_FALSE(small.notes.empty());
}

TEST_CASE("dual distance agrees with the explicit-codeword oracle at (3,1)") {
    for (const TraceCode& code : {lift(3, 1, 1), lift(3, 1, 2)}) {
        const auto r = dual_lee_distance(code);
        CHECK(r.distance == dual_distance_oracle(code));
    }
}

TEST_CASE("syndrome and direct orthogonality agree") {
    const TraceCode code = lift(3, 2, 1);
    const Ring& base = code.base_ring();
    std::mt19937_64 rng(12);
    int zero_syndromes = 0;
    for (int t = 0; t < 200; ++t) {
        std::vector<DualEntry> y;
        const int entries = 1 + static_cast<int>(rng() % 3);
        for (int e = 0; e < entries; ++e)
            y.push_back({rng() % code.coords().size(), RingElem{Fq{rng() % 3}, Fq{rng() % 3}, Fq{rng() % 3}, Fq{rng() % 3}}});
        const bool zero = syndrome(code, y) == code.ring().zero();
        zero_syndromes += zero;
        CHECK(zero == orthogonal_to_code(code, y));
    }
    const auto r = dual_lee_distance(code);
    for (std::uint32_t c = 1; c < 3; ++c) {
        auto y = r.witness;
        for (auto& e : y) e.value = base.scale(Fq{c}, e.value);
        CHECK(syndrome(code, y) == code.ring().zero());
        CHECK(orthogonal_to_code(code, y));
        y.front().value = base.add(y.front().value, base.one());
        CHECK_FALSE(orthogonal_to_code(code, y));
    }
}

TEST_CASE("minimality criterion") {
    const auto v = minimality_check(dist_of({{0, 1}, {7776, 6552}, {8748, 8}}), 3, 2);
    CHECK(v.all_minimal);
    CHECK(v.margin == "5832");
    CHECK(v.classification == SssClass::Dictatorial);

    const auto w = minimality_check(dist_of({{0, 1}, {2916, 4}, {3888, 6552}, {5832, 4}}), 3, 2);
    CHECK_FALSE(w.all_minimal);
    CHECK(w.margin == "-2916");
    CHECK(w.classification == SssClass::Undetermined);

    CHECK(minimality_check(dist_of({{0, 1}, {10, 5}}), 3, 3).classification == SssClass::Democratic);
    CHECK(minimality_check(dist_of({{0, 1}, {10, 5}}), 3).classification == SssClass::Undetermined);
    CHECK_THROWS_AS(minimality_check(dist_of({{0, 1}}), 3), Error);

    CHECK_FALSE(few_weight_minimality_condition(3, 4, 4));
    CHECK(few_weight_minimality_condition(3, 6, 2));
    CHECK_FALSE(few_weight_minimality_condition(5, 2, 3));
}

TEST_CASE("minimal codewords by brute force") {
    SUBCASE("repetition code") {
        const ExplicitCode c{3, {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}};
        CHECK(minimal_codewords_bruteforce(c) == std::vector<std::size_t>{1, 2});
    }
    SUBCASE("zero code") {
        const ExplicitCode c{3, {{0, 0, 0}}};
        CHECK(minimal_codewords_bruteforce(c).empty());
    }
    SUBCASE("span of (1,1,0) and (0,1,1)") {
        ExplicitCode c{3, {}};
        for (std::uint32_t a = 0; a < 3; ++a)
            for (std::uint32_t b = 0; b < 3; ++b) c.words.push_back({a, (a + b) % 3, b});
        // the six weight-2 words are minimal, the two full-support words are not
        CHECK(minimal_codewords_bruteforce(c).size() == 6);
    }
    SUBCASE("field subcode at (3,4,N=4)") {
        const TraceCode code = lift(3, 4, 4);
        const auto ex = subcode_explicit(code);
        CHECK(ex.words.size() == 81);
        const auto mins = minimal_codewords_bruteforce(ex);
        CHECK(mins.size() == 60);
        for (auto i : mins) {
            std::uint64_t w = 0;
            for (auto s : ex.words[i]) w += s != 0;
            CHECK(w == 6);
        }
    }
    SUBCASE("size guard") {
        ExplicitCode c{3, std::vector<std::vector<std::uint32_t>>(kBruteForceCodewordLimit + 1, {0})};
        CHECK_THROWS_AS(minimal_codewords_bruteforce(c), Error);
    }
}
