#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <tuple>

#include "fwc/analysis.hpp"
#include "fwc/errors.hpp"

using namespace fwc;

namespace {

TraceCode lift(std::uint32_t p, std::uint32_t m, std::uint64_t N) {
    return TraceCode(CodeParams{Field::build(p, m), N, Variant::Lift});
}

TraceCode units(std::uint32_t p, std::uint32_t m) {
    return TraceCode(CodeParams{Field::build(p, m), 1, Variant::Units});
}

using Rows = std::map<std::uint64_t, std::uint64_t>;

// Reference: evaluate every coordinate, apply the Gray map, count symbols.
std::vector<std::uint64_t> reference_histogram(const TraceCode& code, const RingElem& r) {
    std::vector<std::uint64_t> hist(code.p(), 0);
    for (auto s : code.gray_image(r)) ++hist[s];
    return hist;
}

std::uint64_t reference_weight(const TraceCode& code, const RingElem& r) {
    const auto h = reference_histogram(code, r);
    return code.derived().gray_length - h[0];
}

Rows nonzero_rows(const WeightDistribution& d) {
    Rows out;
    for (const auto& [w, f] : d.entries)
        if (w) out[w] = f;
    return out;
}

const Prediction& find(const std::vector<Prediction>& preds, Regime r) {
    for (const auto& p : preds)
        if (p.regime == r) return p;
    FAIL("regime missing");
    return preds.front();
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no exception");
    return ErrorKind::Io;
}

}  // namespace

TEST_CASE("weight engine agrees with the reference evaluation") {
    for (const TraceCode& code : {lift(3, 2, 1), lift(3, 2, 2), units(3, 2), lift(5, 1, 2), lift(7, 1, 3), lift(3, 3, 2)}) {
        const WeightEngine engine(code);
        std::mt19937_64 rng(code.p() * 100 + code.m());
        std::vector<RingElem> rs{code.ring().zero(), code.ring().one(), code.ring().uv(), code.ring().u(), code.ring().v()};
        for (int t = 0; t < 15; ++t) rs.push_back(code.ring_element(rng() % code.derived().ring_size));
        for (const auto& r : rs) {
            CHECK(engine.lee_weight(r) == reference_weight(code, r));
            CHECK(engine.symbol_histogram(r) == reference_histogram(code, r));
            CHECK(codeword_lee_weight(r, code) == code.base_ring().lee_weight(code.evaluate(r)));
        }
    }
}

TEST_CASE("specific weights at (3,2)") {
    const TraceCode code = lift(3, 2, 1);
    const auto& R = code.ring();
    CHECK(codeword_lee_weight(R.zero(), code) == 0);
    CHECK(codeword_lee_weight(R.uv(), code) == 8748);
    CHECK(codeword_lee_weight(R.one(), code) == 7776);
    CHECK(codeword_lee_weight(R.u(), code) == 7776);
    CHECK(codeword_lee_weight(R.add(R.u(), R.v()), code) == 7776);
    const TraceCode u = units(3, 2);
    CHECK(codeword_lee_weight(u.ring().uv(), u) == 17496);
    CHECK(codeword_lee_weight(u.ring().one(), u) == 15552);
}

TEST_CASE("weights are invariant under F_p^* scaling") {
    const TraceCode code = lift(5, 1, 2);
    const WeightEngine engine(code);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        const RingElem r = code.ring_element(rng() % code.derived().ring_size);
        for (std::uint64_t c = 2; c < 5; ++c) CHECK(engine.lee_weight(code.ring().scale(Fq{c}, r)) == engine.lee_weight(r));
    }
}

TEST_CASE("exhaustive and class-based distributions agree") {
    RunOptions opts;
    opts.samples = 50;
    for (const TraceCode& code :
         {lift(3, 2, 1), lift(3, 2, 2), lift(3, 2, 4), lift(3, 2, 8), units(3, 2), lift(3, 1, 1), lift(3, 1, 2),
          lift(5, 1, 1), lift(5, 1, 2), lift(5, 1, 4), lift(7, 1, 1), lift(7, 1, 3), lift(7, 1, 6), units(5, 1)}) {
        CAPTURE(code.p());
        CAPTURE(code.m());
        CAPTURE(code.params().N);
        const auto ex = distribution_exhaustive(code, opts);
        const auto cl = distribution_by_class(code, opts);
        CHECK(ex.method == Method::Exhaustive);
        CHECK(cl.distribution.method == Method::ClassBased);
        CHECK(ex.entries == cl.distribution.entries);
        CHECK(ex.total() == code.derived().ring_size);
        // a single leading coordinate (n = 1) leaves a kernel {alpha uv : tr(alpha) = 0}
        CHECK(ex.entries.at(0) == (code.derived().n == 1 && code.m() > 1 ? code.q() / code.p() : 1));
        std::uint64_t card = 1;
        for (const auto& c : cl.classes) card += c.cardinality;
        CHECK(card == code.derived().ring_size);
    }
}

TEST_CASE("two-weight distributions") {
    CHECK(nonzero_rows(distribution_exhaustive(lift(3, 2, 1))) == Rows{{7776, 6552}, {8748, 8}});
    CHECK(nonzero_rows(distribution_exhaustive(units(3, 2))) == Rows{{15552, 6552}, {17496, 8}});
    RunOptions opts;
    opts.samples = 10;
    const auto cl = distribution_by_class(lift(3, 3, 1), opts);
    CHECK(nonzero_rows(cl.distribution) == Rows{{682344, 531414}, {708588, 26}});
    CHECK(cl.samples_per_class == 10);
    for (const auto& c : cl.classes) CHECK(c.samples_checked == 10);
}

TEST_CASE("few-weight distribution at (3,2,N=2)") {
    const TraceCode code = lift(3, 2, 2);
    const auto d = distribution_exhaustive(code);
    CHECK(nonzero_rows(d) == Rows{{2916, 4}, {3888, 6552}, {5832, 4}});
    const auto preds = predict(code);
    const auto& fw = find(preds, Regime::FewWeightBounds);
    CHECK(fw.applicable);
    CHECK(compare(d, fw).match);
    REQUIRE(fw.lower_bound);
    CHECK(*fw.lower_bound <= 2916);
}

TEST_CASE("ideal sweep at (5,2,N=3)") {
    const TraceCode code = lift(5, 2, 3);
    RunOptions opts;
    opts.samples = 100;
    const auto res = distribution_ideal_sweep(code, opts);
    CHECK(res.uv_line == std::map<std::uint64_t, std::uint64_t>{{62500, 8}, {125000, 16}});
    CHECK(res.other_maximal == std::map<std::uint64_t, std::uint64_t>{{100000, 15600}});
    CHECK(res.unit_weight == 100000);
    CHECK(res.distribution.method == Method::Sampled);
    CHECK(nonzero_rows(res.distribution) == Rows{{62500, 8}, {100000, 390600}, {125000, 16}});
    CHECK(res.ideal.total() == 15625);

    const auto cl = distribution_by_class(code, opts);
    CHECK(cl.distribution.entries == res.distribution.entries);
    const auto preds = predict(code);
    CHECK(compare(res.distribution, find(preds, Regime::FewWeightBounds)).match);
    CHECK(compare(res.distribution, find(preds, Regime::ThreeWeightGeneral)).match);
}

TEST_CASE("predictions") {
    SUBCASE("two-weight lift") {
        const auto preds = predict(lift(3, 2, 1));
        const auto& pr = find(preds, Regime::TwoWeightLift);
        CHECK(pr.applicable);
        REQUIRE(pr.rows.size() == 2);
        CHECK(pr.rows[0].weight == 7776);
        CHECK(pr.rows[0].frequency == 6552);
        CHECK(pr.rows[1].weight == 8748);
        CHECK(pr.rows[1].frequency == 8);
        CHECK_FALSE(find(predict(lift(3, 2, 2)), Regime::TwoWeightLift).applicable);
        // odd m and p = 1 mod 4
        CHECK_FALSE(find(predict(lift(5, 1, 1)), Regime::TwoWeightLift).applicable);
        CHECK(find(predict(lift(3, 3, 1)), Regime::TwoWeightLift).applicable);
    }
    SUBCASE("two-weight units") {
        const auto preds = predict(units(3, 2));
        REQUIRE(preds.size() == 1);
        CHECK(preds[0].applicable);
        CHECK(preds[0].rows[0].weight == 15552);
        CHECK(preds[0].rows[1].weight == 17496);
    }
    SUBCASE("three-weight at (3,4,N=4)") {
        const TraceCode code = lift(3, 4, 4);
        const auto preds = predict(code);
        const auto& pr = find(preds, Regime::ThreeWeightGeneral);
        CHECK(pr.applicable);
        CHECK(pr.l == 1u);
        CHECK(pr.t == 2u);
        Rows rows;
        std::uint64_t sum = 0;
        for (const auto& r : pr.rows) {
            rows[r.weight] = r.frequency;
            sum += r.frequency;
        }
        CHECK(rows == Rows{{12754584, 60}, {14171760, 43046640}, {19131876, 20}});
        CHECK(sum == 43046720);  // p^{4m} - 1
        std::uint64_t printed = 0;
        for (const auto& r : pr.printed_rows) printed += r.frequency;
        CHECK(printed != sum);
        CHECK(pr.errata == std::vector<std::string>{"three_weight_table_frequency_sum"});

        const auto& sc = find(preds, Regime::SubcodeGeneral);
        CHECK(sc.applicable);
        REQUIRE(sc.rows.size() == 2);
        CHECK(sc.rows[0].weight == 6);
        CHECK(sc.rows[0].frequency == 60);
        CHECK(sc.rows[1].weight == 9);
        CHECK(sc.rows[1].frequency == 20);
        CHECK(compare(subcode_distribution(code), sc).match);
        CHECK_FALSE(find(preds, Regime::ThreeWeightEvenN2).applicable);
    }
    SUBCASE("few-weight bounds interval") {
        const auto preds = predict(lift(5, 2, 3));
        const auto& pr = find(preds, Regime::FewWeightBounds);
        CHECK(pr.applicable);
        CHECK(pr.max_nonzero_weights == 4u);
        REQUIRE(pr.lower_bound);
        REQUIRE(pr.upper_bound);
        CHECK(*pr.lower_bound <= 62500);
        CHECK(62500 <= *pr.upper_bound);
    }
}

TEST_CASE("even-N2 parity case instances for p <= 7, m <= 4") {
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> found;
    for (std::uint32_t p : {3u, 5u, 7u})
        for (std::uint32_t m = 1; m <= 4; ++m) {
            const Field f = Field::build(p, m);
            for (std::uint64_t N = 1; N < f.q(); ++N) {
                if ((f.q() - 1) % N) continue;
                const TraceCode code(CodeParams{f, N, Variant::Lift});
                const auto preds = predict(code);
                const bool ring = find(preds, Regime::ThreeWeightEvenN2).applicable;
                const bool sub = find(preds, Regime::SubcodeEvenN2).applicable;
                CHECK(ring == sub);
                if (!ring) continue;
                found.emplace_back(p, m, N);
                // the field subcode is small enough to count directly
                const auto& sc = find(preds, Regime::SubcodeEvenN2);
                CHECK(compare(subcode_distribution(code), sc).match);
            }
        }
    const decltype(found) expected{{7, 4, 10}, {7, 4, 30}};
    CHECK(found == expected);

    const auto preds = predict(lift(7, 4, 10));
    const auto& sc = find(preds, Regime::SubcodeEvenN2);
    REQUIRE(sc.rows.size() == 2);
    CHECK(sc.rows[0].weight == 28);
    CHECK(sc.rows[0].frequency == 240);
    CHECK(sc.rows[1].weight == 35);
    CHECK(sc.rows[1].frequency == 2160);
    CHECK(sc.l == 2u);
    CHECK(sc.t == 1u);
}

TEST_CASE("compare reports mismatches") {
    const TraceCode code = lift(3, 2, 1);
    const auto preds = predict(code);
    const auto& pr = find(preds, Regime::TwoWeightLift);
    auto d = distribution_exhaustive(code);
    CHECK(compare(d, pr).match);
    d.entries[7776] -= 1;
    d.entries[7777] += 1;
    const auto c = compare(d, pr);
    CHECK_FALSE(c.match);
    CHECK(c.mismatches.size() == 2);
    auto z = distribution_exhaustive(code);
    z.entries.erase(0);
    CHECK_FALSE(compare(z, pr).match);
    CHECK_FALSE(compare(z, find(predict(lift(3, 2, 2)), Regime::TwoWeightLift)).match);
}

TEST_CASE("work budget") {
    const TraceCode code = lift(3, 2, 1);
    CHECK(exhaustive_work(code) == 6561ULL * 2916);
    RunOptions opts;
    opts.work_budget = 1000;
    CHECK(kind_of([&] { distribution_exhaustive(code, opts); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("theta sums") {
    const TraceCode code = lift(3, 2, 1);
    const double s = static_cast<double>(code.derived().gray_length);
    CHECK(std::abs(theta(code.ring().zero(), code) - std::complex<double>(s, 0)) < 1e-9);
    const std::vector<std::uint32_t> y{0, 1, 2};
    CHECK(std::abs(big_theta(y, 3)) < 1e-12);
    const std::vector<std::uint32_t> z{0, 0, 1};
    const std::complex<double> eta = std::polar(1.0, 2 * std::numbers::pi / 3);
    CHECK(std::abs(big_theta(z, 3) - (2.0 + eta)) < 1e-12);

    // Hamming weight from the character sums: wt = s (p-1)/p - (1/p) sum_{tau != 0} Theta_tau
    for (const TraceCode& c : {lift(3, 2, 1), lift(3, 2, 2), lift(5, 1, 2), lift(7, 1, 3)}) {
        std::mt19937_64 rng(c.p());
        const WeightEngine engine(c);
        const double len = static_cast<double>(c.derived().gray_length);
        for (int t = 0; t < 20; ++t) {
            const RingElem r = c.ring_element(rng() % c.derived().ring_size);
            const auto hist = engine.symbol_histogram(r);
            std::complex<double> acc = 0;
            for (std::uint32_t tau = 1; tau < c.p(); ++tau) acc += theta_from_histogram(hist, c.p(), tau);
            const double predicted = len * (c.p() - 1) / c.p() - acc.real() / c.p();
            CHECK(std::abs(predicted - static_cast<double>(engine.lee_weight(r))) < 1e-6);
            CHECK(std::abs(acc.imag()) < 1e-6);
        }
    }
}

TEST_CASE("identity checks pass") {
    for (const TraceCode& code : {lift(3, 2, 1), lift(3, 2, 2), units(3, 2), lift(7, 1, 3)}) {
        const auto rep = verify_identities(code, 30, 11);
        for (const auto& c : rep.checks) {
            CAPTURE(c.name);
            CAPTURE(c.witness);
            CHECK(c.passed);
            CHECK(c.trials > 0);
        }
        CHECK(rep.passed());
        std::set<std::string> names;
        for (const auto& c : rep.checks) names.insert(c.name);
        CHECK(names.count("theta_weight_identity"));
        CHECK(names.count("lee_weight_character_formula"));
        CHECK(names.count("gauss_sum_modulus"));
        CHECK(names.count("theta_conjugate_pairing"));
    }
}

TEST_CASE("distribution helpers") {
    WeightDistribution a, b;
    a.add(0, 1);
    a.add(5, 2);
    b.add(5, 1);
    b.add(9, 4);
    a.merge(b);
    CHECK(a.total() == 8);
    CHECK(a.distinct_nonzero() == 2);
    CHECK(a.min_nonzero() == 5u);
    CHECK(a.max_nonzero() == 9u);
    WeightDistribution empty;
    CHECK_FALSE(empty.min_nonzero());
}
