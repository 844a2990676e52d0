#include "fwc/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>

#include "fwc/errors.hpp"
#include "fwc/parallel.hpp"

namespace fwc {

namespace {

using u128 = unsigned __int128;
constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat(u128 v) { return v > kMax ? kMax : static_cast<std::uint64_t>(v); }

std::string to_decimal(__int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
    std::string s;
    while (u) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace

std::uint64_t griesmer_sum(std::uint64_t k, std::uint64_t d, std::uint64_t p) {
    require(p >= 2, "p must be at least 2");
    u128 sum = 0;
    u128 pj = 1;
    for (std::uint64_t j = 0; j < k; ++j) {
        if (pj >= d) {
            // every remaining ceiling is 1 (or 0 when d = 0)
            sum += static_cast<u128>(k - j) * (d > 0 ? 1 : 0);
            break;
        }
        sum += (d + pj - 1) / pj;
        pj *= p;
    }
    return sat(sum);
}

const char* GriesmerVerdict::label() const noexcept {
    if (infeasible) return "infeasible";
    if (optimal) return "griesmer-optimal";
    return "inconclusive";
}

GriesmerVerdict griesmer_optimal(std::uint64_t n, std::uint64_t k, std::uint64_t d, std::uint64_t p) {
    GriesmerVerdict v;
    v.n = n;
    v.k = k;
    v.d = d;
    v.p = p;
    v.sum_at_d = griesmer_sum(k, d, p);
    v.sum_at_d_plus_1 = griesmer_sum(k, d + 1, p);
    v.infeasible = v.sum_at_d > n;
    v.optimal = !v.infeasible && v.sum_at_d_plus_1 > n;
    v.inconclusive = !v.infeasible && !v.optimal;
    return v;
}

CeilingIdentityCheck griesmer_ceiling_identity(std::uint64_t p, std::uint64_t m, Variant variant) {
    const std::uint64_t c = variant == Variant::Lift ? 4 : 4 * (p - 1);
    CeilingIdentityCheck chk;
    chk.d = c * (ipow(p, static_cast<unsigned>(4 * m - 1)) - ipow(p, static_cast<unsigned>(3 * m - 1)));
    for (std::uint64_t j = 3 * m; j <= 4 * m - 1; ++j) {
        const std::uint64_t pj = ipow(p, static_cast<unsigned>(j));
        const std::uint64_t exact = (chk.d + pj - 1) / pj;
        const std::uint64_t closed = c * ipow(p, static_cast<unsigned>(4 * m - j - 1));
        if (exact != closed) {
            chk.holds = false;
            chk.first_bad_j = j;
            chk.exact_ceiling = exact;
            chk.closed_form = closed;
            break;
        }
    }
    return chk;
}

bool sphere_packing_excludes(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    if (n == 0) return false;
    const u128 rhs = 1 + static_cast<u128>(n) * (p - 1);
    u128 pk = 1;
    for (std::uint64_t i = 0; i < k && pk < rhs; ++i) pk *= p;
    return pk < rhs;
}

RingElem syndrome(const TraceCode& code, std::span<const DualEntry> y) {
    const Ring& ring = code.ring();
    RingElem acc = ring.zero();
    for (const auto& e : y) {
        if (e.index >= code.coords().size()) fail(ErrorKind::InvalidArgument, "dual entry index out of range");
        acc = ring.add(acc, ring.mul(e.value, code.coords().at(e.index)));
    }
    return acc;
}

bool orthogonal_to_code(const TraceCode& code, std::span<const DualEntry> y) {
    const Field& f = code.field();
    const Ring& ring = code.ring();
    const Ring& base = code.base_ring();
    for (std::uint32_t k = 0; k < f.m(); ++k) {
        const Fq e = f.exp(k);
        for (const RingElem& r : {RingElem{e, {}, {}, {}}, RingElem{{}, e, {}, {}}, RingElem{{}, {}, e, {}}, RingElem{{}, {}, {}, e}}) {
            RingElem inner = base.zero();
            for (const auto& entry : y) {
                const RingElem t = ring.trace(ring.mul(r, code.coords().at(entry.index)));
                inner = base.add(inner, base.mul(t, entry.value));
            }
            if (inner != base.zero()) return false;
        }
    }
    return true;
}

DualDistanceResult dual_lee_distance(const TraceCode& code, unsigned cap, std::uint64_t work_budget, unsigned threads) {
    if (cap != 2 && cap != 3) fail(ErrorKind::InvalidArgument, "dual distance cap must be 2 or 3");
    const Ring& ring = code.ring();
    const Ring& base = code.base_ring();
    const auto& coords = code.coords();
    const std::uint64_t L = coords.size();
    const std::uint32_t p = code.p();
    if (!threads) threads = default_threads();

    DualDistanceResult res;
    res.cap = cap;

    // Nonzero base-ring elements by Lee weight, in index order.
    std::vector<RingElem> weight1, weight2;
    for (std::uint32_t a = 0; a < p; ++a)
        for (std::uint32_t b = 0; b < p; ++b)
            for (std::uint32_t c = 0; c < p; ++c)
                for (std::uint32_t d = 0; d < p; ++d) {
                    const RingElem r{Fq{a}, Fq{b}, Fq{c}, Fq{d}};
                    const unsigned w = base.lee_weight(r);
                    if (w == 1) weight1.push_back(r);
                    if (w == 2) weight2.push_back(r);
                }

    auto finish = [&](std::vector<DualEntry> y, std::uint64_t distance) {
        res.distance = distance;
        res.lower_bound = distance;
        res.witness = std::move(y);
        std::uint64_t w = 0;
        for (const auto& e : res.witness) w += base.lee_weight(e.value);
        res.witness_lee_weight = w;
        res.syndrome_verified = syndrome(code, res.witness) == ring.zero();
        res.orthogonality_verified = orthogonal_to_code(code, res.witness);
        if (!res.syndrome_verified || !res.orthogonality_verified || w != distance)
            fail(ErrorKind::Mismatch, "dual witness failed re-verification");
        return res;
    };

    // Single-coordinate vectors: alpha x = 0 with alpha != 0. Every coordinate
    // is a unit, so none exist; the scan confirms it when affordable.
    std::vector<const std::vector<RingElem>*> singles{&weight1};
    if (cap == 3) singles.push_back(&weight2);
    std::uint64_t single_work = 0;
    for (auto* s : singles) single_work += s->size();
    if (static_cast<u128>(single_work) * L <= work_budget) {
        for (std::uint64_t i = 0; i < L; ++i) {
            const RingElem x = coords.at(i);
            for (auto* s : singles)
                for (const auto& alpha : *s) {
                    ++res.candidates_examined;
                    if (ring.mul(alpha, x) == ring.zero()) return finish({{i, alpha}}, base.lee_weight(alpha));
                }
        }
    } else {
        res.notes.push_back("single-coordinate phase skipped on budget; excluded because every coordinate is a unit");
    }
    res.lower_bound = 2;
    if (cap == 2) return res;

    // Two coordinates: alpha x + beta x' = 0, i.e. x' = g x with g = -beta^{-1} alpha.
    struct Multiplier {
        RingElem g, alpha, beta;
    };
    std::vector<Multiplier> mults;
    for (const auto& alpha : weight1)
        for (const auto& beta : weight1) {
            const RingElem g = base.neg(base.mul(base.inv(beta), alpha));
            if (std::none_of(mults.begin(), mults.end(), [&](const Multiplier& m) { return m.g == g; }))
                mults.push_back({g, alpha, beta});
        }

    std::uint64_t limit = L;
    if (static_cast<u128>(L) * mults.size() > work_budget) {
        limit = work_budget / mults.size();
        res.complete = false;
    }
    constexpr std::uint64_t kNone = kMax;
    std::atomic<std::uint64_t> best{kNone};  // i * |mults| + k of the first hit
    std::atomic<std::uint64_t> examined{0};
    std::mutex hit_mutex;
    std::uint64_t hit_target = 0;
    parallel_blocks(limit, threads, [&](std::uint64_t b, std::uint64_t e, unsigned) {
        std::uint64_t local = 0;
        for (std::uint64_t i = b; i < e; ++i) {
            if (best.load(std::memory_order_relaxed) < i * mults.size()) break;
            const RingElem x = coords.at(i);
            for (std::size_t k = 0; k < mults.size(); ++k) {
                ++local;
                const std::int64_t j = coords.index_of(ring.mul(mults[k].g, x));
                if (j >= 0 && static_cast<std::uint64_t>(j) != i) {
                    const std::uint64_t key = i * mults.size() + k;
                    std::lock_guard lock(hit_mutex);
                    if (key < best.load()) {
                        best = key;
                        hit_target = static_cast<std::uint64_t>(j);
                    }
                    examined += local;
                    return;
                }
            }
        }
        examined += local;
    });
    res.candidates_examined += examined.load();
    if (best.load() != kNone) {
        const std::uint64_t i = best.load() / mults.size();
        const Multiplier& mlt = mults[best.load() % mults.size()];
        return finish({{i, mlt.alpha}, {hit_target, mlt.beta}}, 2);
    }
    if (res.complete) {
        res.lower_bound = 3;
    } else {
        res.notes.push_back("consistent with distance >= 3 on the searched prefix, not exhaustively searched");
    }
    return res;
}

const char* to_string(SssClass c) noexcept {
    switch (c) {
        case SssClass::Dictatorial: return "dictatorial";
        case SssClass::Democratic: return "democratic";
        case SssClass::Undetermined: return "undetermined";
    }
    return "?";
}

SssVerdict minimality_check(const WeightDistribution& dist, std::uint64_t p, std::optional<std::uint64_t> dual_distance) {
    const auto lo = dist.min_nonzero();
    const auto hi = dist.max_nonzero();
    if (!lo || !hi) fail(ErrorKind::InvalidArgument, "distribution has no nonzero weights");
    SssVerdict v;
    v.p = p;
    v.w_min = *lo;
    v.w_max = *hi;
    const __int128 margin = static_cast<__int128>(p) * v.w_min - static_cast<__int128>(p - 1) * v.w_max;
    v.margin = to_decimal(margin);
    v.all_minimal = margin > 0;
    v.dual_distance = dual_distance;
    if (v.all_minimal && dual_distance) v.classification = *dual_distance == 2 ? SssClass::Dictatorial : SssClass::Democratic;
    return v;
}

bool few_weight_minimality_condition(std::uint64_t p, std::uint64_t m, std::uint64_t N2) {
    // N2 p - 1 < p^{m/2}, squared to stay in integers for odd m
    const u128 lhs = static_cast<u128>(N2) * p;
    if (lhs == 0) return true;
    return (lhs - 1) * (lhs - 1) < static_cast<u128>(ipow(p, static_cast<unsigned>(m)));
}

std::vector<std::size_t> minimal_codewords_bruteforce(const ExplicitCode& code) {
    if (code.words.size() > kBruteForceCodewordLimit)
        fail(ErrorKind::InvalidArgument, "minimal codeword brute force is limited to 1e4 codewords");
    const std::uint32_t p = code.p;
    const std::size_t count = code.words.size();
    std::vector<std::vector<std::size_t>> supports(count);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < code.words[i].size(); ++j)
            if (code.words[i][j] % p) supports[i].push_back(j);

    auto is_multiple = [&](std::size_t a, std::size_t b) {
        // a = lambda b for some lambda in F_p^*, given equal supports
        const auto& wa = code.words[a];
        const auto& wb = code.words[b];
        const std::size_t j0 = supports[b].front();
        for (std::uint32_t lambda = 1; lambda < p; ++lambda) {
            if (wa[j0] % p != lambda * wb[j0] % p) continue;
            bool all = true;
            for (std::size_t j : supports[b]) all = all && wa[j] % p == lambda * wb[j] % p;
            return all;
        }
        return false;
    };

    std::vector<std::size_t> minimal;
    for (std::size_t i = 0; i < count; ++i) {
        if (supports[i].empty()) continue;
        bool ok = true;
        for (std::size_t k = 0; k < count && ok; ++k) {
            if (k == i || supports[k].empty() || supports[k].size() > supports[i].size()) continue;
            if (!std::includes(supports[i].begin(), supports[i].end(), supports[k].begin(), supports[k].end())) continue;
            ok = supports[k].size() == supports[i].size() && is_multiple(k, i);
        }
        if (ok) minimal.push_back(i);
    }
    return minimal;
}

ExplicitCode subcode_explicit(const TraceCode& code) {
    if (code.q() > kBruteForceCodewordLimit) fail(ErrorKind::InvalidArgument, "subcode too large for explicit enumeration");
    ExplicitCode out;
    out.p = code.p();
    for (std::uint64_t b = 0; b < code.q(); ++b) out.words.push_back(eval_field_subcode(code.field(), Fq{b}, code.derived()));
    return out;
}

}  // namespace fwc
