#include "fwc/construction.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "fwc/errors.hpp"

namespace fwc {

const char* to_string(Variant v) noexcept { return v == Variant::Lift ? "lift" : "units"; }

Variant parse_variant(const std::string& text) {
    if (text == "lift") return Variant::Lift;
    if (text == "units") return Variant::Units;
    fail(ErrorKind::InvalidArgument, "variant must be 'lift' or 'units'");
}

std::vector<Fq> build_D(const Field& f, std::uint64_t N, std::uint64_t n) {
    const std::uint64_t h = (f.q() - 1) / (f.p() - 1);
    std::vector<Fq> D;
    D.reserve(n);
    std::unordered_set<std::uint64_t> residues;
    for (std::uint64_t j = 0; j < n; ++j) {
        const std::uint64_t k = static_cast<std::uint64_t>(static_cast<unsigned __int128>(N) * j % (f.q() - 1));
        D.push_back(f.exp(k));
        // xi^k and xi^k' are F_p^*-equivalent iff k = k' mod h
        if (!residues.insert(k % h).second) fail(ErrorKind::Domain, "coset representatives collapse modulo F_p^*");
    }
    return D;
}

DerivedParams derive_params(const CodeParams& cp) {
    const Field& f = cp.field;
    const std::uint64_t q = f.q();
    const unsigned __int128 q2 = static_cast<unsigned __int128>(q) * q;
    if (q2 * q2 >= (static_cast<unsigned __int128>(1) << 63))
        fail(ErrorKind::InvalidArgument, "p^{4m} must stay below 2^63 for exact 64-bit counting");

    DerivedParams dp;
    dp.ring_size = q * q * q * q;
    if (cp.variant == Variant::Lift) {
        if (cp.N == 0 || (q - 1) % cp.N != 0) fail(ErrorKind::InvalidArgument, "N does not divide p^m - 1");
        const std::uint64_t h = (q - 1) / (f.p() - 1);
        dp.N2 = std::gcd(cp.N, h);
        dp.N1 = cp.N / dp.N2 * h;
        dp.n = dp.N1 / cp.N;
        dp.D = build_D(f, cp.N, dp.n);
    } else {
        dp.n = q - 1;
        dp.D.reserve(q - 1);
        for (std::uint64_t k = 0; k + 1 < q; ++k) dp.D.push_back(f.exp(k));
        dp.notes.push_back("variant units ignores N; the defining set is the full unit group");
    }
    dp.L_size = dp.n * q * q * q;
    dp.gray_length = 4 * dp.L_size;
    return dp;
}

CoordinateSpace::CoordinateSpace(std::vector<Fq> leading, std::uint64_t q)
    : leading_(std::move(leading)), pos_(q, -1), q_(q), q3_(q * q * q) {
    for (std::size_t i = 0; i < leading_.size(); ++i) pos_[leading_[i].idx] = static_cast<std::int64_t>(i);
}

RingElem CoordinateSpace::at(std::uint64_t index) const noexcept {
    const std::uint64_t i0 = index / q3_;
    std::uint64_t rest = index % q3_;
    const std::uint64_t x3 = rest % q_;
    rest /= q_;
    const std::uint64_t x2 = rest % q_;
    const std::uint64_t x1 = rest / q_;
    return {leading_[i0], Fq{x1}, Fq{x2}, Fq{x3}};
}

std::int64_t CoordinateSpace::index_of(const RingElem& x) const noexcept {
    if (!leading_contains(x.a) || x.b.idx >= q_ || x.c.idx >= q_ || x.d.idx >= q_) return -1;
    const auto i0 = static_cast<std::uint64_t>(pos_[x.a.idx]);
    return static_cast<std::int64_t>(((i0 * q_ + x.b.idx) * q_ + x.c.idx) * q_ + x.d.idx);
}

std::pair<std::uint64_t, std::uint64_t> CoordinateSpace::block(unsigned k, unsigned workers) const noexcept {
    const std::uint64_t total = size();
    const std::uint64_t chunk = total / workers, extra = total % workers;
    const std::uint64_t begin = k * chunk + std::min<std::uint64_t>(k, extra);
    return {begin, begin + chunk + (k < extra ? 1 : 0)};
}

TraceCode::TraceCode(CodeParams params)
    : params_(std::move(params)),
      derived_(derive_params(params_)),
      ring_(params_.field),
      base_(Field::build(params_.field.p(), 1)),
      coords_(derived_.D, params_.field.q()) {}

RingElem TraceCode::ring_element(std::uint64_t index) const noexcept {
    const std::uint64_t q = this->q();
    const std::uint64_t d = index % q;
    index /= q;
    const std::uint64_t c = index % q;
    index /= q;
    const std::uint64_t b = index % q;
    return {Fq{index / q}, Fq{b}, Fq{c}, Fq{d}};
}

std::uint64_t TraceCode::ring_index(const RingElem& r) const noexcept {
    const std::uint64_t q = this->q();
    return ((r.a.idx * q + r.b.idx) * q + r.c.idx) * q + r.d.idx;
}

std::vector<RingElem> TraceCode::evaluate(const RingElem& r) const {
    std::vector<RingElem> out(coords_.size());
    evaluate(r, [&](std::uint64_t i, const RingElem& e) { out[i] = e; });
    return out;
}

std::vector<std::uint32_t> TraceCode::gray_image(const RingElem& r) const {
    const auto word = evaluate(r);
    return base_.gray(word).entries;
}

std::vector<std::uint32_t> eval_field_subcode(const Field& f, Fq b, const DerivedParams& dp) {
    std::vector<std::uint32_t> out;
    out.reserve(dp.D.size());
    for (Fq d : dp.D) out.push_back(f.trace(f.mul(b, d)));
    return out;
}

CoordinateAction coordinate_action(const TraceCode& code, const RingElem& g) {
    const auto& coords = code.coords();
    if (coords.index_of(g) < 0) fail(ErrorKind::InvalidArgument, "group element must belong to the defining set");
    const Field& f = code.field();
    const std::uint32_t p = code.p();
    CoordinateAction act;
    act.target.resize(coords.size());
    act.scalar.resize(coords.size());
    coords.for_each(0, coords.size(), [&](std::uint64_t i, const RingElem& x) {
        const RingElem y = code.ring().mul(g, x);
        for (std::uint32_t c = 1; c < p; ++c) {
            if (coords.leading_contains(f.scale(c, y.a))) {
                act.target[i] = static_cast<std::uint64_t>(coords.index_of(code.ring().scale(Fq{c}, y)));
                act.scalar[i] = c;
                return;
            }
        }
        fail(ErrorKind::Domain, "product left the defining set up to scalars");
    });
    return act;
}

GroupActionReport group_action_spotcheck(const TraceCode& code, std::uint64_t trials, std::uint64_t seed) {
    const auto& coords = code.coords();
    if (coords.size() > 10000) fail(ErrorKind::InvalidArgument, "group action spot check needs at most 1e4 coordinates");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick_coord(0, coords.size() - 1);
    std::uniform_int_distribution<std::uint64_t> pick_r(0, code.derived().ring_size - 1);
    const std::uint32_t p = code.p();
    GroupActionReport rep;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const RingElem g = coords.at(pick_coord(rng));
        const RingElem r = code.ring_element(pick_r(rng));
        const auto act = coordinate_action(code, g);
        const auto word = code.evaluate(r);
        const auto image = code.evaluate(code.ring().mul(r, g));
        bool ok = true;
        for (std::uint64_t i = 0; i < coords.size() && ok; ++i) {
            const RingElem& moved = word[act.target[i]];
            const RingElem& expect = image[i];
            const std::uint64_t c = act.scalar[i];
            if (c != 1) ++rep.scaled_coordinates;
            ok = moved.a.idx == c * expect.a.idx % p && moved.b.idx == c * expect.b.idx % p &&
                 moved.c.idx == c * expect.c.idx % p && moved.d.idx == c * expect.d.idx % p;
        }
        ++rep.trials;
        if (!ok) {
            ++rep.failures;
            rep.witnesses.push_back("g=" + code.ring().render(g) + " r=" + code.ring().render(r));
        }
    }
    return rep;
}

void export_codewords(const TraceCode& code, const std::string& path, std::uint64_t first, std::uint64_t count) {
    const auto& dp = code.derived();
    if (code.p() > 255) fail(ErrorKind::InvalidArgument, "byte export needs p <= 255");
    if (first > dp.ring_size || count > dp.ring_size - first)
        fail(ErrorKind::InvalidArgument, "requested rows exceed the number of codewords");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
    std::vector<char> row(dp.gray_length);
    const std::uint32_t p = code.p();
    for (std::uint64_t k = first; k < first + count; ++k) {
        code.evaluate(code.ring_element(k), [&](std::uint64_t i, const RingElem& e) {
            const auto g = gray_symbols(p, static_cast<std::uint32_t>(e.a.idx), static_cast<std::uint32_t>(e.b.idx),
                                        static_cast<std::uint32_t>(e.c.idx), static_cast<std::uint32_t>(e.d.idx));
            for (int s = 0; s < 4; ++s) row[4 * i + s] = static_cast<char>(g[s]);
        });
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out) fail(ErrorKind::Io, "write failed for " + path);

    const auto mod = code.field().modulus();
    nlohmann::json side = {
        {"p", code.p()},
        {"m", code.m()},
        {"N", code.params().N},
        {"variant", to_string(code.params().variant)},
        {"modulus", std::vector<std::uint32_t>(mod.begin(), mod.end())},
        {"ordering_version", kOrderingVersion},
        {"row_length", dp.gray_length},
        {"first_r_index", first},
        {"rows", count},
    };
    std::ofstream meta(path + ".json");
    if (!meta) fail(ErrorKind::Io, "cannot open " + path + ".json for writing");
    meta << side.dump(2) << '\n';
}

}  // namespace fwc
