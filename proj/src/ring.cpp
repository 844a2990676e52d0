#include "fwc/ring.hpp"

#include <sstream>

#include "fwc/errors.hpp"

namespace fwc {

const char* to_string(RingClass c) noexcept {
    switch (c) {
        case RingClass::Zero: return "zero";
        case RingClass::UvLine: return "uv_line";
        case RingClass::OtherMaximal: return "other_maximal";
        case RingClass::Unit: return "unit";
    }
    return "?";
}

std::uint64_t Ring::size() const { return ipow(field_.q(), 4); }

bool Ring::valid(const RingElem& r) const noexcept {
    return field_.valid(r.a) && field_.valid(r.b) && field_.valid(r.c) && field_.valid(r.d);
}

void Ring::check(const RingElem& r) const {
    if (!valid(r)) fail(ErrorKind::InvalidArgument, "ring element does not belong to this ring (coordinate out of range)");
}

void Ring::require_base() const {
    if (field_.m() != 1) fail(ErrorKind::InvalidArgument, "Gray map is defined on the base ring only (m = 1)");
}

RingElem Ring::add(const RingElem& x, const RingElem& y) const {
    check(x);
    check(y);
    const Field& f = field_;
    return {f.add(x.a, y.a), f.add(x.b, y.b), f.add(x.c, y.c), f.add(x.d, y.d)};
}

RingElem Ring::neg(const RingElem& x) const {
    check(x);
    const Field& f = field_;
    return {f.neg(x.a), f.neg(x.b), f.neg(x.c), f.neg(x.d)};
}

RingElem Ring::sub(const RingElem& x, const RingElem& y) const { return add(x, neg(y)); }

RingElem Ring::mul(const RingElem& x, const RingElem& y) const {
    check(x);
    check(y);
    const Field& f = field_;
    return {
        f.mul(x.a, y.a),
        f.add(f.mul(x.a, y.b), f.mul(x.b, y.a)),
        f.add(f.mul(x.a, y.c), f.mul(x.c, y.a)),
        f.add(f.add(f.mul(x.a, y.d), f.mul(x.b, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.a))),
    };
}

RingElem Ring::scale(Fq lambda, const RingElem& x) const { return mul({lambda, {}, {}, {}}, x); }

RingElem Ring::inv(const RingElem& x) const {
    check(x);
    if (!is_unit(x)) fail(ErrorKind::Domain, "element is not a unit");
    // x = a(1 + n'), n' = a^{-1} n nilpotent: (1 + n')^{-1} = 1 - n' + n'^2 - ...
    const Fq ainv = field_.inv(x.a);
    const RingElem nprime = scale(ainv, {Fq{0}, x.b, x.c, x.d});
    RingElem sum = one();
    RingElem term = one();
    for (;;) {
        term = neg(mul(term, nprime));
        if (term == zero()) break;
        sum = add(sum, term);
    }
    return scale(ainv, sum);
}

RingElem Ring::frobenius(const RingElem& r) const {
    check(r);
    const Field& f = field_;
    return {f.frobenius(r.a), f.frobenius(r.b), f.frobenius(r.c), f.frobenius(r.d)};
}

RingElem Ring::trace(const RingElem& r) const {
    check(r);
    const Field& f = field_;
    return {Fq{f.trace(r.a)}, Fq{f.trace(r.b)}, Fq{f.trace(r.c)}, Fq{f.trace(r.d)}};
}

RingClass Ring::classify(const RingElem& r) noexcept {
    if (r.a.idx != 0) return RingClass::Unit;
    if (r.b.idx != 0 || r.c.idx != 0) return RingClass::OtherMaximal;
    if (r.d.idx != 0) return RingClass::UvLine;
    return RingClass::Zero;
}

GraySymbols Ring::gray(const RingElem& r) const {
    require_base();
    check(r);
    return gray_symbols(field_.p(), static_cast<std::uint32_t>(r.a.idx), static_cast<std::uint32_t>(r.b.idx),
                        static_cast<std::uint32_t>(r.c.idx), static_cast<std::uint32_t>(r.d.idx));
}

GrayWord Ring::gray(std::span<const RingElem> word) const {
    GrayWord out;
    out.entries.reserve(4 * word.size());
    for (const auto& r : word) {
        const auto g = gray(r);
        out.entries.insert(out.entries.end(), g.begin(), g.end());
    }
    return out;
}

unsigned Ring::lee_weight(const RingElem& r) const {
    const auto g = gray(r);
    return (g[0] != 0) + (g[1] != 0) + (g[2] != 0) + (g[3] != 0);
}

std::uint64_t Ring::lee_weight(std::span<const RingElem> word) const {
    std::uint64_t w = 0;
    for (const auto& r : word) w += lee_weight(r);
    return w;
}

RingElem Ring::gray_inverse(const GraySymbols& g) const {
    require_base();
    const std::uint32_t p = field_.p();
    for (auto s : g)
        if (s >= p) fail(ErrorKind::InvalidArgument, "Gray symbol out of range");
    const std::uint32_t d = g[0];
    const std::uint32_t c = (g[1] + p - d) % p;
    const std::uint32_t b = (g[2] + p - d) % p;
    const std::uint32_t a = (g[3] + 3 * p - b - c - d) % p;
    return {Fq{a}, Fq{b}, Fq{c}, Fq{d}};
}

std::string Ring::render(const RingElem& r) const {
    std::ostringstream os;
    os << field_.render(r.a) << " + " << field_.render(r.b) << "*u + " << field_.render(r.c) << "*v + "
       << field_.render(r.d) << "*uv";
    return os.str();
}

std::uint64_t hamming_weight(std::span<const std::uint32_t> word) noexcept {
    std::uint64_t w = 0;
    for (auto s : word) w += s != 0;
    return w;
}

}  // namespace fwc
