#ifndef FWC_RING_HPP
#define FWC_RING_HPP

// The extension ring F_{p^m} + u F_{p^m} + v F_{p^m} + uv F_{p^m} with
// u^2 = v^2 = 0 and uv = vu, its Frobenius and trace, and the Gray map of the
// base ring (m = 1) onto F_p^4.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fwc/galois.hpp"

namespace fwc {

// a + b u + c v + d uv
struct RingElem {
    Fq a, b, c, d;
    friend constexpr bool operator==(const RingElem&, const RingElem&) = default;
};

enum class RingClass { Zero, UvLine, OtherMaximal, Unit };

const char* to_string(RingClass c) noexcept;

using GraySymbols = std::array<std::uint32_t, 4>;

// (d, c + d, b + d, a + b + c + d) for base-ring coordinates in [0, p).
inline GraySymbols gray_symbols(std::uint32_t p, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    return {d, (c + d) % p, (b + d) % p, (a + b + c + d) % p};
}

struct GrayWord {
    std::vector<std::uint32_t> entries;
};

class Ring {
  public:
    explicit Ring(Field field) : field_(std::move(field)) {}

    const Field& field() const noexcept { return field_; }
    std::uint64_t size() const;  // p^{4m}

    RingElem zero() const noexcept { return {}; }
    RingElem one() const noexcept { return {Fq{1}, {}, {}, {}}; }
    RingElem u() const noexcept { return {{}, Fq{1}, {}, {}}; }
    RingElem v() const noexcept { return {{}, {}, Fq{1}, {}}; }
    RingElem uv() const noexcept { return {{}, {}, {}, Fq{1}}; }

    bool valid(const RingElem& r) const noexcept;
    RingElem add(const RingElem& x, const RingElem& y) const;
    RingElem sub(const RingElem& x, const RingElem& y) const;
    RingElem neg(const RingElem& x) const;
    RingElem mul(const RingElem& x, const RingElem& y) const;
    RingElem scale(Fq lambda, const RingElem& x) const;
    RingElem inv(const RingElem& x) const;  // units only
    RingElem frobenius(const RingElem& r) const;

    // Coordinatewise field trace; the result lives in the base ring (m = 1),
    // coordinates are residues mod p.
    RingElem trace(const RingElem& r) const;

    static RingClass classify(const RingElem& r) noexcept;
    static bool is_unit(const RingElem& r) noexcept { return r.a.idx != 0; }

    // Gray map and Lee weight; defined only when m = 1.
    GraySymbols gray(const RingElem& r) const;
    GrayWord gray(std::span<const RingElem> word) const;
    unsigned lee_weight(const RingElem& r) const;
    std::uint64_t lee_weight(std::span<const RingElem> word) const;
    // Inverse Gray map of a base-ring symbol 4-tuple.
    RingElem gray_inverse(const GraySymbols& g) const;

    // "a + b*u + c*v + d*uv" with coefficient tuples.
    std::string render(const RingElem& r) const;

  private:
    void check(const RingElem& r) const;
    void require_base() const;
    Field field_;
};

// Hamming weight of a vector over F_p.
std::uint64_t hamming_weight(std::span<const std::uint32_t> word) noexcept;

}  // namespace fwc

#endif  // FWC_RING_HPP
