#ifndef FWC_CONSTRUCTION_HPP
#define FWC_CONSTRUCTION_HPP

// Trace codes over the base ring: parameter derivation, the defining sets
// (lifted coset representatives or the full unit group), the evaluation map
// r -> (Tr(r x))_x and the field subcode C_D.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fwc/galois.hpp"
#include "fwc/ring.hpp"

namespace fwc {

enum class Variant { Lift, Units };

const char* to_string(Variant v) noexcept;
Variant parse_variant(const std::string& text);

struct CodeParams {
    Field field;
    std::uint64_t N = 1;  // ignored by Variant::Units
    Variant variant = Variant::Lift;
};

struct DerivedParams {
    std::uint64_t N1 = 0;  // lcm(N, (q-1)/(p-1)); 0 for Units
    std::uint64_t N2 = 0;  // gcd(N, (q-1)/(p-1)); 0 for Units
    std::uint64_t n = 0;   // number of leading coordinates x_0
    std::vector<Fq> D;     // x_0 values in stream order
    std::uint64_t L_size = 0;
    std::uint64_t gray_length = 0;
    std::uint64_t ring_size = 0;  // p^{4m}, the number of r
    std::vector<std::string> notes;
};

// Throws for N not dividing q - 1, or when p^{4m} >= 2^63.
DerivedParams derive_params(const CodeParams& cp);

// {xi^{N(j-1)} : j = 1..n}
std::vector<Fq> build_D(const Field& f, std::uint64_t N, std::uint64_t n);

// x = x0 + x1 u + x2 v + x3 uv, x0 outermost (in leading order), then x1, x2,
// x3 by field index, x3 fastest.
class CoordinateSpace {
  public:
    CoordinateSpace() = default;
    CoordinateSpace(std::vector<Fq> leading, std::uint64_t q);

    std::uint64_t size() const noexcept { return leading_.size() * q3_; }
    std::span<const Fq> leading() const noexcept { return leading_; }
    RingElem at(std::uint64_t index) const noexcept;
    // Position of x in the stream, or -1 if x is not a member.
    std::int64_t index_of(const RingElem& x) const noexcept;
    bool leading_contains(Fq x0) const noexcept { return x0.idx < pos_.size() && pos_[x0.idx] >= 0; }
    // Contiguous block [begin, end) owned by worker k of `workers`.
    std::pair<std::uint64_t, std::uint64_t> block(unsigned k, unsigned workers) const noexcept;

    template <class Fn>
    void for_each(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
        for (std::uint64_t i = begin; i < end; ++i) fn(i, at(i));
    }

  private:
    std::vector<Fq> leading_;
    std::vector<std::int64_t> pos_;
    std::uint64_t q_ = 0;
    std::uint64_t q3_ = 0;
};

class TraceCode {
  public:
    explicit TraceCode(CodeParams params);

    const CodeParams& params() const noexcept { return params_; }
    const DerivedParams& derived() const noexcept { return derived_; }
    const Field& field() const noexcept { return params_.field; }
    const Ring& ring() const noexcept { return ring_; }
    const Ring& base_ring() const noexcept { return base_; }
    const CoordinateSpace& coords() const noexcept { return coords_; }
    std::uint32_t p() const noexcept { return params_.field.p(); }
    std::uint32_t m() const noexcept { return params_.field.m(); }
    std::uint64_t q() const noexcept { return params_.field.q(); }

    // r = a + bu + cv + duv at index ((a q + b) q + c) q + d; the maximal
    // ideal is the prefix [0, q^3).
    RingElem ring_element(std::uint64_t index) const noexcept;
    std::uint64_t ring_index(const RingElem& r) const noexcept;

    // Reference evaluation: sink(position, Tr(r x)) for every coordinate x.
    template <class Sink>
    void evaluate(const RingElem& r, Sink&& sink) const {
        evaluate_range(r, 0, coords_.size(), sink);
    }
    template <class Sink>
    void evaluate_range(const RingElem& r, std::uint64_t begin, std::uint64_t end, Sink&& sink) const {
        coords_.for_each(begin, end, [&](std::uint64_t i, const RingElem& x) { sink(i, ring_.trace(ring_.mul(r, x))); });
    }
    std::vector<RingElem> evaluate(const RingElem& r) const;
    std::vector<std::uint32_t> gray_image(const RingElem& r) const;

  private:
    CodeParams params_;
    DerivedParams derived_;
    Ring ring_;
    Ring base_;
    CoordinateSpace coords_;
};

// c_b = (tr(b d_j))_j
std::vector<std::uint32_t> eval_field_subcode(const Field& f, Fq b, const DerivedParams& dp);

// x -> g x on coordinates. For the lifted set the product is brought back into
// the set by a scalar c in F_p^*, so Ev(r)[target[i]] = scalar[i] * Ev(r g)[i].
struct CoordinateAction {
    std::vector<std::uint64_t> target;
    std::vector<std::uint32_t> scalar;
};
CoordinateAction coordinate_action(const TraceCode& code, const RingElem& g);

struct GroupActionReport {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::uint64_t scaled_coordinates = 0;  // coordinates needing c != 1
    std::vector<std::string> witnesses;
    bool passed() const noexcept { return failures == 0; }
};
GroupActionReport group_action_spotcheck(const TraceCode& code, std::uint64_t trials, std::uint64_t seed);

// Flat binary file, one byte per Gray symbol, one row per r index in
// [first, first + count), plus a JSON sidecar at path + ".json".
void export_codewords(const TraceCode& code, const std::string& path, std::uint64_t first, std::uint64_t count);

inline constexpr const char* kOrderingVersion = "lex-v1";

}  // namespace fwc

#endif  // FWC_CONSTRUCTION_HPP
