#ifndef FWC_GALOIS_HPP
#define FWC_GALOIS_HPP

// Arithmetic in F_p and F_{p^m} (polynomial basis), discrete logarithms with
// respect to a fixed primitive element, cyclotomic classes, multiplicative
// characters and Gaussian sums.
//
// Elements are addressed by an integer index: the coefficient vector
// (c_0, ..., c_{m-1}) of c_0 + c_1 x + ... + c_{m-1} x^{m-1} is read as the
// base-p number sum c_i p^i. The prime subfield therefore occupies indices
// 0..p-1 and its embedding into any extension is the identity on indices.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fwc {

struct Fq {
    std::uint64_t idx = 0;
    friend constexpr bool operator==(Fq, Fq) = default;
    friend constexpr auto operator<=>(Fq, Fq) = default;
};

inline constexpr std::uint64_t kDefaultDlogTableLimit = std::uint64_t{1} << 20;

// Polynomial helpers over F_p, coefficient vectors constant term first.
namespace poly {
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a);
Poly mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p);
Poly powmod(Poly base, std::uint64_t e, const Poly& mod, std::uint32_t p);
Poly rem(Poly a, const Poly& mod, std::uint32_t p);
Poly gcd(Poly a, Poly b, std::uint32_t p);
// Ben-Or: f of degree m is irreducible iff gcd(x^{p^i} - x, f) = 1 for i <= m/2.
bool is_irreducible(const Poly& f, std::uint32_t p);
}  // namespace poly

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned e);  // throws on overflow

// F_{p^m} with a designated primitive element xi. Cheap to copy; all copies
// share one immutable table set.
class Field {
  public:
    // Without a modulus, monic polynomials of degree m are scanned in
    // lexicographic order of (c_0, ..., c_{m-1}) and the first primitive one
    // is taken; xi is then the class of the indeterminate. A supplied modulus
    // must be monic, degree m and irreducible.
    static Field build(std::uint32_t p, std::uint32_t m,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                       std::uint64_t dlog_table_limit = kDefaultDlogTableLimit);

    std::uint32_t p() const noexcept;
    std::uint32_t m() const noexcept;
    std::uint64_t q() const noexcept;
    std::uint64_t group_order() const noexcept { return q() - 1; }
    // m + 1 coefficients, constant first, leading 1.
    std::span<const std::uint32_t> modulus() const noexcept;
    bool has_tables() const noexcept;

    Fq zero() const noexcept { return Fq{0}; }
    Fq one() const noexcept { return Fq{1}; }
    Fq xi() const noexcept;

    bool valid(Fq a) const noexcept { return a.idx < q(); }
    Fq from_coeffs(std::span<const std::uint32_t> coeffs) const;
    std::vector<std::uint32_t> coeffs(Fq a) const;
    Fq from_base(std::uint32_t c) const { return Fq{c % p()}; }

    Fq add(Fq a, Fq b) const noexcept;
    Fq sub(Fq a, Fq b) const noexcept;
    Fq neg(Fq a) const noexcept;
    Fq scale(std::uint32_t c, Fq a) const noexcept;
    Fq mul(Fq a, Fq b) const;
    Fq inv(Fq a) const;
    Fq pow(Fq a, std::uint64_t e) const;
    Fq frobenius(Fq a) const { return pow(a, p()); }

    std::uint32_t trace(Fq a) const noexcept;
    // Exponent k in [0, q-1) with xi^k = a. Domain error for a = 0.
    std::uint64_t dlog(Fq a) const;
    Fq exp(std::uint64_t k) const;
    std::uint64_t order_of(Fq a) const;

    // "p=3;m=2;modulus=2,1,1"
    std::string describe() const;
    // Coefficient tuple, e.g. "(2,1)".
    std::string render(Fq a) const;

  private:
    struct Impl;
    explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

// Parses a constant-first, comma-separated coefficient list.
std::vector<std::uint32_t> parse_coefficients(const std::string& text);

// xi^i <xi^N>, listed as xi^{i + N t} for t = 0, 1, ...
std::vector<Fq> cyclotomic_class(const Field& f, std::uint64_t i, std::uint64_t N);

// The character xi^k -> exp(2 pi i index k / order).
struct MultChar {
    std::uint64_t order = 1;
    std::uint64_t index = 0;
    std::complex<double> operator()(const Field& f, Fq x) const;
};

// exp(2 pi i v / p)
std::complex<double> additive_character(std::uint32_t p, std::uint64_t v);

// sum over x != 0 of conj(psi^j(x)) exp(2 pi i tr(x) / p), psi the canonical
// character of the given order.
std::complex<double> gauss_sum(std::uint64_t j, std::uint64_t order, const Field& f);

// |{d in D : tr(b d) = 0}|
std::uint64_t count_zero_traces(const Field& f, Fq b, std::span<const Fq> D);

}  // namespace fwc

#endif  // FWC_GALOIS_HPP
