#ifndef FWC_BOUNDS_HPP
#define FWC_BOUNDS_HPP

// Griesmer bound and optimality verdicts, the sphere-packing test for the
// dual, minimum Lee distance of the dual code, and minimal-codeword criteria
// for secret sharing.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fwc/analysis.hpp"
#include "fwc/construction.hpp"

namespace fwc {

// sum_{j<k} ceil(d / p^j), exact; saturates at UINT64_MAX.
std::uint64_t griesmer_sum(std::uint64_t k, std::uint64_t d, std::uint64_t p);

struct GriesmerVerdict {
    std::uint64_t n = 0, k = 0, d = 0, p = 0;
    std::uint64_t sum_at_d = 0;
    std::uint64_t sum_at_d_plus_1 = 0;
    bool optimal = false;       // Griesmer rules out [n, k, d + 1]
    bool inconclusive = false;  // d + 1 not ruled out
    bool infeasible = false;    // [n, k, d] itself violates the bound
    const char* label() const noexcept;
};

GriesmerVerdict griesmer_optimal(std::uint64_t n, std::uint64_t k, std::uint64_t d, std::uint64_t p);

// The closed form ceil(d / p^j) = c p^{4m-j-1} for 3m <= j <= 4m-1, claimed
// for the two-weight minimum distances d = c (p^{4m-1} - p^{3m-1}), c = 4
// (lift) or 4(p-1) (units). Reports the first j where it fails.
struct CeilingIdentityCheck {
    std::uint64_t d = 0;
    bool holds = true;
    std::optional<std::uint64_t> first_bad_j;
    std::uint64_t exact_ceiling = 0;
    std::uint64_t closed_form = 0;
};
CeilingIdentityCheck griesmer_ceiling_identity(std::uint64_t p, std::uint64_t m, Variant variant);

// True when p^k < 1 + n(p - 1), i.e. a dual of dimension n - k over F_p
// cannot have minimum distance 3. False for n = 0.
bool sphere_packing_excludes(std::uint64_t n, std::uint64_t k, std::uint64_t p);

// A sparse vector over the base ring, indexed by coordinate position.
struct DualEntry {
    std::uint64_t index = 0;
    RingElem value;  // base-ring element (coordinates in [0, p))
};

// sum_x y_x x in the extension ring. y lies in the dual iff this vanishes,
// since <Ev(r), y> = Tr(r sum_x y_x x) and the trace form is nondegenerate.
RingElem syndrome(const TraceCode& code, std::span<const DualEntry> y);
// Direct check: <Ev(r), y> = 0 for r over the F_p-basis xi^k {1, u, v, uv}.
bool orthogonal_to_code(const TraceCode& code, std::span<const DualEntry> y);

struct DualDistanceResult {
    std::optional<std::uint64_t> distance;  // exact value when found below cap
    std::uint64_t lower_bound = 0;
    std::uint64_t cap = 3;
    bool complete = true;  // false: search stopped early on the work budget
    std::vector<DualEntry> witness;
    std::uint64_t witness_lee_weight = 0;
    bool syndrome_verified = false;
    bool orthogonality_verified = false;
    std::uint64_t candidates_examined = 0;
    std::vector<std::string> notes;
};

// Searches dual vectors of Lee weight 1 .. cap-1. cap must be 2 or 3.
DualDistanceResult dual_lee_distance(const TraceCode& code, unsigned cap = 3,
                                     std::uint64_t work_budget = kDefaultWorkBudget, unsigned threads = 0);

enum class SssClass { Dictatorial, Democratic, Undetermined };
const char* to_string(SssClass c) noexcept;

struct SssVerdict {
    std::uint64_t p = 0;
    std::uint64_t w_min = 0, w_max = 0;
    bool all_minimal = false;  // p w_min > (p-1) w_max
    std::string margin;        // p w_min - (p-1) w_max, decimal
    std::optional<std::uint64_t> dual_distance;
    SssClass classification = SssClass::Undetermined;
};

SssVerdict minimality_check(const WeightDistribution& dist, std::uint64_t p,
                            std::optional<std::uint64_t> dual_distance = std::nullopt);

// N2 p < p^{m/2} + 1, the hypothesis under which the few-weight codes are
// shown to have only minimal codewords.
bool few_weight_minimality_condition(std::uint64_t p, std::uint64_t m, std::uint64_t N2);

struct ExplicitCode {
    std::uint32_t p = 0;
    std::vector<std::vector<std::uint32_t>> words;
};

inline constexpr std::size_t kBruteForceCodewordLimit = 10'000;

// Indices of the minimal codewords: c != 0 such that every nonzero c' with
// supp(c') in supp(c) is a scalar multiple of c.
std::vector<std::size_t> minimal_codewords_bruteforce(const ExplicitCode& code);

// All q codewords of C_D, indexed by the field element b.
ExplicitCode subcode_explicit(const TraceCode& code);

}  // namespace fwc

#endif  // FWC_BOUNDS_HPP
