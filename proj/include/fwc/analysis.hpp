#ifndef FWC_ANALYSIS_HPP
#define FWC_ANALYSIS_HPP

// Lee-weight distributions of trace codes by exact counting, closed-form
// predictions of those distributions, and numerical checks of the character
// sum identities that the closed forms rest on.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fwc/construction.hpp"

namespace fwc {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2017;
inline constexpr std::uint64_t kDefaultWorkBudget = 10'000'000'000ULL;
inline constexpr std::uint64_t kDefaultSamplesPerClass = 500;
inline constexpr double kResidualTolerance = 1e-6;

enum class Method { Exhaustive, ClassBased, Sampled };
const char* to_string(Method m) noexcept;

struct WeightDistribution {
    std::map<std::uint64_t, std::uint64_t> entries;  // weight -> frequency
    Method method = Method::Exhaustive;

    std::uint64_t total() const noexcept;
    std::size_t distinct_nonzero() const noexcept;
    std::optional<std::uint64_t> min_nonzero() const noexcept;
    std::optional<std::uint64_t> max_nonzero() const noexcept;
    void add(std::uint64_t weight, std::uint64_t count) { entries[weight] += count; }
    void merge(const WeightDistribution& other);
};

// Exact Lee weight of Ev(r), one pass over the coordinate set with per-r
// trace tables. Safe to share between threads.
class WeightEngine {
  public:
    explicit WeightEngine(const TraceCode& code);
    std::uint64_t lee_weight(const RingElem& r) const;
    // Occurrences of each symbol 0..p-1 in the Gray image of Ev(r).
    std::vector<std::uint64_t> symbol_histogram(const RingElem& r) const;

  private:
    template <bool Histogram>
    void sweep(const RingElem& r, std::uint64_t* out) const;
    const TraceCode* code_;
    std::vector<std::uint32_t> nonzero_;
    std::vector<std::uint32_t> reduce_;
};

std::uint64_t codeword_lee_weight(const RingElem& r, const TraceCode& code);

struct RunOptions {
    std::uint64_t work_budget = kDefaultWorkBudget;
    std::uint64_t samples = kDefaultSamplesPerClass;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;  // 0: hardware parallelism
};

// Work of an exhaustive run: (number of r) x (number of coordinates).
std::uint64_t exhaustive_work(const TraceCode& code);

// Every r; refuses (BudgetExceeded) above opts.work_budget.
WeightDistribution distribution_exhaustive(const TraceCode& code, const RunOptions& opts = {});

struct ClassInfo {
    std::string name;
    RingElem representative;
    std::uint64_t weight = 0;
    std::uint64_t cardinality = 0;
    std::uint64_t samples_checked = 0;
};

struct ClassBasedResult {
    WeightDistribution distribution;
    std::vector<ClassInfo> classes;
    std::uint64_t seed = 0;
    std::uint64_t samples_per_class = 0;
};

// Weights of class representatives times class sizes; every class is probed
// with opts.samples random members and a differing weight is a hard failure.
ClassBasedResult distribution_by_class(const TraceCode& code, const RunOptions& opts = {});

struct IdealSweepResult {
    WeightDistribution distribution;  // full code, method Sampled
    WeightDistribution ideal;         // exact, over the maximal ideal (zero included)
    std::map<std::uint64_t, std::uint64_t> uv_line;         // weight -> count on {alpha uv}
    std::map<std::uint64_t, std::uint64_t> other_maximal;   // weight -> count
    std::uint64_t unit_weight = 0;
    std::uint64_t unit_samples = 0;
    std::uint64_t seed = 0;
};

// Exhaustive over the maximal ideal plus opts.samples sampled units.
IdealSweepResult distribution_ideal_sweep(const TraceCode& code, const RunOptions& opts = {});

// Brute force over all q codewords of C_D.
WeightDistribution subcode_distribution(const TraceCode& code);

enum class Regime {
    TwoWeightLift,        // coset-representative lift, N2 = 1
    TwoWeightUnits,       // full unit group
    FewWeightBounds,      // 1 < N2 < sqrt(p^m) + 1: interval for the minimum distance
    ThreeWeightEvenN2,    // semiprimitive case with N2 even, p, t, (p^l+1)/N2 odd
    ThreeWeightGeneral,   // all other semiprimitive cases
    SubcodeEvenN2,        // C_D counterpart of ThreeWeightEvenN2
    SubcodeGeneral,       // C_D counterpart of ThreeWeightGeneral
};
const char* to_string(Regime r) noexcept;

struct WeightRow {
    std::uint64_t weight = 0;
    std::uint64_t frequency = 0;
};

struct Prediction {
    Regime regime{};
    bool applicable = false;
    bool subcode = false;  // rows describe C_D rather than the ring code
    std::vector<std::pair<std::string, bool>> conditions;
    std::vector<WeightRow> rows;          // nonzero weights, ascending
    std::vector<WeightRow> printed_rows;  // the table as printed, when it differs from rows
    std::optional<std::uint64_t> l, t;
    std::optional<std::uint64_t> lower_bound, upper_bound;  // minimum-distance interval
    std::optional<std::uint64_t> max_nonzero_weights;
    std::vector<std::string> errata;
};

std::vector<Prediction> predict(const TraceCode& code);

struct Comparison {
    bool match = true;
    std::vector<std::string> mismatches;
};
Comparison compare(const WeightDistribution& dist, const Prediction& pred);

// sum_j eta^{y_j}, eta = exp(2 pi i / p)
std::complex<double> big_theta(std::span<const std::uint32_t> y, std::uint32_t p);
std::complex<double> theta_from_histogram(std::span<const std::uint64_t> hist, std::uint32_t p, std::uint32_t tau = 1);
// Theta of the Gray image of Ev(r).
std::complex<double> theta(const RingElem& r, const TraceCode& code);

struct IdentityCheck {
    std::string name;
    std::uint64_t trials = 0;
    bool exact = false;  // integer identity, residual must be 0
    double max_residual = 0.0;
    double tolerance = kResidualTolerance;
    bool passed = true;
    std::string witness;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool passed() const noexcept;
};

// Character-sum identities, zero-trace counting formula, Gray/trace structure.
IdentityReport verify_identities(const TraceCode& code, std::uint64_t trials, std::uint64_t seed);

}  // namespace fwc

#endif  // FWC_ANALYSIS_HPP
