#include "fwc/galois.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "fwc/errors.hpp"

namespace fwc {

namespace poly {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

static std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p prime, a != 0
    std::uint64_t result = 1, base = a % p;
    std::uint64_t e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

Poly rem(Poly a, const Poly& mod, std::uint32_t p) {
    trim(a);
    Poly m = mod;
    trim(m);
    if (m.empty()) fail(ErrorKind::Domain, "polynomial division by zero");
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t factor = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            const std::uint64_t sub = factor * m[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
    Poly out(acc.begin(), acc.end());
    return rem(std::move(out), mod, p);
}

Poly powmod(Poly base, std::uint64_t e, const Poly& mod, std::uint32_t p) {
    Poly result{1};
    result = rem(result, mod, p);
    base = rem(std::move(base), mod, p);
    while (e) {
        if (e & 1) result = mulmod(result, base, mod, p);
        e >>= 1;
        if (e) base = mulmod(base, base, mod, p);
    }
    return result;
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const std::uint64_t li = inv_mod(a.back(), p);
        for (auto& c : a) c = static_cast<std::uint32_t>(c * li % p);
    }
    return a;
}

bool is_irreducible(const Poly& f_in, std::uint32_t p) {
    Poly f = f_in;
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t m = f.size() - 1;
    if (m == 1) return true;
    const Poly x{0, 1};
    Poly xp = x;  // x^{p^i} mod f
    for (std::size_t i = 1; i <= m / 2; ++i) {
        xp = powmod(xp, p, f, p);
        Poly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty()) return false;  // x^{p^i} = x: f has a factor of degree dividing i
        const Poly g = gcd(diff, f, p);
        if (g.size() > 1) return false;
    }
    return true;
}

}  // namespace poly

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (base != 0 && r > UINT64_MAX / base) fail(ErrorKind::InvalidArgument, "integer power overflows 64 bits");
        r *= base;
    }
    return r;
}

struct Field::Impl {
    std::uint32_t p = 0;
    std::uint32_t m = 0;
    std::uint64_t q = 0;
    poly::Poly modulus;
    std::vector<std::uint64_t> ppow;  // p^0 .. p^m
    std::vector<std::uint32_t> trace_basis;
    Fq xi;

    bool tables = false;
    std::vector<std::uint32_t> exp_tab;  // length 2(q-1)
    std::vector<std::uint32_t> log_tab;  // length q, log_tab[0] unused
    std::vector<std::uint32_t> trace_tab;

    // baby-step/giant-step data when no full tables
    std::uint64_t bsgs_step = 0;
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    Fq giant;

    poly::Poly to_poly(Fq a) const {
        poly::Poly out(m, 0);
        std::uint64_t v = a.idx;
        for (std::uint32_t i = 0; i < m; ++i) {
            out[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        poly::trim(out);
        return out;
    }
    Fq from_poly(const poly::Poly& a) const {
        std::uint64_t v = 0;
        for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
        return Fq{v};
    }
    Fq mul_slow(Fq a, Fq b) const { return from_poly(poly::mulmod(to_poly(a), to_poly(b), modulus, p)); }
    Fq pow_slow(Fq a, std::uint64_t e) const { return from_poly(poly::powmod(to_poly(a), e, modulus, p)); }
};

namespace {

template <class FieldImpl>
bool generates(const FieldImpl& f, Fq x, const std::vector<std::uint64_t>& factors) {
    if (x.idx == 0) return false;
    const std::uint64_t order = f.q - 1;
    for (std::uint64_t l : factors)
        if (f.pow_slow(x, order / l).idx == 1) return false;
    return true;
}

}  // namespace

Field Field::build(std::uint32_t p, std::uint32_t m, std::optional<std::vector<std::uint32_t>> modulus,
                   std::uint64_t dlog_table_limit) {
    if (p % 2 == 0) fail(ErrorKind::InvalidArgument, "p must be odd");
    if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "p must be prime");
    if (m < 1) fail(ErrorKind::InvalidArgument, "m must be at least 1");

    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->m = m;
    impl->q = ipow(p, m);
    impl->ppow.resize(m + 1);
    for (std::uint32_t i = 0; i <= m; ++i) impl->ppow[i] = ipow(p, i);
    const auto factors = prime_factors(impl->q - 1);

    if (modulus) {
        auto mod = *modulus;
        if (mod.size() != m + 1 || mod.back() != 1)
            fail(ErrorKind::InvalidArgument, "modulus must be monic of degree m (m+1 coefficients, constant first)");
        for (auto c : mod)
            if (c >= p) fail(ErrorKind::InvalidArgument, "modulus coefficients must lie in [0, p)");
        if (!poly::is_irreducible(mod, p)) fail(ErrorKind::InvalidArgument, "modulus is reducible over F_p");
        impl->modulus = mod;
        const Fq x = m == 1 ? Fq{(p - mod[0]) % p} : Fq{p};
        if (generates(*impl, x, factors)) {
            impl->xi = x;
        } else {
            // smallest primitive element by index
            for (std::uint64_t v = 1; v < impl->q; ++v) {
                if (generates(*impl, Fq{v}, factors)) {
                    impl->xi = Fq{v};
                    break;
                }
            }
        }
    } else {
        // lexicographic scan over (c_0, ..., c_{m-1}); c_0 is the most significant digit
        const std::uint64_t count = impl->q;
        bool found = false;
        for (std::uint64_t code = 0; code < count && !found; ++code) {
            poly::Poly mod(m + 1, 0);
            std::uint64_t v = code;
            for (std::uint32_t i = m; i-- > 0;) {
                mod[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            mod[m] = 1;
            if (mod[0] == 0) continue;
            if (!poly::is_irreducible(mod, p)) continue;
            impl->modulus = mod;
            const Fq x = m == 1 ? Fq{(p - mod[0]) % p} : Fq{p};
            if (generates(*impl, x, factors)) {
                impl->xi = x;
                found = true;
            }
        }
        if (!found) fail(ErrorKind::Domain, "no primitive polynomial found");
    }

    // tr(x^i) from the defining sum a + a^p + ... + a^{p^{m-1}}
    impl->trace_basis.resize(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        poly::Poly mono(i + 1, 0);
        mono[i] = 1;
        poly::Poly cur = poly::rem(mono, impl->modulus, p);
        std::vector<std::uint64_t> sum(m, 0);
        for (std::uint32_t k = 0; k < m; ++k) {
            for (std::size_t j = 0; j < cur.size(); ++j) sum[j] = (sum[j] + cur[j]) % p;
            cur = poly::powmod(cur, p, impl->modulus, p);
        }
        for (std::uint32_t j = 1; j < m; ++j)
            if (sum[j] != 0) fail(ErrorKind::Domain, "trace is not in the prime field");
        impl->trace_basis[i] = static_cast<std::uint32_t>(sum[0]);
    }

    const std::uint64_t order = impl->q - 1;
    if (impl->q <= dlog_table_limit) {
        impl->tables = true;
        impl->exp_tab.resize(2 * order);
        impl->log_tab.assign(impl->q, 0);
        impl->trace_tab.resize(impl->q);
        Fq cur{1};
        for (std::uint64_t k = 0; k < order; ++k) {
            impl->exp_tab[k] = static_cast<std::uint32_t>(cur.idx);
            impl->exp_tab[k + order] = static_cast<std::uint32_t>(cur.idx);
            impl->log_tab[cur.idx] = static_cast<std::uint32_t>(k);
            cur = impl->mul_slow(cur, impl->xi);
        }
        if (cur.idx != 1) fail(ErrorKind::Domain, "xi is not primitive");
        for (std::uint64_t v = 0; v < impl->q; ++v) {
            std::uint64_t t = 0, rest = v;
            for (std::uint32_t i = 0; i < m; ++i) {
                t += (rest % p) * impl->trace_basis[i];
                rest /= p;
            }
            impl->trace_tab[v] = static_cast<std::uint32_t>(t % p);
        }
    } else {
        std::uint64_t step = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(order))));
        while (step * step < order) ++step;
        impl->bsgs_step = step;
        impl->baby.reserve(step);
        Fq cur{1};
        for (std::uint64_t j = 0; j < step; ++j) {
            impl->baby.emplace(cur.idx, j);
            cur = impl->mul_slow(cur, impl->xi);
        }
        // cur = xi^step; giant = xi^{-step}
        impl->giant = impl->pow_slow(cur, order - 1);
    }
    return Field(std::move(impl));
}

std::uint32_t Field::p() const noexcept { return impl_->p; }
std::uint32_t Field::m() const noexcept { return impl_->m; }
std::uint64_t Field::q() const noexcept { return impl_->q; }
std::span<const std::uint32_t> Field::modulus() const noexcept { return impl_->modulus; }
bool Field::has_tables() const noexcept { return impl_->tables; }
Fq Field::xi() const noexcept { return impl_->xi; }

Fq Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() != impl_->m) fail(ErrorKind::InvalidArgument, "field element needs exactly m coefficients");
    std::uint64_t v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= impl_->p) fail(ErrorKind::InvalidArgument, "coefficient out of range [0, p)");
        v = v * impl_->p + coeffs[i];
    }
    return Fq{v};
}

std::vector<std::uint32_t> Field::coeffs(Fq a) const {
    std::vector<std::uint32_t> out(impl_->m);
    std::uint64_t v = a.idx;
    for (auto& c : out) {
        c = static_cast<std::uint32_t>(v % impl_->p);
        v /= impl_->p;
    }
    return out;
}

Fq Field::add(Fq a, Fq b) const noexcept {
    const std::uint64_t p = impl_->p;
    std::uint64_t out = 0, x = a.idx, y = b.idx;
    for (std::uint32_t i = 0; i < impl_->m; ++i) {
        out += ((x % p + y % p) % p) * impl_->ppow[i];
        x /= p;
        y /= p;
    }
    return Fq{out};
}

Fq Field::neg(Fq a) const noexcept {
    const std::uint64_t p = impl_->p;
    std::uint64_t out = 0, x = a.idx;
    for (std::uint32_t i = 0; i < impl_->m; ++i) {
        out += ((p - x % p) % p) * impl_->ppow[i];
        x /= p;
    }
    return Fq{out};
}

Fq Field::sub(Fq a, Fq b) const noexcept { return add(a, neg(b)); }

Fq Field::scale(std::uint32_t c, Fq a) const noexcept {
    const std::uint64_t p = impl_->p;
    const std::uint64_t k = c % p;
    std::uint64_t out = 0, x = a.idx;
    for (std::uint32_t i = 0; i < impl_->m; ++i) {
        out += (k * (x % p) % p) * impl_->ppow[i];
        x /= p;
    }
    return Fq{out};
}

Fq Field::mul(Fq a, Fq b) const {
    if (a.idx == 0 || b.idx == 0) return Fq{0};
    if (impl_->tables) return Fq{impl_->exp_tab[impl_->log_tab[a.idx] + impl_->log_tab[b.idx]]};
    return impl_->mul_slow(a, b);
}

Fq Field::inv(Fq a) const {
    if (a.idx == 0) fail(ErrorKind::Domain, "zero has no inverse");
    const std::uint64_t order = impl_->q - 1;
    if (impl_->tables) return Fq{impl_->exp_tab[(order - impl_->log_tab[a.idx]) % order]};
    return impl_->pow_slow(a, order - 1);
}

Fq Field::pow(Fq a, std::uint64_t e) const {
    if (e == 0) return Fq{1};
    if (a.idx == 0) return Fq{0};
    if (impl_->tables) {
        const std::uint64_t order = impl_->q - 1;
        const unsigned __int128 k = static_cast<unsigned __int128>(impl_->log_tab[a.idx]) * e % order;
        return Fq{impl_->exp_tab[static_cast<std::uint64_t>(k)]};
    }
    return impl_->pow_slow(a, e);
}

std::uint32_t Field::trace(Fq a) const noexcept {
    if (impl_->tables) return impl_->trace_tab[a.idx];
    const std::uint64_t p = impl_->p;
    std::uint64_t t = 0, rest = a.idx;
    for (std::uint32_t i = 0; i < impl_->m; ++i) {
        t = (t + (rest % p) * impl_->trace_basis[i]) % p;
        rest /= p;
    }
    return static_cast<std::uint32_t>(t);
}

std::uint64_t Field::dlog(Fq a) const {
    if (a.idx == 0) fail(ErrorKind::Domain, "discrete logarithm of zero is undefined");
    if (!valid(a)) fail(ErrorKind::InvalidArgument, "element outside the field");
    if (impl_->tables) return impl_->log_tab[a.idx];
    Fq gamma = a;
    for (std::uint64_t i = 0; i <= impl_->bsgs_step; ++i) {
        if (auto it = impl_->baby.find(gamma.idx); it != impl_->baby.end())
            return (i * impl_->bsgs_step + it->second) % (impl_->q - 1);
        gamma = impl_->mul_slow(gamma, impl_->giant);
    }
    fail(ErrorKind::Domain, "discrete logarithm not found");
}

Fq Field::exp(std::uint64_t k) const {
    const std::uint64_t order = impl_->q - 1;
    if (impl_->tables) return Fq{impl_->exp_tab[k % order]};
    return impl_->pow_slow(impl_->xi, k % order);
}

std::uint64_t Field::order_of(Fq a) const {
    if (a.idx == 0) fail(ErrorKind::Domain, "zero has no multiplicative order");
    std::uint64_t order = impl_->q - 1;
    for (std::uint64_t l : prime_factors(order)) {
        while (order % l == 0 && pow(a, order / l).idx == 1) order /= l;
    }
    return order;
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "p=" << impl_->p << ";m=" << impl_->m << ";modulus=";
    for (std::size_t i = 0; i < impl_->modulus.size(); ++i) os << (i ? "," : "") << impl_->modulus[i];
    return os.str();
}

std::string Field::render(Fq a) const {
    std::ostringstream os;
    os << '(';
    auto c = coeffs(a);
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ')';
    return os.str();
}

std::vector<std::uint32_t> parse_coefficients(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) fail(ErrorKind::InvalidArgument, "empty coefficient in list '" + text + "'");
        item = item.substr(b, e - b + 1);
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidArgument, "bad coefficient '" + item + "'");
        }
        if (used != item.size()) fail(ErrorKind::InvalidArgument, "bad coefficient '" + item + "'");
        out.push_back(static_cast<std::uint32_t>(v));
    }
    if (out.empty()) fail(ErrorKind::InvalidArgument, "empty coefficient list");
    return out;
}

std::vector<Fq> cyclotomic_class(const Field& f, std::uint64_t i, std::uint64_t N) {
    const std::uint64_t order = f.group_order();
    if (N == 0 || order % N != 0) fail(ErrorKind::InvalidArgument, "N does not divide p^m - 1");
    if (i >= N) fail(ErrorKind::InvalidArgument, "class index must be below N");
    const std::uint64_t size = order / N;
    std::vector<Fq> out;
    out.reserve(size);
    for (std::uint64_t t = 0; t < size; ++t) out.push_back(f.exp(i + N * t));
    return out;
}

std::complex<double> additive_character(std::uint32_t p, std::uint64_t v) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(v % p) / p;
    return {std::cos(angle), std::sin(angle)};
}

std::complex<double> MultChar::operator()(const Field& f, Fq x) const {
    if (x.idx == 0) fail(ErrorKind::Domain, "multiplicative character at zero is undefined");
    if (order == 0 || f.group_order() % order != 0) fail(ErrorKind::InvalidArgument, "character order must divide p^m - 1");
    const auto k = static_cast<std::uint64_t>(static_cast<unsigned __int128>(index % order) * (f.dlog(x) % order) % order);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order);
    return {std::cos(angle), std::sin(angle)};
}

std::complex<double> gauss_sum(std::uint64_t j, std::uint64_t order, const Field& f) {
    const std::uint64_t group = f.group_order();
    if (order == 0 || group % order != 0) fail(ErrorKind::InvalidArgument, "character order must divide p^m - 1");
    const std::uint64_t jj = j % order;
    std::complex<double> sum = 0;
    Fq x = f.one();
    for (std::uint64_t k = 0; k < group; ++k) {
        const auto e = static_cast<std::uint64_t>(static_cast<unsigned __int128>(jj) * (k % order) % order);
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(order);
        sum += std::complex<double>(std::cos(angle), std::sin(angle)) * additive_character(f.p(), f.trace(x));
        x = f.mul(x, f.xi());
    }
    return sum;
}

std::uint64_t count_zero_traces(const Field& f, Fq b, std::span<const Fq> D) {
    std::uint64_t n = 0;
    for (Fq d : D)
        if (f.trace(f.mul(b, d)) == 0) ++n;
    return n;
}

}  // namespace fwc
