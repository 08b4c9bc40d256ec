#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n).
//
// A Scalar is a vector of rationals in the power basis 1, z, ..., z^(phi(n)-1)
// of Q(zeta_n), reduced modulo the n-th cyclotomic polynomial after every
// multiplication.  Equality is exact; mixed-order arithmetic must go through
// embed() (operator== embeds into the lcm order automatically, the ring
// operators refuse and throw instead so that silent coercions cannot hide
// order bookkeeping bugs).

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace defectchain {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

// dense polynomial over Q, little-endian coefficient order
using Poly = std::vector<Rational>;

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

// a = q*b + r with deg(r) < deg(b); b need not be monic
inline void poly_divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
    if (b.empty())
        throw std::runtime_error("polynomial division by zero");
    q.assign(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, Rational(0));
    while (a.size() >= b.size()) {
        Rational c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= c * b[i];
        if (a.back() != 0)
            throw std::logic_error("polynomial division failed to cancel the leading term");
        a.pop_back();
        poly_trim(a);
    }
    poly_trim(q);
    r = std::move(a);
}

// n-th cyclotomic polynomial via Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d
inline Poly cyclotomic_polynomial(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, Poly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;

    // compute without recursion so the cache lock stays simple
    std::vector<unsigned> pending{n};
    while (!pending.empty()) {
        unsigned m = pending.back();
        bool ready = true;
        for (unsigned d = 1; d < m; ++d)
            if (m % d == 0 && !cache.count(d)) {
                pending.push_back(d);
                ready = false;
            }
        if (!ready)
            continue;
        pending.pop_back();
        if (cache.count(m))
            continue;
        Poly num(m + 1, Rational(0));
        num[0] = -1;
        num[m] = 1;
        Poly den{Rational(1)};
        for (unsigned d = 1; d < m; ++d)
            if (m % d == 0)
                den = poly_mul(den, cache.at(d));
        Poly q, r;
        poly_divmod(num, den, q, r);
        if (!r.empty())
            throw std::logic_error("cyclotomic polynomial division left a remainder");
        cache[m] = q;
    }
    return cache.at(n);
}

inline unsigned euler_phi(unsigned n) {
    unsigned result = n;
    unsigned m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0)
                m /= p;
        }
    }
    if (m > 1)
        result -= result / m;
    return result;
}

// per-order context: Phi_n plus a table of x^k mod Phi_n for all exponents
// that multiplication (< 2*phi-1) and conjugation (< n+1) can produce
struct FieldContext {
    unsigned order = 0;
    unsigned degree = 0;
    Poly modulus;
    std::vector<Poly> powers;
};

inline const FieldContext& field_context(unsigned n) {
    // contexts are never destroyed, so a per-thread pointer to the most
    // recently used one skips the lock on the hot path
    thread_local const FieldContext* last = nullptr;
    if (last && last->order == n)
        return *last;
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<FieldContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end())
        return *(last = it->second.get());

    auto ctx = std::make_unique<FieldContext>();
    ctx->order = n;
    ctx->modulus = cyclotomic_polynomial(n);
    ctx->degree = static_cast<unsigned>(ctx->modulus.size() - 1);
    unsigned max_exp = std::max(2 * ctx->degree, n + 1);
    ctx->powers.reserve(max_exp);
    Poly x{Rational(0), Rational(1)};
    Poly cur{Rational(1)};
    for (unsigned k = 0; k < max_exp; ++k) {
        ctx->powers.push_back(cur);
        cur = poly_mul(cur, x);
        if (cur.size() > ctx->degree) {
            Poly q, r;
            poly_divmod(cur, ctx->modulus, q, r);
            cur = std::move(r);
        }
    }
    const FieldContext& ref = *ctx;
    cache.emplace(n, std::move(ctx));
    last = &ref;
    return ref;
}

} // namespace detail

class Scalar {
public:
    // zero element of Q(zeta_order)
    explicit Scalar(unsigned order = 8)
        : order_(check_order(order)), coeffs_(detail::field_context(order_).degree, Rational(0)) {}

    static Scalar from_rational(const Rational& r, unsigned order = 8) {
        Scalar s(order);
        s.coeffs_[0] = r;
        return s;
    }

    static Scalar integer(long long v, unsigned order = 8) {
        return from_rational(Rational(v), order);
    }

    // zeta_order^k
    static Scalar root_of_unity(unsigned order, long long k) {
        const auto& ctx = detail::field_context(check_order(order));
        long long m = k % static_cast<long long>(order);
        if (m < 0)
            m += order;
        Scalar s(order);
        s.assign_poly(ctx.powers[static_cast<std::size_t>(m)]);
        return s;
    }

    // zeta_8 + zeta_8^{-1}, whose square is exactly 2; requires 8 | order
    static Scalar sqrt2(unsigned order = 8) {
        if (order % 8 != 0)
            throw std::runtime_error("sqrt2 needs a cyclotomic order divisible by 8");
        return root_of_unity(order, order / 8) + root_of_unity(order, 7 * (static_cast<long long>(order) / 8));
    }

    unsigned order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0)
                return false;
        return true;
    }

    bool is_one() const {
        if (coeffs_[0] != 1)
            return false;
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0)
                return false;
        return true;
    }

    // true when the element lies in Q (only the constant coordinate is set)
    bool is_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0)
                return false;
        return true;
    }

    Rational rational_value() const {
        if (!is_rational())
            throw std::runtime_error("scalar is not rational");
        return coeffs_[0];
    }

    // image under Q(zeta_n) -> Q(zeta_m), zeta_n = zeta_m^{m/n}; requires n | m
    Scalar embed(unsigned m) const {
        if (m == order_)
            return *this;
        if (m % order_ != 0)
            throw std::runtime_error("cannot embed cyclotomic order " + std::to_string(order_) +
                                     " into order " + std::to_string(m));
        const auto& ctx = detail::field_context(check_order(m));
        unsigned stretch = m / order_;
        detail::Poly acc(ctx.degree, Rational(0));
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0)
                continue;
            add_scaled(acc, ctx.powers[k * stretch], coeffs_[k]);
        }
        Scalar s(m);
        s.coeffs_ = std::move(acc);
        return s;
    }

    // complex conjugation: zeta^k -> zeta^{n-k}
    Scalar conj() const {
        const auto& ctx = detail::field_context(order_);
        detail::Poly acc(ctx.degree, Rational(0));
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0)
                continue;
            std::size_t e = k == 0 ? 0 : order_ - k;
            add_scaled(acc, ctx.powers[e], coeffs_[k]);
        }
        Scalar s(order_);
        s.coeffs_ = std::move(acc);
        return s;
    }

    Scalar inverse() const {
        if (is_zero())
            throw std::runtime_error("division by zero scalar");
        const auto& ctx = detail::field_context(order_);
        // extended Euclid in Q[x]: u*self + v*Phi = gcd (a nonzero constant)
        detail::Poly r0 = ctx.modulus, r1 = as_poly();
        detail::Poly u0{}, u1{Rational(1)};
        while (true) {
            detail::poly_trim(r1);
            if (r1.empty())
                throw std::logic_error("scalar shares a factor with the cyclotomic modulus");
            if (r1.size() == 1)
                break;
            detail::Poly q, r;
            detail::poly_divmod(r0, r1, q, r);
            detail::Poly u2 = u0;
            // u2 = u0 - q*u1
            detail::Poly qu1 = detail::poly_mul(q, u1);
            if (u2.size() < qu1.size())
                u2.resize(qu1.size(), Rational(0));
            for (std::size_t i = 0; i < qu1.size(); ++i)
                u2[i] -= qu1[i];
            detail::poly_trim(u2);
            r0 = std::move(r1);
            r1 = std::move(r);
            u0 = std::move(u1);
            u1 = std::move(u2);
        }
        Rational g = r1[0];
        Scalar s(order_);
        detail::Poly acc(ctx.degree, Rational(0));
        for (std::size_t k = 0; k < u1.size(); ++k) {
            if (u1[k] == 0)
                continue;
            // u1 may have degree up to phi-1 already, but reduce defensively
            add_scaled(acc, ctx.powers[k], u1[k] / g);
        }
        s.coeffs_ = std::move(acc);
        return s;
    }

    std::complex<double> to_complex() const {
        std::complex<double> acc(0.0, 0.0);
        constexpr double two_pi = 6.283185307179586476925286766559;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0)
                continue;
            double c = coeffs_[k].convert_to<double>();
            acc += c * std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(order_));
        }
        return acc;
    }

    Scalar operator-() const {
        Scalar s(*this);
        for (auto& c : s.coeffs_)
            c = -c;
        return s;
    }

    Scalar& operator+=(const Scalar& o) {
        require_same_order(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] += o.coeffs_[i];
        return *this;
    }

    Scalar& operator-=(const Scalar& o) {
        require_same_order(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] -= o.coeffs_[i];
        return *this;
    }

    Scalar& operator*=(const Scalar& o) {
        require_same_order(o);
        // rational factors scale coordinates directly; no reduction needed
        if (o.is_rational()) {
            const Rational c = o.coeffs_[0];
            if (c == 1)
                return *this;
            if (c == -1) {
                for (auto& x : coeffs_)
                    x = -x;
                return *this;
            }
            for (auto& x : coeffs_)
                x *= c;
            return *this;
        }
        if (is_rational()) {
            const Rational c = coeffs_[0];
            coeffs_ = o.coeffs_;
            if (c == 1)
                return *this;
            if (c == -1) {
                for (auto& x : coeffs_)
                    x = -x;
                return *this;
            }
            for (auto& x : coeffs_)
                x *= c;
            return *this;
        }
        const auto& ctx = detail::field_context(order_);
        detail::Poly prod = detail::poly_mul(as_poly(), o.as_poly());
        detail::Poly acc(ctx.degree, Rational(0));
        for (std::size_t k = 0; k < prod.size(); ++k) {
            if (prod[k] == 0)
                continue;
            if (k < ctx.degree)
                acc[k] += prod[k];
            else
                add_scaled(acc, ctx.powers[k], prod[k]);
        }
        coeffs_ = std::move(acc);
        return *this;
    }

    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    // exact equality as field elements; different orders compare in lcm order
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.order_ == b.order_)
            return a.coeffs_ == b.coeffs_;
        unsigned m = std::lcm(a.order_, b.order_);
        return a.embed(m).coeffs_ == b.embed(m).coeffs_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // deterministic total order on representations (not a field order);
    // used only to make container iteration and reported lists reproducible
    static int compare(const Scalar& a, const Scalar& b) {
        if (a.order_ != b.order_)
            return a.order_ < b.order_ ? -1 : 1;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] != b.coeffs_[i])
                return a.coeffs_[i] < b.coeffs_[i] ? -1 : 1;
        }
        return 0;
    }

private:
    static unsigned check_order(unsigned n) {
        if (n == 0)
            throw std::runtime_error("cyclotomic order must be positive");
        return n;
    }

    void require_same_order(const Scalar& o) const {
        if (order_ != o.order_)
            throw std::runtime_error("cyclotomic order mismatch (" + std::to_string(order_) + " vs " +
                                     std::to_string(o.order_) + "); embed into a common order first");
    }

    detail::Poly as_poly() const {
        detail::Poly p = coeffs_;
        detail::poly_trim(p);
        return p;
    }

    void assign_poly(const detail::Poly& p) {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] = i < p.size() ? p[i] : Rational(0);
    }

    static void add_scaled(detail::Poly& acc, const detail::Poly& p, const Rational& c) {
        for (std::size_t i = 0; i < p.size(); ++i)
            acc[i] += c * p[i];
    }

    unsigned order_;
    std::vector<Rational> coeffs_;
};

inline std::complex<double> to_float(const Scalar& a) { return a.to_complex(); }

inline Scalar conj(const Scalar& a) { return a.conj(); }

} // namespace defectchain
