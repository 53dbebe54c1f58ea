#pragma once

// F_{q^n} with q = p^k, built as F_p[x]/(f) with deg f = k*n. Elements are
// canonical integer indexes (base-p digit encoding of the residue
// polynomial). A full discrete-log table base a fixed primitive element
// backs multiplication, orders and r-primitivity tests. The subfield F_q is
// identified as the order-(q-1) subgroup plus zero.

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rprim/arith.hpp"

namespace rprim {

inline constexpr u64 kMaxFieldSize = 1ull << 27;

struct FieldElement {
    u32 index = 0;
    friend bool operator==(FieldElement a, FieldElement b) { return a.index == b.index; }
    friend bool operator!=(FieldElement a, FieldElement b) { return a.index != b.index; }
    friend bool operator<(FieldElement a, FieldElement b) { return a.index < b.index; }
};

namespace detail {

// Dense polynomials over F_p, coefficients ascending by degree, no trailing
// zeros. Only used during context construction.
using Poly = std::vector<u32>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (u32)((r[i + j] + (u64)a[i] * b[j]) % p);
    }
    // f is monic
    std::size_t n = f.size() - 1;
    for (std::size_t i = r.size(); i-- > n;) {
        if (r[i] == 0) continue;
        u64 c = r[i];
        for (std::size_t j = 0; j < n; ++j)
            r[i - n + j] = (u32)((r[i - n + j] + c * (p - f[j])) % p);
        r[i] = 0;
    }
    poly_trim(r);
    return r;
}

inline Poly poly_powmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly r{1};
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline Poly poly_mod(Poly a, const Poly& b, u64 p) {
    // b monic after normalization by caller
    poly_trim(a);
    std::size_t n = b.size() - 1;
    while (a.size() > n) {
        u64 c = a.back();
        std::size_t off = a.size() - 1 - n;
        for (std::size_t j = 0; j < n; ++j)
            a[off + j] = (u32)((a[off + j] + c * (p - b[j])) % p);
        a.pop_back();
        poly_trim(a);
    }
    return a;
}

inline Poly poly_monic(Poly a, u64 p) {
    poly_trim(a);
    if (a.empty()) return a;
    u64 lead = a.back();
    if (lead != 1) {
        u64 inv = powmod(lead, p - 2, p);
        for (auto& c : a) c = (u32)((u64)c * inv % p);
    }
    return a;
}

inline Poly poly_gcd(Poly a, Poly b, u64 p) {
    a = poly_monic(std::move(a), p);
    b = poly_monic(std::move(b), p);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = poly_monic(std::move(r), p);
    }
    return a;
}

// Monic degree-N polynomial over F_p, irreducible iff x^{p^N} = x mod f and
// gcd(x^{p^{N/l}} - x, f) = 1 for every prime l | N.
inline bool poly_irreducible(const Poly& f, u64 p) {
    std::size_t n = f.size() - 1;
    if (f[0] == 0) return false;  // divisible by x
    std::vector<u64> prime_divs;
    {
        u64 m = n;
        for (u64 q = 2; q * q <= m; ++q)
            if (m % q == 0) {
                prime_divs.push_back(q);
                while (m % q == 0) m /= q;
            }
        if (m > 1) prime_divs.push_back(m);
    }
    Poly g{0, 1};  // x
    for (std::size_t j = 1; j <= n; ++j) {
        g = poly_powmod(g, p, f, p);
        for (u64 l : prime_divs) {
            if (j == n / l) {
                Poly diff = g;
                diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
                diff[1] = (u32)((diff[1] + p - 1) % p);
                poly_trim(diff);
                Poly d = poly_gcd(diff, f, p);
                if (d.size() != 1) return false;
            }
        }
    }
    // g == x^{p^N} mod f must equal x
    return g.size() == 2 && g[0] == 0 && g[1] == 1;
}

}  // namespace detail

class FieldContext {
public:
    // Deterministic construction: the modulus is the lexicographically least
    // monic irreducible of degree k*n (non-leading coefficients compared as
    // base-p digits, low degree first) and gamma the least-index primitive
    // element.
    FieldContext(u64 p, int k, int n, u64 size_cap = kMaxFieldSize) : p_(p), k_(k), n_(n) {
        if (!is_prime(p)) throw std::invalid_argument("FieldContext: p must be prime");
        if (k < 1) throw std::invalid_argument("FieldContext: k must be >= 1");
        if (n < 2) throw std::invalid_argument("FieldContext: n must be >= 2");
        int deg = k * n;
        u128 sz = 1;
        for (int i = 0; i < deg; ++i) {
            sz *= p;
            if (sz > size_cap) throw std::out_of_range("FieldContext: p^(k*n) exceeds size cap");
        }
        size_ = (u64)sz;
        q_ = 1;
        for (int i = 0; i < k; ++i) q_ *= p;
        group_order_ = size_ - 1;
        group_factors_ = factor(group_order_);

        find_modulus(deg);
        find_gamma();
        build_tables();
        build_subfield();
    }

    u64 p() const { return p_; }
    int k() const { return k_; }
    int n() const { return n_; }
    u64 q() const { return q_; }
    u64 size() const { return size_; }
    u64 group_order() const { return group_order_; }
    const Factorization& group_factors() const { return group_factors_; }
    const std::vector<u32>& modulus() const { return modulus_; }
    FieldElement gamma() const { return gamma_; }
    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }

    // Subfield F_q, sorted by index; contains 0 and 1.
    const std::vector<FieldElement>& subfield() const { return subfield_; }
    bool in_subfield(FieldElement x) const { return in_subfield_[x.index]; }

    u64 log(FieldElement x) const {
        if (x.index == 0) throw std::domain_error("log: zero has no discrete log");
        return log_table_[x.index];
    }
    FieldElement exp(u64 a) const { return {exp_table_[a % group_order_]}; }

    FieldElement add(FieldElement a, FieldElement b) const {
        if (p_ == 2) return {a.index ^ b.index};
        u32 x = a.index, y = b.index, r = 0, pw = 1;
        while (x | y) {
            u32 s = x % (u32)p_ + y % (u32)p_;
            if (s >= p_) s -= (u32)p_;
            r += s * pw;
            x /= (u32)p_;
            y /= (u32)p_;
            pw *= (u32)p_;
        }
        return {r};
    }

    FieldElement neg(FieldElement a) const {
        if (p_ == 2) return a;
        u32 x = a.index, r = 0, pw = 1;
        while (x) {
            u32 d = x % (u32)p_;
            if (d) d = (u32)p_ - d;
            r += d * pw;
            x /= (u32)p_;
            pw *= (u32)p_;
        }
        return {r};
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.index == 0 || b.index == 0) return {0};
        u64 s = log_table_[a.index] + log_table_[b.index];
        if (s >= group_order_) s -= group_order_;
        return {exp_table_[s]};
    }

    FieldElement inv(FieldElement a) const {
        if (a.index == 0) throw std::domain_error("inv: zero is not invertible");
        u64 l = log_table_[a.index];
        return {exp_table_[l == 0 ? 0 : group_order_ - l]};
    }

    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

    FieldElement pow(FieldElement a, u64 e) const {
        if (a.index == 0) return e == 0 ? one() : zero();
        u64 l = detail::mulmod(log_table_[a.index], e % group_order_, group_order_);
        return {exp_table_[l]};
    }

    u64 order(FieldElement x) const {
        if (x.index == 0) throw std::domain_error("order: zero has no multiplicative order");
        return group_order_ / std::gcd((u64)log_table_[x.index], group_order_);
    }

    bool is_r_primitive(FieldElement x, u64 r) const {
        if (r == 0 || group_order_ % r != 0)
            throw std::invalid_argument("is_r_primitive: r must divide q^n-1");
        if (x.index == 0) throw std::domain_error("is_r_primitive: zero input");
        return std::gcd((u64)log_table_[x.index], group_order_) == r;
    }

    bool is_m_free(FieldElement x, u64 m) const {
        if (m == 0 || group_order_ % m != 0)
            throw std::invalid_argument("is_m_free: m must divide q^n-1");
        if (x.index == 0) throw std::domain_error("is_m_free: zero input");
        return std::gcd(m, group_order_ / order(x)) == 1;
    }

    // theta generates the extension iff it is moved by the Frobenius
    // x -> x^{q^{n/l}} for every prime l | n.
    bool is_generator(FieldElement theta) const {
        if (theta.index == 0) return false;
        u64 lt = log_table_[theta.index];
        u64 m = (u64)n_;
        for (u64 l = 2; l * l <= m; ++l) {
            if (m % l) continue;
            if (!moved_by_frobenius(lt, (u64)(n_ / (int)l), theta)) return false;
            while (m % l == 0) m /= l;
        }
        if (m > 1 && !moved_by_frobenius(lt, (u64)(n_ / (int)m), theta)) return false;
        return true;
    }

private:
    bool moved_by_frobenius(u64 log_theta, u64 j, FieldElement theta) const {
        u64 e = 1;
        for (u64 i = 0; i < j; ++i) e *= q_;  // q^j <= q^{n/2} <= sqrt(size), no overflow
        u64 l = detail::mulmod(log_theta, e % group_order_, group_order_);
        return exp_table_[l] != theta.index;
    }

    u32 encode(const detail::Poly& a) const {
        u64 r = 0;
        for (std::size_t i = a.size(); i-- > 0;) r = r * p_ + a[i];
        return (u32)r;
    }

    detail::Poly decode(u32 idx) const {
        detail::Poly a;
        while (idx) {
            a.push_back(idx % (u32)p_);
            idx /= (u32)p_;
        }
        return a;
    }

    void find_modulus(int deg) {
        for (u64 c = 0;; ++c) {
            if (c >= size_) throw std::logic_error("FieldContext: no irreducible modulus found");
            if (c % p_ == 0) continue;  // constant term zero
            detail::Poly f = decode((u32)c);
            f.resize(deg + 1, 0);
            f[deg] = 1;
            if (detail::poly_irreducible(f, p_)) {
                modulus_poly_ = f;
                modulus_.assign(f.begin(), f.end());
                return;
            }
        }
    }

    void find_gamma() {
        for (u32 idx = 2; idx < size_; ++idx) {
            detail::Poly cand = decode(idx);
            bool primitive = true;
            for (auto& [pr, e] : group_factors_.factors) {
                detail::Poly pw = detail::poly_powmod(cand, group_order_ / pr, modulus_poly_, p_);
                if (pw.size() == 1 && pw[0] == 1) { primitive = false; break; }
            }
            if (primitive) {
                gamma_ = {idx};
                return;
            }
        }
        throw std::logic_error("FieldContext: no primitive element found");
    }

    void build_tables() {
        exp_table_.assign(group_order_, 0);
        log_table_.assign(size_, std::numeric_limits<u32>::max());
        detail::Poly g = decode(gamma_.index);
        detail::Poly acc{1};
        for (u64 a = 0; a < group_order_; ++a) {
            u32 idx = encode(acc);
            exp_table_[a] = idx;
            log_table_[idx] = (u32)a;
            acc = detail::poly_mulmod(acc, g, modulus_poly_, p_);
        }
    }

    void build_subfield() {
        in_subfield_.assign(size_, false);
        subfield_.clear();
        subfield_.push_back({0});
        in_subfield_[0] = true;
        u64 stride = group_order_ / (q_ - 1);
        for (u64 j = 0; j < q_ - 1; ++j) {
            u32 idx = exp_table_[j * stride];
            subfield_.push_back({idx});
            in_subfield_[idx] = true;
        }
        std::sort(subfield_.begin(), subfield_.end());
    }

    u64 p_;
    int k_;
    int n_;
    u64 q_ = 0;
    u64 size_ = 0;
    u64 group_order_ = 0;
    Factorization group_factors_;
    detail::Poly modulus_poly_;
    std::vector<u32> modulus_;
    FieldElement gamma_;
    std::vector<u32> exp_table_;
    std::vector<u32> log_table_;
    std::vector<FieldElement> subfield_;
    std::vector<bool> in_subfield_;
};

}  // namespace rprim
