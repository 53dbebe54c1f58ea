#pragma once

// Decomposition of (q^n - 1, r) into the prime classes P_s / P_t / P_u, the
// derived quantities s, t, u, e_i, f_i, A_r, and the explicit integer form of
// the sufficiency bound q > (s*f_1*...*f_k*d(u))^2.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rprim/arith.hpp"

namespace rprim {

// Exact rational with 64-bit parts; always reduced, denominator positive.
struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n, i64 d = 1) : num(n), den(d) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        i64 g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double to_double() const { return (double)num / (double)den; }

    friend Rational operator*(Rational a, Rational b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator+(Rational a, Rational b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

struct RStructure {
    u64 q = 0;
    int n = 0;
    u64 r = 1;
    u64 group_order = 0;  // q^n - 1

    std::vector<u64> ps, pt, pu;  // prime classes, ascending

    u64 s = 1, t = 1, u = 1;

    struct TPair {
        u64 p;  // prime in P_t
        u64 e;  // p^{b_p}
        u64 f;  // p^{b_p + 1}
    };
    std::vector<TPair> pairs;  // one per prime of P_t, ascending

    std::size_t k() const { return pairs.size(); }

    Rational theta_u;        // phi(u)/u
    u64 a_r = 1;             // prod over P_s u P_t of p^{b_p + 1}
    u64 bound_rhs_root = 1;  // s * f_1 * ... * f_k * d(u)
};

inline RStructure compute_structure(u64 q, int n, u64 r) {
    if (n < 2) throw std::invalid_argument("compute_structure: n must be >= 2");
    u64 m = checked_pow(q, n) - 1;
    if (r == 0 || m % r != 0)
        throw std::invalid_argument("compute_structure: r must divide q^n-1");
    {
        Factorization qf = factor(q);
        if (qf.factors.size() != 1) throw std::invalid_argument("compute_structure: q must be a prime power");
    }

    RStructure st;
    st.q = q;
    st.n = n;
    st.r = r;
    st.group_order = m;

    Factorization mf = factor(m);
    Factorization rf = factor(r);
    auto b_of = [&](u64 p) -> int {
        for (auto& [rp, e] : rf.factors)
            if (rp == p) return e;
        return 0;
    };

    for (auto& [p, a] : mf.factors) {
        int b = b_of(p);
        u64 pb = 1;
        for (int i = 0; i < b; ++i) pb *= p;
        if (b == a) {
            st.ps.push_back(p);
            st.s *= pb;
        } else if (b > 0) {
            st.pt.push_back(p);
            st.t *= pb;
            st.pairs.push_back({p, pb, pb * p});
        } else {
            st.pu.push_back(p);
            st.u *= p;
        }
    }

    st.theta_u = Rational((i64)euler_phi(st.u), (i64)st.u);

    for (auto& [p, a] : mf.factors) {
        int b = b_of(p);
        if (b > 0) {
            u64 pw = 1;
            for (int i = 0; i < b + 1; ++i) pw *= p;
            st.a_r *= pw;
        }
    }

    u64 rhs = st.s;
    for (auto& pr : st.pairs) rhs *= pr.f;
    rhs *= divisor_count(st.u);
    st.bound_rhs_root = rhs;
    return st;
}

// l_{i,d} for d | f_i: 1 - 1/p_i unless d = f_i, in which case -1/p_i.
inline Rational ell_coefficient(const RStructure& st, std::size_t i, u64 d) {
    if (i < 1 || i > st.pairs.size())
        throw std::out_of_range("ell_coefficient: index out of range");
    const auto& pr = st.pairs[i - 1];
    if (d == 0 || pr.f % d != 0)
        throw std::invalid_argument("ell_coefficient: d must divide f_i");
    if (d == pr.f) return Rational(-1, (i64)pr.p);
    return Rational((i64)pr.p - 1, (i64)pr.p);
}

// q > s*f_1*...*f_k*d(u)*sqrt(q), evaluated as q > rhs^2 in integers.
inline bool bound_holds(const RStructure& st) {
    u128 rhs2 = (u128)st.bound_rhs_root * st.bound_rhs_root;
    return (u128)st.q > rhs2;
}

struct BoundVerdict {
    u64 q = 0;
    bool holds = false;
};

inline std::vector<BoundVerdict> min_q_satisfying_bound(int n, u64 r, u64 q_max) {
    if (q_max > 10'000'000) throw std::out_of_range("min_q_satisfying_bound: q_max must be <= 10^7");
    std::vector<BoundVerdict> out;
    for (const PrimePower& pp : prime_powers_in(1, q_max)) {
        u64 m;
        try {
            m = checked_pow(pp.q, n) - 1;
        } catch (const std::out_of_range&) {
            throw std::out_of_range("min_q_satisfying_bound: q^n exceeds 2^63 in range");
        }
        if (m % r != 0) continue;
        RStructure st = compute_structure(pp.q, n, r);
        out.push_back({pp.q, bound_holds(st)});
    }
    return out;
}

}  // namespace rprim
