#pragma once

// Exact 64-bit integer number theory: deterministic primality, factorization
// (trial division + Pollard rho), Moebius, Euler phi, divisor counts and
// prime-power enumeration. All functions are pure.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rprim {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

struct Factorization {
    u64 value = 1;
    std::vector<std::pair<u64, int>> factors;  // (prime, exponent), primes ascending
};

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((u128)a * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = m == 1 ? 0 : 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Primes below 10^6, sieved once.
inline const std::vector<u32>& small_primes() {
    static const std::vector<u32> primes = [] {
        constexpr u32 limit = 1'000'000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<u32> ps;
        for (u32 i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            ps.push_back(i);
            for (u64 j = (u64)i * i; j <= limit; j += i) composite[j] = true;
        }
        return ps;
    }();
    return primes;
}

}  // namespace detail

// Deterministic Miller-Rabin, valid for all m < 2^64.
inline bool is_prime(u64 m) {
    if (m < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (m == p) return true;
        if (m % p == 0) return false;
    }
    u64 d = m - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = detail::powmod(a, d, m);
        if (x == 1 || x == m - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod(x, x, m);
            if (x == m - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

namespace detail {

// Brent's cycle-finding variant with deterministic parameters. Returns a
// nontrivial factor of an odd composite n.
inline u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        while (g == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            for (u64 k = 0; k < r && g == 1; k += 128) {
                ys = y;
                u64 lim = std::min<u64>(128, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = step(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = step(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n) return g;
    }
}

inline void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) { out.push_back(n); return; }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace detail

inline Factorization factor(u64 m) {
    if (m < 1 || m >= (1ull << 63))
        throw std::out_of_range("factor: input must be in [1, 2^63)");
    Factorization f;
    f.value = m;
    u64 rem = m;
    for (u32 p : detail::small_primes()) {
        if ((u64)p * p > rem) break;
        if (rem % p == 0) {
            int e = 0;
            while (rem % p == 0) { rem /= p; ++e; }
            f.factors.emplace_back(p, e);
        }
    }
    if (rem > 1) {
        if (is_prime(rem)) {
            f.factors.emplace_back(rem, 1);
        } else {
            std::vector<u64> ps;
            detail::factor_rec(rem, ps);
            std::sort(ps.begin(), ps.end());
            for (std::size_t i = 0; i < ps.size();) {
                std::size_t j = i;
                while (j < ps.size() && ps[j] == ps[i]) ++j;
                f.factors.emplace_back(ps[i], (int)(j - i));
                i = j;
            }
            std::sort(f.factors.begin(), f.factors.end());
        }
    }
    return f;
}

inline int mobius(u64 m) {
    if (m < 1) throw std::out_of_range("mobius: input must be >= 1");
    Factorization f = factor(m);
    for (auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

inline u64 euler_phi_of(const Factorization& f) {
    u64 r = 1;
    for (auto& [p, e] : f.factors) {
        r *= p - 1;
        for (int i = 1; i < e; ++i) r *= p;
    }
    return r;
}

inline u64 euler_phi(u64 m) {
    if (m < 1) throw std::out_of_range("euler_phi: input must be >= 1");
    return euler_phi_of(factor(m));
}

inline u64 divisor_count_of(const Factorization& f) {
    u64 r = 1;
    for (auto& [p, e] : f.factors) r *= (u64)(e + 1);
    return r;
}

inline u64 divisor_count(u64 m) {
    if (m < 1) throw std::out_of_range("divisor_count: input must be >= 1");
    return divisor_count_of(factor(m));
}

inline std::vector<u64> divisors_of(const Factorization& f) {
    std::vector<u64> divs{1};
    for (auto& [p, e] : f.factors) {
        std::size_t sz = divs.size();
        u64 pw = 1;
        for (int i = 1; i <= e; ++i) {
            pw *= p;
            for (std::size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pw);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

inline std::vector<u64> divisors(u64 m) { return divisors_of(factor(m)); }

// Product of the distinct primes of m.
inline u64 radical(u64 m) {
    u64 r = 1;
    for (auto& [p, e] : factor(m).factors) r *= p;
    return r;
}

struct PrimePower {
    u64 p;
    int k;
    u64 q;  // p^k
};

inline std::vector<PrimePower> prime_powers_in(u64 lo, u64 hi) {
    if (lo < 1 || lo > hi) throw std::out_of_range("prime_powers_in: need 1 <= lo <= hi");
    std::vector<PrimePower> out;
    for (u64 q = std::max<u64>(lo, 2); q <= hi; ++q) {
        if (is_prime(q)) {
            out.push_back({q, 1, q});
            continue;
        }
        // composite: prime power iff q = p^k for its smallest prime p
        for (u32 p : detail::small_primes()) {
            if ((u64)p * p > q) break;
            if (q % p == 0) {
                u64 rem = q;
                int k = 0;
                while (rem % p == 0) { rem /= p; ++k; }
                if (rem == 1) out.push_back({p, k, q});
                break;
            }
        }
    }
    return out;
}

// q^n as u64, throwing on overflow past 2^63.
inline u64 checked_pow(u64 q, int n) {
    u128 acc = 1;
    for (int i = 0; i < n; ++i) {
        acc *= q;
        if (acc >= ((u128)1 << 63)) throw std::out_of_range("checked_pow: q^n exceeds 2^63");
    }
    return (u64)acc;
}

}  // namespace rprim
