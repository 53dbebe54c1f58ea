#pragma once

// Shared test helpers: independent oracles (sieves, brute-force enumeration)
// and the desk-scale field inventory used by the property suites.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "rprim/rprim.hpp"

namespace rprim::testutil {

struct FieldSpec {
    u64 p;
    int k;
    int n;
    u64 q() const {
        u64 r = 1;
        for (int i = 0; i < k; ++i) r *= p;
        return r;
    }
    u64 size() const {
        u64 r = 1;
        for (int i = 0; i < k * n; ++i) r *= p;
        return r;
    }
};

// Every (p, k, n) with n >= 2 and p^(k*n) <= limit.
inline std::vector<FieldSpec> desk_fields(u64 limit) {
    std::vector<FieldSpec> out;
    for (u64 p = 2; p * p <= limit; ++p) {
        if (!is_prime(p)) continue;
        for (int k = 1;; ++k) {
            bool any = false;
            for (int n = 2;; ++n) {
                u128 sz = 1;
                bool fits = true;
                for (int i = 0; i < k * n && fits; ++i) {
                    sz *= p;
                    if (sz > limit) fits = false;
                }
                if (!fits) break;
                out.push_back({p, k, n});
                any = true;
            }
            if (!any) break;
        }
    }
    std::sort(out.begin(), out.end(), [](const FieldSpec& a, const FieldSpec& b) {
        return a.size() < b.size();
    });
    return out;
}

// Linear sieves, independent of the factorization-based implementations.
inline std::vector<u64> sieve_phi(u64 limit) {
    std::vector<u64> phi(limit + 1);
    std::iota(phi.begin(), phi.end(), 0);
    for (u64 i = 2; i <= limit; ++i)
        if (phi[i] == i)  // i prime
            for (u64 j = i; j <= limit; j += i) phi[j] -= phi[j] / i;
    return phi;
}

inline std::vector<int> sieve_mobius(u64 limit) {
    std::vector<int> mu(limit + 1, 1);
    std::vector<bool> composite(limit + 1, false);
    std::vector<u64> primes;
    for (u64 i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (u64 p : primes) {
            if (i * p > limit) break;
            composite[i * p] = true;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    return mu;
}

// Multiplicative order by iterated multiplication; a route independent of
// the gcd-of-log formula.
inline u64 order_by_iteration(const FieldContext& ctx, FieldElement x) {
    FieldElement acc = x;
    u64 ord = 1;
    while (acc != ctx.one()) {
        acc = ctx.mul(acc, x);
        ++ord;
    }
    return ord;
}

// Per-prime bitmaps of p-th powers, built by raising every nonzero element
// to the p-th power. Supports the definitional m-freeness oracle: xi is
// m-free iff xi is not a p-th power for any prime p | m.
struct PowerSets {
    std::map<u64, std::vector<bool>> by_prime;

    PowerSets(const FieldContext& ctx, const std::vector<u64>& primes) {
        for (u64 p : primes) {
            std::vector<bool> bm(ctx.size(), false);
            for (u64 a = 0; a < ctx.group_order(); ++a)
                bm[ctx.pow(ctx.exp(a), p).index] = true;
            by_prime.emplace(p, std::move(bm));
        }
    }

    bool m_free(FieldElement xi, u64 m) const {
        for (auto& [p, bm] : by_prime)
            if (m % p == 0 && bm[xi.index]) return false;
        return true;
    }
};

// Sorted point set of a line given by an arbitrary (alpha, theta) pair.
inline std::vector<u32> line_points(const FieldContext& ctx, FieldElement alpha,
                                    FieldElement theta) {
    std::vector<u32> pts;
    for (FieldElement x : ctx.subfield()) pts.push_back(ctx.mul(alpha, ctx.add(theta, x)).index);
    std::sort(pts.begin(), pts.end());
    return pts;
}

inline std::vector<u32> line_points(const FieldContext& ctx, const CanonicalLine& line) {
    std::vector<u32> pts;
    for (FieldElement x : ctx.subfield()) pts.push_back(ctx.add(line.a, ctx.mul(line.b, x)).index);
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace rprim::testutil
