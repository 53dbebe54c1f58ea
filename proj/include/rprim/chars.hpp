#pragma once

// Multiplicative characters of F_{q^n}^*, the Vinogradov indicator Omega_m,
// the k-th power indicator w_k, the full character expansion of the
// r-primitive indicator, the Katz-bound sweep, and the character-sum form of
// the per-line count N(theta, alpha).
//
// A character is identified by its exponent m: chi_m(gamma^a) =
// exp(2*pi*i*a*m/(q^n-1)). Evaluation is one log lookup plus one lookup in a
// precomputed root-of-unity table, so phases are indexed exactly.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rprim/arith.hpp"
#include "rprim/ff.hpp"
#include "rprim/rstruct.hpp"

namespace rprim {

inline constexpr double kIndicatorTol = 1e-9;

struct Character {
    u64 m = 0;
    u64 order = 1;
};

class CharSystem {
public:
    explicit CharSystem(const FieldContext& ctx) : ctx_(ctx) {
        u64 R = ctx.group_order();
        roots_.resize(R);
        for (u64 j = 0; j < R; ++j)
            roots_[j] = std::polar(1.0, 2.0 * std::numbers::pi * (double)j / (double)R);
    }

    const FieldContext& ctx() const { return ctx_; }
    u64 group_order() const { return ctx_.group_order(); }

    std::complex<double> root(u64 j) const { return roots_[j]; }

    Character character(u64 m) const {
        u64 R = group_order();
        m %= R;
        return {m, R / std::gcd(m, R)};
    }

    std::complex<double> eval(Character chi, FieldElement x) const {
        if (x.index == 0) throw std::domain_error("eval: characters are undefined at zero");
        u64 a = ctx_.log(x);
        return roots_[(u64)((u128)a * chi.m % group_order())];
    }

private:
    const FieldContext& ctx_;
    std::vector<std::complex<double>> roots_;
};

// The phi(d) characters of exact order d, ascending by exponent m.
inline std::vector<Character> characters_of_order(const CharSystem& cs, u64 d) {
    u64 R = cs.group_order();
    if (d == 0 || R % d != 0)
        throw std::invalid_argument("characters_of_order: d must divide q^n-1");
    if (d == 1) return {Character{0, 1}};
    std::vector<Character> out;
    u64 step = R / d;
    for (u64 j = 1; j <= d; ++j)
        if (std::gcd(j, d) == 1) out.push_back({j * step, d});
    return out;
}

// Vinogradov's expansion of the m-free indicator:
// Omega_m(x) = (phi(m)/m) * sum_{d|m} mu(d)/phi(d) * sum_{ord chi = d} chi(x).
inline std::complex<double> omega_m(const CharSystem& cs, u64 m, FieldElement x) {
    u64 R = cs.group_order();
    if (m == 0 || R % m != 0) throw std::invalid_argument("omega_m: m must divide q^n-1");
    std::complex<double> acc = 0;
    for (u64 d : divisors(m)) {
        int mu = mobius(d);
        if (mu == 0) continue;
        std::complex<double> inner = 0;
        for (const Character& chi : characters_of_order(cs, d)) inner += cs.eval(chi, x);
        acc += ((double)mu / (double)euler_phi(d)) * inner;
    }
    return ((double)euler_phi(m) / (double)m) * acc;
}

// Indicator of k-th powers: w_k(x) = (1/k) sum over characters of order
// dividing k, i.e. exponents j*(R/k) for 0 <= j < k.
inline std::complex<double> w_k_indicator(const CharSystem& cs, u64 k, FieldElement x) {
    u64 R = cs.group_order();
    if (k == 0 || R % k != 0) throw std::invalid_argument("w_k_indicator: k must divide q^n-1");
    if (x.index == 0) throw std::domain_error("w_k_indicator: zero input");
    u64 a = cs.ctx().log(x);
    u64 step = (u64)((u128)a * (R / k) % R);
    std::complex<double> acc = 0;
    u64 idx = 0;
    for (u64 j = 0; j < k; ++j) {
        acc += cs.root(idx);
        idx += step;
        if (idx >= R) idx -= R;
    }
    return acc / (double)k;
}

// Flattened character expansion of the r-primitive indicator: the indicator
// equals scale * sum of coef * chi_m(x) over the terms, where the terms run
// over all character tuples (chi_1, chi_2, psi_1..psi_k) with ord chi_1 | u,
// ord chi_2 | s and ord psi_i | f_i. The tuple of all-trivial characters is
// the unique term with m = 0.
struct GammaExpansion {
    double scale = 1;         // theta(u) / r
    double trivial_coef = 1;  // coefficient of the m = 0 term
    struct Term {
        double coef;
        u64 m;
    };
    std::vector<Term> terms;  // every term, including the trivial one

    // sum over non-trivial terms of |coef|; multiplied by sqrt(q)/r this is
    // the right-hand side of the main-term inequality.
    double nontrivial_abs_sum = 0;
};

inline GammaExpansion build_gamma_expansion(const CharSystem& cs, const RStructure& st) {
    if (st.group_order != cs.group_order())
        throw std::invalid_argument("build_gamma_expansion: structure does not match field");
    u64 R = cs.group_order();
    GammaExpansion ex;
    ex.scale = st.theta_u.to_double() / (double)st.r;

    // per-slot tables: (coefficient, list of character exponents) per divisor
    struct Slot {
        std::vector<std::pair<Rational, std::vector<u64>>> choices;
    };
    std::vector<Slot> slots;

    {  // d_1 | u with mu(d_1)/phi(d_1); u squarefree, so no zero terms
        Slot s1;
        for (u64 d : divisors(st.u)) {
            int mu = mobius(d);
            if (mu == 0) continue;
            std::vector<u64> ms;
            for (const Character& chi : characters_of_order(cs, d)) ms.push_back(chi.m);
            s1.choices.push_back({Rational(mu, (i64)euler_phi(d)), std::move(ms)});
        }
        slots.push_back(std::move(s1));
    }
    {  // d_2 | s, unit coefficient
        Slot s2;
        for (u64 d : divisors(st.s)) {
            std::vector<u64> ms;
            for (const Character& chi : characters_of_order(cs, d)) ms.push_back(chi.m);
            s2.choices.push_back({Rational(1), std::move(ms)});
        }
        slots.push_back(std::move(s2));
    }
    for (std::size_t i = 1; i <= st.k(); ++i) {  // delta_i | f_i with l_{i,delta_i}
        Slot si;
        for (u64 d : divisors(st.pairs[i - 1].f)) {
            std::vector<u64> ms;
            for (const Character& chi : characters_of_order(cs, d)) ms.push_back(chi.m);
            si.choices.push_back({ell_coefficient(st, i, d), std::move(ms)});
        }
        slots.push_back(std::move(si));
    }

    const std::size_t ns = slots.size();
    std::vector<std::size_t> choice(ns, 0);
    std::vector<std::size_t> char_idx(ns, 0);

    auto advance = [](std::vector<std::size_t>& idx, auto limit) -> bool {
        for (std::size_t j = idx.size(); j-- > 0;) {
            if (++idx[j] < limit(j)) return true;
            idx[j] = 0;
        }
        return false;
    };

    do {  // divisor tuples
        Rational coef(1);
        for (std::size_t i = 0; i < ns; ++i) coef = coef * slots[i].choices[choice[i]].first;
        double c = coef.to_double();
        std::fill(char_idx.begin(), char_idx.end(), 0);
        do {  // character tuples within the divisor tuple
            u64 m = 0;
            for (std::size_t i = 0; i < ns; ++i) {
                m += slots[i].choices[choice[i]].second[char_idx[i]];
                if (m >= R) m -= R;
            }
            ex.terms.push_back({c, m});
            if (m == 0)
                ex.trivial_coef = c;
            else
                ex.nontrivial_abs_sum += std::abs(c);
        } while (advance(char_idx,
                         [&](std::size_t j) { return slots[j].choices[choice[j]].second.size(); }));
    } while (advance(choice, [&](std::size_t j) { return slots[j].choices.size(); }));
    return ex;
}

// Expanded (flattened) evaluation of the r-primitive indicator at x.
inline std::complex<double> gamma_expanded(const CharSystem& cs, const GammaExpansion& ex,
                                           FieldElement x) {
    if (x.index == 0) throw std::domain_error("gamma_expanded: zero input");
    u64 R = cs.group_order();
    u64 a = cs.ctx().log(x);
    std::complex<double> acc = 0;
    for (const auto& t : ex.terms)
        acc += t.coef * cs.root((u64)((u128)a * t.m % R));
    return ex.scale * acc;
}

// Product-form evaluation: Omega_u(x) * w_s(x) * prod_i (w_{e_i} - w_{f_i})(x).
inline std::complex<double> gamma_product_form(const CharSystem& cs, const RStructure& st,
                                               FieldElement x) {
    std::complex<double> acc = omega_m(cs, st.u, x) * w_k_indicator(cs, st.s, x);
    for (const auto& pr : st.pairs)
        acc *= w_k_indicator(cs, pr.e, x) - w_k_indicator(cs, pr.f, x);
    return acc;
}

// Indicator of r-primitivity via characters. Both the product form and the
// expanded form are evaluated and must agree; the expanded value is returned.
inline std::complex<double> gamma_char(const CharSystem& cs, const RStructure& st,
                                       FieldElement x) {
    GammaExpansion ex = build_gamma_expansion(cs, st);
    std::complex<double> expanded = gamma_expanded(cs, ex, x);
    std::complex<double> product = gamma_product_form(cs, st, x);
    if (std::abs(expanded - product) > kIndicatorTol)
        throw std::logic_error("gamma_char: product and expanded forms disagree");
    return expanded;
}

// sum over x in F_q of chi(alpha*(theta+x)); theta must generate the
// extension, which keeps every summand nonzero.
inline std::complex<double> line_char_sum(const CharSystem& cs, Character chi,
                                          FieldElement alpha, FieldElement theta) {
    const FieldContext& ctx = cs.ctx();
    if (alpha.index == 0) throw std::invalid_argument("line_char_sum: alpha must be nonzero");
    if (!ctx.is_generator(theta))
        throw std::invalid_argument("line_char_sum: theta must generate the extension");
    std::complex<double> acc = 0;
    for (FieldElement x : ctx.subfield())
        acc += cs.eval(chi, ctx.mul(alpha, ctx.add(theta, x)));
    return acc;
}

struct KatzResult {
    u64 q = 0;
    int n = 0;
    double bound = 0;        // (n-1) * sqrt(q)
    double max_abs_sum = 0;  // max over nontrivial chi and generators theta
    double ratio = 0;        // max_abs_sum / bound
    u32 argmax_theta = 0;
    u64 argmax_m = 0;
};

// Exhaustive sweep of |sum_{x in F_q} chi(theta+x)| over all nontrivial
// characters and all generators theta. The sum is invariant (in modulus)
// under theta -> c*theta + x for c in F_q^*, x in F_q, so one representative
// per affine orbit suffices; orbits of non-generators consist of
// non-generators, so whole orbits are skipped at once.
inline KatzResult katz_max_ratio(const CharSystem& cs) {
    const FieldContext& ctx = cs.ctx();
    if (ctx.size() > (1ull << 16))
        throw std::out_of_range("katz_max_ratio: exhaustive mode requires q^n <= 2^16");
    u64 R = ctx.group_order();
    u64 q = ctx.q();

    KatzResult res;
    res.q = q;
    res.n = ctx.n();
    res.bound = (double)(ctx.n() - 1) * std::sqrt((double)q);

    std::vector<bool> visited(ctx.size(), false);
    std::vector<u64> phases(q), logs(q);

    for (u32 ti = 1; ti < ctx.size(); ++ti) {
        if (visited[ti]) continue;
        FieldElement theta{ti};
        bool gen = ctx.is_generator(theta);
        for (FieldElement c : ctx.subfield()) {
            if (c.index == 0) continue;
            FieldElement ct = ctx.mul(c, theta);
            for (FieldElement x : ctx.subfield()) visited[ctx.add(ct, x).index] = true;
        }
        if (!gen) continue;

        std::size_t cnt = 0;
        for (FieldElement x : ctx.subfield()) logs[cnt++] = ctx.log(ctx.add(theta, x));
        std::fill(phases.begin(), phases.end(), 0);
        for (u64 m = 1; m < R; ++m) {
            std::complex<double> acc = 0;
            for (std::size_t i = 0; i < cnt; ++i) {
                phases[i] += logs[i];
                if (phases[i] >= R) phases[i] -= R;
                acc += cs.root(phases[i]);
            }
            double mag = std::abs(acc);
            if (mag > res.max_abs_sum) {
                res.max_abs_sum = mag;
                res.argmax_theta = ti;
                res.argmax_m = m;
            }
        }
    }
    res.ratio = res.max_abs_sum / res.bound;
    return res;
}

struct NCharResult {
    double value = 0;           // estimate of N(theta, alpha)
    double normalized = 0;      // N / theta(u)
    double main_term = 0;       // (q/r) * l_{1,1} * ... * l_{k,1}, on the N/theta(u) scale
    double residual = 0;        // |normalized - main_term|
    double residual_bound = 0;  // (sqrt(q)/r) * sum over nontrivial terms of |coef|
};

// N(theta, alpha) via the character expansion; the direct count lives in the
// search module.
inline NCharResult n_char(const CharSystem& cs, const RStructure& st, FieldElement alpha,
                          FieldElement theta) {
    const FieldContext& ctx = cs.ctx();
    if (alpha.index == 0) throw std::invalid_argument("n_char: alpha must be nonzero");
    if (!ctx.is_generator(theta))
        throw std::invalid_argument("n_char: theta must generate the extension");

    GammaExpansion ex = build_gamma_expansion(cs, st);
    u64 R = cs.group_order();
    u64 q = ctx.q();

    std::vector<u64> logs;
    logs.reserve(q);
    for (FieldElement x : ctx.subfield()) logs.push_back(ctx.log(ctx.mul(alpha, ctx.add(theta, x))));

    std::complex<double> acc = 0;
    for (const auto& t : ex.terms) {
        std::complex<double> line_sum = 0;
        for (u64 a : logs) line_sum += cs.root((u64)((u128)a * t.m % R));
        acc += t.coef * line_sum;
    }

    NCharResult res;
    res.normalized = acc.real() / (double)st.r;
    res.value = st.theta_u.to_double() * res.normalized;
    double ell_prod = 1;
    for (std::size_t i = 1; i <= st.k(); ++i) ell_prod *= ell_coefficient(st, i, 1).to_double();
    res.main_term = (double)q / (double)st.r * ell_prod;
    res.residual = std::abs(res.normalized - res.main_term);
    res.residual_bound = std::sqrt((double)q) / (double)st.r * ex.nontrivial_abs_sum;
    return res;
}

}  // namespace rprim
