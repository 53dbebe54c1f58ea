#pragma once

// Canonical enumeration of translate sets and lines, exhaustive verification
// of the translate/line properties for r-primitive elements, and prime-power
// range scans for threshold candidates.
//
// A line {a + b*x : x in F_q} is canonicalized in two steps: b is reduced to
// the least index in b*F_q^*, then a to the least index in a + b*F_q. The
// ratio theta = a/b is constant on the additive coset only up to F_q shifts,
// which never change generator status, so the coset representative decides.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rprim/arith.hpp"
#include "rprim/ff.hpp"
#include "rprim/rstruct.hpp"

namespace rprim {

struct CanonicalLine {
    FieldElement a;      // offset, least index in its coset
    FieldElement b;      // direction, least index in its F_q^* orbit
    FieldElement theta;  // a / b, a generator of the extension

    friend bool operator==(const CanonicalLine& x, const CanonicalLine& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator<(const CanonicalLine& x, const CanonicalLine& y) {
        if (x.b != y.b) return x.b < y.b;
        return x.a < y.a;
    }
};

enum class PropertyMode { translate, line };

inline const char* to_string(PropertyMode m) {
    return m == PropertyMode::translate ? "translate" : "line";
}

inline PropertyMode mode_from_string(const std::string& s) {
    if (s == "translate") return PropertyMode::translate;
    if (s == "line") return PropertyMode::line;
    throw std::invalid_argument("mode must be 'translate' or 'line'");
}

struct PropertyReport {
    u64 q = 0;
    u64 p = 0;
    int k = 1;
    int n = 0;
    u64 r = 1;
    PropertyMode mode = PropertyMode::line;
    bool pass = false;
    u64 lines_checked = 0;
    u64 min_count = 0;  // exact when full counts were requested, else 1/0
    std::vector<CanonicalLine> exceptions;  // zero-hit lines, sorted, capped
    u64 exceptions_total = 0;
    double elapsed_s = 0;
};

struct VerifyOptions {
    bool full_counts = false;
    std::size_t max_exceptions = 1000;
    unsigned threads = 1;  // 0 = hardware concurrency
};

namespace detail {

// Least index in each F_q^*-orbit of nonzero elements, ascending.
inline std::vector<u32> canonical_directions(const FieldContext& ctx) {
    std::vector<bool> seen(ctx.size(), false);
    std::vector<u32> dirs;
    for (u32 b = 1; b < ctx.size(); ++b) {
        if (seen[b]) continue;
        dirs.push_back(b);
        for (FieldElement c : ctx.subfield())
            if (c.index != 0) seen[ctx.mul({b}, c).index] = true;
    }
    return dirs;
}

// Enumerates the canonical lines of one direction class in ascending offset
// order. The coset of 0 (that is, b*F_q itself) has ratio in F_q and is
// skipped implicitly by the generator test.
template <typename Fn>
void for_each_line_of_direction(const FieldContext& ctx, u32 b, std::vector<u32>& epoch,
                                u32 epoch_id, Fn&& fn) {
    FieldElement bel{b};
    FieldElement binv = ctx.inv(bel);
    std::vector<u32> span;
    span.reserve(ctx.subfield().size());
    for (FieldElement x : ctx.subfield()) span.push_back(ctx.mul(bel, x).index);
    for (u32 a = 0; a < ctx.size(); ++a) {
        if (epoch[a] == epoch_id) continue;
        for (u32 s : span) epoch[ctx.add({a}, {s}).index] = epoch_id;
        FieldElement theta = ctx.mul({a}, binv);
        if (!ctx.is_generator(theta)) continue;
        fn(CanonicalLine{{a}, bel, theta});
    }
}

}  // namespace detail

// Canonicalize an arbitrary admissible (alpha, theta) pair: the point set
// {alpha*(theta+x)} equals {a + b*x} with b = alpha, a = alpha*theta.
inline CanonicalLine canonicalize(const FieldContext& ctx, FieldElement alpha,
                                  FieldElement theta) {
    if (alpha.index == 0) throw std::invalid_argument("canonicalize: alpha must be nonzero");
    if (!ctx.is_generator(theta))
        throw std::invalid_argument("canonicalize: theta must generate the extension");
    FieldElement a0 = ctx.mul(alpha, theta);
    FieldElement b = alpha;
    for (FieldElement c : ctx.subfield())
        if (c.index != 0) b = std::min(b, ctx.mul(alpha, c));
    FieldElement a = a0;
    for (FieldElement x : ctx.subfield()) a = std::min(a, ctx.add(a0, ctx.mul(b, x)));
    return {a, b, ctx.div(a, b)};
}

// All distinct translate sets of generators, one canonical line each.
inline std::vector<CanonicalLine> canonical_translates(const FieldContext& ctx) {
    std::vector<CanonicalLine> out;
    std::vector<u32> epoch(ctx.size(), 0);
    detail::for_each_line_of_direction(ctx, 1, epoch, 1,
                                       [&](const CanonicalLine& l) { out.push_back(l); });
    return out;
}

// All distinct lines with generator ratio, ascending in (b, a).
inline std::vector<CanonicalLine> canonical_lines(const FieldContext& ctx) {
    std::vector<CanonicalLine> out;
    std::vector<u32> epoch(ctx.size(), 0);
    u32 id = 0;
    for (u32 b : detail::canonical_directions(ctx))
        detail::for_each_line_of_direction(ctx, b, epoch, ++id,
                                           [&](const CanonicalLine& l) { out.push_back(l); });
    return out;
}

// Bitmap over element indexes marking r-primitivity; one pass over the
// exponent table.
inline std::vector<bool> r_primitive_bitmap(const FieldContext& ctx, u64 r) {
    u64 R = ctx.group_order();
    if (r == 0 || R % r != 0)
        throw std::invalid_argument("r_primitive_bitmap: r must divide q^n-1");
    std::vector<bool> bm(ctx.size(), false);
    for (u64 a = 0; a < R; ++a)
        if (std::gcd(a, R) == r) bm[ctx.exp(a).index] = true;
    return bm;
}

inline u64 line_hit_count(const FieldContext& ctx, const CanonicalLine& line,
                          const std::vector<bool>& bitmap) {
    u64 cnt = 0;
    for (FieldElement x : ctx.subfield())
        if (bitmap[ctx.add(line.a, ctx.mul(line.b, x)).index]) ++cnt;
    return cnt;
}

inline u64 line_hit_count(const FieldContext& ctx, const CanonicalLine& line, u64 r) {
    return line_hit_count(ctx, line, r_primitive_bitmap(ctx, r));
}

inline PropertyReport verify_property(const FieldContext& ctx, u64 r, PropertyMode mode,
                                      const VerifyOptions& opts = {}) {
    auto t0 = std::chrono::steady_clock::now();

    PropertyReport rep;
    rep.q = ctx.q();
    rep.p = ctx.p();
    rep.k = ctx.k();
    rep.n = ctx.n();
    rep.r = r;
    rep.mode = mode;

    std::vector<bool> bitmap = r_primitive_bitmap(ctx, r);
    std::vector<u32> dirs = mode == PropertyMode::translate
                                ? std::vector<u32>{1}
                                : detail::canonical_directions(ctx);

    struct DirResult {
        u64 lines = 0;
        u64 min_count = std::numeric_limits<u64>::max();
        std::vector<CanonicalLine> exceptions;
    };
    std::vector<DirResult> results(dirs.size());

    auto run_range = [&](std::size_t lo, std::size_t hi) {
        std::vector<u32> epoch(ctx.size(), 0);
        u32 id = 0;
        for (std::size_t di = lo; di < hi; ++di) {
            DirResult& dr = results[di];
            detail::for_each_line_of_direction(
                ctx, dirs[di], epoch, ++id, [&](const CanonicalLine& line) {
                    ++dr.lines;
                    if (opts.full_counts) {
                        u64 c = line_hit_count(ctx, line, bitmap);
                        dr.min_count = std::min(dr.min_count, c);
                        if (c == 0) dr.exceptions.push_back(line);
                    } else {
                        bool hit = false;
                        for (FieldElement x : ctx.subfield())
                            if (bitmap[ctx.add(line.a, ctx.mul(line.b, x)).index]) {
                                hit = true;
                                break;
                            }
                        if (!hit) dr.exceptions.push_back(line);
                    }
                });
        }
    };

    unsigned nthreads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<unsigned>(nthreads, (unsigned)dirs.size()));
    if (nthreads <= 1) {
        run_range(0, dirs.size());
    } else {
        std::vector<std::thread> workers;
        std::size_t chunk = (dirs.size() + nthreads - 1) / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(dirs.size(), lo + chunk);
            if (lo >= hi) break;
            workers.emplace_back(run_range, lo, hi);
        }
        for (auto& w : workers) w.join();
    }

    u64 min_count = std::numeric_limits<u64>::max();
    for (const DirResult& dr : results) {
        rep.lines_checked += dr.lines;
        min_count = std::min(min_count, dr.min_count);
        rep.exceptions_total += dr.exceptions.size();
        for (const CanonicalLine& l : dr.exceptions)
            if (rep.exceptions.size() < opts.max_exceptions) rep.exceptions.push_back(l);
    }
    std::sort(rep.exceptions.begin(), rep.exceptions.end());
    rep.pass = rep.exceptions_total == 0;
    rep.min_count = opts.full_counts ? (rep.lines_checked ? min_count : 0) : (rep.pass ? 1 : 0);

    rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

struct ScanResult {
    std::vector<PropertyReport> reports;
    std::optional<u64> largest_failing_q;
};

inline ScanResult scan(int n, u64 r, u64 q_lo, u64 q_hi, PropertyMode mode,
                       const VerifyOptions& opts = {}, u64 size_cap = kMaxFieldSize) {
    ScanResult res;
    for (const PrimePower& pp : prime_powers_in(q_lo, q_hi)) {
        u64 m = checked_pow(pp.q, n) - 1;
        if (r == 0 || m % r != 0) continue;
        FieldContext ctx(pp.p, pp.k, n, size_cap);
        PropertyReport rep = verify_property(ctx, r, mode, opts);
        if (!rep.pass) res.largest_failing_q = pp.q;
        res.reports.push_back(std::move(rep));
    }
    return res;
}

}  // namespace rprim
