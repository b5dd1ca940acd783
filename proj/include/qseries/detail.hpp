#pragma once

#include <functional>

namespace qseries::detail {

/// (+-1)^n, valid for negative n.
inline int sign_pow(int s, long long n) { return (n % 2 != 0) ? s : 1; }

inline long long floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

/// Argmin of a convex integer function, reached by local descent.
template <class F>
long long convex_argmin(F&& fn, long long start = 0) {
    long long n = start;
    while (fn(n + 1) < fn(n)) ++n;
    while (fn(n - 1) < fn(n)) --n;
    return n;
}

/// Visits every integer n in [lo, hi] with fn(n) <= bound, where fn is
/// convex. Scans outward from the clamped argmin and keeps going for
/// `margin` extra steps past the point where values exceed the bound.
template <class F, class V>
void convex_scan(F&& fn, long long bound, long long lo, long long hi,
                 long long margin, V&& visit) {
    const long long huge = (1LL << 62);
    long long start = convex_argmin(fn, lo > 0 ? lo : (hi < 0 ? hi : 0));
    if (start < lo) start = lo;
    if (start > hi) start = hi;
    long long miss = 0;
    for (long long n = start; n <= hi && miss <= margin && n < huge; ++n) {
        if (fn(n) <= bound) { visit(n); miss = 0; } else ++miss;
    }
    miss = 0;
    for (long long n = start - 1; n >= lo && miss <= margin && n > -huge; --n) {
        if (fn(n) <= bound) { visit(n); miss = 0; } else ++miss;
    }
}

/// Scan over all integers.
template <class F, class V>
void convex_scan_all(F&& fn, long long bound, long long margin, V&& visit) {
    convex_scan(fn, bound, -(1LL << 61), (1LL << 61), margin, std::forward<V>(visit));
}

/// Minimum of a convex function restricted to [lo, hi].
template <class F>
long long convex_min(F&& fn, long long lo, long long hi) {
    long long m = convex_argmin(fn, lo > 0 ? lo : (hi < 0 ? hi : 0));
    if (m < lo) m = lo;
    if (m > hi) m = hi;
    return fn(m);
}

/// Negative-range summation convention: sum_{i=a}^{b} := -sum_{i=b+1}^{a-1}
/// when b < a-1. Calls term(i, weight) for each index; used for the shift
/// corrections where ranges 0..N-1 may have negative N.
template <class T>
void sum_range(long long n_exclusive, T&& term) {
    if (n_exclusive >= 0) {
        for (long long i = 0; i < n_exclusive; ++i) term(i, +1);
    } else {
        for (long long i = n_exclusive; i <= -1; ++i) term(i, -1);
    }
}

} // namespace qseries::detail
