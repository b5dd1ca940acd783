#pragma once

#include <map>
#include <string>

#include "qseries/theta.hpp"

namespace qseries {

/// Sign weight defining the summation cones.
inline int sg(long long r) { return r >= 0 ? 1 : -1; }

/// sg(r,s) = (sg(r)+sg(s))/2 in {-1,0,1}; nonzero exactly on sg(r)=sg(s).
inline long long sg2(long long r, long long s) { return (sg(r) + sg(s)) / 2; }

/// Exponent coefficients of the double sum f_{a,b,c}.
struct HeckeParams2 {
    long long a, b, c;
    HeckeParams2(long long a, long long b, long long c) : a(a), b(b), c(c) {
        if (a < 1 || b < 1 || c < 1)
            throw PreconditionError("HeckeParams2: a, b, c must be strictly positive");
    }
};

/// Exponent coefficients of the triple sum g_{a,b,c,d,e,f}.
struct HeckeParams3 {
    long long a, b, c, d, e, f;
    HeckeParams3(long long a, long long b, long long c, long long d, long long e,
                 long long f)
        : a(a), b(b), c(c), d(d), e(e), f(f) {
        if (a < 1 || b < 1 || c < 1 || d < 1 || e < 1 || f < 1)
            throw PreconditionError("HeckeParams3: all six parameters must be strictly positive");
    }
};

namespace detail {

using qseries::detail::convex_min;
using qseries::detail::convex_scan;
using qseries::detail::sign_pow;
using qseries::detail::sum_range;

inline QSeries series_from_int_map(const std::map<long long, long long>& m,
                                   long long order) {
    std::map<long long, Rat> r;
    for (const auto& [e, c] : m)
        if (c != 0) r.emplace(e, Rat(static_cast<long>(c)));
    return QSeries::from_map(r, order);
}

inline constexpr long long cone_hi = (1LL << 61);

/// Accumulates  w * (-1)^(r+s) sx^r sy^s q^(A binom2(r) + B r s + C binom2(s) + u r + v s + base)
/// over one quadrant cone (r,s >= 0 or r,s <= -1), restricted to exponents <= bound.
/// Inside a cone all cross terms B r s are nonnegative, so per-axis parabola
/// minima give complete enumeration bounds.
inline void cone2_accumulate(std::map<long long, long long>& acc, long long A,
                             long long B, long long C, int sx, long long u, int sy,
                             long long v, long long base, long long w,
                             long long bound, bool upper) {
    const long long lo = upper ? 0 : -cone_hi;
    const long long hi = upper ? cone_hi : -1;
    auto f1 = [&](long long r) { return A * binom2(r) + u * r; };
    auto f2 = [&](long long s) { return C * binom2(s) + v * s; };
    const long long m2 = convex_min(f2, lo, hi);
    convex_scan(f1, bound - base - m2, lo, hi, 2, [&](long long r) {
        auto fs = [&](long long s) { return C * binom2(s) + (B * r + v) * s; };
        long long head = base + f1(r);
        convex_scan(fs, bound - head, lo, hi, 2, [&](long long s) {
            acc[head + fs(s)] += w * sign_pow(-sx, r) * sign_pow(-sy, s);
        });
    });
}

} // namespace detail

/// f_{a,b,c}(x,y,q) = (sum_{r,s>=0} - sum_{r,s<0}) (-1)^(r+s) x^r y^s
///                    q^(a binom2(r) + b r s + c binom2(s)),
/// enumerated directly over both cones through the requested order.
inline QSeries hecke_f(const HeckeParams2& p, const QMonomial& x, const QMonomial& y,
                       long long order) {
    std::map<long long, long long> acc;
    detail::cone2_accumulate(acc, p.a, p.b, p.c, x.sign, x.exp, y.sign, y.exp, 0, +1,
                             order, true);
    detail::cone2_accumulate(acc, p.a, p.b, p.c, x.sign, x.exp, y.sign, y.exp, 0, -1,
                             order, false);
    return detail::series_from_int_map(acc, order);
}

/// Octant sum of shifted coefficients:
///   (sum_{r,s,t>=0} + sum_{r,s,t<0}) c_{r+R, s+S, t+T}
/// with c the summand of g_{a,b,c,d,e,f}(x,y,z,q). (R,S,T)=(0,0,0) is the
/// triple sum itself. Exponents are evaluated at the shifted indices; the
/// loop bounds come from the expansion around (R,S,T), which leaves the
/// quadratic part untouched.
inline QSeries hecke_g_corner(const HeckeParams3& p, const QMonomial& x,
                              const QMonomial& y, const QMonomial& z, long long R,
                              long long S, long long T, long long order) {
    using detail::convex_min;
    using detail::convex_scan;
    using detail::sign_pow;
    const long long a = p.a, b = p.b, c = p.c, d = p.d, e = p.e, f = p.f;
    auto full_exp = [&](long long u, long long v, long long w) {
        return a * binom2(u) + b * u * v + c * binom2(v) + d * u * w + e * v * w +
               f * binom2(w) + x.exp * u + y.exp * v + z.exp * w;
    };
    const long long cst = full_exp(R, S, T);
    const long long u1 = x.exp + a * R + b * S + d * T;
    const long long v1 = y.exp + b * R + c * S + e * T;
    const long long w1 = z.exp + d * R + e * S + f * T;

    std::map<long long, long long> acc;
    for (bool upper : {true, false}) {
        const long long lo = upper ? 0 : -detail::cone_hi;
        const long long hi = upper ? detail::cone_hi : -1;
        auto f1 = [&](long long r) { return a * binom2(r) + u1 * r; };
        auto f2 = [&](long long s) { return c * binom2(s) + v1 * s; };
        auto f3 = [&](long long t) { return f * binom2(t) + w1 * t; };
        const long long m2 = convex_min(f2, lo, hi);
        const long long m3 = convex_min(f3, lo, hi);
        convex_scan(f1, order - cst - m2 - m3, lo, hi, 2, [&](long long r) {
            auto g2 = [&](long long s) { return c * binom2(s) + (b * r + v1) * s; };
            const long long head_r = cst + f1(r);
            convex_scan(g2, order - head_r - m3, lo, hi, 2, [&](long long s) {
                auto g3 = [&](long long t) {
                    return f * binom2(t) + (d * r + e * s + w1) * t;
                };
                const long long head_s = head_r + g2(s);
                convex_scan(g3, order - head_s, lo, hi, 2, [&](long long t) {
                    long long X = full_exp(R + r, S + s, T + t);
                    acc[X] += sign_pow(-1, r + s + t + R + S + T) *
                              sign_pow(x.sign, R + r) * sign_pow(y.sign, S + s) *
                              sign_pow(z.sign, T + t);
                });
            });
        });
    }
    return detail::series_from_int_map(acc, order);
}

/// g_{a,b,c,d,e,f}(x,y,z,q): both octants enter with a plus sign.
inline QSeries hecke_g(const HeckeParams3& p, const QMonomial& x, const QMonomial& y,
                       const QMonomial& z, long long order) {
    return hecke_g_corner(p, x, y, z, 0, 0, 0, order);
}

/// f_{a,b,c}(x,y,q) = -(q^(a+b+c)/(xy)) f_{a,b,c}(q^(2a+b)/x, q^(2c+b)/y, q).
struct FFlip {
    QMonomial prefactor, x, y;
};

inline FFlip f_flip(const HeckeParams2& p, const QMonomial& x, const QMonomial& y) {
    QMonomial pref(-x.sign * y.sign, p.a + p.b + p.c - x.exp - y.exp);
    QMonomial nx(x.sign, 2 * p.a + p.b - x.exp);
    QMonomial ny(y.sign, 2 * p.c + p.b - y.exp);
    return {pref, nx, ny};
}

/// g_{a..f}(x,y,z,q) = -(q^(a+b+c+d+e+f)/(xyz))
///                     g_{a..f}(q^(2a+b+d)/x, q^(b+2c+e)/y, q^(d+e+2f)/z, q).
struct GFlip {
    QMonomial prefactor, x, y, z;
};

inline GFlip g_flip(const HeckeParams3& p, const QMonomial& x, const QMonomial& y,
                    const QMonomial& z) {
    QMonomial pref(-x.sign * y.sign * z.sign,
                   p.a + p.b + p.c + p.d + p.e + p.f - x.exp - y.exp - z.exp);
    QMonomial nx(x.sign, 2 * p.a + p.b + p.d - x.exp);
    QMonomial ny(y.sign, p.b + 2 * p.c + p.e - y.exp);
    QMonomial nz(z.sign, p.d + p.e + 2 * p.f - z.exp);
    return {pref, nx, ny, nz};
}

/// Index-shift decomposition of the double sum:
///   f(x,y) = (-x)^l (-y)^k q^(a binom2(l)+blk+c binom2(k)) f(q^(al+bk)x, q^(bl+ck)y)
///          + sum_{m=0}^{l-1} (-x)^m q^(a binom2(m)) j(q^(mb)y; q^c)
///          + sum_{m=0}^{k-1} (-y)^m q^(c binom2(m)) j(q^(mb)x; q^a).
/// Negative l, k flip the correction ranges by the empty/negative-range
/// summation convention.
struct FShiftParts {
    QMonomial prefactor, shifted_x, shifted_y;
    QSeries shifted, corr_x, corr_y;
    QSeries total() const { return shifted + corr_x + corr_y; }
};

inline FShiftParts f_shift(const HeckeParams2& p, const QMonomial& x,
                           const QMonomial& y, long long l, long long k,
                           long long order) {
    using detail::sign_pow;
    using detail::sum_range;
    QMonomial pref(sign_pow(-x.sign, l) * sign_pow(-y.sign, k),
                   l * x.exp + k * y.exp + p.a * binom2(l) + p.b * l * k +
                       p.c * binom2(k));
    QMonomial nx = x.times_q(p.a * l + p.b * k);
    QMonomial ny = y.times_q(p.b * l + p.c * k);
    FShiftParts out{pref, nx, ny,
                    pref * hecke_f(p, nx, ny, order - pref.exp),
                    QSeries::zero(order), QSeries::zero(order)};
    sum_range(l, [&](long long m, int w) {
        QMonomial pm(sign_pow(-x.sign, m), m * x.exp + p.a * binom2(m));
        out.corr_x += Rat(w) * (pm * jtheta(y.times_q(m * p.b), p.c, order - pm.exp));
    });
    sum_range(k, [&](long long m, int w) {
        QMonomial pm(sign_pow(-y.sign, m), m * y.exp + p.c * binom2(m));
        out.corr_y += Rat(w) * (pm * jtheta(x.times_q(m * p.b), p.a, order - pm.exp));
    });
    return out;
}

/// Index-shift decomposition of the triple sum: the shifted g, three single
/// f-correction sums, and three finite double sums of theta functions (which
/// enter total() with a minus sign). Negative R, S, T are supported through
/// the same negative-range convention, applied to every finite sum.
struct GShiftParts {
    QMonomial prefactor, shifted_x, shifted_y, shifted_z;
    QSeries shifted;
    QSeries f_sum_r, f_sum_s, f_sum_t;
    QSeries jj_sum_rt, jj_sum_st, jj_sum_rs;
    QSeries total() const {
        return shifted + f_sum_r + f_sum_s + f_sum_t - jj_sum_rt - jj_sum_st -
               jj_sum_rs;
    }
};

inline GShiftParts g_shift(const HeckeParams3& p, const QMonomial& x,
                           const QMonomial& y, const QMonomial& z, long long R,
                           long long S, long long T, long long order) {
    using detail::sign_pow;
    using detail::sum_range;
    const long long a = p.a, b = p.b, c = p.c, d = p.d, e = p.e, f = p.f;
    QMonomial pref(sign_pow(-x.sign, R) * sign_pow(-y.sign, S) * sign_pow(-z.sign, T),
                   R * x.exp + S * y.exp + T * z.exp + a * binom2(R) + b * R * S +
                       c * binom2(S) + d * R * T + e * S * T + f * binom2(T));
    QMonomial nx = x.times_q(a * R + b * S + d * T);
    QMonomial ny = y.times_q(b * R + c * S + e * T);
    QMonomial nz = z.times_q(d * R + e * S + f * T);

    GShiftParts out{pref,
                    nx,
                    ny,
                    nz,
                    pref * hecke_g(p, nx, ny, nz, order - pref.exp),
                    QSeries::zero(order),
                    QSeries::zero(order),
                    QSeries::zero(order),
                    QSeries::zero(order),
                    QSeries::zero(order),
                    QSeries::zero(order)};

    sum_range(R, [&](long long r, int w) {
        QMonomial pm(sign_pow(-x.sign, r), r * x.exp + a * binom2(r));
        out.f_sum_r += Rat(w) * (pm * hecke_f(HeckeParams2(c, e, f), y.times_q(b * r),
                                              z.times_q(d * r), order - pm.exp));
    });
    sum_range(S, [&](long long s, int w) {
        QMonomial pm(sign_pow(-y.sign, s), s * y.exp + c * binom2(s));
        out.f_sum_s += Rat(w) * (pm * hecke_f(HeckeParams2(a, d, f), x.times_q(b * s),
                                              z.times_q(e * s), order - pm.exp));
    });
    sum_range(T, [&](long long t, int w) {
        QMonomial pm(sign_pow(-z.sign, t), t * z.exp + f * binom2(t));
        out.f_sum_t += Rat(w) * (pm * hecke_f(HeckeParams2(a, b, c), x.times_q(d * t),
                                              y.times_q(e * t), order - pm.exp));
    });
    sum_range(R, [&](long long r, int wr) {
        sum_range(T, [&](long long t, int wt) {
            QMonomial pm(sign_pow(-x.sign, r) * sign_pow(-z.sign, t),
                         r * x.exp + t * z.exp + a * binom2(r) + d * r * t +
                             f * binom2(t));
            out.jj_sum_rt += Rat(wr * wt) * (pm * jtheta(y.times_q(b * r + e * t), c,
                                                         order - pm.exp));
        });
    });
    sum_range(S, [&](long long s, int ws) {
        sum_range(T, [&](long long t, int wt) {
            QMonomial pm(sign_pow(-y.sign, s) * sign_pow(-z.sign, t),
                         s * y.exp + t * z.exp + c * binom2(s) + e * s * t +
                             f * binom2(t));
            out.jj_sum_st += Rat(ws * wt) * (pm * jtheta(x.times_q(b * s + d * t), a,
                                                         order - pm.exp));
        });
    });
    sum_range(R, [&](long long r, int wr) {
        sum_range(S, [&](long long s, int ws) {
            QMonomial pm(sign_pow(-x.sign, r) * sign_pow(-y.sign, s),
                         r * x.exp + s * y.exp + a * binom2(r) + b * r * s +
                             c * binom2(s));
            out.jj_sum_rs += Rat(wr * ws) * (pm * jtheta(z.times_q(d * r + e * s), f,
                                                         order - pm.exp));
        });
    });
    return out;
}

/// Verifies the exact finite relation behind the shift decomposition, with
/// every piece evaluated by direct lattice enumeration:
///
///   g(x,y,z) - [octant sum of c_{r+R,s+S,t+T}]
///     = sum_{r=0}^{R-1} [sg-weighted (s,t) cone sum]
///     + sum_{s=0}^{S-1} [sg-weighted (r,t) cone sum]
///     + sum_{t=0}^{T-1} [sg-weighted (r,s) cone sum]
///     - sum_{r<R,t<T} [bilateral s sum] - sum_{s<S,t<T} [bilateral r sum]
///     - sum_{r<R,s<S} [bilateral t sum].
struct GenericShiftSides {
    QSeries lhs; // octant sum minus shifted octant sum
    QSeries rhs; // cone pieces minus full-lattice pieces
};

inline GenericShiftSides generic_shift_sides(const HeckeParams3& p, const QMonomial& x,
                                             const QMonomial& y, const QMonomial& z,
                                             long long R, long long S, long long T,
                                             long long order) {
    if (R < 0 || S < 0 || T < 0)
        throw PreconditionError("generic_shift: R, S, T must be >= 0");
    using detail::cone2_accumulate;
    using detail::sign_pow;
    const long long a = p.a, b = p.b, c = p.c, d = p.d, e = p.e, f = p.f;

    QSeries lhs = hecke_g(p, x, y, z, order) -
                  hecke_g_corner(p, x, y, z, R, S, T, order);

    std::map<long long, long long> acc;
    // sg-weighted cone pieces, one fixed index at a time
    for (long long r = 0; r < R; ++r) {
        long long base = a * binom2(r) + x.exp * r;
        long long w = sign_pow(-x.sign, r);
        cone2_accumulate(acc, c, e, f, y.sign, y.exp + b * r, z.sign, z.exp + d * r,
                         base, w, order, true);
        cone2_accumulate(acc, c, e, f, y.sign, y.exp + b * r, z.sign, z.exp + d * r,
                         base, -w, order, false);
    }
    for (long long s = 0; s < S; ++s) {
        long long base = c * binom2(s) + y.exp * s;
        long long w = sign_pow(-y.sign, s);
        cone2_accumulate(acc, a, d, f, x.sign, x.exp + b * s, z.sign, z.exp + e * s,
                         base, w, order, true);
        cone2_accumulate(acc, a, d, f, x.sign, x.exp + b * s, z.sign, z.exp + e * s,
                         base, -w, order, false);
    }
    for (long long t = 0; t < T; ++t) {
        long long base = f * binom2(t) + z.exp * t;
        long long w = sign_pow(-z.sign, t);
        cone2_accumulate(acc, a, b, c, x.sign, x.exp + d * t, y.sign, y.exp + e * t,
                         base, w, order, true);
        cone2_accumulate(acc, a, b, c, x.sign, x.exp + d * t, y.sign, y.exp + e * t,
                         base, -w, order, false);
    }
    // full-lattice pieces: two finite indices, one bilateral axis
    auto bilateral = [&](long long A2, long long lin, long long base, long long w,
                         int s_sign) {
        auto fe = [&](long long n) { return A2 * binom2(n) + lin * n; };
        qseries::detail::convex_scan_all(fe, order - base, 2, [&](long long n) {
            acc[base + fe(n)] -= w * sign_pow(-s_sign, n);
        });
    };
    for (long long r = 0; r < R; ++r)
        for (long long t = 0; t < T; ++t) {
            long long base = a * binom2(r) + d * r * t + f * binom2(t) + x.exp * r +
                             z.exp * t;
            bilateral(c, b * r + e * t + y.exp, base,
                      sign_pow(-x.sign, r) * sign_pow(-z.sign, t), y.sign);
        }
    for (long long s = 0; s < S; ++s)
        for (long long t = 0; t < T; ++t) {
            long long base = c * binom2(s) + e * s * t + f * binom2(t) + y.exp * s +
                             z.exp * t;
            bilateral(a, b * s + d * t + x.exp, base,
                      sign_pow(-y.sign, s) * sign_pow(-z.sign, t), x.sign);
        }
    for (long long r = 0; r < R; ++r)
        for (long long s = 0; s < S; ++s) {
            long long base = a * binom2(r) + b * r * s + c * binom2(s) + x.exp * r +
                             y.exp * s;
            bilateral(f, d * r + e * s + z.exp, base,
                      sign_pow(-x.sign, r) * sign_pow(-y.sign, s), z.sign);
        }

    QSeries rhs = detail::series_from_int_map(acc, order);
    return {lhs, rhs};
}

inline MatchReport generic_shift_check(const HeckeParams3& p, const QMonomial& x,
                                       const QMonomial& y, const QMonomial& z,
                                       long long R, long long S, long long T,
                                       long long order) {
    GenericShiftSides sides = generic_shift_sides(p, x, y, z, R, S, T, order);
    return equal_to_order(sides.lhs, sides.rhs, order);
}

} // namespace qseries
