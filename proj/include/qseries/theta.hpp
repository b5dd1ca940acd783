#pragma once

#include <map>
#include <optional>
#include <string>

#include "qseries/detail.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// Argument of a theta function j(x; q^M): a signed q-power over a base modulus.
struct ThetaArg {
    QMonomial x;
    long long modulus = 1;

    ThetaArg(QMonomial x, long long modulus) : x(x), modulus(modulus) {
        if (modulus < 1) throw PreconditionError("ThetaArg: modulus must be >= 1");
    }
};

/// True iff j(x;q^M) vanishes identically, i.e. x = +q^(M k).
inline bool jtheta_is_zero(const QMonomial& x, long long modulus) {
    return x.sign == 1 && ((x.exp % modulus) + modulus) % modulus == 0;
}

/// j(x;q^M) as the bilateral sum  sum_n (-1)^n q^(M n(n-1)/2) x^n, x = s q^e.
/// Enumerates every n whose term exponent M*binom2(n) + e*n stays within the
/// requested order (outward scan from the parabola vertex, margin 2).
inline QSeries jtheta(const QMonomial& x, long long modulus, long long order) {
    if (modulus < 1) throw PreconditionError("jtheta: modulus must be >= 1");
    if (jtheta_is_zero(x, modulus)) return QSeries::zero(order);
    auto term_exp = [&](long long n) { return modulus * binom2(n) + x.exp * n; };
    std::map<long long, Rat> acc;
    detail::convex_scan_all(term_exp, order, 2, [&](long long n) {
        acc[term_exp(n)] += detail::sign_pow(-x.sign, n);
    });
    return QSeries::from_map(acc, order);
}

inline QSeries jtheta(const ThetaArg& arg, long long order) {
    return jtheta(arg.x, arg.modulus, order);
}

/// Exact valuation of a nonvanishing j(x;q^M): the minimal term exponent of
/// the bilateral sum (no partial cancellation can occur at the minimum).
inline long long jtheta_valuation(const QMonomial& x, long long modulus) {
    if (jtheta_is_zero(x, modulus))
        throw ThetaZeroError("jtheta_valuation: j(" + x.str() + "; q^" +
                             std::to_string(modulus) + ") is identically zero");
    auto term_exp = [&](long long n) { return modulus * binom2(n) + x.exp * n; };
    return term_exp(detail::convex_argmin(term_exp));
}

/// J_m = (q^m;q^m)_infty as a truncated product.
inline QSeries eta_product(long long m, long long order) {
    if (m < 1) throw PreconditionError("eta_product: m must be >= 1");
    QSeries p = QSeries::one(order);
    for (long long i = 1; m * i <= order; ++i)
        p = (p - p.shifted(m * i)).truncated(order);
    return p;
}

/// J_{a,m} = j(q^a; q^m).
inline QSeries J_am(long long a, long long m, long long order) {
    return jtheta(QMonomial(1, a), m, order);
}

/// Jbar_{a,m} = j(-q^a; q^m).
inline QSeries Jbar_am(long long a, long long m, long long order) {
    return jtheta(QMonomial(-1, a), m, order);
}

/// Finite q-Pochhammer (x; q^M)_n = prod_{i=0}^{n-1} (1 - q^(M i) x).
/// Each binomial factor multiplies in linear time: p <- p - (s q^E) p.
inline QSeries pochhammer(const QMonomial& x, long long n, long long order,
                          long long base = 1) {
    if (n < 0) throw PreconditionError("pochhammer: n must be >= 0");
    if (base < 1) throw PreconditionError("pochhammer: base must be >= 1");
    return to_order(order, [&](long long w) {
        QSeries p = QSeries::one(w);
        for (long long i = 0; i < n; ++i) p = p - x.times_q(base * i) * p;
        return p;
    });
}

/// (x; q^M)_infty. The product only truncates when the factors tend to 1,
/// i.e. x.exp >= 1, or x = -q^e with e >= 0.
inline QSeries pochhammer_inf(const QMonomial& x, long long order, long long base = 1) {
    if (base < 1) throw PreconditionError("pochhammer_inf: base must be >= 1");
    if (!(x.exp >= 1 || (x.sign == -1 && x.exp >= 0)))
        throw NonTruncating("pochhammer_inf: (" + x.str() + "; q^" +
                            std::to_string(base) + ")_inf does not truncate");
    QSeries p = QSeries::one(order);
    for (long long i = 0; x.exp + base * i <= order; ++i)
        p = (p - x.times_q(base * i) * p).truncated(order);
    return p;
}

/// Result of reducing a theta argument exponent into [0, M):
/// jtheta(original) = sign * q^shift * jtheta(arg).
struct JNormalForm {
    ThetaArg arg;
    int sign;
    long long shift;
};

/// Elliptic reduction  j(q^(Mn) x0; q^M) = (-1)^n q^(-M binom2(n)) x0^(-n) j(x0; q^M).
inline JNormalForm j_elliptic_normalize(const ThetaArg& a) {
    long long n = detail::floor_div(a.x.exp, a.modulus);
    long long res = a.x.exp - n * a.modulus; // in [0, M)
    QMonomial x0(a.x.sign, res);
    int sign = detail::sign_pow(-a.x.sign, n);
    long long shift = -a.modulus * binom2(n) - n * res;
    return {ThetaArg(x0, a.modulus), sign, shift};
}

/// j(-x,q) j(y,q) + j(x,q) j(-y,q) = 2 j(xy,q^2) j(q/x*y, q^2), checked
/// coefficientwise through the requested order.
inline MatchReport h1_theorem_check(const QMonomial& x, const QMonomial& y,
                                    long long order) {
    QSeries lhs = to_order(order, [&](long long w) {
        return jtheta(x.negated(), 1, w) * jtheta(y, 1, w) +
               jtheta(x, 1, w) * jtheta(y.negated(), 1, w);
    });
    QSeries rhs = to_order(order, [&](long long w) {
        return Rat(2) * (jtheta(x * y, 2, w) * jtheta((x.inverse() * y).times_q(1), 2, w));
    });
    return equal_to_order(lhs, rhs, order);
}

/// Modulus increase  j(x;q) = J_1 j(x;q^n) j(qx;q^n) ... j(q^(n-1)x;q^n) / J_n^n.
inline MatchReport j_mod_inc_check(const QMonomial& x, long long n, long long order) {
    if (n < 1) throw PreconditionError("j_mod_inc_check: n must be >= 1");
    QSeries lhs = to_order(order, [&](long long w) { return jtheta(x, 1, w); });
    QSeries rhs = to_order(order, [&](long long w) {
        QSeries prod = eta_product(1, w);
        for (long long i = 0; i < n; ++i) prod = prod * jtheta(x.times_q(i), n, w);
        return div(prod, pow(eta_product(n, w), n));
    });
    return equal_to_order(lhs, rhs, order);
}

/// Modulus decrease, n = 2 only:  j(x^2;q^2) = J_2 j(x;q) j(-x;q) / J_1^2.
/// Larger n would need primitive n-th roots of unity in the coefficient ring.
inline MatchReport j_mod_dec_check(const QMonomial& x, long long n, long long order) {
    if (n < 1) throw PreconditionError("j_mod_dec_check: n must be >= 1");
    if (n > 2)
        throw UnsupportedCyclotomic("j_mod_dec_check: n = " + std::to_string(n) +
                                    " requires cyclotomic coefficients");
    if (n == 1) {
        QSeries s = jtheta(x, 1, order);
        return equal_to_order(s, s, order);
    }
    QSeries lhs = to_order(order, [&](long long w) { return jtheta(x.pow(2), 2, w); });
    QSeries rhs = to_order(order, [&](long long w) {
        return div(eta_product(2, w) * jtheta(x, 1, w) * jtheta(x.negated(), 1, w),
                   pow(eta_product(1, w), 2));
    });
    return equal_to_order(lhs, rhs, order);
}

} // namespace qseries
