#pragma once

#include <map>
#include <string>
#include <tuple>

#include "qseries/appell.hpp"
#include "qseries/hecke.hpp"

namespace qseries {

/// Appell-Lerch + theta expansion of a Hecke-type double sum.
/// Sign convention: total = appell_part - theta_part.
struct ExpansionResult {
    QSeries appell_part;
    QSeries theta_part;
    QSeries total;
};

namespace detail {

inline void require_nonzero_theta(const QMonomial& x, long long modulus,
                                  const char* where) {
    if (jtheta_is_zero(x, modulus))
        throw ThetaZeroError(std::string(where) + ": denominator theta j(" + x.str() +
                             "; q^" + std::to_string(modulus) + ") vanishes");
}

/// jtheta with per-call memoization; the d,e,f triple sum below reuses a
/// small set of distinct theta arguments many times.
class JThetaCache {
public:
    explicit JThetaCache(long long order) : order_(order) {}
    const QSeries& operator()(const QMonomial& x, long long modulus) {
        auto key = std::make_tuple(x.sign, x.exp, modulus);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, jtheta(x, modulus, order_)).first;
        return it->second;
    }

private:
    long long order_;
    std::map<std::tuple<int, long long, long long>, QSeries> cache_;
};

} // namespace detail

/// The Appell-Lerch half of the expansion, with free z-arguments:
///   h_{a,b,c}(x,y,q,z1,z0) = j(x;q^a) m(-q^(a binom2(b/a+1)-c) (-y)(-x)^(-b/a), q^(b^2/a-c), z1)
///                          + j(y;q^c) m(-q^(c binom2(b/c+1)-a) (-x)(-y)^(-b/c), q^(b^2/c-a), z0).
inline QSeries thm_main_h(const HeckeParams2& p, const QMonomial& x, const QMonomial& y,
                          const QMonomial& z1, const QMonomial& z0, long long order) {
    const long long a = p.a, b = p.b, c = p.c;
    if (!(a * c < b * b && b % a == 0 && b % c == 0))
        throw PreconditionError("thm_main_h: need ac < b^2, a | b and c | b");
    const long long alpha = b / a, gamma = b / c;
    const long long D1 = b * b / a - c, D2 = b * b / c - a;
    QMonomial m1 =
        (y.negated() * x.negated().pow(-alpha)).negated().times_q(a * binom2(alpha + 1) - c);
    QMonomial m2 =
        (x.negated() * y.negated().pow(-gamma)).negated().times_q(c * binom2(gamma + 1) - a);
    return to_order(order, [&](long long w) {
        return jtheta(x, a, w) * appell_m(m1, D1, z1, w) +
               jtheta(y, c, w) * appell_m(m2, D2, z0, w);
    });
}

/// Full expansion of f_{a,b,c}(x,y,q) for ac < b^2 with a | b and c | b:
/// total = h_{a,b,c}(x,y,q,-1,-1) - theta_{a,b,c}(x,y,q) / (Jbar_{0,b^2/a-c} Jbar_{0,b^2/c-a}),
/// where theta_{a,b,c} is the finite d,e,f sum of theta quotients. Every
/// monomial prefactor is reduced to a single signed q-power before any series
/// arithmetic; the exponents (including b^3(b-a)/(2a^2c)) stay in integers.
inline ExpansionResult thm_main_expansion(const HeckeParams2& p, const QMonomial& x,
                                          const QMonomial& y, long long order) {
    const long long a = p.a, b = p.b, c = p.c;
    if (!(a * c < b * b && b % a == 0 && b % c == 0))
        throw PreconditionError("thm_main_expansion: need ac < b^2, a | b and c | b");
    const long long alpha = b / a, gamma = b / c;
    const long long D1 = b * b / a - c, D2 = b * b / c - a;
    const long long P = b * (alpha * gamma - 1);      // b (b^2/(ac) - 1)
    const long long PM = alpha * b * (alpha * gamma - 1);
    const long long Knum = b * b * b * (b - a);
    if (Knum % (2 * a * a * c) != 0)
        throw PreconditionError("thm_main_expansion: non-integer exponent b^3(b-a)/(2a^2c)");
    const long long K = Knum / (2 * a * a * c);

    QMonomial minus_one(-1, 0);
    QSeries h = thm_main_h(p, x, y, minus_one, minus_one, order);

    QSeries theta_part = to_order(order, [&](long long w) {
        detail::JThetaCache jt(w);
        QSeries etaP3 = pow(eta_product(P, w), 3);
        QSeries sum = QSeries::zero(w);
        for (long long dd = 0; dd < gamma; ++dd)
            for (long long ee = 0; ee < alpha; ++ee)
                for (long long ff = 0; ff < alpha; ++ff) {
                    QMonomial xf = x.negated().pow(ff);
                    long long pref_exp = D1 * binom2(dd + 1) + D2 * binom2(ee + ff + 1) +
                                         a * binom2(ff) + xf.exp;
                    QMonomial my = y.times_q(D1 * (dd + 1) + b * ff);
                    QMonomial mbig = (x.negated().pow(alpha) * y.inverse())
                                         .times_q(P * (ee + ff + 1) - D1 * (dd + 1) + K);
                    QMonomial mc =
                        (x.negated().pow(1 - alpha) * y.negated().pow(1 - gamma))
                            .times_q(D2 * (ee + 1) + D1 * (dd + 1) - c * binom2(gamma) -
                                     a * binom2(alpha));
                    QMonomial md1 = (x.negated() * y.negated().pow(-gamma))
                                        .times_q(D2 * (ee + 1) - c * binom2(gamma));
                    QMonomial md2 = (x.negated().pow(-alpha) * y.negated())
                                        .times_q(D1 * (dd + 1) - a * binom2(alpha));
                    for (const QMonomial& den : {md1, md2})
                        if (jtheta_is_zero(den, P))
                            throw ThetaZeroError(
                                "thm_main_expansion: denominator theta j(" + den.str() +
                                "; q^" + std::to_string(P) + ") vanishes at (d,e,f)=(" +
                                std::to_string(dd) + "," + std::to_string(ee) + "," +
                                std::to_string(ff) + ")");
                    QSeries numer = jt(my, alpha * b) * jt(mbig, PM) * etaP3 * jt(mc, P);
                    QSeries term = div(numer, jt(md1, P) * jt(md2, P));
                    term = QMonomial(xf.sign, pref_exp) * term;
                    sum += term;
                }
        return div(sum, jtheta(minus_one, D1, w) * jtheta(minus_one, D2, w));
    });

    return {h, theta_part, (h - theta_part).truncated(order)};
}

/// Fixed specialization for f_{4,4,1}: the d = 0..3 theta-quotient sum with
/// h_{4,4,1}(x,y,q,-1,-1) = j(x;q^4) m(-q^3 y/x, q^3, -1) + j(y;q) m(q^6 x/y^4, q^12, -1).
inline ExpansionResult f441_expansion(const QMonomial& x, const QMonomial& y,
                                      long long order) {
    QMonomial minus_one(-1, 0);
    QSeries h = to_order(order, [&](long long w) {
        QMonomial m1 = (y / x).negated().times_q(3);
        QMonomial m2 = (x * y.pow(-4)).times_q(6);
        return jtheta(x, 4, w) * appell_m(m1, 3, minus_one, w) +
               jtheta(y, 1, w) * appell_m(m2, 12, minus_one, w);
    });
    QSeries theta_part = to_order(order, [&](long long w) {
        QSeries J12cubed = pow(eta_product(12, w), 3);
        QSeries denom_const = jtheta(minus_one, 3, w) * jtheta(minus_one, 12, w);
        QSeries sum = QSeries::zero(w);
        for (long long d = 0; d < 4; ++d) {
            QMonomial den1 = (x * y.pow(-4)).negated().times_q(6);
            QMonomial den2 = (y / x).times_q(3 + 3 * d);
            detail::require_nonzero_theta(den1, 12, "f441_expansion");
            detail::require_nonzero_theta(den2, 12, "f441_expansion");
            QSeries numer = jtheta(y.times_q(3 + 3 * d), 4, w) *
                            jtheta((x / y).negated().times_q(9 - 3 * d), 12, w) *
                            J12cubed *
                            jtheta(y.pow(-3).negated().times_q(9 + 3 * d), 12, w);
            QSeries denom = denom_const * jtheta(den1, 12, w) * jtheta(den2, 12, w);
            sum += QMonomial(1, 3 * binom2(d + 1)) * div(numer, denom);
        }
        return sum;
    });
    return {h, theta_part, (h - theta_part).truncated(order)};
}

/// Fixed specialization for f_{3,3,1}, with the 4 Jbar_{2,8} Jbar_{6,24}
/// denominator and h_{3,3,1}(x,y,q,-1,-1) = j(x;q^3) m(-q^2 y/x, q^2, -1)
/// + j(y;q) m(-q^3 x/y^3, q^6, -1).
inline ExpansionResult f331_expansion(const QMonomial& x, const QMonomial& y,
                                      long long order) {
    QMonomial minus_one(-1, 0);
    QSeries h = to_order(order, [&](long long w) {
        QMonomial m1 = (x.inverse() * y).negated().times_q(2);
        QMonomial m2 = (x * y.pow(-3)).negated().times_q(3);
        return jtheta(x, 3, w) * appell_m(m1, 2, minus_one, w) +
               jtheta(y, 1, w) * appell_m(m2, 6, minus_one, w);
    });
    QSeries theta_part = to_order(order, [&](long long w) {
        QSeries J6cubed = pow(eta_product(6, w), 3);
        QSeries denom_const = Rat(4) * (Jbar_am(2, 8, w) * Jbar_am(6, 24, w));
        QSeries sum = QSeries::zero(w);
        for (long long d = 0; d < 3; ++d) {
            QMonomial den1 = (x * y.pow(-3)).times_q(3);
            QMonomial den2 = (y / x).times_q(2 + 2 * d);
            detail::require_nonzero_theta(den1, 6, "f331_expansion");
            detail::require_nonzero_theta(den2, 6, "f331_expansion");
            QSeries numer = jtheta(y.times_q(2 + 2 * d), 3, w) *
                            jtheta((x / y).negated().times_q(4 - 2 * d), 6, w) *
                            J6cubed * jtheta(y.pow(-2).times_q(5 + 2 * d), 6, w);
            QSeries denom = denom_const * jtheta(den1, 6, w) * jtheta(den2, 6, w);
            sum += QMonomial(1, d * (d + 1)) * div(numer, denom);
        }
        return sum;
    });
    return {h, theta_part, (h - theta_part).truncated(order)};
}

/// Expansion of f_{1,3,1}(x,y,q):
///   j(y;q) m(-q^5 x/y^3, q^8, q^2 y/x) + j(x;q) m(-q^5 y/x^3, q^8, x/(q^2 y))
///   + q^5 x^2 y J_{2,4} J_{8,16} j(q^7 xy;q^8) j(q^22 x^2 y^2;q^16)
///     / ( j(-q^5 x^2;q^8) j(-q^9 y^2;q^8) ).
/// The quotient enters with a plus sign, so theta_part stores its negative
/// and the invariant total = appell_part - theta_part still holds.
inline ExpansionResult f131_expansion(const QMonomial& x, const QMonomial& y,
                                      long long order) {
    QSeries appell = to_order(order, [&](long long w) {
        QMonomial m1 = (x * y.pow(-3)).negated().times_q(5);
        QMonomial z1 = (y / x).times_q(2);
        QMonomial m2 = (y * x.pow(-3)).negated().times_q(5);
        QMonomial z2 = (x / y).times_q(-2);
        return jtheta(y, 1, w) * appell_m(m1, 8, z1, w) +
               jtheta(x, 1, w) * appell_m(m2, 8, z2, w);
    });
    QSeries quotient = to_order(order, [&](long long w) {
        QMonomial pref = (x.pow(2) * y).times_q(5);
        QSeries numer = J_am(2, 4, w) * J_am(8, 16, w) *
                        jtheta((x * y).times_q(7), 8, w) *
                        jtheta((x.pow(2) * y.pow(2)).times_q(22), 16, w);
        QSeries denom = jtheta(x.pow(2).negated().times_q(5), 8, w) *
                        jtheta(y.pow(2).negated().times_q(9), 8, w);
        return pref * div(numer, denom);
    });
    return {appell, -quotient, (appell + quotient).truncated(order)};
}

} // namespace qseries
