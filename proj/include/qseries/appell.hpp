#pragma once

#include <map>
#include <string>

#include "qseries/theta.hpp"

namespace qseries {

/// Arguments of m(x, q^M, z) with x, z signed q-powers.
///
/// validate() enforces the two degeneracies ruled out by the definition:
/// j(z;q^M) must not vanish, and no bilateral term 1/(1 - q^(M(r-1)) x z)
/// may have an identically zero denominator. The denominator at index r is
/// 1 - sigma q^E(r) with sigma = sign(x) sign(z) and E(r) = M(r-1)+ex+ez,
/// so a pole occurs exactly when sigma = +1 and M | ex+ez.
struct AppellArgs {
    QMonomial x;
    long long modulus = 1;
    QMonomial z;

    AppellArgs(QMonomial x, long long modulus, QMonomial z)
        : x(x), modulus(modulus), z(z) {
        if (modulus < 1) throw PreconditionError("AppellArgs: modulus must be >= 1");
    }

    bool valid() const {
        if (jtheta_is_zero(z, modulus)) return false;
        int sigma = x.sign * z.sign;
        if (sigma == 1 && ((x.exp + z.exp) % modulus + modulus) % modulus == 0)
            return false;
        return true;
    }

    void validate() const {
        if (jtheta_is_zero(z, modulus))
            throw ThetaZeroError("m(" + x.str() + ", q^" + std::to_string(modulus) +
                                 ", " + z.str() + "): j(z;q^M) vanishes identically");
        int sigma = x.sign * z.sign;
        if (sigma == 1 && ((x.exp + z.exp) % modulus + modulus) % modulus == 0)
            throw PoleError("m(" + x.str() + ", q^" + std::to_string(modulus) + ", " +
                            z.str() + "): bilateral term at r = " +
                            std::to_string(1 - (x.exp + z.exp) / modulus) +
                            " has a vanishing denominator");
    }
};

/// m(x, q^M, z) = (1/j(z;q^M)) sum_r (-1)^r q^(M binom2(r)) z^r / (1 - q^(M(r-1)) x z).
///
/// Each denominator is expanded geometrically on the side that converges as a
/// power series: for E(r) > 0 as sum_k sigma^k q^(Ek), for E(r) < 0 as
/// -sum_k sigma^(k+1) q^(-E(k+1)), and E(r) = 0 with sigma = -1 contributes
/// an exact factor 1/2. The r-range covers every term whose minimal exponent
/// reaches the working order (convex outward scan, `margin` extra steps);
/// the working order is padded so that the final division by j(z;q^M) is
/// still good through the requested order.
inline QSeries appell_m(const AppellArgs& args, long long order, long long margin = 2) {
    args.validate();
    const long long m = args.modulus;
    const long long ex = args.x.exp, ez = args.z.exp;
    const int sigma = args.x.sign * args.z.sign;

    auto E = [&](long long r) { return m * (r - 1) + ex + ez; };
    // minimal exponent contributed by the r-th bilateral term
    auto mu = [&](long long r) {
        long long base = m * binom2(r) + ez * r;
        long long e = E(r);
        return base + (e < 0 ? -e : 0);
    };

    const long long vj = jtheta_valuation(args.z, m);
    const long long vS_lb = mu(detail::convex_argmin(mu));
    if (vS_lb - vj > order) return QSeries::zero(order);
    const long long numer_order = order + vj;
    const long long denom_order = order + 2 * vj - vS_lb;

    std::map<long long, Rat> acc;
    detail::convex_scan_all(mu, numer_order, margin, [&](long long r) {
        long long base = m * binom2(r) + ez * r;
        int sr = detail::sign_pow(-args.z.sign, r); // (-1)^r sign(z)^r
        long long e = E(r);
        if (e > 0) {
            for (long long k = 0; base + e * k <= numer_order; ++k)
                acc[base + e * k] += Rat(sr * detail::sign_pow(sigma, k));
        } else if (e < 0) {
            for (long long k = 0; base - e * (k + 1) <= numer_order; ++k)
                acc[base - e * (k + 1)] -= Rat(sr * detail::sign_pow(sigma, k + 1));
        } else {
            acc[base] += Rat(sr) / 2;
        }
    });
    QSeries numer = QSeries::from_map(acc, numer_order);
    QSeries denom = jtheta(args.z, m, denom_order);
    return div(numer, denom).truncated(order);
}

inline QSeries appell_m(const QMonomial& x, long long modulus, const QMonomial& z,
                        long long order, long long margin = 2) {
    return appell_m(AppellArgs(x, modulus, z), order, margin);
}

/// m(x,q,z) = x^(-1) m(x^(-1), q, z^(-1)): returns the transformed arguments
/// and the monomial prefactor.
struct AppellFlip {
    QMonomial prefactor;
    AppellArgs args;
};

inline AppellFlip appell_flip(const AppellArgs& a) {
    return {a.x.inverse(), AppellArgs(a.x.inverse(), a.modulus, a.z.inverse())};
}

/// m(q^M x, q^M, z) = 1 - x m(x, q^M, z): the right-hand side pieces for the
/// argument triple (x, M, z).
struct AppellXStep {
    Rat constant;      // 1
    QMonomial factor;  // -x
    AppellArgs inner;  // (x, M, z)
};

inline AppellXStep appell_x_step(const AppellArgs& a) {
    return {Rat(1), a.x.negated(), a};
}

/// The theta quotient equal to m(x,q^M,z1) - m(x,q^M,z0):
///   z0 J_M^3 j(z1/z0;q^M) j(x z0 z1;q^M)
///   / ( j(z0;q^M) j(z1;q^M) j(x z0;q^M) j(x z1;q^M) ).
inline QSeries appell_z_change(const QMonomial& x, long long modulus,
                               const QMonomial& z1, const QMonomial& z0,
                               long long order) {
    for (const QMonomial& d : {z0, z1, x * z0, x * z1})
        if (jtheta_is_zero(d, modulus))
            throw ThetaZeroError("appell_z_change: denominator theta j(" + d.str() +
                                 "; q^" + std::to_string(modulus) + ") vanishes");
    return to_order(order, [&](long long w) {
        QSeries numer = pow(eta_product(modulus, w), 3) * jtheta(z1 / z0, modulus, w) *
                        jtheta(x * z0 * z1, modulus, w);
        QSeries denom = jtheta(z0, modulus, w) * jtheta(z1, modulus, w) *
                        jtheta(x * z0, modulus, w) * jtheta(x * z1, modulus, w);
        return z0 * div(numer, denom);
    });
}

} // namespace qseries
