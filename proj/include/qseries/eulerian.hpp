#pragma once

#include <map>

#include "qseries/theta.hpp"

namespace qseries {

/// One-sided (partial / false) theta sum
///   sum_{r>=0} (+-1)^r q^((A r^2 + B r)/2 + C).
/// A > 0 makes the sum convergent; integrality of the exponent for every r
/// is equivalent to A + B even, which the constructor asserts.
struct PartialThetaSpec {
    long long A, B, C = 0;
    bool alternating = true;

    PartialThetaSpec(long long A, long long B, long long C = 0, bool alternating = true)
        : A(A), B(B), C(C), alternating(alternating) {
        if (A <= 0) throw PreconditionError("PartialThetaSpec: A must be positive");
        if ((A + B) % 2 != 0)
            throw PreconditionError("PartialThetaSpec: (A r^2 + B r)/2 must be an integer"
                                    " for all r, i.e. A + B even");
    }
};

inline QSeries partial_theta(const PartialThetaSpec& spec, long long order) {
    auto exponent = [&](long long r) { return (spec.A * r * r + spec.B * r) / 2 + spec.C; };
    std::map<long long, Rat> acc;
    detail::convex_scan(exponent, order, 0, 1LL << 61, 2, [&](long long r) {
        acc[exponent(r)] += spec.alternating ? detail::sign_pow(-1, r) : 1;
    });
    return QSeries::from_map(acc, order);
}

/// chi_0(q) = sum_{n>=0} q^n / (q^(n+1);q)_n.
/// The n-th summand has valuation n, so summing n through the working order
/// is enough.
inline QSeries chi0(long long order) {
    if (order < 0) return QSeries::zero(order);
    QSeries sum = QSeries::zero(order);
    for (long long n = 0; n <= order; ++n) {
        QSeries den = pochhammer(QMonomial(1, n + 1), n, order);
        sum += (QMonomial(1, n) * invert(den)).truncated(order);
    }
    return sum;
}

/// chi_1(q) = sum_{n>=0} q^n / (q^(n+1);q)_{n+1}.
inline QSeries chi1(long long order) {
    if (order < 0) return QSeries::zero(order);
    QSeries sum = QSeries::zero(order);
    for (long long n = 0; n <= order; ++n) {
        QSeries den = pochhammer(QMonomial(1, n + 1), n + 1, order);
        sum += (QMonomial(1, n) * invert(den)).truncated(order);
    }
    return sum;
}

/// sum_{n>=0} (q;q)_{2n} q^n / (q;q)_n^2.
inline QSeries kl_lhs_A(long long order) {
    if (order < 0) return QSeries::zero(order);
    QSeries sum = QSeries::zero(order);
    for (long long n = 0; n <= order; ++n) {
        QSeries num = pochhammer(QMonomial::q(1), 2 * n, order);
        QSeries den = pow(pochhammer(QMonomial::q(1), n, order), 2).truncated(order);
        sum += (QMonomial(1, n) * div(num, den)).truncated(order);
    }
    return sum;
}

/// sum_{n>=0} (q;q^2)_n q^n / (q;q)_n.
inline QSeries kl_lhs_B(long long order) {
    if (order < 0) return QSeries::zero(order);
    QSeries sum = QSeries::zero(order);
    for (long long n = 0; n <= order; ++n) {
        QSeries num = pochhammer(QMonomial::q(1), n, order, 2);
        QSeries den = pochhammer(QMonomial::q(1), n, order);
        sum += (QMonomial(1, n) * div(num, den)).truncated(order);
    }
    return sum;
}

/// Right-hand side of the first false theta identity: sum (-1)^r q^(3r(r+1)/2).
inline QSeries false_theta_A(long long order) {
    return partial_theta(PartialThetaSpec(3, 3), order);
}

/// Right-hand side of the second: sum (-1)^r q^(3r^2+2r) (1 + q^(2r+1)).
inline QSeries false_theta_B(long long order) {
    return partial_theta(PartialThetaSpec(6, 4), order) +
           partial_theta(PartialThetaSpec(6, 8, 1), order);
}

} // namespace qseries
