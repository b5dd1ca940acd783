#pragma once

#include <string>

#include "qseries/errors.hpp"

namespace qseries {

/// A signed integer power of q: sign * q^exp with sign in {+1,-1}.
/// The only admissible argument shape for x, y, z in theta, Appell-Lerch
/// and Hecke-sum evaluators. Closed under product, integer power and
/// inverse, so specialized formula arguments never leave the type.
struct QMonomial {
    int sign = 1;
    long long exp = 0;

    QMonomial() = default;
    QMonomial(int sign, long long exp) : sign(sign), exp(exp) {
        if (sign != 1 && sign != -1)
            throw PreconditionError("QMonomial sign must be +1 or -1");
    }

    static QMonomial q(long long e = 1) { return {1, e}; }
    static QMonomial one() { return {1, 0}; }
    static QMonomial minus_q(long long e = 1) { return {-1, e}; }

    QMonomial negated() const { return {-sign, exp}; }           // -x
    QMonomial inverse() const { return {sign, -exp}; }           // x^-1
    QMonomial times_q(long long k) const { return {sign, exp + k}; }

    /// x^k for any integer k; (+-1)^k only depends on the parity of k.
    QMonomial pow(long long k) const {
        int s = (k % 2 != 0) ? sign : 1;
        return {s, exp * k};
    }

    friend QMonomial operator*(const QMonomial& a, const QMonomial& b) {
        return {a.sign * b.sign, a.exp + b.exp};
    }
    friend QMonomial operator/(const QMonomial& a, const QMonomial& b) {
        return a * b.inverse();
    }
    friend bool operator==(const QMonomial& a, const QMonomial& b) {
        return a.sign == b.sign && a.exp == b.exp;
    }
    friend bool operator!=(const QMonomial& a, const QMonomial& b) { return !(a == b); }

    std::string str() const {
        std::string s = sign < 0 ? "-" : "";
        if (exp == 0) return s + "1";
        s += "q";
        if (exp != 1) s += "^" + std::to_string(exp);
        return s;
    }
};

/// binom(n,2) = n(n-1)/2, valid for negative n as well.
inline long long binom2(long long n) { return n * (n - 1) / 2; }

} // namespace qseries
