#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/monomial.hpp"
#include "qseries/rational.hpp"

namespace qseries {

/// Default truncation order used when a caller does not pass one.
inline long long default_order() { return 100; }

/// Truncated Laurent series in q with exact rational coefficients.
///
/// Coefficients are stored densely for exponents valuation()..order()
/// inclusive; everything below the valuation is zero, everything above
/// the order is unknown. All arithmetic tracks the guaranteed order
/// conservatively: results never claim knowledge they do not have, and
/// reading a coefficient above order() throws InsufficientOrder.
///
/// Canonical zero: valuation 0 and an empty coefficient run; order()
/// still records how far the series is known to vanish.
class QSeries {
public:
    QSeries() : val_(0), order_(default_order()) {}

    QSeries(long long valuation, std::vector<Rat> coeffs, long long order)
        : val_(valuation), order_(order), coeffs_(std::move(coeffs)) {
        if (!coeffs_.empty() &&
            static_cast<long long>(coeffs_.size()) != order_ - val_ + 1)
            throw PreconditionError("QSeries: coefficient run must span valuation..order");
        normalize();
    }

    static QSeries zero(long long order) { return QSeries(0, {}, order); }

    static QSeries constant(const Rat& c, long long order) {
        return monomial(c, 0, order);
    }

    static QSeries one(long long order) { return constant(Rat(1), order); }

    /// c * q^e, known through `order`.
    static QSeries monomial(const Rat& c, long long e, long long order) {
        if (c == 0 || e > order) return zero(order);
        std::vector<Rat> run(static_cast<std::size_t>(order - e + 1), Rat(0));
        run[0] = c;
        return QSeries(e, std::move(run), order);
    }

    static QSeries from_monomial(const QMonomial& m, long long order) {
        return monomial(Rat(m.sign), m.exp, order);
    }

    long long valuation() const { return val_; }
    long long order() const { return order_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of q^e. Zero below the valuation; throws above the order.
    const Rat& coeff(long long e) const {
        if (e > order_)
            throw InsufficientOrder("coefficient of q^" + std::to_string(e) +
                                    " requested, series known to order " +
                                    std::to_string(order_));
        if (e < val_ || coeffs_.empty()) return zero_rat();
        return coeffs_[static_cast<std::size_t>(e - val_)];
    }

    /// Multiply by q^k: valuation and order both move by k.
    QSeries shifted(long long k) const {
        QSeries r = *this;
        r.order_ += k;
        if (!r.coeffs_.empty()) r.val_ += k;
        return r;
    }

    /// Restrict knowledge to exponents <= n. Never extends: n > order() throws.
    QSeries truncated(long long n) const {
        if (n > order_)
            throw InsufficientOrder("truncated(" + std::to_string(n) +
                                    ") beyond known order " + std::to_string(order_));
        if (is_zero() || n < val_) return zero(n);
        std::vector<Rat> run(coeffs_.begin(),
                             coeffs_.begin() + static_cast<std::size_t>(n - val_ + 1));
        return QSeries(val_, std::move(run), n);
    }

    friend QSeries operator-(const QSeries& a) {
        QSeries r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) { return add_sub(a, b, false); }
    friend QSeries operator-(const QSeries& a, const QSeries& b) { return add_sub(a, b, true); }

    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        long long order = std::min(a.order_ + b.val_, b.order_ + a.val_);
        if (a.is_zero() || b.is_zero()) return zero(order);
        long long val = a.val_ + b.val_;
        if (val > order) return zero(order);
        std::vector<Rat> run(static_cast<std::size_t>(order - val + 1), Rat(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            long long ea = a.val_ + static_cast<long long>(i);
            long long room = order - ea - b.val_ + 1; // admissible b-entries
            if (room <= 0) continue;
            std::size_t jmax = std::min(b.coeffs_.size(), static_cast<std::size_t>(room));
            for (std::size_t j = 0; j < jmax; ++j) {
                if (b.coeffs_[j] == 0) continue;
                run[static_cast<std::size_t>(ea + b.val_ + static_cast<long long>(j) - val)] +=
                    a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return QSeries(val, std::move(run), order);
    }

    friend QSeries operator*(const Rat& c, const QSeries& a) {
        if (c == 0) return zero(a.order_);
        QSeries r = a;
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }
    friend QSeries operator*(const QSeries& a, const Rat& c) { return c * a; }

    /// Multiply by a signed q-power; exact, shifts the knowledge window.
    friend QSeries operator*(const QMonomial& m, const QSeries& a) {
        QSeries r = a.shifted(m.exp);
        if (m.sign < 0)
            for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    QSeries& operator+=(const QSeries& b) { return *this = *this + b; }
    QSeries& operator-=(const QSeries& b) { return *this = *this - b; }
    QSeries& operator*=(const QSeries& b) { return *this = *this * b; }

    friend QSeries pow(const QSeries& a, long long k) {
        if (k < 0) throw PreconditionError("pow: exponent must be nonnegative");
        if (k == 0) return one(a.order_);
        QSeries r = a;
        for (long long i = 1; i < k; ++i) r *= a;
        return r;
    }

    /// Long division a/b. Exact rationals, result valuation a.val - b.val,
    /// result order min(a.order - b.val, b.order - 2 b.val + a.val).
    friend QSeries div(const QSeries& a, const QSeries& b) {
        if (b.is_zero())
            throw DivideByZeroSeries("division by a series with no nonzero coefficient");
        long long vc = a.val_ - b.val_;
        long long order = std::min(a.order_ - b.val_, b.order_ - 2 * b.val_ + a.val_);
        if (a.is_zero()) return zero(order);
        if (vc > order) return zero(order);
        std::vector<Rat> run(static_cast<std::size_t>(order - vc + 1), Rat(0));
        const Rat& lead = b.coeffs_[0];
        for (long long n = vc; n <= order; ++n) {
            Rat acc = a.coeff(n + b.val_);
            // subtract sum_{m<n} c[m] * b[n + b.val - m]
            for (long long m = vc; m < n; ++m) {
                const Rat& cm = run[static_cast<std::size_t>(m - vc)];
                if (cm == 0) continue;
                std::size_t bi = static_cast<std::size_t>(n - m);
                if (bi < b.coeffs_.size() && b.coeffs_[bi] != 0) acc -= cm * b.coeffs_[bi];
            }
            run[static_cast<std::size_t>(n - vc)] = acc / lead;
        }
        return QSeries(vc, std::move(run), order);
    }

    friend QSeries invert(const QSeries& b) {
        if (b.is_zero())
            throw DivideByZeroSeries("invert: series has no nonzero coefficient");
        return div(one(b.order_ - b.val_), b);
    }

    friend QSeries operator/(const QSeries& a, const QSeries& b) { return div(a, b); }

    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.val_ == b.val_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

    /// Builds from an exponent->coefficient map; entries above `order` are
    /// rejected (the caller's enumeration bound must already respect it).
    static QSeries from_map(const std::map<long long, Rat>& m, long long order) {
        if (m.empty()) return zero(order);
        long long lo = m.begin()->first;
        if (m.rbegin()->first > order)
            throw PreconditionError("from_map: exponent above requested order");
        std::vector<Rat> run(static_cast<std::size_t>(order - lo + 1), Rat(0));
        for (const auto& [e, c] : m) run[static_cast<std::size_t>(e - lo)] = c;
        return QSeries(lo, std::move(run), order);
    }

    std::string str(std::size_t max_terms = 20) const;

private:
    long long val_;
    long long order_;
    std::vector<Rat> coeffs_; // dense, index i holds coeff of q^(val_+i)

    static const Rat& zero_rat() {
        static const Rat z(0);
        return z;
    }

    static QSeries add_sub(const QSeries& a, const QSeries& b, bool sub) {
        long long order = std::min(a.order_, b.order_);
        long long val = std::min(a.is_zero() ? order + 1 : a.val_,
                                 b.is_zero() ? order + 1 : b.val_);
        if (val > order) return zero(order);
        std::vector<Rat> run(static_cast<std::size_t>(order - val + 1), Rat(0));
        for (long long e = val; e <= order; ++e) {
            Rat c = a.coeff(e);
            if (sub) c -= b.coeff(e); else c += b.coeff(e);
            run[static_cast<std::size_t>(e - val)] = std::move(c);
        }
        return QSeries(val, std::move(run), order);
    }

    void normalize() {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            val_ = 0;
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<long long>(lead);
        }
    }
};

/// Outcome of a coefficientwise comparison up to a given order.
struct MatchReport {
    bool equal = true;
    long long order_checked = 0;
    long long exponent = 0; // smallest mismatching exponent when !equal
    Rat lhs, rhs;

    explicit operator bool() const { return equal; }

    std::string describe() const {
        if (equal) return "equal through q^" + std::to_string(order_checked);
        return "mismatch at q^" + std::to_string(exponent) + ": " + lhs.get_str() +
               " vs " + rhs.get_str();
    }
};

/// True iff coefficients agree for all exponents <= n; reports the first
/// mismatch otherwise. Both operands must be known at least to order n.
inline MatchReport equal_to_order(const QSeries& a, const QSeries& b, long long n) {
    if (a.order() < n || b.order() < n)
        throw InsufficientOrder("equal_to_order(" + std::to_string(n) +
                                "): operands known to orders " + std::to_string(a.order()) +
                                " and " + std::to_string(b.order()));
    MatchReport rep;
    rep.order_checked = n;
    long long lo = std::min(a.is_zero() ? n : a.valuation(), b.is_zero() ? n : b.valuation());
    for (long long e = lo; e <= n; ++e) {
        if (a.coeff(e) != b.coeff(e)) {
            rep.equal = false;
            rep.exponent = e;
            rep.lhs = a.coeff(e);
            rep.rhs = b.coeff(e);
            return rep;
        }
    }
    return rep;
}

inline std::string QSeries::str(std::size_t max_terms) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    std::size_t printed = 0, nonzero = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) ++nonzero;
    for (std::size_t i = 0; i < coeffs_.size() && printed < max_terms; ++i) {
        const Rat& c = coeffs_[i];
        if (c == 0) continue;
        long long e = val_ + static_cast<long long>(i);
        bool neg = c < 0;
        Rat abs_c = neg ? Rat(-c) : c;
        if (printed == 0)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        if (abs_c != 1 || e == 0) out << abs_c.get_str();
        if (e != 0) {
            out << "q";
            if (e != 1) out << "^" << e;
        }
        ++printed;
    }
    if (printed == 0) return "0 + O(q^" + std::to_string(order_ + 1) + ")";
    if (nonzero > printed)
        out << " + ... (+" << (nonzero - printed) << " more)";
    return out.str();
}

inline std::ostream& operator<<(std::ostream& os, const QSeries& s) { return os << s.str(); }

/// Retries a builder with growing working order until the tracked order of
/// the result covers the request, then truncates exactly to it. Division and
/// shifts lose a bounded amount of order, so the loop terminates.
template <class F>
QSeries to_order(long long n, F&& build) {
    for (long long pad = 0;; pad = pad == 0 ? 8 : pad * 2) {
        QSeries s = build(n + pad);
        if (s.order() >= n) return s.truncated(n);
        if (pad > (1 << 22))
            throw Error("to_order: builder never reached requested order " + std::to_string(n));
    }
}

} // namespace qseries
