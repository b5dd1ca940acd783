#include <catch2/catch.hpp>

#include "oracles.hpp"
#include "qseries/io.hpp"
#include "qseries/qseries.hpp"

using namespace qseries;

namespace {

QSeries from_coeffs(long long val, std::vector<long long> cs, long long order) {
    std::vector<Rat> run;
    run.reserve(cs.size());
    for (long long c : cs) run.emplace_back(static_cast<long>(c));
    while (static_cast<long long>(run.size()) < order - val + 1) run.emplace_back(0);
    return QSeries(val, std::move(run), order);
}

} // namespace

TEST_CASE("basic arithmetic on short series") {
    long long n = 10;
    QSeries one_minus_q = from_coeffs(0, {1, -1}, n);
    QSeries q = QSeries::monomial(Rat(1), 1, n);
    QSeries one_plus_q = from_coeffs(0, {1, 1}, n);

    CHECK(equal_to_order(one_minus_q + q, QSeries::one(n), n).equal);
    CHECK(equal_to_order(one_plus_q * one_minus_q, from_coeffs(0, {1, 0, -1}, n), n).equal);
    CHECK(equal_to_order(pow(one_minus_q, 2), from_coeffs(0, {1, -2, 1}, n), n).equal);
}

TEST_CASE("shift moves valuation and order") {
    QSeries one_plus_q = from_coeffs(0, {1, 1}, 10);
    QSeries s = one_plus_q.shifted(-1);
    CHECK(s.valuation() == -1);
    CHECK(s.order() == 9);
    CHECK(s.coeff(-1) == 1);
    CHECK(s.coeff(0) == 1);

    QSeries z = QSeries::zero(10).shifted(5);
    CHECK(z.is_zero());
    CHECK(z.order() == 15);

    QSeries j1 = eta_product(1, 10).shifted(3);
    CHECK(j1.valuation() == 3);
}

TEST_CASE("inversion and division") {
    long long n = 12;
    QSeries geom = invert(from_coeffs(0, {1, -1}, n));
    for (long long e = 0; e <= geom.order(); ++e) CHECK(geom.coeff(e) == 1);

    QSeries num = from_coeffs(0, {1, 0, -1}, n);
    QSeries den = from_coeffs(0, {1, -1}, n);
    CHECK(equal_to_order(div(num, den), from_coeffs(0, {1, 1}, n), n).equal);

    CHECK_THROWS_AS(invert(QSeries::zero(5)), DivideByZeroSeries);
}

TEST_CASE("J_1^3 / J_2 equals the b_1 combination times -q") {
    long long n = 20;
    QSeries lhs = to_order(n, [](long long w) {
        return div(pow(eta_product(1, w), 3), eta_product(2, w));
    });
    HeckeParams2 p(3, 3, 1);
    QSeries b1 = hecke_f(p, QMonomial(-1, 4), QMonomial(1, 3), n + 1) -
                 QMonomial(1, -1) * hecke_f(p, QMonomial(-1, 2), QMonomial(1, 1), n + 2);
    QSeries rhs = (QMonomial(-1, 1) * b1).truncated(n);
    CHECK(equal_to_order(lhs, rhs, n).equal);
}

TEST_CASE("equal_to_order reports the first mismatch") {
    long long n = 10;
    QSeries a = from_coeffs(0, {1, 1}, n);
    QSeries b = from_coeffs(0, {1, 1, 0, 0, 0, 1}, n); // 1 + q + q^5
    CHECK(equal_to_order(a, b, 4).equal);
    MatchReport rep = equal_to_order(a, b, 5);
    CHECK_FALSE(rep.equal);
    CHECK(rep.exponent == 5);
    CHECK(rep.lhs == 0);
    CHECK(rep.rhs == 1);
    CHECK_THROWS_AS(equal_to_order(a, b, 11), InsufficientOrder);
}

TEST_CASE("coefficient access above the stored order is an error") {
    QSeries s = from_coeffs(0, {1, 2}, 6);
    CHECK(s.coeff(-5) == 0);
    CHECK(s.coeff(6) == 0);
    CHECK_THROWS_AS(s.coeff(7), InsufficientOrder);
    CHECK_THROWS_AS(s.truncated(9), InsufficientOrder);
}

TEST_CASE("canonical zero representation") {
    QSeries s = from_coeffs(2, {5, -1}, 8);
    QSeries z = s - s;
    CHECK(z.is_zero());
    CHECK(z.valuation() == 0);
    CHECK(z.order() == 8);
}

TEST_CASE("ring axioms on random series") {
    oracle::Rng rng(7321u);
    for (int trial = 0; trial < 20; ++trial) {
        long long n = 16;
        QSeries a = rng.series(-3, n);
        QSeries b = rng.series(-3, n);
        QSeries c = rng.series(-3, n);
        long long m = std::min({((a + b) + c).order(), (a + (b + c)).order()});
        CHECK(equal_to_order((a + b) + c, a + (b + c), m).equal);
        QSeries lhs = a * (b + c), rhs = a * b + a * c;
        long long m2 = std::min(lhs.order(), rhs.order());
        CHECK(equal_to_order(lhs, rhs, m2).equal);
    }
}

TEST_CASE("multiplicative inverses and division round-trip") {
    oracle::Rng rng(9911u);
    for (int trial = 0; trial < 20; ++trial) {
        long long n = 18;
        QSeries a = rng.series(-2, n);
        QSeries b = rng.series(-2, n, /*nonzero=*/true);
        QSeries inv = invert(b);
        QSeries prod = b * inv;
        CHECK(equal_to_order(prod, QSeries::one(prod.order()), prod.order()).equal);
        QSeries back = div(a * b, b);
        long long m = std::min(back.order(), a.order());
        CHECK(equal_to_order(back, a, m).equal);
    }
}

TEST_CASE("shift round-trip") {
    oracle::Rng rng(411u);
    for (int trial = 0; trial < 10; ++trial) {
        QSeries a = rng.series(-4, 15);
        long long k = rng.i(-6, 6);
        CHECK(a.shifted(k).shifted(-k) == a);
    }
}

TEST_CASE("JSON serialization round-trips") {
    oracle::Rng rng(5150u);
    for (int trial = 0; trial < 10; ++trial) {
        QSeries a = rng.series(-3, 12);
        QSeries back = series_from_json(to_json(a));
        CHECK(back == a);
    }
    QSeries z = QSeries::zero(9);
    CHECK(series_from_json(to_json(z)) == z);
    nlohmann::json j = to_json(from_coeffs(-1, {1, 0, 3}, 1));
    CHECK(j["valuation"] == -1);
    CHECK(j["order"] == 1);
    CHECK(j["coeffs"].size() == 3);
}
