#include <catch2/catch.hpp>

#include "oracles.hpp"
#include "qseries/qseries.hpp"

using namespace qseries;

namespace {

void check_prefix(const QSeries& s, std::initializer_list<long long> expect) {
    long long e = 0;
    for (long long c : expect) {
        INFO("exponent " << e);
        CHECK(s.coeff(e) == rat(c));
        ++e;
    }
}

} // namespace

TEST_CASE("chi0 and chi1 leading coefficients") {
    QSeries c0 = chi0(12);
    CHECK(c0.valuation() == 0);
    check_prefix(c0, {1, 1, 1, 2, 1, 3, 2, 3, 3, 5, 3, 6, 5});
    QSeries c1 = chi1(12);
    CHECK(c1.coeff(0) == 1);
    check_prefix(c1, {1, 2, 2, 3, 3, 4, 4, 6, 5, 7, 8, 9, 9});
}

TEST_CASE("Eulerian left-hand sides of the false theta identities") {
    QSeries a = kl_lhs_A(12);
    check_prefix(a, {1, 1, 2, 2, 4, 5, 8, 10, 15, 20, 28, 36, 50});
    QSeries b = kl_lhs_B(12);
    check_prefix(b, {1, 1, 1, 1, 2, 1, 3, 2, 4, 3, 6, 4, 9});
}

TEST_CASE("partial theta sums") {
    QSeries p = partial_theta(PartialThetaSpec(3, 3), 20);
    // exponents 3r(r+1)/2: 0, 3, 9, 18 with alternating signs
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(3) == -1);
    CHECK(p.coeff(9) == 1);
    CHECK(p.coeff(18) == -1);
    CHECK(p.coeff(5) == 0);

    QSeries p2 = partial_theta(PartialThetaSpec(6, 4), 20);
    CHECK(p2.coeff(0) == 1);
    CHECK(p2.coeff(5) == -1);
    CHECK(p2.coeff(16) == 1);

    CHECK(partial_theta(PartialThetaSpec(3, 3), -1).is_zero());

    QSeries np = partial_theta(PartialThetaSpec(2, 0, 0, false), 9);
    CHECK(np.coeff(0) == 1);
    CHECK(np.coeff(1) == 1);
    CHECK(np.coeff(4) == 1);
    CHECK(np.coeff(9) == 1);
    CHECK(np.coeff(2) == 0);
}

TEST_CASE("partial theta spec validation") {
    CHECK_THROWS_AS(PartialThetaSpec(0, 2), PreconditionError);
    CHECK_THROWS_AS(PartialThetaSpec(3, 4), PreconditionError); // A+B odd
    CHECK_NOTHROW(PartialThetaSpec(6, 8, 1));
}

TEST_CASE("false theta right-hand sides combine two partial thetas") {
    long long n = 40;
    QSeries b = false_theta_B(n);
    // sum (-1)^r q^(3r^2+2r) (1 + q^(2r+1)): 1 + q - q^5 - q^8 + q^16 + q^21 - ...
    CHECK(b.coeff(0) == 1);
    CHECK(b.coeff(1) == 1);
    CHECK(b.coeff(5) == -1);
    CHECK(b.coeff(8) == -1);
    CHECK(b.coeff(16) == 1);
    CHECK(b.coeff(21) == 1);
}

TEST_CASE("Eulerian sums times eta factors give false thetas") {
    long long n = 40;
    QSeries lhs = (kl_lhs_A(n) * eta_product(1, n)).truncated(n);
    CHECK(equal_to_order(lhs, false_theta_A(n), n).equal);
    QSeries lhs2 = (kl_lhs_B(n) * eta_product(2, n)).truncated(n);
    CHECK(equal_to_order(lhs2, false_theta_B(n), n).equal);
}

TEST_CASE("nonnegative integer coefficients despite rational arithmetic") {
    long long n = 40;
    for (const QSeries& s : {chi0(n), chi1(n), kl_lhs_A(n), kl_lhs_B(n)}) {
        for (long long e = 0; e <= n; ++e) {
            CHECK(is_integer(s.coeff(e)));
            CHECK(s.coeff(e) >= 0);
        }
    }
}
