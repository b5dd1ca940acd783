#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qseries/appell.hpp"
#include "qseries/closed_forms.hpp"
#include "qseries/eulerian.hpp"
#include "qseries/hecke.hpp"
#include "qseries/theta.hpp"

namespace qseries {

using SeriesBuilder = std::function<QSeries(long long)>;

struct IdentityCase {
    std::string label;
    SeriesBuilder lhs, rhs;
};

/// A named exact identity: both sides as series builders, comparable to any
/// order. Identities with several instances (shift parameters, argument
/// batches) carry one case per instance.
struct Identity {
    std::string name;
    std::string statement;
    long long default_order = 60;
    std::vector<IdentityCase> cases;
};

struct Mismatch {
    std::string case_label;
    long long exponent = 0;
    Rat lhs, rhs;
};

struct VerificationReport {
    std::string name;
    long long order_checked = 0;
    bool passed = false;
    std::optional<Mismatch> first_mismatch;
    std::string error; // nonempty if a builder threw
    double wall_time_ms = 0.0;
    std::size_t cases_checked = 0;
};

namespace catalog_detail {

inline QMonomial Q(long long e) { return QMonomial(1, e); }
inline QMonomial MQ(long long e) { return QMonomial(-1, e); }

inline QSeries J1sq(long long w) { return pow(eta_product(1, w), 2); }

inline const HeckeParams3& G121() {
    static const HeckeParams3 p(1, 2, 1, 2, 2, 1);
    return p;
}

/// a_t = f_{4,4,1}(-q^(4+t), q^(2+t), q) - q^(-t) f_{4,4,1}(-q^(4-t), q^(2-t), q)
inline QSeries a_combo(long long t, long long w) {
    HeckeParams2 p(4, 4, 1);
    return hecke_f(p, MQ(4 + t), Q(2 + t), w) -
           Q(-t) * hecke_f(p, MQ(4 - t), Q(2 - t), w + t);
}

/// b_t = f_{3,3,1}(-q^(3+t), q^(2+t), q) - q^(-t) f_{3,3,1}(-q^(3-t), q^(2-t), q)
inline QSeries b_combo(long long t, long long w) {
    HeckeParams2 p(3, 3, 1);
    return hecke_f(p, MQ(3 + t), Q(2 + t), w) -
           Q(-t) * hecke_f(p, MQ(3 - t), Q(2 - t), w + t);
}

/// The f_{1,2,1} Appell-Lerch + theta expansion.
inline QSeries f121_rhs(const QMonomial& x, const QMonomial& y, long long w) {
    QMonomial minus_one(-1, 0);
    QSeries appell = jtheta(y, 1, w) * appell_m((x * y.pow(-2)).times_q(2), 3, minus_one, w) +
                     jtheta(x, 1, w) * appell_m((y * x.pow(-2)).times_q(2), 3, minus_one, w);
    QSeries numer = pow(eta_product(3, w), 3) * jtheta((x / y).negated(), 1, w) *
                    jtheta((x * y).times_q(2), 3, w);
    QSeries denom = jtheta(minus_one, 3, w) *
                    jtheta((y.pow(2) / x).negated().times_q(1), 3, w) *
                    jtheta((x.pow(2) / y).negated().times_q(1), 3, w);
    return appell - y * div(numer, denom);
}

inline std::string mono3(const QMonomial& x, const QMonomial& y, const QMonomial& z) {
    return "(" + x.str() + ", " + y.str() + ", " + z.str() + ")";
}

} // namespace catalog_detail

/// Registry of every exact identity the library certifies, the batch
/// verifier, and the residual of the conjectured triple-sum identity.
class IdentityCatalog {
public:
    static const IdentityCatalog& instance() {
        static IdentityCatalog cat;
        return cat;
    }

    const std::vector<Identity>& identities() const { return ids_; }

    const Identity& find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw UnknownIdentity("unknown identity: " + name);
        return ids_[it->second];
    }

    /// Checks one identity; order 0 selects the identity's default order.
    /// Builder errors propagate, prefixed with the identity name.
    VerificationReport verify(const std::string& name, long long order = 0) const {
        const Identity& id = find(name);
        long long n = order > 0 ? order : id.default_order;
        VerificationReport rep;
        rep.name = id.name;
        rep.order_checked = n;
        auto t0 = std::chrono::steady_clock::now();
        try {
            for (const IdentityCase& c : id.cases) {
                ++rep.cases_checked;
                MatchReport m = equal_to_order(c.lhs(n), c.rhs(n), n);
                if (!m.equal) {
                    rep.first_mismatch = Mismatch{c.label, m.exponent, m.lhs, m.rhs};
                    break;
                }
            }
        } catch (const Error& e) {
            throw Error("identity '" + id.name + "': " + e.what());
        }
        rep.passed = !rep.first_mismatch.has_value();
        rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
        return rep;
    }

    /// Runs every registered identity. Order 0 keeps per-identity defaults.
    /// Builder errors are captured in the report rather than thrown, so one
    /// broken identity cannot hide the rest. Reports come back in registry
    /// order regardless of the number of worker threads.
    std::vector<VerificationReport> verify_all(long long order = 0,
                                               unsigned jobs = 1) const {
        std::vector<VerificationReport> reports(ids_.size());
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= ids_.size()) return;
                try {
                    reports[i] = verify(ids_[i].name, order);
                } catch (const Error& e) {
                    reports[i].name = ids_[i].name;
                    reports[i].order_checked =
                        order > 0 ? order : ids_[i].default_order;
                    reports[i].passed = false;
                    reports[i].error = e.what();
                }
            }
        };
        if (jobs <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }
        return reports;
    }

private:
    std::vector<Identity> ids_;
    std::map<std::string, std::size_t> index_;

    void add(Identity id) {
        index_.emplace(id.name, ids_.size());
        ids_.push_back(std::move(id));
    }

    void add_single(std::string name, std::string statement, SeriesBuilder lhs,
                    SeriesBuilder rhs, long long default_order = 60) {
        add({std::move(name), std::move(statement), default_order,
             {{"", std::move(lhs), std::move(rhs)}}});
    }

    IdentityCatalog();
};

/// theta(q) := g_{1,3,1,3,3,1}(q,q,q,q) minus its conjectured Appell-Lerch
/// part (all four m-functions taken at z = -1), as an exact series. No
/// closed form is asserted for the result; callers inspect or emit it.
inline QSeries conjecture_residual(long long order) {
    using catalog_detail::Q;
    return to_order(order, [](long long w) {
        QMonomial z(-1, 0);
        QSeries g = hecke_g(HeckeParams3(1, 3, 1, 3, 3, 1), Q(1), Q(1), Q(1), w);
        QSeries J12 = J_am(1, 2, w);
        QSeries Jb38 = Jbar_am(3, 8, w);
        QSeries Jb18 = Jbar_am(1, 8, w);
        QSeries rhs = Rat(3) * (J12 * Jb38 * appell_m(QMonomial(-1, 27), 56, z, w)) +
                      Rat(3) * (Q(-2) * (J12 * Jb38 * appell_m(QMonomial(-1, 13), 56, z, w))) -
                      Rat(3) * (Q(-7) * (J12 * Jb18 * appell_m(QMonomial(-1, -1), 56, z, w))) -
                      Rat(3) * (Q(-16) * (J12 * Jb18 * appell_m(QMonomial(-1, -15), 56, z, w)));
        return g - rhs;
    });
}

inline IdentityCatalog::IdentityCatalog() {
    using namespace catalog_detail;
    const QMonomial minus_one(-1, 0);

    // --- mock theta functions as Appell-Lerch combinations ---
    add_single(
        "chi0-appell",
        "chi0(q) = 2 - 3 m(q^7,q^15,q^9) - 3 q^-1 m(q^2,q^15,q^4) + 2 J_5^2 J_{2,5} / J_{1,5}^2",
        [](long long n) { return chi0(n); },
        [](long long n) {
            return to_order(n, [](long long w) {
                QSeries theta = Rat(2) * div(pow(eta_product(5, w), 2) * J_am(2, 5, w),
                                             pow(J_am(1, 5, w), 2));
                return QSeries::constant(Rat(2), w) -
                       Rat(3) * appell_m(Q(7), 15, Q(9), w) -
                       Rat(3) * (Q(-1) * appell_m(Q(2), 15, Q(4), w)) + theta;
            });
        });

    add_single(
        "chi1-appell",
        "chi1(q) = -3 q^-1 m(q^4,q^15,q^3) - 3 q^-2 m(q,q^15,q^2) - 2 J_5^2 J_{1,5} / J_{2,5}^2",
        [](long long n) { return chi1(n); },
        [](long long n) {
            return to_order(n, [](long long w) {
                QSeries theta = Rat(2) * div(pow(eta_product(5, w), 2) * J_am(1, 5, w),
                                             pow(J_am(2, 5, w), 2));
                return -(Rat(3) * (Q(-1) * appell_m(Q(4), 15, Q(3), w))) -
                       Rat(3) * (Q(-2) * appell_m(Q(1), 15, Q(2), w)) - theta;
            });
        });

    // --- f_{1,2,1} expansion ---
    {
        Identity id;
        id.name = "f121-expansion";
        id.statement =
            "f_{1,2,1}(x,y,q) = j(y;q) m(q^2 x/y^2,q^3,-1) + j(x;q) m(q^2 y/x^2,q^3,-1)"
            " - y J_3^3 j(-x/y;q) j(q^2 xy;q^3) / (Jbar_{0,3} j(-q y^2/x;q^3) j(-q x^2/y;q^3))";
        const std::pair<QMonomial, QMonomial> xys[] = {
            {Q(1), Q(1)}, {Q(2), Q(1)}, {Q(1), Q(3)}};
        for (const auto& [x, y] : xys) {
            id.cases.push_back(
                {"(x,y)=(" + x.str() + "," + y.str() + ")",
                 [x = x, y = y](long long n) {
                     return hecke_f(HeckeParams2(1, 2, 1), x, y, n);
                 },
                 [x = x, y = y](long long n) {
                     return to_order(n, [&](long long w) { return f121_rhs(x, y, w); });
                 }});
        }
        add(std::move(id));
    }

    // --- triple sums for chi0 / chi1 ---
    add_single("zwegers-chi0",
               "2 - g_{1,2,1,2,2,1}(q,q,q,q) / J_1^2 = chi0(q)",
               [](long long n) {
                   return to_order(n, [](long long w) {
                       return QSeries::constant(Rat(2), w) -
                              div(hecke_g(G121(), Q(1), Q(1), Q(1), w), J1sq(w));
                   });
               },
               [](long long n) { return chi0(n); });

    add_single("zwegers-chi1",
               "g_{1,2,1,2,2,1}(q^2,q^2,q^2,q) / J_1^2 = chi1(q)",
               [](long long n) {
                   return to_order(n, [](long long w) {
                       return div(hecke_g(G121(), Q(2), Q(2), Q(2), w), J1sq(w));
                   });
               },
               [](long long n) { return chi1(n); });

    // --- triple sums for false theta functions ---
    add_single("kl-triple-1",
               "g_{1,7,1,1,1,1}(q^2,q^3,q,q) + q^4 g_{1,7,1,1,1,1}(q^6,q^7,q^2,q)"
               " = J_1^2 sum_{r>=0} (-1)^r q^(3r(r+1)/2)",
               [](long long n) {
                   HeckeParams3 p(1, 7, 1, 1, 1, 1);
                   return (hecke_g(p, Q(2), Q(3), Q(1), n) +
                           Q(4) * hecke_g(p, Q(6), Q(7), Q(2), n))
                       .truncated(n);
               },
               [](long long n) {
                   return (eta_product(1, n) * eta_product(1, n) * false_theta_A(n))
                       .truncated(n);
               });

    add_single("kl-triple-2",
               "g_{1,5,1,1,1,1}(q^2,q^2,q,q) + q^3 g_{1,5,1,1,1,1}(q^5,q^5,q^2,q)"
               " = J_1 J_{1,2} sum_{r>=0} (-1)^r q^(3r^2+2r) (1+q^(2r+1))",
               [](long long n) {
                   HeckeParams3 p(1, 5, 1, 1, 1, 1);
                   return (hecke_g(p, Q(2), Q(2), Q(1), n) +
                           Q(3) * hecke_g(p, Q(5), Q(5), Q(2), n))
                       .truncated(n);
               },
               [](long long n) {
                   return (eta_product(1, n) * J_am(1, 2, n) * false_theta_B(n))
                       .truncated(n);
               });

    add_single("kl-eulerian-A",
               "sum (q;q)_{2n} q^n / (q;q)_n^2 = (1/J_1) sum (-1)^r q^(3r(r+1)/2)",
               [](long long n) { return kl_lhs_A(n); },
               [](long long n) {
                   return to_order(n, [](long long w) {
                       return div(false_theta_A(w), eta_product(1, w));
                   });
               });

    add_single("kl-eulerian-B",
               "sum (q;q^2)_n q^n / (q;q)_n = (1/J_2) sum (-1)^r q^(3r^2+2r) (1+q^(2r+1))",
               [](long long n) { return kl_lhs_B(n); },
               [](long long n) {
                   return to_order(n, [](long long w) {
                       return div(false_theta_B(w), eta_product(2, w));
                   });
               });

    // --- corollaries of the chi0 / chi1 triple sums ---
    add_single("newid-1", "g_{1,2,1,2,2,1}(q^3,q^3,q^3,q) = 0",
               [](long long n) { return hecke_g(G121(), Q(3), Q(3), Q(3), n); },
               [](long long n) { return QSeries::zero(n); });

    add_single("newid-2", "g_{1,2,1,2,2,1}(q,q,q^2,q) = J_1^2",
               [](long long n) { return hecke_g(G121(), Q(1), Q(1), Q(2), n); },
               [](long long n) { return J1sq(n); });

    add_single("newid-3", "g_{1,2,1,2,2,1}(q,q^2,q^2,q) = J_1^2 chi0(q)",
               [](long long n) { return hecke_g(G121(), Q(1), Q(2), Q(2), n); },
               [](long long n) { return (J1sq(n) * chi0(n)).truncated(n); });

    add_single("newid-4", "g_{1,2,1,2,2,1}(q,q,q^3,q) = J_1^2 (q chi0(q) + 1 - q)",
               [](long long n) { return hecke_g(G121(), Q(1), Q(1), Q(3), n); },
               [](long long n) {
                   QSeries inner = (Q(1) * chi0(n)).truncated(n) + QSeries::one(n) -
                                   QSeries::monomial(Rat(1), 1, n);
                   return (J1sq(n) * inner).truncated(n);
               });

    add_single("newid-5", "g_{1,2,1,2,2,1}(q,q^2,q^3,q) = J_1^2 (q chi1(q) + 1)",
               [](long long n) { return hecke_g(G121(), Q(1), Q(2), Q(3), n); },
               [](long long n) {
                   QSeries inner = (Q(1) * chi1(n)).truncated(n) + QSeries::one(n);
                   return (J1sq(n) * inner).truncated(n);
               });

    // --- the a_k and b_k evaluations ---
    {
        auto rhs_zero = [](long long n) { return QSeries::zero(n); };
        add_single("lemma-a0", "a_0 = 0", [](long long n) { return a_combo(0, n); },
                   rhs_zero);
        add_single("lemma-a1", "a_1 = -q^-1 J_1^2",
                   [](long long n) { return a_combo(1, n); },
                   [](long long n) { return (MQ(-1) * J1sq(n + 1)).truncated(n); });
        add_single("lemma-a2", "a_2 = 0", [](long long n) { return a_combo(2, n); },
                   rhs_zero);
        add_single("lemma-a3", "a_3 = q^-3 J_1^2",
                   [](long long n) { return a_combo(3, n); },
                   [](long long n) { return (Q(-3) * J1sq(n + 3)).truncated(n); });
        add_single("lemma-b0", "b_0 = 0", [](long long n) { return b_combo(0, n); },
                   rhs_zero);
        add_single("lemma-b1", "b_1 = -q^-1 J_1^3 / J_2",
                   [](long long n) { return b_combo(1, n); },
                   [](long long n) {
                       return to_order(n, [](long long w) {
                           return MQ(-1) * div(pow(eta_product(1, w), 3), eta_product(2, w));
                       });
                   });
        add_single("lemma-b2", "b_2 = q^-2 J_1^3 / J_2",
                   [](long long n) { return b_combo(2, n); },
                   [](long long n) {
                       return to_order(n, [](long long w) {
                           return Q(-2) * div(pow(eta_product(1, w), 3), eta_product(2, w));
                       });
                   });
    }

    // --- symmetry-shift relations between the (1,7,1)/(1,5,1) and (4,4,1)/(3,3,1) sums ---
    {
        Identity id;
        id.name = "prop-symmetry-shift-171";
        id.statement =
            "f_{1,7,1}(q^(2+t),q^(3+t),q) + q^(4+t) f_{1,7,1}(q^(6+t),q^(7+t),q) = a_t";
        for (long long t = -3; t <= 3; ++t) {
            id.cases.push_back(
                {"t=" + std::to_string(t),
                 [t](long long n) {
                     HeckeParams2 p(1, 7, 1);
                     return (hecke_f(p, Q(2 + t), Q(3 + t), n) +
                             Q(4 + t) * hecke_f(p, Q(6 + t), Q(7 + t), n))
                         .truncated(n);
                 },
                 [t](long long n) { return a_combo(t, n); }});
        }
        add(std::move(id));

        Identity id2;
        id2.name = "prop-symmetry-shift-151";
        id2.statement =
            "f_{1,5,1}(q^(2+t),q^(2+t),q) + q^(3+t) f_{1,5,1}(q^(5+t),q^(5+t),q) = b_t";
        for (long long t = -3; t <= 3; ++t) {
            id2.cases.push_back(
                {"t=" + std::to_string(t),
                 [t](long long n) {
                     HeckeParams2 p(1, 5, 1);
                     return (hecke_f(p, Q(2 + t), Q(2 + t), n) +
                             Q(3 + t) * hecke_f(p, Q(5 + t), Q(5 + t), n))
                         .truncated(n);
                 },
                 [t](long long n) { return b_combo(t, n); }});
        }
        add(std::move(id2));
    }

    // --- reduction of a_(4m+k) and b_(3m+k) to k in a fundamental range ---
    {
        Identity id;
        id.name = "prop-f441-reduce";
        id.statement = "a_(4m+k) = q^(-2m^2-2m-mk) a_k, k in {0..3}";
        for (long long m = -2; m <= 2; ++m)
            for (long long k = 0; k <= 3; ++k) {
                id.cases.push_back(
                    {"m=" + std::to_string(m) + ",k=" + std::to_string(k),
                     [m, k](long long n) { return a_combo(4 * m + k, n); },
                     [m, k](long long n) {
                         long long shift = -2 * m * m - 2 * m - m * k;
                         return (Q(shift) * a_combo(k, n - shift)).truncated(n);
                     }});
            }
        add(std::move(id));

        Identity id2;
        id2.name = "prop-f331-reduce";
        id2.statement = "b_(3m+k) = q^(-3m(m+1)/2-mk) b_k, k in {0..2}";
        for (long long m = -2; m <= 2; ++m)
            for (long long k = 0; k <= 2; ++k) {
                id2.cases.push_back(
                    {"m=" + std::to_string(m) + ",k=" + std::to_string(k),
                     [m, k](long long n) { return b_combo(3 * m + k, n); },
                     [m, k](long long n) {
                         long long shift = -3 * m * (m + 1) / 2 - m * k;
                         return (Q(shift) * b_combo(k, n - shift)).truncated(n);
                     }});
            }
        add(std::move(id2));
    }

    // --- the vanishing double sum ---
    {
        Identity id;
        id.name = "prop-f111-zero";
        id.statement = "f_{1,1,1}(q^m, q^n, q) = 0 for m != n";
        for (auto [m, n] : std::initializer_list<std::pair<long long, long long>>{
                 {0, 1}, {1, 0}, {2, 5}, {-1, 3}, {-2, -4},
                 {3, 1}, {4, 7}, {-3, 2}, {5, -5}, {2, 1}}) {
            id.cases.push_back(
                {"(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")",
                 [m = m, n = n](long long ord) {
                     return hecke_f(HeckeParams2(1, 1, 1), Q(m), Q(n), ord);
                 },
                 [](long long ord) { return QSeries::zero(ord); }});
        }
        add(std::move(id));
    }

    // --- theta-function identities ---
    {
        Identity id;
        id.name = "h1-theorem";
        id.statement = "j(-x,q) j(y,q) + j(x,q) j(-y,q) = 2 j(xy,q^2) j(q y/x,q^2)";
        const std::pair<QMonomial, QMonomial> pairs[] = {
            {Q(1), Q(2)},  {Q(1), Q(1)},   {MQ(1), Q(3)}, {Q(2), Q(5)},
            {MQ(2), MQ(1)}, {Q(3), Q(-1)}, {MQ(0), Q(2)}, {Q(-2), Q(4)},
            {MQ(4), Q(2)}, {Q(5), MQ(3)}};
        for (const auto& [x, y] : pairs) {
            id.cases.push_back(
                {"(x,y)=(" + x.str() + "," + y.str() + ")",
                 [x = x, y = y](long long n) {
                     return to_order(n, [&](long long w) {
                         return jtheta(x.negated(), 1, w) * jtheta(y, 1, w) +
                                jtheta(x, 1, w) * jtheta(y.negated(), 1, w);
                     });
                 },
                 [x = x, y = y](long long n) {
                     return to_order(n, [&](long long w) {
                         return Rat(2) * (jtheta(x * y, 2, w) *
                                          jtheta((x.inverse() * y).times_q(1), 2, w));
                     });
                 }});
        }
        add(std::move(id));
    }

    {
        Identity id;
        id.name = "j-elliptic";
        id.statement = "j(q^(Mn) x;q^M) = (-1)^n q^(-M n(n-1)/2) x^(-n) j(x;q^M)";
        const std::pair<QMonomial, long long> args[] = {
            {Q(5), 4},  {MQ(4), 4}, {Q(7), 3},  {MQ(-3), 5}, {Q(-2), 2},
            {MQ(9), 1}, {Q(11), 6}, {MQ(-7), 4}, {Q(10), 3},  {MQ(13), 5}};
        for (const auto& [x, M] : args) {
            id.cases.push_back(
                {"j(" + x.str() + ";q^" + std::to_string(M) + ")",
                 [x = x, M = M](long long n) { return jtheta(x, M, n); },
                 [x = x, M = M](long long n) {
                     JNormalForm nf = j_elliptic_normalize(ThetaArg(x, M));
                     return (QMonomial(nf.sign, nf.shift) *
                             jtheta(nf.arg, n - nf.shift))
                         .truncated(n);
                 }});
        }
        add(std::move(id));
    }

    {
        Identity id;
        id.name = "j-inversion";
        id.statement = "j(x;q) = j(q/x;q) = -x j(x^-1;q)";
        const QMonomial xs[] = {MQ(2), Q(3), MQ(-1), Q(-4), MQ(5)};
        for (const QMonomial& x : xs) {
            id.cases.push_back(
                {"x=" + x.str() + ": j(q/x)",
                 [x](long long n) { return jtheta(x, 1, n); },
                 [x](long long n) {
                     return jtheta(QMonomial(x.sign, 1 - x.exp), 1, n);
                 }});
            id.cases.push_back(
                {"x=" + x.str() + ": -x j(1/x)",
                 [x](long long n) { return jtheta(x, 1, n); },
                 [x](long long n) {
                     QMonomial pref = x.negated();
                     return (pref * jtheta(x.inverse(), 1, n - pref.exp)).truncated(n);
                 }});
        }
        add(std::move(id));
    }

    {
        Identity id;
        id.name = "j-mod-inc";
        id.statement = "j(x;q) = J_1 j(x;q^n) j(qx;q^n) ... j(q^(n-1)x;q^n) / J_n^n";
        for (long long n : {2, 3, 4})
            for (QMonomial x : {MQ(2), Q(3)}) {
                id.cases.push_back(
                    {"n=" + std::to_string(n) + ", x=" + x.str(),
                     [x](long long ord) { return jtheta(x, 1, ord); },
                     [x, n](long long ord) {
                         return to_order(ord, [&](long long w) {
                             QSeries prod = eta_product(1, w);
                             for (long long i = 0; i < n; ++i)
                                 prod = prod * jtheta(x.times_q(i), n, w);
                             return div(prod, pow(eta_product(n, w), n));
                         });
                     }});
            }
        add(std::move(id));
    }

    {
        Identity id;
        id.name = "j-mod-dec-2";
        id.statement = "j(x^2;q^2) = J_2 j(x;q) j(-x;q) / J_1^2";
        for (QMonomial x : {MQ(1), Q(2), MQ(3)}) {
            id.cases.push_back(
                {"x=" + x.str(),
                 [x](long long ord) { return jtheta(x.pow(2), 2, ord); },
                 [x](long long ord) {
                     return to_order(ord, [&](long long w) {
                         return div(eta_product(2, w) * jtheta(x, 1, w) *
                                        jtheta(x.negated(), 1, w),
                                    pow(eta_product(1, w), 2));
                     });
                 }});
        }
        add(std::move(id));
    }

    {
        Identity id;
        id.name = "product-rearrangements";
        id.statement = "eta-quotient forms of Jbar_{0,1}, Jbar_{1,2}, J_{1,2}, "
                       "Jbar_{1,3}, J_{1,4}, J_{1,6}, Jbar_{1,6}";
        auto eta_quot = [](std::vector<std::pair<long long, long long>> num,
                           std::vector<std::pair<long long, long long>> den,
                           Rat scale) {
            return [num, den, scale](long long n) {
                return to_order(n, [&](long long w) {
                    QSeries a = QSeries::constant(scale, w);
                    for (auto [m, k] : num) a = a * pow(eta_product(m, w), k);
                    QSeries b = QSeries::one(w);
                    for (auto [m, k] : den) b = b * pow(eta_product(m, w), k);
                    return div(a, b);
                });
            };
        };
        id.cases.push_back({"Jbar_{0,1} = 2 J_2^2/J_1",
                            [](long long n) { return Jbar_am(0, 1, n); },
                            eta_quot({{2, 2}}, {{1, 1}}, Rat(2))});
        id.cases.push_back({"Jbar_{0,1} = 2 Jbar_{1,4}",
                            [](long long n) { return Jbar_am(0, 1, n); },
                            [](long long n) {
                                return (Rat(2) * Jbar_am(1, 4, n)).truncated(n);
                            }});
        id.cases.push_back({"Jbar_{1,2} = J_2^5/(J_1^2 J_4^2)",
                            [](long long n) { return Jbar_am(1, 2, n); },
                            eta_quot({{2, 5}}, {{1, 2}, {4, 2}}, Rat(1))});
        id.cases.push_back({"J_{1,2} = J_1^2/J_2",
                            [](long long n) { return J_am(1, 2, n); },
                            eta_quot({{1, 2}}, {{2, 1}}, Rat(1))});
        id.cases.push_back({"Jbar_{1,3} = J_2 J_3^2/(J_1 J_6)",
                            [](long long n) { return Jbar_am(1, 3, n); },
                            eta_quot({{2, 1}, {3, 2}}, {{1, 1}, {6, 1}}, Rat(1))});
        id.cases.push_back({"J_{1,4} = J_1 J_4/J_2",
                            [](long long n) { return J_am(1, 4, n); },
                            eta_quot({{1, 1}, {4, 1}}, {{2, 1}}, Rat(1))});
        id.cases.push_back({"J_{1,6} = J_1 J_6^2/(J_2 J_3)",
                            [](long long n) { return J_am(1, 6, n); },
                            eta_quot({{1, 1}, {6, 2}}, {{2, 1}, {3, 1}}, Rat(1))});
        id.cases.push_back({"Jbar_{1,6} = J_2^2 J_3 J_12/(J_1 J_4 J_6)",
                            [](long long n) { return Jbar_am(1, 6, n); },
                            eta_quot({{2, 2}, {3, 1}, {12, 1}},
                                     {{1, 1}, {4, 1}, {6, 1}}, Rat(1))});
        add(std::move(id));
    }

    // --- Appell-Lerch functional equations ---
    {
        const std::tuple<QMonomial, long long, QMonomial> pool[] = {
            {MQ(2), 3, Q(1)},  {Q(1), 5, Q(2)},    {MQ(1), 4, Q(3)},
            {Q(2), 7, Q(3)},   {MQ(3), 5, Q(1)},   {Q(1), 3, MQ(1)},
            {MQ(-2), 6, Q(1)}, {Q(4), 9, Q(2)},    {MQ(5), 8, MQ(2)},
            {Q(-1), 4, Q(1)},  {MQ(0), 5, Q(3)},   {Q(3), 11, Q(5)},
            {MQ(2), 2, Q(1)},  {Q(6), 13, MQ(4)}};

        auto valid_triples = [&](std::size_t want) {
            std::vector<std::tuple<QMonomial, long long, QMonomial>> out;
            for (const auto& t : pool) {
                const auto& [x, M, z] = t;
                if (AppellArgs(x, M, z).valid()) out.push_back(t);
                if (out.size() == want) break;
            }
            return out;
        };
        auto triples = valid_triples(10);

        Identity ida;
        ida.name = "m-functional-a";
        ida.statement = "m(x,q,z) = m(x,q,qz)";
        for (const auto& [x, M, z] : triples) {
            ida.cases.push_back(
                {"m(" + x.str() + ",q^" + std::to_string(M) + "," + z.str() + ")",
                 [x = x, M = M, z = z](long long n) { return appell_m(x, M, z, n); },
                 [x = x, M = M, z = z](long long n) {
                     return appell_m(x, M, z.times_q(M), n);
                 }});
        }
        add(std::move(ida));

        Identity idb;
        idb.name = "m-functional-b";
        idb.statement = "m(x,q,z) = x^-1 m(x^-1,q,z^-1)";
        for (const auto& [x, M, z] : triples) {
            idb.cases.push_back(
                {"m(" + x.str() + ",q^" + std::to_string(M) + "," + z.str() + ")",
                 [x = x, M = M, z = z](long long n) { return appell_m(x, M, z, n); },
                 [x = x, M = M, z = z](long long n) {
                     AppellFlip fl = appell_flip(AppellArgs(x, M, z));
                     return (fl.prefactor *
                             appell_m(fl.args, n - fl.prefactor.exp))
                         .truncated(n);
                 }});
        }
        add(std::move(idb));

        Identity idc;
        idc.name = "m-functional-c";
        idc.statement = "m(qx,q,z) = 1 - x m(x,q,z)";
        for (const auto& [x, M, z] : triples) {
            idc.cases.push_back(
                {"m(" + x.str() + ",q^" + std::to_string(M) + "," + z.str() + ")",
                 [x = x, M = M, z = z](long long n) {
                     return appell_m(x.times_q(M), M, z, n);
                 },
                 [x = x, M = M, z = z](long long n) {
                     AppellXStep st = appell_x_step(AppellArgs(x, M, z));
                     return (QSeries::constant(st.constant, n) +
                             (st.factor * appell_m(st.inner, n - st.factor.exp)))
                         .truncated(n);
                 }});
        }
        add(std::move(idc));

        Identity idr;
        idr.name = "m-rewritten";
        idr.statement = "m(x,q,z) = 1 - q^-1 x m(q^-1 x,q,z)";
        for (const auto& [x, M, z] : triples) {
            idr.cases.push_back(
                {"m(" + x.str() + ",q^" + std::to_string(M) + "," + z.str() + ")",
                 [x = x, M = M, z = z](long long n) { return appell_m(x, M, z, n); },
                 [x = x, M = M, z = z](long long n) {
                     QMonomial pref = x.times_q(-M).negated();
                     return (QSeries::one(n) +
                             (pref * appell_m(x.times_q(-M), M, z, n - pref.exp)))
                         .truncated(n);
                 }});
        }
        add(std::move(idr));

        // z-change needs two z arguments and four nonvanishing thetas
        const std::tuple<QMonomial, long long, QMonomial, QMonomial> zpool[] = {
            {Q(1), 15, Q(4), Q(2)},  {MQ(2), 3, Q(1), MQ(1)},
            {Q(1), 5, Q(2), Q(1)},   {MQ(1), 4, Q(3), Q(1)},
            {Q(2), 7, Q(3), Q(1)},   {MQ(3), 5, Q(1), Q(2)},
            {Q(4), 9, Q(2), MQ(0)},  {MQ(-2), 6, Q(1), Q(2)},
            {Q(3), 11, Q(5), Q(2)},  {MQ(5), 8, MQ(2), Q(1)},
            {Q(-1), 4, Q(1), MQ(0)}, {Q(6), 13, MQ(4), Q(3)}};
        Identity idd;
        idd.name = "m-functional-d";
        idd.statement =
            "m(x,q,z1) - m(x,q,z0) = z0 J_1^3 j(z1/z0;q) j(x z0 z1;q)"
            " / (j(z0;q) j(z1;q) j(x z0;q) j(x z1;q))";
        for (const auto& [x, M, z1, z0] : zpool) {
            if (!AppellArgs(x, M, z1).valid() || !AppellArgs(x, M, z0).valid()) continue;
            bool theta_ok = true;
            for (const QMonomial& d : {z0, z1, x * z0, x * z1})
                if (jtheta_is_zero(d, M)) theta_ok = false;
            if (!theta_ok) continue;
            idd.cases.push_back(
                {"m(" + x.str() + ",q^" + std::to_string(M) + ";" + z1.str() + "," +
                     z0.str() + ")",
                 [x = x, M = M, z1 = z1, z0 = z0](long long n) {
                     return (appell_m(x, M, z1, n) - appell_m(x, M, z0, n)).truncated(n);
                 },
                 [x = x, M = M, z1 = z1, z0 = z0](long long n) {
                     return appell_z_change(x, M, z1, z0, n);
                 }});
            if (idd.cases.size() == 10) break;
        }
        add(std::move(idd));
    }

    // --- double- and triple-sum transformation batches (seeded random instances) ---
    {
        std::mt19937 gen(20250808u);
        auto rint = [&gen](long long lo, long long hi) {
            return std::uniform_int_distribution<long long>(lo, hi)(gen);
        };
        auto rmon = [&]() { return QMonomial(rint(0, 1) ? 1 : -1, rint(-3, 3)); };

        Identity idf;
        idf.name = "f-flip";
        idf.statement = "f_{a,b,c}(x,y,q) = -(q^(a+b+c)/(xy)) f_{a,b,c}(q^(2a+b)/x, q^(2c+b)/y, q)";
        for (int i = 0; i < 10; ++i) {
            HeckeParams2 p(rint(1, 3), rint(1, 3), rint(1, 3));
            QMonomial x = rmon(), y = rmon();
            idf.cases.push_back(
                {"f(" + std::to_string(p.a) + "," + std::to_string(p.b) + "," +
                     std::to_string(p.c) + "; " + x.str() + ", " + y.str() + ")",
                 [p, x, y](long long n) { return hecke_f(p, x, y, n); },
                 [p, x, y](long long n) {
                     FFlip fl = f_flip(p, x, y);
                     return (fl.prefactor *
                             hecke_f(p, fl.x, fl.y, n - fl.prefactor.exp))
                         .truncated(n);
                 }});
        }
        add(std::move(idf));

        Identity ids;
        ids.name = "f-shift";
        ids.statement = "f_{a,b,c}(x,y,q) = shifted f + two finite theta sums (any integer l,k)";
        for (int i = 0; i < 10; ++i) {
            HeckeParams2 p(rint(1, 3), rint(1, 3), rint(1, 3));
            QMonomial x = rmon(), y = rmon();
            long long l = rint(-3, 3), k = rint(-3, 3);
            if (i == 0) { l = -2; k = 1; } // pin at least one negative range
            ids.cases.push_back(
                {"f(" + std::to_string(p.a) + "," + std::to_string(p.b) + "," +
                     std::to_string(p.c) + "; " + x.str() + ", " + y.str() +
                     "), l=" + std::to_string(l) + ", k=" + std::to_string(k),
                 [p, x, y](long long n) { return hecke_f(p, x, y, n); },
                 [p, x, y, l, k](long long n) {
                     return to_order(n, [&](long long w) {
                         return f_shift(p, x, y, l, k, w).total();
                     });
                 }});
        }
        add(std::move(ids));

        Identity idg;
        idg.name = "g-shift";
        idg.statement =
            "g_{a..f}(x,y,z,q) = shifted g + three f sums - three theta double sums"
            " (any integer R,S,T)";
        for (int i = 0; i < 10; ++i) {
            HeckeParams3 p(rint(1, 3), rint(1, 3), rint(1, 3), rint(1, 3), rint(1, 3),
                           rint(1, 3));
            QMonomial x = rmon(), y = rmon(), z = rmon();
            long long R = rint(-2, 2), S = rint(-2, 2), T = rint(-2, 2);
            if (i == 0) { R = -1; S = 0; T = 1; } // the mixed-sign case used for newid-5
            idg.cases.push_back(
                {"g(...) " + mono3(x, y, z) + ", (R,S,T)=(" + std::to_string(R) + "," +
                     std::to_string(S) + "," + std::to_string(T) + ")",
                 [p, x, y, z](long long n) { return hecke_g(p, x, y, z, n); },
                 [p, x, y, z, R, S, T](long long n) {
                     return to_order(n, [&](long long w) {
                         return g_shift(p, x, y, z, R, S, T, w).total();
                     });
                 }});
        }
        add(std::move(idg));

        Identity idgf;
        idgf.name = "g-flip";
        idgf.statement =
            "g_{a..f}(x,y,z,q) = -(q^(a+b+c+d+e+f)/(xyz))"
            " g_{a..f}(q^(2a+b+d)/x, q^(b+2c+e)/y, q^(d+e+2f)/z, q)";
        for (int i = 0; i < 10; ++i) {
            HeckeParams3 p(rint(1, 3), rint(1, 3), rint(1, 3), rint(1, 3), rint(1, 3),
                           rint(1, 3));
            QMonomial x = rmon(), y = rmon(), z = rmon();
            idgf.cases.push_back(
                {"g(...) " + mono3(x, y, z),
                 [p, x, y, z](long long n) { return hecke_g(p, x, y, z, n); },
                 [p, x, y, z](long long n) {
                     GFlip fl = g_flip(p, x, y, z);
                     return (fl.prefactor *
                             hecke_g(p, fl.x, fl.y, fl.z, n - fl.prefactor.exp))
                         .truncated(n);
                 }});
        }
        add(std::move(idgf));

        Identity idgen;
        idgen.name = "generic-shift";
        idgen.statement =
            "octant sum minus shifted octant sum = three sg-weighted cone pieces"
            " minus three full-lattice pieces (R,S,T >= 0)";
        for (int i = 0; i < 10; ++i) {
            HeckeParams3 p(rint(1, 3), rint(1, 3), rint(1, 3), rint(1, 3), rint(1, 3),
                           rint(1, 3));
            QMonomial x = rmon(), y = rmon(), z = rmon();
            long long R = rint(0, 2), S = rint(0, 2), T = rint(0, 2);
            if (i == 0) { R = 1; S = 1; T = 1; }
            idgen.cases.push_back(
                {"g(...) " + mono3(x, y, z) + ", (R,S,T)=(" + std::to_string(R) + "," +
                     std::to_string(S) + "," + std::to_string(T) + ")",
                 [p, x, y, z, R, S, T](long long n) {
                     return generic_shift_sides(p, x, y, z, R, S, T, n).lhs;
                 },
                 [p, x, y, z, R, S, T](long long n) {
                     return generic_shift_sides(p, x, y, z, R, S, T, n).rhs;
                 }});
        }
        add(std::move(idgen));
    }

    // --- the general Appell-Lerch + theta expansion against direct enumeration ---
    {
        struct Inst {
            long long a, b, c;
            QMonomial x, y;
        };
        const Inst insts[] = {
            {1, 2, 1, Q(1), Q(1)},   {1, 2, 1, MQ(2), Q(3)}, {4, 4, 1, MQ(4), Q(2)},
            {4, 4, 1, MQ(5), Q(3)},  {3, 3, 1, MQ(3), Q(2)}, {3, 3, 1, MQ(4), Q(3)},
            {2, 2, 1, MQ(2), Q(1)},  {2, 2, 1, MQ(4), Q(1)}};
        Identity id;
        id.name = "thm-main-vs-direct";
        id.statement =
            "f_{a,b,c}(x,y,q) = h_{a,b,c}(x,y,q,-1,-1) - theta_{a,b,c}(x,y,q)"
            " / (Jbar_{0,b^2/a-c} Jbar_{0,b^2/c-a}) for ac < b^2, a|b, c|b";
        for (const Inst& ins : insts) {
            id.cases.push_back(
                {"(a,b,c)=(" + std::to_string(ins.a) + "," + std::to_string(ins.b) +
                     "," + std::to_string(ins.c) + "), x=" + ins.x.str() +
                     ", y=" + ins.y.str(),
                 [ins](long long n) {
                     return thm_main_expansion(HeckeParams2(ins.a, ins.b, ins.c), ins.x,
                                               ins.y, n)
                         .total;
                 },
                 [ins](long long n) {
                     return hecke_f(HeckeParams2(ins.a, ins.b, ins.c), ins.x, ins.y, n);
                 }});
        }
        add(std::move(id));
    }

    // --- the fixed (4,4,1) and (3,3,1) closed forms against both routes ---
    {
        Identity id;
        id.name = "cor-f441-expansion";
        id.statement = "closed-form f_{4,4,1} expansion = direct sum and = general expansion";
        const std::pair<QMonomial, QMonomial> xys441[] = {{MQ(4), Q(2)}, {MQ(5), Q(3)}};
        for (const auto& [x, y] : xys441) {
            id.cases.push_back(
                {"direct, x=" + x.str() + ", y=" + y.str(),
                 [x = x, y = y](long long n) { return f441_expansion(x, y, n).total; },
                 [x = x, y = y](long long n) {
                     return hecke_f(HeckeParams2(4, 4, 1), x, y, n);
                 }});
            id.cases.push_back(
                {"general, x=" + x.str() + ", y=" + y.str(),
                 [x = x, y = y](long long n) { return f441_expansion(x, y, n).total; },
                 [x = x, y = y](long long n) {
                     return thm_main_expansion(HeckeParams2(4, 4, 1), x, y, n).total;
                 }});
        }
        add(std::move(id));

        Identity id2;
        id2.name = "cor-f331-expansion";
        id2.statement = "closed-form f_{3,3,1} expansion = direct sum and = general expansion";
        const std::pair<QMonomial, QMonomial> xys331[] = {{MQ(3), Q(2)}, {MQ(4), Q(3)}};
        for (const auto& [x, y] : xys331) {
            id2.cases.push_back(
                {"direct, x=" + x.str() + ", y=" + y.str(),
                 [x = x, y = y](long long n) { return f331_expansion(x, y, n).total; },
                 [x = x, y = y](long long n) {
                     return hecke_f(HeckeParams2(3, 3, 1), x, y, n);
                 }});
            id2.cases.push_back(
                {"general, x=" + x.str() + ", y=" + y.str(),
                 [x = x, y = y](long long n) { return f331_expansion(x, y, n).total; },
                 [x = x, y = y](long long n) {
                     return thm_main_expansion(HeckeParams2(3, 3, 1), x, y, n).total;
                 }});
        }
        add(std::move(id2));
    }

    // --- the f_{1,3,1} expansion used for the residual ---
    {
        Identity id;
        id.name = "f131-expansion-vs-direct";
        id.statement =
            "f_{1,3,1}(x,y,q) = j(y;q) m(-q^5 x/y^3,q^8,q^2 y/x)"
            " + j(x;q) m(-q^5 y/x^3,q^8,x/(q^2 y)) + theta quotient";
        const std::pair<QMonomial, QMonomial> xys131[] = {
            {Q(1), Q(1)}, {Q(2), Q(1)}, {Q(4), Q(4)}};
        for (const auto& [x, y] : xys131) {
            id.cases.push_back(
                {"x=" + x.str() + ", y=" + y.str(),
                 [x = x, y = y](long long n) { return f131_expansion(x, y, n).total; },
                 [x = x, y = y](long long n) {
                     return hecke_f(HeckeParams2(1, 3, 1), x, y, n);
                 }});
        }
        add(std::move(id));
    }
}

} // namespace qseries
