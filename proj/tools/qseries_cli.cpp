// Command-line front end: expand expressions over the library primitives,
// verify registered identities, compute the triple-sum residual.
//
// Exit codes: 0 success / all identities pass; 1 some identity failed;
// 2 usage or parse error; 3 evaluation error (pole, vanishing theta, ...).

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "qseries/expr.hpp"
#include "qseries/io.hpp"
#include "qseries/qseries.hpp"

namespace {

int cmd_expand(const std::string& text, long long order, bool json) {
    qseries::ExprPtr e;
    try {
        e = qseries::parse(text);
    } catch (const qseries::ParseError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return 2;
    }
    try {
        qseries::QSeries s = qseries::eval(e, order);
        if (json)
            std::cout << qseries::to_json(s).dump() << "\n";
        else
            std::cout << s.str() << "\n";
        return 0;
    } catch (const qseries::Error& err) {
        std::cerr << "evaluation error: " << err.what() << "\n";
        return 3;
    }
}

void print_report(const qseries::VerificationReport& r, bool json) {
    if (json) {
        std::cout << qseries::to_json(r).dump() << "\n";
        return;
    }
    std::cout << (r.passed ? "pass" : "FAIL") << "  " << r.name << "  (order "
              << r.order_checked << ", " << r.cases_checked << " case"
              << (r.cases_checked == 1 ? "" : "s") << ", "
              << static_cast<long long>(r.wall_time_ms) << " ms)";
    if (r.first_mismatch) {
        std::cout << "  mismatch at q^" << r.first_mismatch->exponent << ": "
                  << r.first_mismatch->lhs.get_str() << " vs "
                  << r.first_mismatch->rhs.get_str();
        if (!r.first_mismatch->case_label.empty())
            std::cout << " [" << r.first_mismatch->case_label << "]";
    }
    if (!r.error.empty()) std::cout << "  error: " << r.error;
    std::cout << "\n";
}

int cmd_verify(const std::string& name, bool all, long long order, bool json,
               unsigned jobs) {
    const auto& cat = qseries::IdentityCatalog::instance();
    if (all) {
        auto reports = cat.verify_all(order, jobs);
        bool ok = true, errored = false;
        for (const auto& r : reports) {
            print_report(r, json);
            ok = ok && r.passed;
            errored = errored || !r.error.empty();
        }
        if (errored) return 3;
        return ok ? 0 : 1;
    }
    try {
        auto rep = cat.verify(name, order);
        print_report(rep, json);
        return rep.passed ? 0 : 1;
    } catch (const qseries::UnknownIdentity& err) {
        std::cerr << err.what() << "\n";
        return 2;
    } catch (const qseries::Error& err) {
        std::cerr << "evaluation error: " << err.what() << "\n";
        return 3;
    }
}

int cmd_residual(long long order, bool json) {
    try {
        qseries::QSeries r = qseries::conjecture_residual(order);
        bool integral = true;
        if (!r.is_zero())
            for (long long e = r.valuation(); e <= r.order() && integral; ++e)
                integral = qseries::is_integer(r.coeff(e));
        if (json) {
            nlohmann::json j = {{"residual", qseries::to_json(r)},
                                {"all_integer_coefficients", integral}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << r.str() << "\n";
            std::cout << "all coefficients integral: " << (integral ? "yes" : "no")
                      << "\n";
        }
        return 0;
    } catch (const qseries::Error& err) {
        std::cerr << "evaluation error: " << err.what() << "\n";
        return 3;
    }
}

int cmd_list(bool json) {
    for (const auto& id : qseries::IdentityCatalog::instance().identities()) {
        if (json) {
            nlohmann::json j = {{"name", id.name},
                                {"statement", id.statement},
                                {"default_order", id.default_order},
                                {"cases", id.cases.size()}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << id.name << "  [" << id.cases.size() << " case"
                      << (id.cases.size() == 1 ? "" : "s") << ", default order "
                      << id.default_order << "]\n    " << id.statement << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series engine: theta products, Appell-Lerch functions,"
                 " Hecke-type double and triple sums"};
    app.require_subcommand(1);

    long long order = 60;
    bool json = false;
    unsigned jobs = 1;

    auto* expand = app.add_subcommand("expand", "evaluate an expression as a q-series");
    std::string expr_text;
    expand->add_option("expr", expr_text, "expression, e.g. \"f(1,2,1; q, q)\"")
        ->required();
    expand->add_option("--order", order, "truncation order (default 60)");
    expand->add_flag("--json", json, "emit JSON");

    auto* verify = app.add_subcommand("verify", "check registered identities");
    std::string name;
    bool all = false;
    verify->add_option("name", name, "identity name (see 'list')");
    verify->add_flag("--all", all, "verify every registered identity");
    verify->add_option("--order", order, "truncation order (default 60)");
    verify->add_flag("--json", json, "one JSON report per line");
    verify->add_option("--jobs", jobs, "worker threads for --all");

    auto* residual = app.add_subcommand(
        "residual", "compute the g_{1,3,1,3,3,1}(q,q,q,q) residual series");
    residual->add_option("--order", order, "truncation order (default 60)");
    residual->add_flag("--json", json, "emit JSON");

    auto* list = app.add_subcommand("list", "list registered identities");
    list->add_flag("--json", json, "one JSON line per identity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (app.got_subcommand(expand)) return cmd_expand(expr_text, order, json);
    if (app.got_subcommand(verify)) {
        if (!all && name.empty()) {
            std::cerr << "verify: give an identity name or --all\n";
            return 2;
        }
        return cmd_verify(name, all, order, json, jobs);
    }
    if (app.got_subcommand(residual)) return cmd_residual(order, json);
    if (app.got_subcommand(list)) return cmd_list(json);
    return 2;
}
