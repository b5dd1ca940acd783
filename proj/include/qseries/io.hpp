#pragma once

#include <json.hpp>

#include "qseries/catalog.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// {"valuation": v, "order": N, "coeffs": ["num/den", ...]} with coefficients
/// listed from exponent v to N as exact rational strings. The zero series
/// serializes with an empty coefficient list and valuation 0.
inline nlohmann::json to_json(const QSeries& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    if (!s.is_zero())
        for (long long e = s.valuation(); e <= s.order(); ++e)
            coeffs.push_back(s.coeff(e).get_str());
    return {{"valuation", s.valuation()}, {"order", s.order()}, {"coeffs", coeffs}};
}

inline QSeries series_from_json(const nlohmann::json& j) {
    long long val = j.at("valuation").get<long long>();
    long long order = j.at("order").get<long long>();
    std::vector<Rat> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(rat_from_string(c.get<std::string>()));
    return QSeries(val, std::move(coeffs), order);
}

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json j = {{"name", r.name},
                        {"order_checked", r.order_checked},
                        {"passed", r.passed},
                        {"cases_checked", r.cases_checked},
                        {"wall_time_ms", r.wall_time_ms}};
    if (r.first_mismatch) {
        j["first_mismatch"] = {{"exponent", r.first_mismatch->exponent},
                               {"lhs", r.first_mismatch->lhs.get_str()},
                               {"rhs", r.first_mismatch->rhs.get_str()}};
        if (!r.first_mismatch->case_label.empty())
            j["first_mismatch"]["case"] = r.first_mismatch->case_label;
    }
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

} // namespace qseries
