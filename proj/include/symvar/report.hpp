#pragma once

// Deterministic CSV / JSON emission. Every CSV carries a header row; numbers
// are rendered with to_chars (shortest round-trip, locale-free), so identical
// inputs give byte-identical files whatever the thread count or environment.

#include <string>
#include <vector>

#include <json.hpp>

#include "symvar/diagonal_sums.hpp"
#include "symvar/euler_products.hpp"
#include "symvar/numeric.hpp"
#include "symvar/variance_empirics.hpp"

namespace symvar {

using ordered_json = nlohmann::ordered_json;

inline std::string csv_variance_reports(const std::vector<VarianceReport>& rows) {
    std::string out = "setting,k,x,y_or_K,empirical,predicted,ratio\n";
    for (const auto& r : rows) {
        out += to_string(r.setting);
        out += ',';
        out += format_u64(r.k_or_l);
        out += ',';
        out += format_u64(r.x);
        out += ',';
        out += format_double(r.y_or_K);
        out += ',';
        out += format_double(r.empirical);
        out += ',';
        out += format_double(r.predicted);
        out += ',';
        out += format_double(r.ratio);
        out += '\n';
    }
    return out;
}

inline ordered_json json_variance_reports(const std::vector<VarianceReport>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json o;
        o["setting"] = to_string(r.setting);
        o["k"] = r.k_or_l;
        o["x"] = r.x;
        o["y_or_K"] = r.y_or_K;
        o["empirical"] = r.empirical;
        o["predicted"] = r.predicted;
        o["ratio"] = r.ratio;
        arr.push_back(o);
    }
    return arr;
}

inline std::string csv_diagonal_rows(const std::vector<DiagonalSumResult>& rows,
                                     const std::vector<double>& predicted) {
    std::string out = "k,x,A,B,weighted,D_exact,predicted,ratio\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        double dv = rational_to_double(r.value);
        out += format_u64(r.k);
        out += ',';
        out += format_u64(r.x);
        out += ',';
        out += rational_decimal_string(r.interval.A, 20);
        out += ',';
        out += rational_decimal_string(r.interval.B, 20);
        out += ',';
        out += r.weighted ? "1" : "0";
        out += ',';
        out += rational_decimal_string(r.value);
        out += ',';
        out += format_double(predicted[i]);
        out += ',';
        out += format_double(predicted[i] != 0.0 ? dv / predicted[i] : 0.0);
        out += '\n';
    }
    return out;
}

struct RwVarianceRow {
    unsigned l = 1;
    u64 x = 0;
    double K = 0.0;
    double var_exact = 0.0;
    double var_diagonal = 0.0;
    double predicted = 0.0;
    double ratio = 0.0; // var_exact / predicted
};

inline std::string csv_rw_rows(const std::vector<RwVarianceRow>& rows) {
    std::string out = "l,x,K,var_exact,var_diagonal,predicted,ratio\n";
    for (const auto& r : rows) {
        out += format_u64(r.l);
        out += ',';
        out += format_u64(r.x);
        out += ',';
        out += format_double(r.K);
        out += ',';
        out += format_double(r.var_exact);
        out += ',';
        out += format_double(r.var_diagonal);
        out += ',';
        out += format_double(r.predicted);
        out += ',';
        out += format_double(r.ratio);
        out += '\n';
    }
    return out;
}

inline ordered_json json_rw_rows(const std::vector<RwVarianceRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json o;
        o["l"] = r.l;
        o["x"] = r.x;
        o["K"] = r.K;
        o["var_exact"] = r.var_exact;
        o["var_diagonal"] = r.var_diagonal;
        o["predicted"] = r.predicted;
        o["ratio"] = r.ratio;
        arr.push_back(o);
    }
    return arr;
}

inline ordered_json constant_to_json(const ConstantResult& c) {
    ordered_json o;
    o["name"] = c.name;
    o["k_or_l"] = c.k_or_l;
    o["value_decimal_string"] = c.value.str(55);
    o["cutoff"] = c.prime_cutoff;
    o["tail_bound"] = c.tail_bound;
    return o;
}

inline std::string csv_constant(const ConstantResult& c) {
    std::string out = "name,k_or_l,value,cutoff,tail_bound\n";
    out += c.name;
    out += ',';
    out += format_u64(c.k_or_l);
    out += ',';
    out += c.value.str(55);
    out += ',';
    out += format_u64(c.prime_cutoff);
    out += ',';
    out += format_double(c.tail_bound);
    out += '\n';
    return out;
}

} // namespace symvar
