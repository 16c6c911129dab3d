#include "gapdex/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace gapdex {

namespace {

std::string fmt_num(double v) {
    if (!std::isfinite(v)) {
        return "null";  // JSON has no non-finite literals
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_uint(std::uint64_t v) { return std::to_string(v); }

std::string fmt_bool(bool v) { return v ? "true" : "false"; }

std::string fmt_str(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
    return out;
}

std::string fmt_num_array(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += fmt_num(v[k]);
    }
    out += ']';
    return out;
}

double num_or_nan(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

// Short form for labels (CSV field names); data cells use fmt_num.
std::string fmt_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += "\"\"";
        } else {
            out += ch;
        }
    }
    out += '"';
    return out;
}

std::string split_json(const ClusterSplit& s) {
    std::string out = "{";
    out += "\"j\":" + fmt_uint(s.j);
    out += ",\"statistic\":" + fmt_num(s.statistic);
    out += ",\"separator_low\":" + fmt_num(s.separator_low);
    out += ",\"separator_high\":" + fmt_num(s.separator_high);
    out += ",\"cluster1\":[" + fmt_uint(s.cluster1.first) + "," + fmt_uint(s.cluster1.second) + "]";
    out += ",\"cluster2\":[" + fmt_uint(s.cluster2.first) + "," + fmt_uint(s.cluster2.second) + "]";
    out += "}";
    return out;
}

std::string test_json(const GumbelTest& t) {
    std::string out = "{";
    out += "\"n\":" + fmt_uint(t.n);
    out += ",\"statistic\":" + fmt_num(t.statistic);
    out += ",\"x\":" + fmt_num(t.x);
    out += ",\"p_value\":" + fmt_num(t.p_value);
    out += "}";
    return out;
}

std::string case_json(const LemmaCheckCase& c) {
    std::string out = "{";
    out += "\"name\":" + fmt_str(c.name);
    out += ",\"parameters\":{";
    for (std::size_t k = 0; k < c.parameters.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += fmt_str(c.parameters[k].first) + ":" + fmt_num(c.parameters[k].second);
    }
    out += "}";
    out += ",\"empirical\":" + fmt_num(c.empirical);
    out += ",\"reference\":" + fmt_num(c.reference);
    out += ",\"standard_error\":" + fmt_num(c.standard_error);
    out += ",\"pass\":" + fmt_bool(c.pass);
    out += "}";
    return out;
}

}  // namespace

DetectionOutput make_detection_output(const Sample& s, const VarianceDecomposition& d,
                                      const ClusterSplit& split, const GumbelTest& test) {
    DetectionOutput o;
    o.split = split;
    o.test = test;
    std::vector<std::size_t> order(d.components.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        order[k] = k;
    }
    std::sort(order.begin(), order.end(), [&d](std::size_t a, std::size_t b) {
        if (d.components[a].standardized != d.components[b].standardized) {
            return d.components[a].standardized > d.components[b].standardized;
        }
        return a < b;
    });
    const std::size_t top = std::min<std::size_t>(5, order.size());
    for (std::size_t k = 0; k < top; ++k) {
        const DecompositionComponent& c = d.components[order[k]];
        o.top_components.push_back({c.index, c.standardized});
    }
    o.digest.count = s.n();
    o.digest.min = s.order_stat(1);
    o.digest.max = s.order_stat(s.n());
    o.digest.mean = s.mean();
    o.digest.variance = d.sample_variance;
    return o;
}

std::string to_json(const DetectionOutput& o) {
    std::string out = "{";
    out += "\"split\":" + split_json(o.split);
    out += ",\"test\":" + test_json(o.test);
    out += ",\"decomposition_summary\":[";
    for (std::size_t k = 0; k < o.top_components.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += "{\"index\":" + fmt_uint(o.top_components[k].index) +
               ",\"standardized\":" + fmt_num(o.top_components[k].standardized) + "}";
    }
    out += "]";
    out += ",\"input_digest\":{";
    out += "\"count\":" + fmt_uint(o.digest.count);
    out += ",\"min\":" + fmt_num(o.digest.min);
    out += ",\"max\":" + fmt_num(o.digest.max);
    out += ",\"mean\":" + fmt_num(o.digest.mean);
    out += ",\"variance\":" + fmt_num(o.digest.variance);
    out += "}";
    if (o.projection) {
        out += ",\"projection\":{";
        out += "\"index\":" + fmt_uint(o.projection->index);
        out += ",\"direction\":" + fmt_num_array(o.projection->direction);
        out += ",\"directions_tried\":" + fmt_uint(o.projection->directions_tried);
        out += ",\"skipped\":" + fmt_uint(o.projection->skipped);
        out += "}";
    }
    out += "}";
    return out;
}

std::string to_json(const MonteCarloReport& r) {
    std::string out = "{";
    out += "\"config\":{";
    out += "\"n\":" + fmt_uint(r.config.n);
    out += ",\"reps\":" + fmt_uint(r.config.reps);
    out += ",\"seed\":" + fmt_uint(r.config.seed);
    out += ",\"grid\":" + fmt_num_array(r.config.grid);
    out += "}";
    out += ",\"reference\":" + fmt_str(r.reference);
    out += ",\"empirical_cdf\":" + fmt_num_array(r.empirical_cdf);
    out += ",\"reference_cdf\":" + fmt_num_array(r.reference_cdf);
    out += ",\"ks_distance\":" + fmt_num(r.ks_distance);
    out += ",\"quantiles\":[";
    for (std::size_t k = 0; k < r.quantiles.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += "{\"p\":" + fmt_num(r.quantiles[k].first) +
               ",\"value\":" + fmt_num(r.quantiles[k].second) + "}";
    }
    out += "]";
    out += ",\"excluded\":" + fmt_uint(r.excluded);
    out += "}";
    return out;
}

std::string to_json(const LemmaCheckReport& r) {
    std::string out = "{";
    out += "\"check\":" + fmt_str(r.check);
    out += ",\"cases\":[";
    for (std::size_t k = 0; k < r.cases.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += case_json(r.cases[k]);
    }
    out += "]";
    out += ",\"overall_pass\":" + fmt_bool(r.overall_pass);
    out += ",\"indeterminate\":" + fmt_bool(r.indeterminate);
    out += ",\"excluded\":" + fmt_uint(r.excluded);
    out += "}";
    return out;
}

std::string to_json(const std::vector<LemmaCheckReport>& reports) {
    std::string out = "[";
    for (std::size_t k = 0; k < reports.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += to_json(reports[k]);
    }
    out += "]";
    return out;
}

DetectionOutput detection_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    DetectionOutput o;
    const auto& js = j.at("split");
    o.split.j = js.at("j").get<std::size_t>();
    o.split.statistic = num_or_nan(js.at("statistic"));
    o.split.separator_low = num_or_nan(js.at("separator_low"));
    o.split.separator_high = num_or_nan(js.at("separator_high"));
    o.split.cluster1 = {js.at("cluster1").at(0).get<std::size_t>(),
                        js.at("cluster1").at(1).get<std::size_t>()};
    o.split.cluster2 = {js.at("cluster2").at(0).get<std::size_t>(),
                        js.at("cluster2").at(1).get<std::size_t>()};
    const auto& jt = j.at("test");
    o.test.n = jt.at("n").get<std::size_t>();
    o.test.statistic = num_or_nan(jt.at("statistic"));
    o.test.x = num_or_nan(jt.at("x"));
    o.test.p_value = num_or_nan(jt.at("p_value"));
    for (const auto& jc : j.at("decomposition_summary")) {
        o.top_components.push_back(
            {jc.at("index").get<std::size_t>(), num_or_nan(jc.at("standardized"))});
    }
    const auto& jd = j.at("input_digest");
    o.digest.count = jd.at("count").get<std::size_t>();
    o.digest.min = num_or_nan(jd.at("min"));
    o.digest.max = num_or_nan(jd.at("max"));
    o.digest.mean = num_or_nan(jd.at("mean"));
    o.digest.variance = num_or_nan(jd.at("variance"));
    if (j.contains("projection")) {
        const auto& jp = j.at("projection");
        ProjectionInfo p;
        p.index = jp.at("index").get<std::size_t>();
        for (const auto& jv : jp.at("direction")) {
            p.direction.push_back(num_or_nan(jv));
        }
        p.directions_tried = jp.at("directions_tried").get<std::size_t>();
        p.skipped = jp.at("skipped").get<std::size_t>();
        o.projection = std::move(p);
    }
    return o;
}

MonteCarloReport montecarlo_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    MonteCarloReport r;
    const auto& jc = j.at("config");
    r.config.n = jc.at("n").get<std::size_t>();
    r.config.reps = jc.at("reps").get<std::size_t>();
    r.config.seed = jc.at("seed").get<std::uint64_t>();
    for (const auto& jv : jc.at("grid")) {
        r.config.grid.push_back(num_or_nan(jv));
    }
    r.reference = j.at("reference").get<std::string>();
    for (const auto& jv : j.at("empirical_cdf")) {
        r.empirical_cdf.push_back(num_or_nan(jv));
    }
    for (const auto& jv : j.at("reference_cdf")) {
        r.reference_cdf.push_back(num_or_nan(jv));
    }
    r.ks_distance = num_or_nan(j.at("ks_distance"));
    for (const auto& jq : j.at("quantiles")) {
        r.quantiles.emplace_back(num_or_nan(jq.at("p")), num_or_nan(jq.at("value")));
    }
    r.excluded = j.at("excluded").get<std::size_t>();
    return r;
}

LemmaCheckReport lemmacheck_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    LemmaCheckReport r;
    r.check = j.at("check").get<std::string>();
    for (const auto& jc : j.at("cases")) {
        LemmaCheckCase c;
        c.name = jc.at("name").get<std::string>();
        for (const auto& [key, value] : jc.at("parameters").items()) {
            c.parameters.emplace_back(key, num_or_nan(value));
        }
        c.empirical = num_or_nan(jc.at("empirical"));
        c.reference = num_or_nan(jc.at("reference"));
        c.standard_error = num_or_nan(jc.at("standard_error"));
        c.pass = jc.at("pass").get<bool>();
        r.cases.push_back(std::move(c));
    }
    r.overall_pass = j.at("overall_pass").get<bool>();
    r.indeterminate = j.at("indeterminate").get<bool>();
    r.excluded = j.at("excluded").get<std::size_t>();
    return r;
}

std::string to_csv(const DetectionOutput& o) {
    std::string out = "field,value\n";
    out += "j," + fmt_uint(o.split.j) + "\n";
    out += "statistic," + fmt_num(o.split.statistic) + "\n";
    out += "separator_low," + fmt_num(o.split.separator_low) + "\n";
    out += "separator_high," + fmt_num(o.split.separator_high) + "\n";
    out += "cluster1_begin," + fmt_uint(o.split.cluster1.first) + "\n";
    out += "cluster1_end," + fmt_uint(o.split.cluster1.second) + "\n";
    out += "cluster2_begin," + fmt_uint(o.split.cluster2.first) + "\n";
    out += "cluster2_end," + fmt_uint(o.split.cluster2.second) + "\n";
    out += "n," + fmt_uint(o.test.n) + "\n";
    out += "x," + fmt_num(o.test.x) + "\n";
    out += "p_value," + fmt_num(o.test.p_value) + "\n";
    out += "digest_count," + fmt_uint(o.digest.count) + "\n";
    out += "digest_min," + fmt_num(o.digest.min) + "\n";
    out += "digest_max," + fmt_num(o.digest.max) + "\n";
    out += "digest_mean," + fmt_num(o.digest.mean) + "\n";
    out += "digest_variance," + fmt_num(o.digest.variance) + "\n";
    if (o.projection) {
        out += "projection_index," + fmt_uint(o.projection->index) + "\n";
        out += "directions_tried," + fmt_uint(o.projection->directions_tried) + "\n";
        out += "projections_skipped," + fmt_uint(o.projection->skipped) + "\n";
        std::string dir;
        for (std::size_t k = 0; k < o.projection->direction.size(); ++k) {
            if (k > 0) {
                dir += ';';
            }
            dir += fmt_num(o.projection->direction[k]);
        }
        out += "direction," + csv_quote(dir) + "\n";
    }
    out += "\nindex,standardized\n";
    for (const ComponentSummary& c : o.top_components) {
        out += fmt_uint(c.index) + "," + fmt_num(c.standardized) + "\n";
    }
    return out;
}

std::string to_csv(const MonteCarloReport& r) {
    std::string out = "field,value\n";
    out += "n," + fmt_uint(r.config.n) + "\n";
    out += "reps," + fmt_uint(r.config.reps) + "\n";
    out += "seed," + fmt_uint(r.config.seed) + "\n";
    out += "reference," + csv_quote(r.reference) + "\n";
    out += "ks_distance," + fmt_num(r.ks_distance) + "\n";
    out += "excluded," + fmt_uint(r.excluded) + "\n";
    for (const auto& [p, value] : r.quantiles) {
        out += "quantile_" + fmt_label(p) + "," + fmt_num(value) + "\n";
    }
    out += "\nx,empirical_cdf,reference_cdf\n";
    for (std::size_t k = 0; k < r.config.grid.size(); ++k) {
        out += fmt_num(r.config.grid[k]) + "," + fmt_num(r.empirical_cdf[k]) + "," +
               fmt_num(r.reference_cdf[k]) + "\n";
    }
    return out;
}

std::string to_csv(const LemmaCheckReport& r) {
    std::string out = "field,value\n";
    out += "check," + csv_quote(r.check) + "\n";
    out += "overall_pass," + fmt_bool(r.overall_pass) + "\n";
    out += "indeterminate," + fmt_bool(r.indeterminate) + "\n";
    out += "excluded," + fmt_uint(r.excluded) + "\n";
    out += "\nname,parameters,empirical,reference,standard_error,pass\n";
    for (const LemmaCheckCase& c : r.cases) {
        std::string params;
        for (std::size_t k = 0; k < c.parameters.size(); ++k) {
            if (k > 0) {
                params += ';';
            }
            params += c.parameters[k].first + "=" + fmt_num(c.parameters[k].second);
        }
        out += csv_quote(c.name) + "," + csv_quote(params) + "," + fmt_num(c.empirical) + "," +
               fmt_num(c.reference) + "," + fmt_num(c.standard_error) + "," + fmt_bool(c.pass) +
               "\n";
    }
    return out;
}

}  // namespace gapdex
