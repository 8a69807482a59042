#include "recip/report.hpp"

namespace recip {

using nlohmann::json;

json field_header_json(const Tower& tw) {
    auto field_part = [](const Field& f) {
        return json{{"p", f.p()},
                    {"n", f.degree()},
                    {"order", f.order()},
                    {"modulus", f.modulus()},
                    {"xi", f.coeffs(f.xi())}};
    };
    json j = field_part(tw.base());
    j["extension"] = field_part(tw.ext());
    return j;
}

json verdict_json(const Verdict& v) {
    json j{{"kind", verdict_name(v.kind)}, {"L", v.L}, {"U", v.U}};
    if (v.no_table_fallback) j["no_table_fallback"] = true;
    return j;
}

json report_json(const Tower& tw, json curve, const CountReport& r) {
    json j;
    j["schema"] = "count-report/1";
    j["field"] = field_header_json(tw);
    j["curve"] = std::move(curve);
    j["genus"] = r.genus;
    j["points"] = r.points;
    j["method"] = r.method;
    j["maximal"] = r.maximal;
    j["hasse_weil_upper"] = r.hasse_weil_upper;
    j["hasse_weil_slack"] = r.hasse_weil_slack;
    if (r.suspect) j["suspect"] = r.suspect_reason;
    if (r.verdict) j["verdict"] = verdict_json(*r.verdict);
    return j;
}

void attach_verdict(CountReport& r, const Tower& tw, const RecordTable* table) {
    r.verdict = classify(r.points, int64_t(tw.q2()), r.genus, table);
}

} // namespace recip
