#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "recip/report.hpp"
#include "recip/search.hpp"

namespace py = pybind11;
using namespace recip;

namespace {

py::dict report_to_dict(const CountReport& r) {
    py::dict d;
    d["genus"] = r.genus;
    d["points"] = r.points;
    d["method"] = r.method;
    d["maximal"] = r.maximal;
    d["hasse_weil_upper"] = r.hasse_weil_upper;
    d["hasse_weil_slack"] = r.hasse_weil_slack;
    if (r.suspect) d["suspect"] = r.suspect_reason;
    if (r.verdict) {
        py::dict v;
        v["kind"] = verdict_name(r.verdict->kind);
        v["L"] = r.verdict->L;
        v["U"] = r.verdict->U;
        d["verdict"] = v;
    }
    return d;
}

const RecordTable* table_ptr(const std::optional<RecordTable>& t) {
    return t ? &*t : nullptr;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "point counts, genera and record verdicts for reciprocal-polynomial "
              "Kummer covers, fibre products and Artin-Schreier curves over F_{q^2}";

    py::class_<Tower>(m, "Tower")
        .def(py::init<uint64_t, uint32_t>(), py::arg("p"), py::arg("n"))
        .def_property_readonly("q", &Tower::q)
        .def_property_readonly("q2", &Tower::q2)
        .def("field_info", [](const Tower& tw) {
            py::dict d;
            d["p"] = tw.base().p();
            d["n"] = tw.base().degree();
            d["modulus"] = tw.base().modulus();
            d["xi"] = tw.base().coeffs(tw.base().xi());
            d["ext_modulus"] = tw.ext().modulus();
            d["ext_xi"] = tw.ext().coeffs(tw.ext().xi());
            return d;
        });

    py::class_<RecordTable>(m, "RecordTable")
        .def_static("load_csv", &RecordTable::load_csv)
        .def("__len__", &RecordTable::size);

    m.def(
        "count",
        [](uint64_t q, int64_t mm, int64_t s, int eps, int lam, const std::string& f,
           std::optional<RecordTable> table, int threads) {
            const Tower& tw = tower_for(q);
            KummerCurve c = reciprocal_kummer(tw, mm, s, eps, lam, parse_poly(tw.base(), f));
            CountReport r = count_points(c, threads);
            if (table) attach_verdict(r, tw, table_ptr(table));
            return report_to_dict(r);
        },
        py::arg("q"), py::arg("m"), py::arg("s"), py::arg("eps") = -1, py::arg("lam") = 1,
        py::arg("f") = "x+2", py::arg("table") = py::none(), py::arg("threads") = 1,
        "exact F_{q^2}-point count of y^m = x^{eps*s} f(x) f*(x)^lam");

    m.def(
        "genus",
        [](uint64_t q, int64_t mm, int64_t s, int eps, int lam, const std::string& f) {
            const Tower& tw = tower_for(q);
            return curve_genus(reciprocal_kummer(tw, mm, s, eps, lam, parse_poly(tw.base(), f)));
        },
        py::arg("q"), py::arg("m"), py::arg("s"), py::arg("eps") = -1, py::arg("lam") = 1,
        py::arg("f") = "x+2");

    m.def(
        "lower_bound",
        [](uint64_t q, int64_t mm, int64_t s, int eps, int lam, const std::string& f) {
            const Tower& tw = tower_for(q);
            return lower_bound(reciprocal_kummer(tw, mm, s, eps, lam, parse_poly(tw.base(), f)));
        },
        py::arg("q"), py::arg("m"), py::arg("s"), py::arg("eps") = -1, py::arg("lam") = 1,
        py::arg("f") = "x+2");

    m.def(
        "closed_count",
        [](uint64_t q, const std::string& variant, int64_t d, const std::string& b) {
            const Tower& tw = tower_for(q);
            FieldElem bb = parse_poly(tw.base(), b).coeff(0);
            ClosedCount cc;
            if (variant == "thm42") cc = closed_count_thm42(tw, d, bb);
            else if (variant == "prop43") cc = closed_count_prop43(tw, d, bb);
            else if (variant == "prop44") cc = closed_count_prop44(tw, d, bb);
            else throw std::invalid_argument("variant must be thm42, prop43 or prop44");
            py::dict out;
            out["genus"] = cc.genus;
            out["points"] = cc.points;
            out["maximal_by_criterion"] = cc.maximal_by_criterion;
            return out;
        },
        py::arg("q"), py::arg("variant"), py::arg("d"), py::arg("b"));

    m.def(
        "count_fibre",
        [](uint64_t q, int family, int64_t m1, int64_t s1, const std::string& f1, int64_t m2,
           int64_t s2, const std::string& f2, std::optional<RecordTable> table, int threads) {
            const Tower& tw = tower_for(q);
            FibreProduct fp =
                make_fibre_product(tw, family == 61 ? FibreFamily::THM61 : FibreFamily::THM63, m1,
                                   s1, parse_poly(tw.base(), f1), m2, s2, parse_poly(tw.base(), f2));
            CountReport r = count_points_fibre(fp, threads);
            if (table) attach_verdict(r, tw, table_ptr(table));
            return report_to_dict(r);
        },
        py::arg("q"), py::arg("family"), py::arg("m1"), py::arg("s1"), py::arg("f1"),
        py::arg("m2"), py::arg("s2"), py::arg("f2"), py::arg("table") = py::none(),
        py::arg("threads") = 1);

    m.def(
        "genus_fibre",
        [](uint64_t q, int family, int64_t m1, int64_t s1, const std::string& f1, int64_t m2,
           int64_t s2, const std::string& f2, const std::string& mode) {
            const Tower& tw = tower_for(q);
            FibreProduct fp =
                make_fibre_product(tw, family == 61 ? FibreFamily::THM61 : FibreFamily::THM63, m1,
                                   s1, parse_poly(tw.base(), f1), m2, s2, parse_poly(tw.base(), f2));
            FibreGenusMode gm = mode == "general" ? FibreGenusMode::GENERAL
                                : family == 61    ? FibreGenusMode::CLOSED61
                                                  : FibreGenusMode::CLOSED63;
            return genus_fibre(fp, gm);
        },
        py::arg("q"), py::arg("family"), py::arg("m1"), py::arg("s1"), py::arg("f1"),
        py::arg("m2"), py::arg("s2"), py::arg("f2"), py::arg("mode") = "general");

    m.def(
        "count_artin_schreier",
        [](uint64_t q, int64_t s, const std::string& f, std::optional<RecordTable> table,
           int threads) {
            const Tower& tw = tower_for(q);
            CountReport r = count_as(artin_schreier_curve(tw, s, parse_poly(tw.base(), f)), threads);
            if (table) attach_verdict(r, tw, table_ptr(table));
            return report_to_dict(r);
        },
        py::arg("q"), py::arg("s"), py::arg("f"), py::arg("table") = py::none(),
        py::arg("threads") = 1);

    m.def("serre_upper", &serre_upper, py::arg("q"), py::arg("g"));
    m.def("many_points_threshold", &many_points_threshold, py::arg("q"), py::arg("g"),
          py::arg("U"));
    m.def(
        "classify",
        [](int64_t points, int64_t q, int64_t g, std::optional<RecordTable> table) {
            Verdict v = classify(points, q, g, table_ptr(table));
            py::dict d;
            d["kind"] = verdict_name(v.kind);
            d["L"] = v.L;
            d["U"] = v.U;
            d["no_table_fallback"] = v.no_table_fallback;
            return d;
        },
        py::arg("points"), py::arg("q"), py::arg("g"), py::arg("table") = py::none());

    m.def(
        "reproduce_table",
        [](const std::string& table_id, const std::string& fixtures_dir, int threads) {
            TableCheck tc = reproduce_table(table_id, fixtures_dir, threads);
            py::list rows;
            for (const auto& r : tc.rows) {
                py::dict d;
                d["q"] = r.row.q;
                d["f1"] = r.row.f1;
                d["expected_genus"] = r.row.genus;
                d["expected_points"] = r.row.points;
                d["genus"] = r.got_genus;
                d["points"] = r.got_points;
                d["ok"] = r.ok;
                rows.append(d);
            }
            py::dict out;
            out["table"] = tc.table_id;
            out["ok"] = tc.ok;
            out["rows"] = rows;
            return out;
        },
        py::arg("table_id"), py::arg("fixtures_dir"), py::arg("threads") = 1);

    m.def("known_table_ids", &known_table_ids);
}
