// rpcurves: genus, exact point counts, bounds and record verdicts for the
// reciprocal-polynomial Kummer covers, their fibre products, and the related
// Artin-Schreier curves over F_{q^2}.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "recip/report.hpp"
#include "recip/search.hpp"

using namespace recip;
using nlohmann::json;

namespace {

struct FieldArgs {
    int64_t p = 0;
    int64_t n = 1;
    int64_t q = 0; // alternative to p/n
};

const Tower& resolve_tower(const FieldArgs& fa) {
    if (fa.q > 0) return tower_for(uint64_t(fa.q));
    if (fa.p <= 0) throw CLI::ValidationError("--p (or --q) is required");
    uint64_t q = 1;
    for (int64_t i = 0; i < fa.n; ++i) q *= uint64_t(fa.p);
    return tower_for(q);
}

void add_field_opts(CLI::App* cmd, FieldArgs& fa) {
    cmd->add_option("--p", fa.p, "characteristic");
    cmd->add_option("--n", fa.n, "extension degree of the small field (q = p^n)");
    cmd->add_option("--q", fa.q, "small-field size as a prime power (alternative to --p/--n)");
}

std::optional<RecordTable> load_table_opt(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return RecordTable::load_csv(path);
}

json curve_json_single(const KummerCurve& c) {
    json j{{"m", c.m},
           {"h_num", c.h_base.num.to_string()},
           {"h_den", c.h_base.den.to_string()},
           {"family", c.family}};
    if (c.recip) {
        j["eps"] = c.recip->eps;
        j["lam"] = c.recip->lam;
        j["s"] = c.recip->s;
        j["f"] = c.recip->f.to_string();
    }
    return j;
}

int emit_report(const Tower& tw, json curve, CountReport r, const std::string& table_path) {
    if (auto table = load_table_opt(table_path)) attach_verdict(r, tw, &*table);
    std::cout << report_json(tw, std::move(curve), r).dump(2) << std::endl;
    return 0;
}

int run_batch_count(const std::string& path, const std::string& table_path, int threads) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open batch file: " + path);
    auto table = load_table_opt(table_path);
    std::vector<ReportRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (first && line.rfind("family,", 0) == 0) { first = false; continue; }
        first = false;
        std::istringstream ss(line);
        std::string fam, qs, ms, fs, ssx;
        if (!std::getline(ss, fam, ',') || !std::getline(ss, qs, ',') ||
            !std::getline(ss, ms, ',') || !std::getline(ss, fs, ',') || !std::getline(ss, ssx))
            throw CLI::ValidationError("batch rows are family,q,m,f,s");
        const Tower& tw = tower_for(uint64_t(std::stoll(qs)));
        Poly f = parse_poly(tw.base(), fs);
        int64_t m = ms.empty() ? 0 : std::stoll(ms), s = std::stoll(ssx);
        CountReport r;
        if (fam == "thm51") r = count_points(reciprocal_kummer(tw, m, s, 1, -1, f), threads);
        else if (fam == "as") r = count_as(artin_schreier_curve(tw, s, f), threads);
        else r = count_points(reciprocal_kummer(tw, m, s, -1, 1, f), threads);
        if (table) attach_verdict(r, tw, &*table);
        ReportRow row;
        row.family = fam == "thm51" ? Family::THM51 : (fam == "as" ? Family::AS : Family::THM41);
        row.q = std::stoll(qs);
        row.m1 = m;
        row.s1 = s;
        row.f1 = f.to_string();
        row.genus = r.genus;
        row.points = r.points;
        row.maximal = r.maximal;
        row.verdict = r.verdict ? verdict_name(r.verdict->kind) : "";
        rows.push_back(std::move(row));
    }
    export_rows(std::cout, rows, ExportFormat::CSV);
    return 0;
}

int run_batch_fibre(const std::string& path, const std::string& table_path, int threads) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open batch file: " + path);
    auto table = load_table_opt(table_path);
    std::vector<ReportRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (first && line.rfind("family,", 0) == 0) { first = false; continue; }
        first = false;
        std::istringstream ss(line);
        std::string fam, qs, m1s, m2s, s1s, s2s, f1s, f2s;
        if (!std::getline(ss, fam, ',') || !std::getline(ss, qs, ',') ||
            !std::getline(ss, m1s, ',') || !std::getline(ss, m2s, ',') ||
            !std::getline(ss, s1s, ',') || !std::getline(ss, s2s, ',') ||
            !std::getline(ss, f1s, ',') || !std::getline(ss, f2s, ','))
            throw CLI::ValidationError("fibre batch rows are family,q,m1,m2,s1,s2,f1,f2[,...]");
        const Tower& tw = tower_for(uint64_t(std::stoll(qs)));
        FibreProduct fp = make_fibre_product(
            tw, fam == "fibre63" ? FibreFamily::THM63 : FibreFamily::THM61, std::stoll(m1s),
            std::stoll(s1s), parse_poly(tw.base(), f1s), std::stoll(m2s), std::stoll(s2s),
            parse_poly(tw.base(), f2s));
        CountReport r = count_points_fibre(fp, threads);
        if (table) attach_verdict(r, tw, &*table);
        ReportRow row;
        row.family = fam == "fibre63" ? Family::FIBRE63 : Family::FIBRE61;
        row.q = std::stoll(qs);
        row.m1 = std::stoll(m1s);
        row.m2 = std::stoll(m2s);
        row.s1 = std::stoll(s1s);
        row.s2 = std::stoll(s2s);
        row.f1 = f1s;
        row.f2 = f2s;
        row.genus = r.genus;
        row.points = r.points;
        row.maximal = r.maximal;
        row.verdict = r.verdict ? verdict_name(r.verdict->kind) : "";
        if (r.verdict) {
            bool vs_lower = r.verdict->kind == VerdictKind::NEW_RECORD ||
                            r.verdict->kind == VerdictKind::MEETS_RECORD;
            const RecordEntry* entry =
                table ? table->find(int64_t(tw.q2()), r.genus) : nullptr;
            if (vs_lower && entry && entry->lower) row.olb = std::to_string(*entry->lower);
            else row.olb = std::to_string(r.verdict->L);
        }
        rows.push_back(std::move(row));
    }
    export_rows(std::cout, rows, ExportFormat::CSV);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reciprocal-polynomial curves with many points over F_{q^2}"};
    app.require_subcommand(1);

    auto* cmd_field = app.add_subcommand("field-info", "print the field presentation (p, n, modulus, xi)");
    FieldArgs fa_field;
    add_field_opts(cmd_field, fa_field);

    struct CurveArgs {
        FieldArgs fa;
        int64_t m = 0, s = 0;
        int64_t eps = -1, lam = 1;
        std::string f, table, batch;
        int threads = 1;
    } ca;
    auto* cmd_count = app.add_subcommand("count", "genus and exact point count of y^m = x^{eps*s} f f*^lam");
    add_field_opts(cmd_count, ca.fa);
    cmd_count->add_option("--m", ca.m, "cover degree");
    cmd_count->add_option("--s", ca.s, "exponent of x");
    cmd_count->add_option("--eps", ca.eps, "+1 or -1")->check(CLI::IsMember({-1, 1}));
    cmd_count->add_option("--lam", ca.lam, "+1 or -1")->check(CLI::IsMember({-1, 1}));
    cmd_count->add_option("--f", ca.f, "polynomial over F_q, e.g. \"x^2+xi^3\"");
    cmd_count->add_option("--table", ca.table, "record table CSV for the verdict");
    cmd_count->add_option("--threads", ca.threads, "threads for the enumeration");
    cmd_count->add_option("--batch", ca.batch, "CSV of rows family,q,m,f,s; prints a report CSV");

    CurveArgs ga;
    auto* cmd_genus = app.add_subcommand("genus", "genus only (closed formula when applicable)");
    add_field_opts(cmd_genus, ga.fa);
    cmd_genus->add_option("--m", ga.m, "cover degree");
    cmd_genus->add_option("--s", ga.s, "exponent of x");
    cmd_genus->add_option("--eps", ga.eps, "+1 or -1")->check(CLI::IsMember({-1, 1}));
    cmd_genus->add_option("--lam", ga.lam, "+1 or -1")->check(CLI::IsMember({-1, 1}));
    cmd_genus->add_option("--f", ga.f, "polynomial over F_q");

    struct FibreArgs {
        FieldArgs fa;
        int64_t m1 = 0, s1 = 0, m2 = 0, s2 = 0;
        std::string f1, f2, table, batch;
        int64_t family = 61;
        int threads = 1;
    } fb;
    auto* cmd_fibre = app.add_subcommand("count-fibre", "fibre product of two Kummer covers");
    add_field_opts(cmd_fibre, fb.fa);
    cmd_fibre->add_option("--m1", fb.m1);
    cmd_fibre->add_option("--s1", fb.s1);
    cmd_fibre->add_option("--f1", fb.f1);
    cmd_fibre->add_option("--m2", fb.m2);
    cmd_fibre->add_option("--s2", fb.s2);
    cmd_fibre->add_option("--f2", fb.f2);
    cmd_fibre->add_option("--batch", fb.batch,
                          "CSV of rows family,q,m1,m2,s1,s2,f1,f2 (the 6.x table layout)");
    cmd_fibre->add_option("--family", fb.family, "61 (f f*/x^s) or 63 (x^s f/f*)")
        ->check(CLI::IsMember({61, 63}));
    cmd_fibre->add_option("--table", fb.table, "record table CSV for the verdict");
    cmd_fibre->add_option("--threads", fb.threads);

    struct AsArgs {
        FieldArgs fa;
        int64_t s = 0;
        std::string f, table;
        int threads = 1;
    } as;
    auto* cmd_as = app.add_subcommand("count-as", "Artin-Schreier curve y^q + y = f f*/x^s");
    add_field_opts(cmd_as, as.fa);
    cmd_as->add_option("--s", as.s)->required();
    cmd_as->add_option("--f", as.f)->required();
    cmd_as->add_option("--table", as.table, "record table CSV for the verdict");
    cmd_as->add_option("--threads", as.threads);

    struct RecordsArgs {
        std::string table;
        int64_t q = 0, g = -1, points = -1;
    } re;
    auto* cmd_records = app.add_subcommand("records", "validate a record table / classify a count");
    cmd_records->add_option("--table", re.table)->required();
    cmd_records->add_option("--q", re.q, "field size the curve lives over (q^2 for our curves)");
    cmd_records->add_option("--g", re.g);
    cmd_records->add_option("--points", re.points);

    struct SearchArgs {
        SearchConfig cfg;
        std::string family = "thm42";
        std::string qs;
        std::string out, format = "csv";
        std::string cursor;
        bool resume = false;
    } se;
    auto* cmd_search = app.add_subcommand("search", "parameter sweep over a curve family");
    cmd_search->add_option("--family", se.family,
                           "thm41|thm51|thm42|prop43|prop44|fibre61|fibre63|as");
    cmd_search->add_option("--q", se.qs, "comma-separated prime powers")->required();
    cmd_search->add_option("--dmax", se.cfg.dmax, "degree cap for f");
    cmd_search->add_flag("--exhaustive-f", se.cfg.exhaustive_f, "all monic f, not just x^d+b");
    cmd_search->add_option("--m-min", se.cfg.m_min);
    cmd_search->add_option("--m-max", se.cfg.m_max);
    cmd_search->add_option("--s-min", se.cfg.s_min);
    cmd_search->add_option("--s-max", se.cfg.s_max);
    cmd_search->add_option("--table", se.cfg.record_table_path, "record table CSV");
    cmd_search->add_option("--threads", se.cfg.threads);
    cmd_search->add_option("--min-verdict", se.cfg.min_verdict_rank,
                           "0 all, 1 many-points, 2 meets/new-entry, 3 new-record");
    cmd_search->add_option("--out", se.out, "output path (default stdout)");
    cmd_search->add_option("--format", se.format)->check(CLI::IsMember({"csv", "json"}));
    cmd_search->add_option("--cursor", se.cursor, "checkpoint file for resumable sweeps");
    cmd_search->add_flag("--resume", se.resume, "skip cells already recorded in the cursor file");

    struct ReproArgs {
        std::string table;
        std::string fixtures = "data/tables";
        int threads = 1;
    } rp;
    auto* cmd_repro = app.add_subcommand("reproduce", "recompute a source table and diff");
    cmd_repro->add_option("--table", rp.table, "table id (4.5 ... 6.4) or 'all'")->required();
    cmd_repro->add_option("--fixtures", rp.fixtures, "fixtures directory");
    cmd_repro->add_option("--threads", rp.threads);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_field->parsed()) {
            const Tower& tw = resolve_tower(fa_field);
            std::cout << field_header_json(tw).dump(2) << std::endl;
            return 0;
        }
        if (cmd_count->parsed()) {
            if (!ca.batch.empty()) return run_batch_count(ca.batch, ca.table, ca.threads);
            const Tower& tw = resolve_tower(ca.fa);
            KummerCurve c =
                reciprocal_kummer(tw, ca.m, ca.s, int(ca.eps), int(ca.lam), parse_poly(tw.base(), ca.f));
            return emit_report(tw, curve_json_single(c), count_points(c, ca.threads), ca.table);
        }
        if (cmd_genus->parsed()) {
            const Tower& tw = resolve_tower(ga.fa);
            KummerCurve c =
                reciprocal_kummer(tw, ga.m, ga.s, int(ga.eps), int(ga.lam), parse_poly(tw.base(), ga.f));
            json j{{"schema", "genus/1"}, {"curve", curve_json_single(c)}, {"genus", curve_genus(c)}};
            std::cout << j.dump(2) << std::endl;
            return 0;
        }
        if (cmd_fibre->parsed()) {
            if (!fb.batch.empty()) return run_batch_fibre(fb.batch, fb.table, fb.threads);
            const Tower& tw = resolve_tower(fb.fa);
            if (fb.f1.empty() || fb.f2.empty() || fb.m1 == 0 || fb.m2 == 0)
                throw CLI::ValidationError("--m1/--s1/--f1/--m2/--s2/--f2 are required without --batch");
            FibreProduct fp = make_fibre_product(
                tw, fb.family == 61 ? FibreFamily::THM61 : FibreFamily::THM63, fb.m1, fb.s1,
                parse_poly(tw.base(), fb.f1), fb.m2, fb.s2, parse_poly(tw.base(), fb.f2));
            json curve{{"family", fb.family == 61 ? "fibre61" : "fibre63"},
                       {"m1", fb.m1},
                       {"s1", fb.s1},
                       {"f1", fb.f1},
                       {"m2", fb.m2},
                       {"s2", fb.s2},
                       {"f2", fb.f2}};
            if (!fp.hypothesis_notes.empty()) curve["hypothesis_notes"] = fp.hypothesis_notes;
            return emit_report(tw, std::move(curve), count_points_fibre(fp, fb.threads), fb.table);
        }
        if (cmd_as->parsed()) {
            const Tower& tw = resolve_tower(as.fa);
            ArtinSchreierCurve c = artin_schreier_curve(tw, as.s, parse_poly(tw.base(), as.f));
            json curve{{"family", "as"}, {"s", as.s}, {"f", as.f}};
            return emit_report(tw, std::move(curve), count_as(c, as.threads), as.table);
        }
        if (cmd_records->parsed()) {
            RecordTable table = RecordTable::load_csv(re.table);
            json j{{"schema", "records/1"}, {"rows", table.size()}};
            if (re.g >= 0 && re.points >= 0 && re.q > 0)
                j["verdict"] = verdict_json(classify(re.points, re.q, re.g, &table));
            std::cout << j.dump(2) << std::endl;
            return 0;
        }
        if (cmd_search->parsed()) {
            se.cfg.family = family_from_name(se.family);
            std::stringstream qs(se.qs);
            std::string tok;
            while (std::getline(qs, tok, ',')) se.cfg.qs.push_back(std::stoll(tok));
            std::optional<RecordTable> table = load_table_opt(se.cfg.record_table_path);
            ExportFormat fmt = se.format == "json" ? ExportFormat::JSON : ExportFormat::CSV;

            if (!se.cursor.empty()) {
                // resumable mode: one q cell at a time, appending after each
                if (se.out.empty()) throw CLI::ValidationError("--cursor needs --out");
                size_t start_cell = 0;
                if (se.resume) {
                    std::ifstream cin_(se.cursor);
                    if (cin_) {
                        json j = json::parse(cin_, nullptr, false);
                        if (!j.is_discarded()) start_cell = j.value("next_cell", size_t(0));
                    }
                }
                std::ofstream out(se.out, start_cell > 0 ? std::ios::app : std::ios::trunc);
                for (size_t cell = start_cell; cell < se.cfg.qs.size(); ++cell) {
                    SearchConfig one = se.cfg;
                    one.qs = {se.cfg.qs[cell]};
                    auto rows = run_search(one, table ? &*table : nullptr);
                    std::stringstream tmp;
                    export_rows(tmp, rows, fmt);
                    std::string text = tmp.str();
                    if (cell == 0) out << text;
                    else out << text.substr(text.find('\n') + 1); // drop the repeated header
                    out.flush();
                    std::ofstream cur(se.cursor, std::ios::trunc);
                    cur << json{{"next_cell", cell + 1}}.dump() << "\n";
                }
                return 0;
            }

            auto rows = run_search(se.cfg, table ? &*table : nullptr);
            if (se.out.empty()) {
                export_rows(std::cout, rows, fmt);
            } else {
                std::ofstream out(se.out, std::ios::trunc);
                export_rows(out, rows, fmt);
            }
            return 0;
        }
        if (cmd_repro->parsed()) {
            std::vector<std::string> ids =
                rp.table == "all" ? known_table_ids() : std::vector<std::string>{rp.table};
            bool all_ok = true;
            for (const auto& id : ids) {
                TableCheck tc = reproduce_table(id, rp.fixtures, rp.threads);
                for (const auto& r : tc.rows) {
                    std::cout << (r.ok ? "ok   " : "DIFF ") << "table " << id << " q=" << r.row.q
                              << " f1=" << r.row.f1;
                    if (!r.row.f2.empty()) std::cout << " f2=" << r.row.f2;
                    std::cout << " expected (g=" << r.row.genus << ", N=" << r.row.points
                              << ") got (g=" << r.got_genus << ", N=" << r.got_points << ")";
                    if (r.xi_multiplier != 1) std::cout << " [xi^k -> xi^" << r.xi_multiplier << "k]";
                    if (!r.ok && !r.note.empty()) std::cout << " note: " << r.note;
                    std::cout << "\n";
                }
                std::cout << "table " << id << ": " << (tc.ok ? "reproduced" : "DIFFERS") << "\n";
                all_ok = all_ok && tc.ok;
            }
            return all_ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
