#ifndef RECIP_SEARCH_HPP
#define RECIP_SEARCH_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "recip/artin_schreier.hpp"
#include "recip/fibre.hpp"
#include "recip/kummer.hpp"

namespace recip {

/// process-wide tower cache keyed by q = p^n; thread-safe
const Tower& tower_for(uint64_t q);

enum class Family { THM41, THM51, THM42, PROP43, PROP44, FIBRE61, FIBRE63, AS };
const char* family_name(Family f);
Family family_from_name(const std::string& s);

/// One result row in the source tables' column layout. Single-cover families use
/// m1/s1/f1; fibre rows fill both components.
struct ReportRow {
    Family family = Family::THM41;
    int64_t q = 0;
    int64_t m1 = 0, s1 = 0;
    int64_t m2 = 0, s2 = 0;
    std::string f1, f2;
    int64_t genus = 0;
    int64_t points = 0;
    std::string olb; // table lower bound or L(q,g), empty when unknown
    std::string verdict;
    bool maximal = false;
    // how many other rows of the same sweep share (q, genus, points): these
    // are suspected isomorphs, reported rather than dropped
    int64_t isomorphs = 0;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct SearchConfig {
    Family family = Family::THM42;
    std::vector<int64_t> qs;
    int64_t dmax = 1;
    bool exhaustive_f = false; // enumerate all monic f with f(0) != 0 up to dmax
    int64_t m_min = 2, m_max = 0; // 0: every divisor of q+1 (resp. q-1)
    int64_t s_min = 0, s_max = -1; // -1: up to m-1
    std::string record_table_path;
    int threads = 1;
    int min_verdict_rank = 0;
};

/// deterministic sweep: rows come back in lexicographic parameter order
/// regardless of the thread count
std::vector<ReportRow> run_search(const SearchConfig& cfg, const RecordTable* table);

enum class ExportFormat { CSV, JSON };
void export_rows(std::ostream& out, const std::vector<ReportRow>& rows, ExportFormat fmt);
std::vector<ReportRow> import_rows_csv(std::istream& in);

/// ---- source-table fixtures ----

struct FixtureRow {
    std::string family;
    int64_t q = 0;
    int64_t m1 = 0, s1 = 0, m2 = 0, s2 = 0;
    std::string f1, f2;
    int64_t genus = 0;
    int64_t points = 0;
    std::string olb;
    std::string kind;   // meet | new_entry | new_record
    std::string dagger; // "1", "0", or "opt" (printed dagger, optimal but below Hasse-Weil)
};

struct RowCheck {
    FixtureRow row;
    int64_t got_genus = 0;
    int64_t got_points = 0;
    bool got_maximal = false;
    int64_t xi_multiplier = 1; // which primitive-element convention matched
    bool ok = false;
    std::string note;
};

struct TableCheck {
    std::string table_id;
    std::vector<RowCheck> rows;
    bool ok = false;
};

std::vector<std::string> known_table_ids();
std::vector<FixtureRow> load_fixture(const std::string& table_id, const std::string& fixtures_dir);
/// recompute every row of the fixture and diff (g, #X, maximality);
/// rows whose polynomials mention xi pass when any primitive-element
/// convention in the xi-power orbit reproduces them
TableCheck reproduce_table(const std::string& table_id, const std::string& fixtures_dir,
                           int threads = 1);

/// recompute one fixture row; exposed for tests and the acceptance suite
RowCheck check_fixture_row(const FixtureRow& row, int threads = 1);

} // namespace recip

#endif
