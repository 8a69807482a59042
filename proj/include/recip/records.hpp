#ifndef RECIP_RECORDS_HPP
#define RECIP_RECORDS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace recip {

/// Serre bound q + 1 + g*floor(2*sqrt(q)), exact integer arithmetic.
int64_t serre_upper(int64_t q, int64_t g);

/// L(q,g) = floor((U - q - 1)/sqrt(2)) + q + 1. The floor is computed with a
/// 10^9/1414213562 integer estimate and corrected by the exact cross check
/// 2*r^2 <= (U-q-1)^2, so the result is bit-stable. Requires U >= q+1.
int64_t many_points_threshold(int64_t q, int64_t g, int64_t U);

enum class VerdictKind { NONE, MANY_POINTS, MEETS_RECORD, NEW_ENTRY, NEW_RECORD };
const char* verdict_name(VerdictKind k);
int verdict_rank(VerdictKind k);

struct Verdict {
    VerdictKind kind = VerdictKind::NONE;
    int64_t L = 0;
    int64_t U = 0;
    bool no_table_fallback = false;
};

/// One (q, g) row of an ingested record table: best known lower bound for the
/// number of points (may be absent) and the table's upper bound.
struct RecordEntry {
    std::optional<int64_t> lower;
    int64_t upper = 0;
};

class RecordTable {
  public:
    RecordTable() = default;
    /// CSV rows `q,g,lower,upper`, empty lower allowed; '#' comments skipped
    static RecordTable load_csv(const std::string& path);
    static RecordTable from_csv_text(const std::string& text);

    void set(int64_t q, int64_t g, std::optional<int64_t> lower, int64_t upper);
    const RecordEntry* find(int64_t q, int64_t g) const;
    size_t size() const { return rows_.size(); }

  private:
    std::map<std::pair<int64_t, int64_t>, RecordEntry> rows_;
};

/// The record taxonomy relative to a table row for (q, g):
///  - row with lower bound: NEW_RECORD if points > lower, MEETS_RECORD if
///    equal, else MANY_POINTS when points >= L(q,g) from the row's upper.
///  - row without lower bound: NEW_ENTRY when points >= L(q,g).
///  - no row: MANY_POINTS test against the Serre upper bound, flagged as a
///    no-table fallback.
Verdict classify(int64_t points, int64_t q, int64_t g, const RecordTable* table);

} // namespace recip

#endif
