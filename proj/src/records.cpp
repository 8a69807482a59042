#include "recip/records.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "recip/field.hpp"

namespace recip {

int64_t serre_upper(int64_t q, int64_t g) {
    if (q < 2 || g < 0) throw std::invalid_argument("serre_upper: bad arguments");
    return q + 1 + g * int64_t(isqrt_u64(uint64_t(4 * q)));
}

int64_t many_points_threshold(int64_t q, int64_t g, int64_t U) {
    (void)g;
    if (U < q + 1) throw std::invalid_argument("many_points_threshold: U below q+1");
    int64_t x = U - q - 1;
    int64_t r = int64_t((__int128(x) * 1000000000) / 1414213562);
    // one-ulp guard: r = floor(x / sqrt(2))  <=>  2 r^2 <= x^2 < 2 (r+1)^2
    while (2 * __int128(r + 1) * (r + 1) <= __int128(x) * x) ++r;
    while (r > 0 && 2 * __int128(r) * r > __int128(x) * x) --r;
    return r + q + 1;
}

const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::NONE: return "NONE";
        case VerdictKind::MANY_POINTS: return "MANY_POINTS";
        case VerdictKind::MEETS_RECORD: return "MEETS_RECORD";
        case VerdictKind::NEW_ENTRY: return "NEW_ENTRY";
        case VerdictKind::NEW_RECORD: return "NEW_RECORD";
    }
    return "?";
}

int verdict_rank(VerdictKind k) {
    switch (k) {
        case VerdictKind::NONE: return 0;
        case VerdictKind::MANY_POINTS: return 1;
        case VerdictKind::MEETS_RECORD: return 2;
        case VerdictKind::NEW_ENTRY: return 2;
        case VerdictKind::NEW_RECORD: return 3;
    }
    return 0;
}

void RecordTable::set(int64_t q, int64_t g, std::optional<int64_t> lower, int64_t upper) {
    if (upper > serre_upper(q, g))
        throw std::invalid_argument("record table row (" + std::to_string(q) + "," + std::to_string(g) +
                                    "): upper bound exceeds the Serre bound");
    if (lower && *lower > upper)
        throw std::invalid_argument("record table row (" + std::to_string(q) + "," + std::to_string(g) +
                                    "): lower bound exceeds upper bound");
    rows_[{q, g}] = RecordEntry{lower, upper};
}

const RecordEntry* RecordTable::find(int64_t q, int64_t g) const {
    auto it = rows_.find({q, g});
    return it == rows_.end() ? nullptr : &it->second;
}

RecordTable RecordTable::from_csv_text(const std::string& text) {
    RecordTable out;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (first && line.rfind("q,", 0) == 0) { first = false; continue; }
        first = false;
        std::istringstream row(line);
        std::string qs, gs, ls, us;
        if (!std::getline(row, qs, ',') || !std::getline(row, gs, ',') ||
            !std::getline(row, ls, ',') || !std::getline(row, us))
            throw std::invalid_argument("malformed record table row: " + line);
        std::optional<int64_t> lower;
        if (!ls.empty()) lower = std::stoll(ls);
        out.set(std::stoll(qs), std::stoll(gs), lower, std::stoll(us));
    }
    return out;
}

RecordTable RecordTable::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open record table: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_csv_text(buf.str());
}

Verdict classify(int64_t points, int64_t q, int64_t g, const RecordTable* table) {
    Verdict v;
    const RecordEntry* row = table ? table->find(q, g) : nullptr;
    if (!row) {
        v.U = serre_upper(q, g);
        v.L = many_points_threshold(q, g, v.U);
        v.no_table_fallback = true;
        v.kind = points >= v.L ? VerdictKind::MANY_POINTS : VerdictKind::NONE;
        return v;
    }
    v.U = row->upper;
    v.L = many_points_threshold(q, g, v.U);
    if (row->lower) {
        if (points > *row->lower) v.kind = VerdictKind::NEW_RECORD;
        else if (points == *row->lower) v.kind = VerdictKind::MEETS_RECORD;
        else v.kind = points >= v.L ? VerdictKind::MANY_POINTS : VerdictKind::NONE;
    } else {
        v.kind = points >= v.L ? VerdictKind::NEW_ENTRY : VerdictKind::NONE;
    }
    return v;
}

} // namespace recip
