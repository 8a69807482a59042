#ifndef RECIP_REPORT_HPP
#define RECIP_REPORT_HPP

#include <json.hpp>

#include "recip/kummer.hpp"

namespace recip {

/// (p, n, modulus, xi) of both fields of the tower, so any external system
/// can reproduce the exact field presentation behind the numbers
nlohmann::json field_header_json(const Tower& tw);

nlohmann::json verdict_json(const Verdict& v);

/// schema "count-report/1": field header, curve description, genus, points,
/// maximal, bounds and (when a record table was supplied) the verdict
nlohmann::json report_json(const Tower& tw, nlohmann::json curve, const CountReport& r);

void attach_verdict(CountReport& r, const Tower& tw, const RecordTable* table);

} // namespace recip

#endif
