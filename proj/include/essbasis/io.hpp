#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "essbasis/bounds.hpp"
#include "essbasis/construction.hpp"
#include "essbasis/core_sets.hpp"
#include "essbasis/essentiality.hpp"
#include "essbasis/integer_set.hpp"

namespace essbasis {

// One decimal integer per line, strictly ascending; '#' starts a comment.
// A "# limit: N" line fixes the window, otherwise the window ends at the
// largest member.
IntegerSet parse_set_text(std::string_view text);
std::string format_set_text(const IntegerSet& set);

// {"limit": N, "runs": [[first, last, step], ...]}
IntegerSet parse_set_json(std::string_view text);
std::string format_set_json(const IntegerSet& set);

// Picks the JSON reader when the first non-blank character is '{'.
IntegerSet parse_set_auto(std::string_view text);

// {"h": h, "blocks": [{"kind": "I", ...} | {"kind": "J", ...}, ...]}.
// The trailing interval implied by the last progression is omitted. Values
// beyond 64 bits are written as decimal strings.
std::string format_plan_json(const BlockPlan& plan);
BlockPlan parse_plan_json(std::string_view text);

std::string format_report_json(const EssentialityReport& report);
std::string format_reports_json(const std::vector<EssentialityReport>& reports);
std::string format_bound_json(const BoundResult& result);
std::string format_probe_tsv(ProbeMode mode, const std::vector<ProbeRow>& rows);
std::string format_representations_json(const std::vector<Representation>& reps);

}  // namespace essbasis
