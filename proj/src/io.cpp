#include "essbasis/io.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

#include "essbasis/error.hpp"

namespace essbasis {
namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_u64(std::string_view s, uint64_t& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

ordered_json big_to_json(const BigInt& x) {
  if (x >= 0 && x.fits_ulong_p()) return static_cast<uint64_t>(x.get_ui());
  return x.get_str();
}

BigInt big_from_json(const json& v, const char* field) {
  if (v.is_number_unsigned()) return BigInt(static_cast<unsigned long>(v.get<uint64_t>()));
  if (v.is_number_integer()) {
    const auto i = v.get<int64_t>();
    if (i < 0) fail(ErrorCode::kParse, std::string("plan field '") + field + "' is negative");
    return BigInt(static_cast<unsigned long>(i));
  }
  if (v.is_string()) {
    BigInt out;
    const auto s = v.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos ||
        out.set_str(s, 10) != 0)
      fail(ErrorCode::kParse, std::string("plan field '") + field + "' is not a decimal integer");
    return out;
  }
  fail(ErrorCode::kParse, std::string("plan field '") + field + "' must be an integer");
}

uint64_t u64_field(const json& obj, const char* field) {
  if (!obj.contains(field)) fail(ErrorCode::kParse, std::string("missing field '") + field + "'");
  const json& v = obj.at(field);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0))
    fail(ErrorCode::kParse, std::string("field '") + field + "' must be a non-negative integer");
  return v.get<uint64_t>();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
}

std::string subset_key(const std::vector<uint64_t>& xs) {
  std::string out = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out + "]";
}

ordered_json report_object(const EssentialityReport& r) {
  ordered_json witnesses = ordered_json::object();
  for (const auto& [q, g] : r.minimality_witnesses) witnesses[subset_key(q)] = g;
  return {{"subset", r.subset}, {"gap", r.gap}, {"essential", r.essential},
          {"witnesses", witnesses}};
}

}  // namespace

IntegerSet parse_set_text(std::string_view text) {
  std::vector<uint64_t> members;
  bool has_limit = false;
  uint64_t limit = 0;
  size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    auto where = [&] { return "line " + std::to_string(line_no) + ": "; };

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      const auto comment = trim(line.substr(hash + 1));
      if (comment.starts_with("limit:")) {
        if (!parse_u64(trim(comment.substr(6)), limit))
          fail(ErrorCode::kParse, where() + "malformed limit directive");
        has_limit = true;
      }
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    uint64_t x = 0;
    if (!parse_u64(line, x))
      fail(ErrorCode::kParse, where() + "expected a non-negative decimal integer, got '" +
                                  std::string(line) + "'");
    if (!members.empty() && x <= members.back())
      fail(ErrorCode::kParse, where() + "members must be strictly ascending");
    members.push_back(x);
  }
  if (!has_limit) limit = members.empty() ? 0 : members.back();
  if (!members.empty() && members.back() > limit)
    fail(ErrorCode::kParse, "member " + std::to_string(members.back()) + " exceeds declared limit");
  return IntegerSet::from_members(limit, members);
}

std::string format_set_text(const IntegerSet& set) {
  std::string out = "# limit: " + std::to_string(set.limit()) + "\n";
  set.for_each([&](uint64_t x) {
    out += std::to_string(x);
    out += '\n';
    return true;
  });
  return out;
}

IntegerSet parse_set_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) fail(ErrorCode::kParse, "set JSON must be an object");
  const uint64_t limit = u64_field(doc, "limit");
  if (!doc.contains("runs") || !doc["runs"].is_array())
    fail(ErrorCode::kParse, "set JSON needs a 'runs' array");
  std::vector<Run> runs;
  size_t i = 0;
  for (const json& r : doc["runs"]) {
    const std::string where = "run " + std::to_string(i++) + ": ";
    if (!r.is_array() || r.size() != 3)
      fail(ErrorCode::kParse, where + "expected [first, last, step]");
    for (const json& v : r)
      if (!v.is_number_unsigned()) fail(ErrorCode::kParse, where + "entries must be non-negative integers");
    Run run{r[0].get<uint64_t>(), r[1].get<uint64_t>(), r[2].get<uint64_t>()};
    if (run.step == 0 || run.first > run.last || run.last > limit)
      fail(ErrorCode::kParse, where + "needs step >= 1 and first <= last <= limit");
    runs.push_back(run);
  }
  return IntegerSet::from_runs(limit, runs);
}

std::string format_set_json(const IntegerSet& set) {
  ordered_json runs = ordered_json::array();
  for (const Run& r : set.runs()) runs.push_back({r.first, r.last, r.step});
  ordered_json doc = {{"limit", set.limit()}, {"runs", runs}};
  return doc.dump() + "\n";
}

IntegerSet parse_set_auto(std::string_view text) {
  const auto b = text.find_first_not_of(" \t\r\n");
  if (b != std::string_view::npos && text[b] == '{') return parse_set_json(text);
  return parse_set_text(text);
}

std::string format_plan_json(const BlockPlan& plan) {
  ordered_json blocks = ordered_json::array();
  const auto& all = plan.blocks();
  // The last interval follows from the progression before it.
  const size_t shown = all.size() > 1 ? all.size() - 1 : all.size();
  for (size_t i = 0; i < shown; ++i) {
    const Block& b = all[i];
    if (b.is_interval()) {
      blocks.push_back({{"kind", "I"}, {"r", big_to_json(b.interval().r)},
                        {"R", big_to_json(b.interval().R)}});
    } else {
      const auto& j = b.progression();
      blocks.push_back({{"kind", "J"}, {"s", big_to_json(j.s)}, {"S", big_to_json(j.S)},
                        {"c", j.c}, {"d", j.d}, {"q", j.q}, {"t", j.triple.t}});
    }
  }
  ordered_json doc = {{"h", plan.h()}, {"blocks", blocks}};
  return doc.dump(2) + "\n";
}

BlockPlan parse_plan_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) fail(ErrorCode::kParse, "plan JSON must be an object");
  const uint64_t h = u64_field(doc, "h");
  if (h > UINT32_MAX) fail(ErrorCode::kParse, "plan order h too large");
  if (!doc.contains("blocks") || !doc["blocks"].is_array())
    fail(ErrorCode::kParse, "plan JSON needs a 'blocks' array");
  std::vector<Block> blocks;
  for (const json& b : doc["blocks"]) {
    const uint64_t n = blocks.size() / 2 + 1;
    if (!b.is_object() || !b.contains("kind") || !b["kind"].is_string())
      fail(ErrorCode::kParse, "block " + std::to_string(blocks.size()) + " needs a 'kind'");
    const auto kind = b["kind"].get<std::string>();
    if (kind == "I") {
      if (!b.contains("r") || !b.contains("R")) fail(ErrorCode::kParse, "interval needs r and R");
      blocks.push_back({n, IntervalBlock{big_from_json(b["r"], "r"), big_from_json(b["R"], "R")}});
    } else if (kind == "J") {
      for (const char* f : {"s", "S"})
        if (!b.contains(f)) fail(ErrorCode::kParse, std::string("progression needs ") + f);
      ProgressionBlock j;
      j.s = big_from_json(b["s"], "s");
      j.S = big_from_json(b["S"], "S");
      j.c = u64_field(b, "c");
      j.d = u64_field(b, "d");
      j.q = u64_field(b, "q");
      j.triple = {j.c, j.d, u64_field(b, "t")};
      blocks.push_back({n, std::move(j)});
    } else {
      fail(ErrorCode::kParse, "unknown block kind '" + kind + "'");
    }
  }
  return BlockPlan::from_blocks(static_cast<uint32_t>(h), std::move(blocks));
}

std::string format_report_json(const EssentialityReport& report) {
  return report_object(report).dump() + "\n";
}

std::string format_reports_json(const std::vector<EssentialityReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_object(r));
  return arr.dump(2) + "\n";
}

std::string format_bound_json(const BoundResult& r) {
  ordered_json doc = {{"k", r.k},
                      {"h", r.h},
                      {"phi", r.phi},
                      {"primorial_at_phi", big_to_json(r.primorial_at_phi)},
                      {"first_failure", r.first_failure}};
  return doc.dump() + "\n";
}

std::string format_probe_tsv(ProbeMode mode, const std::vector<ProbeRow>& rows) {
  std::ostringstream out;
  out << (mode == ProbeMode::kFixedHGrowingK ? "k" : "h") << "\tphi\n";
  for (const auto& row : rows) out << row.parameter << '\t' << row.phi << '\n';
  return out.str();
}

std::string format_representations_json(const std::vector<Representation>& reps) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reps) arr.push_back(r.parts);
  return arr.dump() + "\n";
}

}  // namespace essbasis
