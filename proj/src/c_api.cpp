#include "essbasis/essbasis.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "essbasis/bounds.hpp"
#include "essbasis/construction.hpp"
#include "essbasis/core_sets.hpp"
#include "essbasis/error.hpp"
#include "essbasis/essentiality.hpp"
#include "essbasis/io.hpp"

struct eb_set {
  essbasis::IntegerSet value;
};

struct eb_plan {
  essbasis::BlockPlan value;
};

namespace {

thread_local std::string t_last_error;

eb_status to_status(essbasis::ErrorCode code) {
  switch (code) {
    case essbasis::ErrorCode::kInvalidArgument: return EB_ERR_INVALID_ARGUMENT;
    case essbasis::ErrorCode::kParse: return EB_ERR_PARSE;
    case essbasis::ErrorCode::kOverflow: return EB_ERR_OVERFLOW;
    case essbasis::ErrorCode::kBudget: return EB_ERR_BUDGET;
    case essbasis::ErrorCode::kCoverage: return EB_ERR_COVERAGE;
    case essbasis::ErrorCode::kIo: return EB_ERR_IO;
  }
  return EB_ERR_INTERNAL;
}

// Runs f, translating exceptions into status codes.
template <typename F>
eb_status guarded(F&& f) {
  t_last_error.clear();
  try {
    f();
    return EB_OK;
  } catch (const essbasis::Error& e) {
    t_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return EB_ERR_BUDGET;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return EB_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr)
    essbasis::fail(essbasis::ErrorCode::kInvalidArgument, std::string(name) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

essbasis::BigInt parse_big(const char* s) {
  essbasis::BigInt out;
  const std::string str(s);
  if (str.empty() || str.find_first_not_of("0123456789") != std::string::npos ||
      out.set_str(str, 10) != 0)
    essbasis::fail(essbasis::ErrorCode::kParse, "expected a decimal integer, got '" + str + "'");
  return out;
}

}  // namespace

extern "C" {

const char* eb_last_error(void) { return t_last_error.c_str(); }

const char* eb_status_name(eb_status status) {
  switch (status) {
    case EB_OK: return "ok";
    case EB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case EB_ERR_PARSE: return "parse error";
    case EB_ERR_OVERFLOW: return "overflow";
    case EB_ERR_BUDGET: return "memory budget exceeded";
    case EB_ERR_COVERAGE: return "insufficient plan coverage";
    case EB_ERR_IO: return "i/o error";
    case EB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void eb_string_free(char* s) { std::free(s); }

eb_status eb_set_parse(const char* text, eb_set** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new eb_set{essbasis::parse_set_auto(text)};
  });
}

eb_status eb_set_from_members(uint64_t limit, const uint64_t* members, size_t count,
                              eb_set** out) {
  return guarded([&] {
    if (count > 0) require(members, "members");
    require(out, "out");
    *out = new eb_set{essbasis::IntegerSet::from_members(
        limit, std::span<const uint64_t>(members, count))};
  });
}

eb_status eb_set_to_text(const eb_set* set, char** out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = dup_string(essbasis::format_set_text(set->value));
  });
}

eb_status eb_set_to_json(const eb_set* set, char** out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = dup_string(essbasis::format_set_json(set->value));
  });
}

eb_status eb_set_limit(const eb_set* set, uint64_t* out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = set->value.limit();
  });
}

eb_status eb_set_size(const eb_set* set, uint64_t* out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = set->value.size();
  });
}

eb_status eb_set_contains(const eb_set* set, uint64_t x, int* out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = set->value.contains(x) ? 1 : 0;
  });
}

void eb_set_free(eb_set* set) { delete set; }

eb_status eb_sumset(const eb_set* set, uint32_t h, uint64_t limit, eb_set** out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    if (limit >= essbasis::memory_budget_bits())
      essbasis::fail(essbasis::ErrorCode::kBudget, "sumset window exceeds memory budget");
    *out = new eb_set{essbasis::h_fold_sumset(set->value, h, limit)};
  });
}

eb_status eb_is_basis_window(const eb_set* set, uint32_t h, uint64_t lo, uint64_t hi, int* out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = essbasis::is_basis_window(set->value, h, lo, hi) ? 1 : 0;
  });
}

eb_status eb_representations_json(const eb_set* set, uint64_t target, uint64_t size_bound,
                                  char** out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = dup_string(essbasis::format_representations_json(
        essbasis::enumerate_representations(set->value, target, size_bound)));
  });
}

eb_status eb_progression_gap(const eb_set* set, uint64_t tail_cutoff, uint64_t* out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = essbasis::progression_gap(set->value, {tail_cutoff});
  });
}

eb_status eb_is_essential_json(const eb_set* set, const uint64_t* subset, size_t count,
                               uint64_t tail_cutoff, char** out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    if (count > 0) require(subset, "subset");
    const auto report = essbasis::is_essential_subset(
        set->value, std::span<const uint64_t>(subset, count), {tail_cutoff});
    *out = dup_string(essbasis::format_report_json(report));
  });
}

eb_status eb_essential_subsets_json(const eb_set* set, uint32_t k, uint64_t tail_cutoff,
                                    uint64_t head_bound, uint64_t max_prime, char** out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    essbasis::EnumerateParams params;
    params.gap.tail_cutoff = tail_cutoff;
    if (head_bound != UINT64_MAX) params.head_bound = head_bound;
    params.max_prime = max_prime;
    *out = dup_string(
        essbasis::format_reports_json(essbasis::enumerate_essential_subsets(set->value, k, params)));
  });
}

eb_status eb_pairwise_coprime(const uint64_t* gaps, size_t count, int* out) {
  return guarded([&] {
    if (count > 0) require(gaps, "gaps");
    require(out, "out");
    *out = essbasis::pairwise_coprime(std::span<const uint64_t>(gaps, count)) ? 1 : 0;
  });
}

eb_status eb_primorial_string(size_t n, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup_string(essbasis::primorial(n).get_str());
  });
}

eb_status eb_bound_json(uint64_t k, uint64_t h, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup_string(essbasis::format_bound_json(essbasis::phi_bound(k, h)));
  });
}

eb_status eb_growth_ratio(size_t n, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = essbasis::primorial_growth_ratio(n);
  });
}

eb_status eb_probe_tsv(eb_probe_mode mode, uint64_t fixed_value, const uint64_t* samples,
                       size_t count, char** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) require(samples, "samples");
    if (mode != EB_PROBE_FIXED_H && mode != EB_PROBE_FIXED_K)
      essbasis::fail(essbasis::ErrorCode::kInvalidArgument, "unknown probe mode");
    const auto m = mode == EB_PROBE_FIXED_H ? essbasis::ProbeMode::kFixedHGrowingK
                                            : essbasis::ProbeMode::kFixedKGrowingH;
    const auto rows =
        essbasis::asymptotic_probe(m, fixed_value, std::span<const uint64_t>(samples, count));
    *out = dup_string(essbasis::format_probe_tsv(m, rows));
  });
}

eb_status eb_plan_new(uint32_t h, eb_plan** out) {
  return guarded([&] {
    require(out, "out");
    *out = new eb_plan{essbasis::BlockPlan::create(h)};
  });
}

eb_status eb_plan_extend(eb_plan* plan, size_t progressions) {
  return guarded([&] {
    require(plan, "plan");
    plan->value.extend_to(progressions);
  });
}

eb_status eb_plan_parse(const char* json, eb_plan** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new eb_plan{essbasis::parse_plan_json(json)};
  });
}

eb_status eb_plan_to_json(const eb_plan* plan, char** out) {
  return guarded([&] {
    require(plan, "plan");
    require(out, "out");
    *out = dup_string(essbasis::format_plan_json(plan->value));
  });
}

eb_status eb_plan_order(const eb_plan* plan, uint32_t* out) {
  return guarded([&] {
    require(plan, "plan");
    require(out, "out");
    *out = plan->value.h();
  });
}

eb_status eb_plan_progression_count(const eb_plan* plan, size_t* out) {
  return guarded([&] {
    require(plan, "plan");
    require(out, "out");
    *out = plan->value.progression_count();
  });
}

eb_status eb_plan_interval_count(const eb_plan* plan, size_t* out) {
  return guarded([&] {
    require(plan, "plan");
    require(out, "out");
    *out = plan->value.interval_count();
  });
}

void eb_plan_free(eb_plan* plan) { delete plan; }

eb_status eb_plan_materialize(const eb_plan* plan, uint64_t limit, eb_set** out) {
  return guarded([&] {
    require(plan, "plan");
    require(out, "out");
    *out = new eb_set{essbasis::materialize(plan->value, limit)};
  });
}

eb_status eb_verify_claim1(const eb_plan* plan, size_t n, int* out) {
  return guarded([&] {
    require(plan, "plan");
    require(out, "out");
    *out = essbasis::verify_claim1(plan->value, n) ? 1 : 0;
  });
}

eb_status eb_verify_claim2(const eb_plan* plan, size_t n, int* out) {
  return guarded([&] {
    require(plan, "plan");
    require(out, "out");
    *out = essbasis::verify_claim2(plan->value, n) ? 1 : 0;
  });
}

eb_status eb_verify_e4(eb_plan* plan, uint64_t c, uint64_t d, uint64_t m, uint64_t max_blocks,
                       eb_e4_status* status, uint64_t* hits, uint64_t* blocks_examined) {
  return guarded([&] {
    require(plan, "plan");
    require(status, "status");
    const auto r = essbasis::verify_e4_bounded(plan->value, c, d, m, max_blocks);
    *status = r.status == essbasis::E4Status::kSatisfied ? EB_E4_SATISFIED : EB_E4_BUDGET_EXHAUSTED;
    if (hits) *hits = r.hits;
    if (blocks_examined) *blocks_examined = r.blocks_examined;
  });
}

eb_status eb_devolved_spot_check(const eb_plan* plan, const char* const* removals,
                                 size_t removal_count, const uint64_t* probes, size_t probe_count,
                                 uint64_t m, const char* limit, int* out) {
  return guarded([&] {
    require(plan, "plan");
    require(limit, "limit");
    require(out, "out");
    if (removal_count > 0) require(removals, "removals");
    if (probe_count > 0) require(probes, "probes");
    std::vector<essbasis::BigInt> removed;
    removed.reserve(removal_count);
    for (size_t i = 0; i < removal_count; ++i) {
      require(removals[i], "removal");
      removed.push_back(parse_big(removals[i]));
    }
    std::vector<essbasis::ResidueProbe> ps;
    for (size_t i = 0; i < probe_count; ++i) ps.push_back({probes[2 * i], probes[2 * i + 1]});
    *out = essbasis::devolved_spot_check(plan->value, removed, ps, m, parse_big(limit)) ? 1 : 0;
  });
}

uint64_t eb_memory_budget_bits(void) { return essbasis::memory_budget_bits(); }

void eb_set_memory_budget_bits(uint64_t bits) { essbasis::set_memory_budget_bits(bits); }

}  // extern "C"
