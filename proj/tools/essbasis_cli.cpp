// Command-line front end. Talks to the library exclusively through essbasis.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "essbasis/essbasis.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;

// Thrown to unwind with a status from the library.
struct LibraryFailure {
  eb_status status;
  std::string message;
};

void check(eb_status s) {
  if (s != EB_OK) throw LibraryFailure{s, eb_last_error()};
}

struct SetDeleter {
  void operator()(eb_set* s) const { eb_set_free(s); }
};
struct PlanDeleter {
  void operator()(eb_plan* p) const { eb_plan_free(p); }
};
using SetPtr = std::unique_ptr<eb_set, SetDeleter>;
using PlanPtr = std::unique_ptr<eb_plan, PlanDeleter>;

std::string take(char* s) {
  std::string out(s);
  eb_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LibraryFailure{EB_ERR_IO, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw LibraryFailure{EB_ERR_IO, "cannot write '" + out_path + "'"};
  out << text;
}

SetPtr load_set(const std::string& path) {
  eb_set* s = nullptr;
  const std::string text = read_file(path);
  const eb_status st = eb_set_parse(text.c_str(), &s);
  if (st != EB_OK) throw LibraryFailure{st, path + ": " + eb_last_error()};
  return SetPtr(s);
}

PlanPtr load_plan(const std::string& path) {
  eb_plan* p = nullptr;
  const std::string text = read_file(path);
  const eb_status st = eb_plan_parse(text.c_str(), &p);
  if (st != EB_OK) throw LibraryFailure{st, path + ": " + eb_last_error()};
  return PlanPtr(p);
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

void apply_budget_from_env() {
  const char* v = std::getenv("ESSBASIS_MEMORY_BUDGET_BITS");
  if (v == nullptr || *v == '\0') return;
  char* end = nullptr;
  const unsigned long long bits = std::strtoull(v, &end, 10);
  if (*end != '\0' || bits == 0)
    throw LibraryFailure{EB_ERR_INVALID_ARGUMENT, "ESSBASIS_MEMORY_BUDGET_BITS must be a positive integer"};
  eb_set_memory_budget_bits(bits);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Additive bases: sumsets, essential subsets, primorial bounds and the devolved-basis construction"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::string out_path;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a block plan of a basis without essentialities");
  uint32_t gen_h = 2;
  size_t gen_blocks = 1;
  gen->add_option("--h", gen_h, "Order of the basis (>= 2)")->required();
  gen->add_option("--blocks", gen_blocks, "Number of progression blocks")->required();
  gen->add_option("-o,--output", out_path, "Output file (default stdout)");

  // sumset
  auto* sum = app.add_subcommand("sumset", "Compute the h-fold sumset of a set");
  std::string set_path;
  uint32_t sum_h = 2;
  uint64_t sum_limit = 0;
  bool sum_json = false;
  sum->add_option("--set", set_path, "Set file (text or JSON)")->required();
  sum->add_option("--h", sum_h, "Number of summands")->required();
  sum->add_option("--limit", sum_limit, "Truncation limit of the result")->required();
  sum->add_flag("--json", sum_json, "Write the result in JSON run format");
  sum->add_option("-o,--output", out_path, "Output file (default stdout)");

  // basis-check
  auto* basis = app.add_subcommand("basis-check", "Check that [lo, hi] lies in hA");
  uint32_t basis_h = 2;
  uint64_t basis_lo = 0, basis_hi = 0;
  basis->add_option("--set", set_path, "Set file (text or JSON)")->required();
  basis->add_option("--h", basis_h, "Order")->required();
  basis->add_option("--lo", basis_lo, "Window start")->required();
  basis->add_option("--hi", basis_hi, "Window end")->required();

  // essential
  auto* ess = app.add_subcommand("essential", "Find essential subsets of bounded size");
  uint32_t ess_k = 1;
  uint64_t ess_cutoff = 0, ess_head = UINT64_MAX, ess_max_prime = 0;
  std::vector<uint64_t> ess_subset;
  ess->add_option("--set", set_path, "Set file (text or JSON)")->required();
  ess->add_option("--k", ess_k, "Maximum subset size");
  ess->add_option("--cutoff", ess_cutoff, "Ignore members below this value when measuring gaps");
  ess->add_option("--head-bound", ess_head, "Largest element a candidate may contain (default limit/2)");
  ess->add_option("--max-prime", ess_max_prime, "Only search residue classes of primes up to this");
  ess->add_option("--subset", ess_subset, "Test this one subset instead of searching")->delimiter(',');
  ess->add_option("-o,--output", out_path, "Output file (default stdout)");

  // bound
  auto* bound = app.add_subcommand("bound", "Upper bound on the number of essential subsets");
  std::vector<uint64_t> bound_args;
  bool bound_table = false;
  std::string bound_mode = "fixed-h";
  uint64_t bound_fixed = 2;
  std::vector<uint64_t> bound_samples;
  bound->add_option("k_h", bound_args, "k h")->expected(0, 2);
  bound->add_flag("--table", bound_table, "Print a TSV table over a parameter sweep");
  bound->add_option("--mode", bound_mode, "fixed-h (sweep k) or fixed-k (sweep h)")
      ->check(CLI::IsMember({"fixed-h", "fixed-k"}));
  bound->add_option("--fixed", bound_fixed, "Value of the fixed parameter");
  bound->add_option("--samples", bound_samples, "Ascending sweep values")->delimiter(',');
  bound->add_option("-o,--output", out_path, "Output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Verify the basis claims on a plan file");
  std::string plan_path;
  std::vector<int> claims{1, 2};
  size_t upto = 1;
  verify->add_option("--plan", plan_path, "Plan JSON file")->required();
  verify->add_option("--claims", claims, "Claims to check (1 = order-h basis, 2 = J_n is unavoidable)")
      ->delimiter(',')
      ->check(CLI::IsMember({1, 2}));
  verify->add_option("--upto", upto, "Check n = 1..N")->required();
  verify->add_option("-o,--output", out_path, "Output file (default stdout)");

  // probe
  auto* probe = app.add_subcommand("probe", "Bounded checks of the infinite properties");
  probe->require_subcommand(1);
  auto* e4 = probe->add_subcommand("e4", "Find m progression blocks inside c + dZ");
  uint32_t probe_h = 2;
  uint64_t e4_c = 0, e4_d = 2, probe_m = 1, e4_budget = 100;
  e4->add_option("--h", probe_h, "Order (ignored with --plan)");
  e4->add_option("--plan", plan_path, "Start from this plan file");
  e4->add_option("--c", e4_c, "Residue")->required();
  e4->add_option("--d", e4_d, "Modulus")->required();
  e4->add_option("--m", probe_m, "Required number of blocks");
  e4->add_option("--max-blocks", e4_budget, "Progression-block budget");

  auto* dev = probe->add_subcommand("devolved", "Count plan elements per residue class after removals");
  std::vector<std::string> dev_probes, dev_removals;
  std::string dev_limit;
  dev->add_option("--plan", plan_path, "Plan JSON file")->required();
  dev->add_option("--probe", dev_probes, "Residue classes as c:d")->delimiter(',');
  dev->add_option("--remove", dev_removals, "Elements removed from the basis")->delimiter(',');
  dev->add_option("--m", probe_m, "Required elements per class");
  dev->add_option("--limit", dev_limit, "Only count elements up to this value")->required();

  auto* growth = probe->add_subcommand("growth", "log(p_n#) / (n log n)");
  std::vector<size_t> growth_n;
  growth->add_option("--n", growth_n, "Values of n (>= 2)")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    apply_budget_from_env();

    if (gen->parsed()) {
      eb_plan* raw = nullptr;
      check(eb_plan_new(gen_h, &raw));
      PlanPtr plan(raw);
      check(eb_plan_extend(plan.get(), gen_blocks));
      char* text = nullptr;
      check(eb_plan_to_json(plan.get(), &text));
      emit(take(text), out_path);
      return kExitOk;
    }

    if (sum->parsed()) {
      auto set = load_set(set_path);
      eb_set* raw = nullptr;
      check(eb_sumset(set.get(), sum_h, sum_limit, &raw));
      SetPtr result(raw);
      char* text = nullptr;
      check(sum_json ? eb_set_to_json(result.get(), &text) : eb_set_to_text(result.get(), &text));
      emit(take(text), out_path);
      return kExitOk;
    }

    if (basis->parsed()) {
      auto set = load_set(set_path);
      int ok = 0;
      check(eb_is_basis_window(set.get(), basis_h, basis_lo, basis_hi, &ok));
      std::cout << "{\"h\":" << basis_h << ",\"lo\":" << basis_lo << ",\"hi\":" << basis_hi
                << ",\"basis\":" << bool_str(ok) << "}\n";
      return ok ? kExitOk : kExitFalse;
    }

    if (ess->parsed()) {
      auto set = load_set(set_path);
      char* text = nullptr;
      if (!ess_subset.empty()) {
        check(eb_is_essential_json(set.get(), ess_subset.data(), ess_subset.size(), ess_cutoff, &text));
      } else {
        check(eb_essential_subsets_json(set.get(), ess_k, ess_cutoff, ess_head, ess_max_prime, &text));
      }
      emit(take(text), out_path);
      return kExitOk;
    }

    if (bound->parsed()) {
      char* text = nullptr;
      if (bound_table) {
        if (bound_samples.empty()) bound_samples = {1, 2, 4, 8, 16};
        const auto mode = bound_mode == "fixed-h" ? EB_PROBE_FIXED_H : EB_PROBE_FIXED_K;
        check(eb_probe_tsv(mode, bound_fixed, bound_samples.data(), bound_samples.size(), &text));
      } else {
        if (bound_args.size() != 2) {
          std::cerr << "bound: expected k and h (or --table)\n";
          return kExitUsage;
        }
        check(eb_bound_json(bound_args[0], bound_args[1], &text));
      }
      emit(take(text), out_path);
      return kExitOk;
    }

    if (verify->parsed()) {
      auto plan = load_plan(plan_path);
      uint32_t h = 0;
      check(eb_plan_order(plan.get(), &h));
      std::ostringstream out;
      out << "{\"h\":" << h << ",\"results\":[";
      bool all = true;
      bool first = true;
      for (size_t n = 1; n <= upto; ++n) {
        for (int claim : claims) {
          int ok = 0;
          check(claim == 1 ? eb_verify_claim1(plan.get(), n, &ok) : eb_verify_claim2(plan.get(), n, &ok));
          all = all && ok;
          out << (first ? "" : ",") << "{\"claim\":" << claim << ",\"n\":" << n
              << ",\"holds\":" << bool_str(ok) << "}";
          first = false;
        }
      }
      out << "],\"all_hold\":" << bool_str(all) << "}\n";
      emit(out.str(), out_path);
      return all ? kExitOk : kExitFalse;
    }

    if (e4->parsed()) {
      PlanPtr plan;
      if (!plan_path.empty()) {
        plan = load_plan(plan_path);
      } else {
        eb_plan* raw = nullptr;
        check(eb_plan_new(probe_h, &raw));
        plan.reset(raw);
      }
      eb_e4_status status{};
      uint64_t hits = 0, examined = 0;
      check(eb_verify_e4(plan.get(), e4_c, e4_d, probe_m, e4_budget, &status, &hits, &examined));
      const bool ok = status == EB_E4_SATISFIED;
      std::cout << "{\"c\":" << e4_c << ",\"d\":" << e4_d << ",\"m\":" << probe_m
                << ",\"hits\":" << hits << ",\"blocks_examined\":" << examined << ",\"status\":\""
                << (ok ? "satisfied" : "budget_exhausted") << "\"}\n";
      return ok ? kExitOk : kExitFalse;
    }

    if (dev->parsed()) {
      auto plan = load_plan(plan_path);
      std::vector<uint64_t> flat;
      for (const auto& p : dev_probes) {
        const auto colon = p.find(':');
        if (colon == std::string::npos) {
          std::cerr << "probe devolved: --probe entries must look like c:d\n";
          return kExitUsage;
        }
        flat.push_back(std::stoull(p.substr(0, colon)));
        flat.push_back(std::stoull(p.substr(colon + 1)));
      }
      std::vector<const char*> removals;
      for (const auto& r : dev_removals) removals.push_back(r.c_str());
      int ok = 0;
      check(eb_devolved_spot_check(plan.get(), removals.data(), removals.size(), flat.data(),
                                   flat.size() / 2, probe_m, dev_limit.c_str(), &ok));
      std::cout << "{\"devolved_spot_check\":" << bool_str(ok) << "}\n";
      return ok ? kExitOk : kExitFalse;
    }

    if (growth->parsed()) {
      std::cout << "n\tratio\n";
      for (size_t n : growth_n) {
        double r = 0;
        check(eb_growth_ratio(n, &r));
        char buf[64];
        std::snprintf(buf, sizeof buf, "%zu\t%.12f\n", n, r);
        std::cout << buf;
      }
      return kExitOk;
    }
  } catch (const LibraryFailure& f) {
    std::cerr << "error (" << eb_status_name(f.status) << "): " << f.message << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
