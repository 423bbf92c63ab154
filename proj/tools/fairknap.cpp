// fairknap: solve, certify, generate, and stress-test budget-constrained
// fair division instances.
//
// Exit codes: 0 success, 1 input error, 2 enumeration cap exceeded,
// 3 negative fairness verdict, 4 internal invariant failure.

#include <CLI11.hpp>

#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "fairknap/campaign.hpp"
#include "fairknap/forge.hpp"
#include "fairknap/greedy.hpp"
#include "fairknap/json_io.hpp"
#include "fairknap/verify.hpp"
#include "fairknap/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCap = 2;
constexpr int kExitVerdict = 3;
constexpr int kExitInternal = 4;

using fairknap::Json;

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const fairknap::EnumerationCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

fairknap::Instance load_validated_instance(const std::string& path) {
  fairknap::Instance inst = fairknap::load_instance(path);
  if (auto violations = fairknap::validate_instance(inst); !violations.empty())
    throw std::invalid_argument(path + ": " + fairknap::describe(violations));
  return inst;
}

void emit(const Json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << fairknap::dump(doc);
  } else {
    fairknap::save_json(doc, out_path);
  }
}

int cmd_solve(const std::string& input, bool with_trace, std::optional<int> verify_k,
              const std::string& out_path) {
  const fairknap::Instance inst = load_validated_instance(input);
  const fairknap::GreedyResult result = fairknap::densest_greedy(inst);
  fairknap::ReportOptions opts;
  opts.include_trace = with_trace;
  opts.solver_produced = true;
  const fairknap::Report report = fairknap::build_report(inst, result.allocation, &result.trace,
                                                         opts);
  emit(report.json, out_path);
  if (verify_k && report.max_efcount > *verify_k) {
    std::cerr << "allocation is not EF" << *verify_k << " (worst efcount "
              << report.max_efcount << ")\n";
    return kExitVerdict;
  }
  return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& allocation_path, int k) {
  const fairknap::Instance inst = load_validated_instance(instance_path);
  const fairknap::Allocation alloc =
      fairknap::allocation_from_json(fairknap::load_json(allocation_path), inst.num_agents());
  if (auto err = fairknap::partition_error(alloc, inst))
    throw std::invalid_argument(allocation_path + ": " + *err);

  fairknap::ReportOptions opts;
  opts.solver_produced = false;
  const fairknap::Report report = fairknap::build_report(inst, alloc, nullptr, opts);
  std::cout << "feasible: " << (report.feasible ? "yes" : "no") << "\n";
  for (const auto& w : report.json["witnesses"]) {
    std::cout << "envier " << w["envier"] << " vs agent " << w["envied"] << ": efcount "
              << w["efcount"] << ", subset " << w["subset"].dump() << ", size "
              << w["size_under_envier"] << "\n";
  }
  const bool holds = report.max_efcount <= k;
  std::cout << "EF" << k << ": " << (holds ? "holds" : "fails") << " (worst efcount "
            << report.max_efcount << ")\n";
  return holds ? kExitOk : kExitVerdict;
}

struct GenFlags {
  std::string family = "general";
  int n = 2;
  int m = 4;
  std::uint64_t seed = 0;
  std::string eps = "1/10";
  std::string value_min = "1/12", value_max = "10";
  std::string size_min = "1/12", size_max = "6";
  std::string budget_min = "1/2", budget_max = "8";
  std::string out;
};

int cmd_gen(const GenFlags& flags) {
  fairknap::Instance inst;
  if (flags.family == "tightness") {
    inst = fairknap::tightness_instance(fairknap::parse_rational(flags.eps));
  } else {
    const auto family = fairknap::family_from_name(flags.family);
    if (!family) throw std::invalid_argument("unknown family \"" + flags.family + "\"");
    fairknap::GenConfig cfg;
    cfg.family = *family;
    cfg.n = flags.n;
    cfg.m = flags.m;
    cfg.seed = flags.seed;
    cfg.value_range = {fairknap::parse_rational(flags.value_min),
                       fairknap::parse_rational(flags.value_max)};
    cfg.size_range = {fairknap::parse_rational(flags.size_min),
                      fairknap::parse_rational(flags.size_max)};
    cfg.budget_range = {fairknap::parse_rational(flags.budget_min),
                        fairknap::parse_rational(flags.budget_max)};
    inst = fairknap::random_instance(cfg);
  }
  emit(fairknap::instance_to_json(inst), flags.out);
  return kExitOk;
}

int cmd_campaign(const std::string& suite_name, int trials, std::uint64_t seed) {
  const auto suite = fairknap::suite_from_name(suite_name);
  if (!suite) throw std::invalid_argument("unknown suite \"" + suite_name + "\"");
  const fairknap::CampaignResult result = fairknap::run_campaign(*suite, trials, seed);
  std::cout << "suite=" << suite_name << " trials=" << result.trials
            << " passed=" << result.passed << " failed=" << result.failed
            << " skipped=" << result.skipped << "\n";
  if (result.failed > 0) {
    std::cout << "first failure (trial " << result.first_failed_trial
              << "): " << result.first_failure << "\n";
    if (!result.first_counterexample.empty())
      std::cout << result.first_counterexample;
    return kExitVerdict;
  }
  if (result.skipped > 0) return kExitCap;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained fair division: density-greedy solver and EFk certifier"};
  app.set_version_flag("--version", std::string(fairknap::kVersion));
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance and write a certification report");
  std::string solve_input, solve_out;
  bool solve_trace = false;
  std::optional<int> solve_verify_k;
  solve->add_option("input", solve_input, "Instance JSON file")->required();
  solve->add_flag("--trace", solve_trace, "Include the step-by-step trace in the report");
  solve->add_option("--verify-k", solve_verify_k,
                    "Exit 3 unless the allocation is EFk for this k");
  solve->add_option("--out", solve_out, "Report path (default: stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Check EFk for a given allocation");
  std::string verify_instance, verify_allocation;
  int verify_k = 2;
  verify->add_option("instance", verify_instance, "Instance JSON file")->required();
  verify->add_option("allocation", verify_allocation, "Allocation JSON file")->required();
  verify->add_option("--k", verify_k, "Envy-freeness relaxation level (default 2)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  GenFlags gen_flags;
  gen->add_option("--family", gen_flags.family,
                  "general|proportional|equal_size|cardinality|agent_specific|tightness");
  gen->add_option("--n", gen_flags.n, "Number of real agents");
  gen->add_option("--m", gen_flags.m, "Number of goods");
  gen->add_option("--seed", gen_flags.seed, "Generator seed");
  gen->add_option("--eps", gen_flags.eps, "Tightness parameter in (0, 1/2)");
  gen->add_option("--value-min", gen_flags.value_min, "Value range lower bound");
  gen->add_option("--value-max", gen_flags.value_max, "Value range upper bound");
  gen->add_option("--size-min", gen_flags.size_min, "Size range lower bound");
  gen->add_option("--size-max", gen_flags.size_max, "Size range upper bound");
  gen->add_option("--budget-min", gen_flags.budget_min, "Budget range lower bound");
  gen->add_option("--budget-max", gen_flags.budget_max, "Budget range upper bound");
  gen->add_option("--out", gen_flags.out, "Instance path (default: stdout)");

  // campaign
  auto* campaign = app.add_subcommand("campaign", "Run a randomized property campaign");
  std::string campaign_suite;
  int campaign_trials = 100;
  std::uint64_t campaign_seed = 0;
  campaign->add_option("--suite", campaign_suite,
                       "theorem1|theorem2|theorem3|theorem4|theorem5|lemmas|appendixA")
      ->required();
  campaign->add_option("--trials", campaign_trials, "Number of trials (default 100)");
  campaign->add_option("--seed", campaign_seed, "Campaign seed (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*solve)
    return run_guarded([&] { return cmd_solve(solve_input, solve_trace, solve_verify_k,
                                              solve_out); });
  if (*verify)
    return run_guarded([&] { return cmd_verify(verify_instance, verify_allocation, verify_k); });
  if (*gen) return run_guarded([&] { return cmd_gen(gen_flags); });
  if (*campaign)
    return run_guarded([&] { return cmd_campaign(campaign_suite, campaign_trials,
                                                 campaign_seed); });
  return kExitInput;
}
