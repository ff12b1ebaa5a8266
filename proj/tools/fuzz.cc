// Type-safety fuzzing campaign over generated well-typed programs.
#include <algorithm>
#include <future>
#include <iostream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mgtlc/proptest.h"

int main(int argc, char **argv) {
  CLI::App app{"Generate well-typed programs of type Code T and check that metaevaluation is type safe."};
  std::size_t seeds = 10000;
  std::uint64_t fuel = 10000;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  mgtlc::GenConfig cfg;
  cfg.seed = 1;
  app.add_option("--seeds", seeds, "Number of programs")->capture_default_str();
  app.add_option("--size", cfg.max_size, "Maximum AST size")->capture_default_str();
  app.add_option("--fuel", fuel, "Evaluation fuel per program")->capture_default_str();
  app.add_option("--star-bias", cfg.star_bias, "Probability of a ★ annotation")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--type-depth", cfg.type_depth, "Depth bound on generated types")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::vector<std::future<mgtlc::FuzzSummary>> parts;
  std::size_t chunk = (seeds + jobs - 1) / jobs;
  for (std::size_t first = 0; first < seeds; first += chunk) {
    std::size_t count = std::min(chunk, seeds - first);
    parts.push_back(std::async(std::launch::async, [=] { return mgtlc::fuzz(cfg, first, count, fuel); }));
  }
  mgtlc::FuzzSummary total;
  for (auto &p : parts) mgtlc::merge(total, p.get());

  nlohmann::json report{
      {"seed", cfg.seed},
      {"starBias", cfg.star_bias},
      {"maxSize", cfg.max_size},
      {"fuel", fuel},
      {"programs", total.programs},
      {"safeValue", total.safe_value},
      {"safeBlame", total.safe_blame},
      {"timeout", total.timeout},
      {"runtimeFailure", total.runtime_failure},
      {"violations", total.violations},
      {"steps", total.steps},
      {"maxSizeSeen", total.max_size_seen},
      {"witnesses", total.witnesses},
  };
  std::cout << report.dump(2) << '\n';
  return total.violations == 0 ? 0 : 1;
}
