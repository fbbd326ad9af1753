#include "helpers.hpp"

#include "presched/generators.hpp"
#include "presched/harness.hpp"

#include <sstream>

using namespace presched;
using namespace presched::test;

TEST_CASE("experiment rows and csv") {
  ExperimentConfig cfg;
  cfg.family = "greedy-killer";
  cfg.grid = {4, 8};
  cfg.schedulers = {"onl", "greedy"};
  auto rep = experiment_competitive(cfg);
  CHECK(rep.rows.size() == 4);
  CHECK(rep.aggregates.size() == 4);
  for (const auto& row : rep.rows) {
    CHECK(row.baseline > 0);
    CHECK(row.ratio > 0);
    if (row.scheduler == "greedy") CHECK(row.makespan >= Time{row.param} * row.param);
  }
  auto csv = report_csv(rep);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "family,m,d,n,seed,scheduler,makespan,baseline,ratio");
  int lines = 0;
  for (std::string line; std::getline(in, line);) lines += !line.empty();
  CHECK(lines == 4);
}

TEST_CASE("experiments are deterministic") {
  ExperimentConfig cfg;
  cfg.family = "gadget";
  cfg.grid = {3};
  cfg.trials = 3;
  cfg.seed = 5;
  CHECK(report_csv(experiment_competitive(cfg)) == report_csv(experiment_competitive(cfg)));
}

TEST_CASE("random family uses the oracle when small") {
  ExperimentConfig cfg;
  cfg.family = "random";
  cfg.grid = {6};
  cfg.trials = 3;
  auto rep = experiment_competitive(cfg);
  for (const auto& row : rep.rows) {
    CHECK(row.baseline_kind == "optimal");
    CHECK(row.ratio >= 1.0);
  }
}

TEST_CASE("unknown family or scheduler") {
  ExperimentConfig cfg;
  cfg.family = "nope";
  cfg.grid = {3};
  CHECK(code_of([&] { experiment_competitive(cfg); }) == ErrorCode::BadParams);
  CHECK(code_of([] { run_scheduler("fifo", gen_greedy_killer(2)); }) == ErrorCode::BadParams);
}

TEST_CASE("chains completed at the blocking sink") {
  auto g = gen_online_lb_gadget(3, 0, 4, 1);
  auto s = run_scheduler("onl", g);
  auto done = chains_completed_at_blocking(g, s);
  CHECK(done.size() == g.meta.gadgets.size());
  for (int c : done) {
    CHECK(c >= 1);
    CHECK(c <= 3);
  }
}
