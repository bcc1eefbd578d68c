#include "lcache/experiment.hpp"

#include <cstdio>
#include <fstream>

#include <stdexcept>

#include "doctest.h"
#include "lcache/lemma.hpp"

using namespace lcache;

namespace {

void write_file(const char* path, const char* body) {
  std::ofstream out(path);
  out << body;
}

}  // namespace

TEST_CASE("config parsing covers all key forms") {
  write_file("tmp_cfg.txt",
             "# comment\n"
             "workload = omega(8,2,6)\n"
             "policy = LMARKER\n"
             "policy = COMBINER(LNONMARKER, RANDOM_MARKER, 1.5)\n"
             "policy = PREDICTIVE_MARKER(3)\n"
             "seeds = 4\n"
             "out = tmp_out.csv\n");
  const ExperimentConfig config = parse_config("tmp_cfg.txt");
  CHECK(std::holds_alternative<OmegaWorkload>(config.workload));
  CHECK(std::get<OmegaWorkload>(config.workload).k == 8);
  REQUIRE(config.policies.size() == 3);
  CHECK(config.policies[1].kind == PolicyKind::Combiner);
  CHECK(config.policies[1].gamma == doctest::Approx(1.5));
  CHECK(config.policies[2].tau == 3);
  CHECK(config.seeds.size() == 4);
  CHECK(config.output_path == "tmp_out.csv");
  std::remove("tmp_cfg.txt");
}

TEST_CASE("config errors carry file and line") {
  write_file("tmp_cfg.txt", "workload = omega(8,2,6)\nbogus_key = 3\n");
  CHECK_THROWS_WITH_AS(parse_config("tmp_cfg.txt"), doctest::Contains("tmp_cfg.txt:2"),
                       std::runtime_error);
  write_file("tmp_cfg.txt", "policy = FANCY\n");
  CHECK_THROWS_WITH_AS(parse_config("tmp_cfg.txt"), doctest::Contains(":1:"),
                       std::runtime_error);
  std::remove("tmp_cfg.txt");
}

TEST_CASE("omega workloads reject noise overrides") {
  ExperimentConfig config;
  config.workload = OmegaWorkload{8, 2, 6};
  config.policies = {PolicySpec::lru()};
  config.seeds = {0};
  config.noise = NoiseModel::additive_uniform(2);
  CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
}

TEST_CASE("run_experiment rows are deterministic for any job count") {
  ExperimentConfig config;
  config.workload = OmegaWorkload{8, 2, 8};
  config.policies = {PolicySpec::random_marker(0), PolicySpec::lmarker(0),
                     PolicySpec::combiner(PolicySpec::lnonmarker(0),
                                          PolicySpec::random_marker(0))};
  config.seeds = {0, 1, 2, 3, 4};
  const std::string csv1 = rows_to_csv(run_experiment(config, {1, 0, false}), false);
  const std::string csv4 = rows_to_csv(run_experiment(config, {4, 0, false}), false);
  const std::string csv4b = rows_to_csv(run_experiment(config, {4, 0, false}), false);
  CHECK(csv1 == csv4);
  CHECK(csv4 == csv4b);
  CHECK(csv1.find("runtime_ms") == std::string::npos);
}

TEST_CASE("blind follow rows have ratio exactly 1 under perfect predictions") {
  ExperimentConfig config;
  config.workload = UniformWorkload{30, 800};
  config.k = 6;
  config.policies = {PolicySpec::blind_follow()};
  config.seeds = {0, 1, 2};
  for (const ResultRow& row : run_experiment(config)) {
    CHECK(row.misses == row.opt_cost);
    CHECK(row.ratio == doctest::Approx(1.0));
    CHECK(row.eta == 0);
    // Lemma 2.2 holds within each row
    CHECK(row.clean_L <= 2 * row.opt_cost);
    CHECK(row.opt_cost <= row.clean_L);
  }
}

TEST_CASE("random marker mean ratio on the adversarial family is classical") {
  ExperimentConfig config;
  config.workload = OmegaWorkload{32, 1, 50};
  config.policies = {PolicySpec::random_marker(0)};
  for (int s = 0; s < 20; ++s) config.seeds.push_back(s);
  double mean = 0.0;
  for (const ResultRow& row : run_experiment(config)) mean += row.ratio;
  mean /= static_cast<double>(config.seeds.size());
  CHECK(mean >= 1.0);
  CHECK(mean <= 2.0 * harmonic(32) + 1.0);
}

TEST_CASE("sweep reference columns match the closed forms") {
  ExperimentConfig config;
  config.workload = UniformWorkload{16, 400};
  config.k = 4;
  config.policies = {PolicySpec::lmarker(0)};
  config.seeds = {0, 1};
  config.noise_grid = {NoiseModel::additive_uniform(0), NoiseModel::additive_uniform(4000)};
  const auto rows = sweep_eta(config);
  REQUIRE(rows.size() == 4);
  for (const SweepRow& s : rows) {
    if (s.noise == "additive_uniform_0") {
      CHECK(s.row.eta == 0);
      CHECK(s.lmarker_ref == doctest::Approx(4.0));
      CHECK(s.combiner_ref == doctest::Approx(36.0));
    } else {
      // saturated regime: reference tops out at 4 + 2 H(k) = 4 + 25/6
      CHECK(s.row.eta_over_opt * 2.0 >= 4.0);
      CHECK(s.lmarker_ref == doctest::Approx(4.0 + 2.0 * harmonic(4)));
      CHECK(s.lmarker_ref == doctest::Approx(8.0 + 1.0 / 6.0));
    }
  }
  const std::string csv = sweep_to_csv(rows, false);
  CHECK(csv.find("lmarker_ref") != std::string::npos);
}

TEST_CASE("lower bound rows carry the floor reference") {
  ExperimentConfig config;
  config.k = 8;
  config.n = 6;
  config.t_list = {1, 8};
  config.policies = {PolicySpec::random_marker(0)};
  config.seeds = {0, 1, 2};
  const auto rows = lower_bound_experiment(config);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].floor_ref ==
        doctest::Approx(0.5 * 6 * 1 * (harmonic(8) - harmonic(1))));
  CHECK(rows[1].floor_ref == doctest::Approx(0.0));  // t = k
  CHECK(rows[1].pass);
  const std::string csv = lower_bound_to_csv(rows);
  CHECK(csv.find("floor_ref") != std::string::npos);
}

TEST_CASE("verify suite runs clean at reduced scale") {
  VerifyScale scale;
  scale.inversion_max_n = 4;
  scale.inversion_box = 4;
  scale.inversion_fuzz = 2000;
  scale.inversion_fuzz_max_n = 60;
  scale.geom_trials = 3000;
  const auto rows = run_verify_suite(0, scale);
  CHECK(rows.size() >= 2 + 9);
  for (const VerifyRow& row : rows) {
    CAPTURE(row.suite + "/" + row.item);
    CHECK(row.pass);
  }
}

TEST_CASE("workload ids are csv-safe") {
  CHECK(workload_id(OmegaWorkload{32, 1, 50}) == "omega_k32_t1_n50");
  CHECK(workload_id(UniformWorkload{100, 2000}) == "uniform_u100_len2000");
  CHECK(workload_id(ZipfWorkload{100, 2000, 0.9}) == "zipf_u100_len2000_e0.9");
  for (const std::string& id :
       {workload_id(FileWorkload{"dir/some trace,file.txt"}),
        workload_id(ZipfWorkload{10, 10, 1.25})})
    CHECK(id.find(',') == std::string::npos);
}

TEST_CASE("sweep plot data groups by policy") {
  ExperimentConfig config;
  config.workload = UniformWorkload{16, 300};
  config.k = 4;
  config.policies = {PolicySpec::lmarker(0), PolicySpec::random_marker(0)};
  config.seeds = {0, 1};
  config.noise_grid = {NoiseModel::additive_uniform(0), NoiseModel::additive_uniform(10)};
  const std::string plot = sweep_plot_data(sweep_eta(config));
  CHECK(plot.find("# LMARKER") != std::string::npos);
  CHECK(plot.find("# RANDOM_MARKER") != std::string::npos);
}
