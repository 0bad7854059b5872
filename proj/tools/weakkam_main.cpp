#include <weakkam/errors.hpp>
#include <weakkam/experiments.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"discounted weak-KAM laboratory on the circle"};
  app.get_formatter()->column_width(28);

  std::string experiment;
  std::string config_path;
  std::vector<double> lambdas;
  int n = -1;
  std::string out_dir;
  long seed = -1;

  app.add_option("experiment", experiment,
                 "vanishing_plus | vanishing_minus | nonuniqueness_demo | pendulum_uniqueness | "
                 "remark_counterexample | flow_portrait")
      ->required();
  app.add_option("--config", config_path, "config file (key = value with sections)");
  app.add_option("--lambda", lambdas, "discount values, overrides the config");
  app.add_option("--n", n, "grid size, overrides the config");
  app.add_option("--out", out_dir, "output directory for report.json, CSVs and plot.gp");
  app.add_option("--seed", seed, "RNG seed, overrides the config");

  CLI11_PARSE(app, argc, argv);

  try {
    weakkam::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = weakkam::parse_config_file(config_path);
    cfg.experiment = experiment;
    if (!lambdas.empty()) cfg.lambdas = lambdas;
    if (n >= 0) cfg.n = n;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed >= 0) cfg.seed = unsigned(seed);

    weakkam::ExperimentReport rep = weakkam::run_experiment(cfg);
    if (!cfg.out_dir.empty()) {
      weakkam::write_report(rep, cfg.out_dir);
      std::printf("wrote %s/report.json (%zu tables)\n", cfg.out_dir.c_str(),
                  rep.tables.size());
    }
    for (const weakkam::Verdict& v : rep.verdicts)
      std::printf("[%s] %s/%s  measured %.3g  bound %.3g\n", v.pass ? "PASS" : "FAIL",
                  v.module.c_str(), v.invariant.c_str(), v.measured, v.bound);
    for (const std::string& note : rep.notes) std::printf("note: %s\n", note.c_str());
    return rep.all_pass() ? 0 : 1;
  } catch (const weakkam::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
