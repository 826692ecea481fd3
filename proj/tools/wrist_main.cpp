#include <iostream>

#include <CLI11.hpp>

#include "wrist/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"WRIST testbed simulator and analysis toolkit"};

  wrist::CliOptions opt;
  app.add_option("--mode", opt.mode,
                 "simulate | analyze | reproduce-paper | montecarlo | validate")
      ->required();
  app.add_option("--seed", opt.seed, "random seed (full determinism per seed)");
  app.add_option("--config", opt.config_path, "key = value configuration file");
  app.add_option("--out", opt.out_dir, "output directory for tables and logs");
  app.add_option("--in", opt.in_path, "input participant table (defaults to bundled data)");
  app.add_option("--runs", opt.runs, "montecarlo sessions per modality");
  app.add_option("--participants", opt.participants, "simulated cohort size");

  CLI11_PARSE(app, argc, argv);
  return wrist::run_cli(opt, std::cout, std::cerr);
}
