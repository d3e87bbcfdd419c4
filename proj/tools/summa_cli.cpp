// summa: batch front end for the sequence-summability analyses.
//
//   summa run --config cfg.json --input seq.txt --output report.json [--csv]
//             [--seed <u64>] [--scale-N <int>] [--imax <int>]
//   summa generate <name> --n <int> [--seed <u64>] [--output file]
//
// Exit status: 0 holds, 1 fails, 2 inconclusive, >2 error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "summa/config.hpp"
#include "summa/corpus.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sequence summability analyses"};
  app.require_subcommand(1);

  std::string config_path, input_path, output_path;
  bool csv = false;
  std::uint64_t seed = 0;
  int scale_N = -1, imax = -1;

  CLI::App* run = app.add_subcommand("run", "run an analysis described by a config file");
  run->add_option("--config", config_path, "analysis config (json)")->required();
  run->add_option("--input", input_path, "sequence file, one number per line")->required();
  run->add_option("--output", output_path, "report destination (json)")->required();
  run->add_flag("--csv", csv, "also write diagnostic series as <output>.csv");
  run->add_option("--seed", seed, "seed override for sampling modes");
  run->add_option("--scale-N", scale_N, "window length override");
  run->add_option("--imax", imax, "family index truncation override");

  std::string gen_name, gen_output;
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("generate", "write a named corpus sequence");
  gen->add_option("name", gen_name, "corpus name")->required();
  gen->add_option("--n", gen_n, "sequence length")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--output", gen_output, "destination (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const summa::SequencePrefix s = summa::generate_corpus(gen_name, gen_n, gen_seed);
      std::ostream* out = &std::cout;
      std::ofstream file;
      if (!gen_output.empty()) {
        file.open(gen_output, std::ios::trunc);
        if (!file) throw summa::capability_error("cannot open '" + gen_output + "'");
        out = &file;
      }
      for (double v : s.values) {
        if (v == static_cast<double>(static_cast<long long>(v)))
          *out << static_cast<long long>(v) << "\n";
        else
          *out << summa::json(v).dump() << "\n";
      }
      return 0;
    }

    std::ifstream cfg_in(config_path);
    if (!cfg_in) throw summa::input_error("cannot open config '" + config_path + "'");
    summa::json raw = summa::json::parse(cfg_in);
    if (run->count("--seed")) raw["seed"] = seed;
    summa::AnalysisConfig cfg = summa::parse_config(raw);
    if (scale_N > 0) cfg.scale.N = scale_N;
    if (imax >= 0) cfg.scale.i_max = imax;

    summa::RunOutcome outcome = summa::run_analysis(cfg, input_path);
    summa::write_report_atomically(outcome.report, output_path);
    if (csv) summa::write_series_csv(outcome.report, output_path + ".csv");
    return outcome.exit_code;
  } catch (const summa::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const summa::capability_error& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 4;
  } catch (const summa::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
