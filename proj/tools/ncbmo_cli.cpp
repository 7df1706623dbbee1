#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncbmo.h"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit(ncbmo_result* res, int rc, const std::string& output) {
  if (!res) {
    std::cerr << "error: " << ncbmo_last_error() << "\n";
    return 2;
  }
  const char* text = ncbmo_result_json(res);
  if (output.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(output);
    out << text << "\n";
  }
  ncbmo_result_free(res);
  return rc == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncbmo: numerical checks for semigroup BMO, Markov metrics, "
               "and transference at finite dimension"};
  app.require_subcommand(1);

  // verify <suite>
  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  std::string suite, tgrid, output, config_path;
  unsigned long long seed = 1;
  int samples = -1, n = -1, dim = 1, jobs = 0;
  verify->add_option("suite", suite, "suite name")->required();
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--samples", samples, "sample count override");
  verify->add_option("--n", n, "dimension/size override");
  verify->add_option("--dim", dim, "ambient dimension");
  verify->add_option("--t-grid", tgrid, "log:<lo>:<hi>:<count>");
  verify->add_option("--output", output, "report file (default stdout)");
  verify->add_option("--config", config_path, "JSON config file");
  verify->add_option("--jobs", jobs, "parallelism degree (advisory)");

  // bmo
  auto* bmo = app.add_subcommand("bmo", "semigroup BMO norm of a matrix");
  std::string bmo_input, bmo_semigroup, bmo_side = "column", bmo_out;
  bmo->add_option("--input", bmo_input, "matrix JSON file")->required();
  bmo->add_option("--semigroup", bmo_semigroup,
                  "semigroup spec JSON (file or inline)")
      ->required();
  bmo->add_option("--side", bmo_side, "column|row|max");
  bmo->add_option("--output", bmo_out, "report file");

  // qtorus <op>
  auto* qt = app.add_subcommand("qtorus", "twisted series operations");
  std::string qt_op, qt_input, qt_out;
  double qt_arg = 0;
  qt->add_option("op", qt_op, "trace|adjoint|heat|intertwine|gnsnorm")
      ->required();
  qt->add_option("--input", qt_input, "series JSON file")->required();
  qt->add_option("--arg", qt_arg, "t or box half-width");
  qt->add_option("--output", qt_out, "report file");

  // transfer
  auto* tr = app.add_subcommand("transfer", "L2 transference check");
  std::string tr_group, tr_kernel, tr_out;
  tr->add_option("--group", tr_group, "group name or table JSON file")
      ->required();
  tr->add_option("--kernel", tr_kernel, "kernel JSON file");
  tr->add_option("--output", tr_out, "report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  int rc = 2;
  try {
    ncbmo_result* res = nullptr;
    if (*verify) {
      nlohmann::json cfg = nlohmann::json::object();
      if (!config_path.empty()) cfg = nlohmann::json::parse(slurp(config_path));
      cfg["suite"] = suite;
      if (verify->count("--seed") || !cfg.contains("seed")) cfg["seed"] = seed;
      if (verify->count("--samples")) cfg["samples"] = samples;
      if (verify->count("--n")) cfg["n"] = n;
      if (verify->count("--dim")) cfg["dim"] = dim;
      if (!tgrid.empty()) {
        double lo, hi;
        int count;
        if (std::sscanf(tgrid.c_str(), "log:%lf:%lf:%d", &lo, &hi, &count) != 3) {
          std::cerr << "error: --t-grid expects log:<lo>:<hi>:<count>\n";
          return 2;
        }
        cfg["t_grid"] = {{"lo", lo}, {"hi", hi}, {"count", count}};
      }
      int code = ncbmo_run_suite(cfg.dump().c_str(), &res);
      rc = emit(res, code, output);
    } else if (*bmo) {
      std::string sg = bmo_semigroup.find('{') != std::string::npos
                           ? bmo_semigroup
                           : slurp(bmo_semigroup);
      int code = ncbmo_bmo(slurp(bmo_input).c_str(), sg.c_str(),
                           bmo_side.c_str(), &res);
      rc = emit(res, code, bmo_out);
    } else if (*qt) {
      int code =
          ncbmo_qtorus(qt_op.c_str(), slurp(qt_input).c_str(), qt_arg, &res);
      rc = emit(res, code, qt_out);
    } else if (*tr) {
      std::string g = tr_group.find(".json") != std::string::npos
                          ? slurp(tr_group)
                          : tr_group;
      std::string k = tr_kernel.empty() ? "" : slurp(tr_kernel);
      int code = ncbmo_transfer(g.c_str(), k.empty() ? nullptr : k.c_str(), &res);
      rc = emit(res, code, tr_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  std::cerr << "elapsed: " << dt.count() << "s\n";  // timing kept off reports
  return rc;
}
