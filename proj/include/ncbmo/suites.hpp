#ifndef NCBMO_SUITES_HPP
#define NCBMO_SUITES_HPP

#include <string>
#include <vector>

namespace ncbmo {

struct SuiteConfig {
  std::string suite;
  unsigned long long seed = 1;
  int samples = -1;  // -1 picks the suite default
  int n = -1;        // matrix size / N, -1 picks the suite default
  int dim = 1;
  double t_lo = 1e-3, t_hi = 1e3;
  int t_count = 60;

  std::string to_json() const;
  static SuiteConfig from_json(const std::string& text);
};

struct SuiteCheck {
  std::string name;
  std::string status;  // pass | fail | warn
  double measured = 0;
  double bound = 0;
  std::string units;
};

struct SuiteReport {
  std::string suite;
  std::string config_echo;  // serialized SuiteConfig
  std::vector<SuiteCheck> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (c.status == "fail") return false;
    return true;
  }
  std::string to_json() const;  // schema "ncbmo-report/1"
};

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace ncbmo

#endif
