#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tautres {

enum class Command { Integrate, Series, Oracle, Residue, Positivity, Selftest };

struct RunConfig {
  Command command = Command::Integrate;
  std::string input;     // JSON document (integrate, residue); file contents or stdin
  std::string out_path;  // empty: stdout
  bool decimal = false;
  std::optional<bool> prune;
  std::optional<std::string> convention;
  std::vector<std::pair<int, std::string>> q_poly;
  int threads = 0;

  // series
  std::string series_class = "segre";
  std::string class_json;  // custom-json
  int kmax = 4;
  int n = 2;
  int rank = 1;

  // series (optional numbers) and oracle
  std::string surface;
  std::string bundle;  // line degrees "1,2"; p1xp1 "1:0,0:1"; affine weights "lambda1,2*lambda2"
  int k = 2;
  std::string phi;
  bool contributions = false;

  // residue
  int bruteforce_truncation = -1;

  // positivity
  std::vector<int> n_values{1}, k_values{1, 2}, r_values{1};
  std::vector<std::string> phis;
  std::size_t monomial_cap = 10;
};

// Exit codes: 0 success, 2 spec error, 3 internal consistency failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace tautres
