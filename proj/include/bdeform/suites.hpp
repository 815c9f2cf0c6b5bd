#pragma once

#include <string>
#include <vector>

#include "bdeform/common.hpp"
#include "bdeform/script_i.hpp"

namespace bdeform::suites {

struct SuiteConfig {
  double b = 0.5;
  int N = 2;
  int L = 24;
  int M = 6;
  double tol = 0.0;  // > 0 replaces every suite's own tolerance
  scripti::Route route = scripti::Route::Auto;
  unsigned seed = 42;

  // DomainError on b <= -N/2, N outside [1,4], L < 4, M < 4 when N > 1, or tol < 0
  void validate() const;
};

struct SuiteResult {
  std::string suite;
  std::string paper_anchor;  // the identity being checked
  double max_err = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// every suite, sorted by name
const std::vector<std::string>& suite_names();
bool suite_exists(const std::string& name);
bool suite_applicable(const std::string& name, const SuiteConfig& cfg);
std::string suite_anchor(const std::string& name);
double suite_default_tol(const std::string& name);

// std::invalid_argument for an unknown name, DomainError when the suite does
// not apply to cfg.
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

// names empty: every applicable suite. Sorted by name.
std::vector<SuiteResult> run_suites(std::vector<std::string> names, const SuiteConfig& cfg);

}  // namespace bdeform::suites
