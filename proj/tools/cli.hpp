#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyb/macdonald.hpp"

namespace dyb::cli {

using nlohmann::json;

inline constexpr const char* kSchema = "dyb-artifact/1";

/// Everything needed to reproduce one command-line run.
struct JobSpec {
  std::string subcommand;  // fusion | verify | limit | catalog | macdonald | acceptance
  std::string check;       // selector within the subcommand

  // datum
  std::string algebra = "sl2";
  int n = 2;
  bool quantum = false;

  // solution descriptor
  std::string catalog;
  std::vector<int> X;  // 1-based labels
  std::string eps = "1";
  std::vector<std::vector<int>> roots;  // r-l positive roots as 1-based pairs
  std::vector<int> gamma1, gamma2;      // 1-based simple roots of a triple
  std::vector<std::string> l_basis;     // comma-separated rationals per vector
  std::string input;                    // operator JSON written by `catalog`
  std::vector<std::string> modules;     // module specs: V, 1, S2, L2, suffix * for duals, x for tensors
  std::string method = "exchange";      // exchange | abrr | both

  // gauge
  int gauge_kind = 0;
  std::vector<std::string> gauge_form;  // rows of Scalar text separated by commas
  std::vector<std::string> gauge_nu;
  std::vector<std::string> gauge_scale;
  std::vector<int> gauge_sigma;

  // orders and sizes
  int order = 1;
  int depth = 3;
  int m = 0;
  int r = 1;
  int p = 3;
  int w_dim = 2;
  int seed = 1;
  int degree = 3;
  std::vector<int> partition;
  std::vector<int> criteria;

  std::string output;  // empty: standard output

  bool operator==(const JobSpec&) const = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(JobSpec, subcommand, check, algebra, n, quantum, catalog, X, eps, roots,
                                                gamma1, gamma2, l_basis, input, modules, method, gauge_kind, gauge_form,
                                                gauge_nu, gauge_scale, gauge_sigma, order, depth, m, r, p, w_dim, seed,
                                                degree, partition, criteria, output)

/// Outcome of a run: the artifact and the process exit status.
struct RunResult {
  int status = 0;
  json artifact;
};

/// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kParseError = 2;
inline constexpr int kPrecondition = 3;

/// Runs a job; dyb::Error and parse failures propagate to the caller.
RunResult run(const JobSpec& job);
/// Maps an exception thrown by run() to an exit code and a message.
int classify(const std::exception& e);

/// Canonical JSON encodings.
json encode(const Scalar& x);
json encode(const Matrix& m);
json encode(const DynOp& op, const std::string& algebra, const std::vector<std::string>& factor_specs);
json encode(const DiffOp& d);
json encode(const ResidualReport& r);
json encode(const Tensor2& t, int n);
/// Inverse of encode(DynOp); factor specs are resolved against the stored algebra.
DynOp decode_dynop(const json& j);

/// Module from a spec string over the datum.
WeightModule parse_module(const RootDatum& d, Mode mode, const std::string& spec);
std::vector<mpq_class> parse_rationals(const std::string& csv);

/// Worker count from DYB_WORKERS (default: hardware concurrency, at least 1).
int worker_count();
/// Runs tasks on the worker pool; results are stored by index. The first exception is rethrown after all workers finish.
void parallel_for(int count, const std::function<void(int)>& task);

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};
/// Acceptance criteria 1..14.
int criterion_count();
std::string criterion_title(int id);
CriterionResult run_criterion(int id);
/// Runs the selected criteria (all when empty) on the worker pool, in id order.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids);

}  // namespace dyb::cli
