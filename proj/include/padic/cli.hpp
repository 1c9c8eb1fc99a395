#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace padic::cli {

enum class Task { spectrum, heat_kernel, green, solve_linear, solve_pme, verify };
enum class OutputFormat { csv, json };

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_consistency = 2;
inline constexpr int exit_nonconvergence = 3;

/// One experiment: model + operator + task + task parameters + output.
///
/// File layout (JSON, unknown keys rejected at every level):
///   {"task": "spectrum", "model": {"p": 2, "N": 0, "M": 6}, "operator": {"alpha": 1},
///    "params": {...}, "output": {"directory": "out", "format": "csv"}, "seed": 1, "tol": 1e-9}
struct ExperimentConfig {
  Task task = Task::verify;
  std::int64_t p = 2;
  int ball_exponent = 0;
  int resolution = 4;
  double alpha = 1.0;
  nlohmann::json params = nlohmann::json::object();
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 0;
  std::optional<double> tol;
};

Task parse_task(const std::string& name);
std::string task_name(Task task);

/// Parses and validates a config document; throws DomainError on any problem.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Checks the task parameters without running anything; throws DomainError.
void validate(const ExperimentConfig& config);

/// Runs the experiment, writing artifacts into config.out_dir. Progress goes to
/// `log`; failures are reported as one JSON object on `err`. Returns the exit status.
int run(const ExperimentConfig& config, std::ostream& log, std::ostream& err);

}  // namespace padic::cli
