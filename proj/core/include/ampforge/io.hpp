#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ampforge/gaussian.hpp"
#include "ampforge/states.hpp"

namespace ampforge::io {

using json = nlohmann::json;

enum class Task {
  Feasibility,
  Synthesize,
  Classify,
  Theorem,
  GainProbability,
  Homodyne,
  Channel,
};

std::string task_name(Task t);

struct StateDescriptor {
  enum class Type { Coherent, Gaussian, Fock };
  Type type = Type::Coherent;
  Complex alpha;            // Coherent
  Eigen::Vector2d d;        // Gaussian
  Eigen::Matrix2d gamma;    // Gaussian
  std::vector<Complex> fock;  // Fock
};

struct ProblemFile {
  std::string version;
  Task task = Task::Feasibility;
  std::vector<StateDescriptor> states;
  std::vector<StateDescriptor> targets;  // optional; derived when empty
  Eigen::VectorXd gains;
  Eigen::VectorXd probs;
  std::vector<json> observables;  // "number" | "quadrature-q" | "quadrature-p" | {"matrix": [[...]]}
  json params;
  std::uint64_t input_hash = 0;
};

// Validated problem or a first-error diagnostic with the offending path.
ProblemFile parse_problem(const std::string& text);

struct Report {
  json body;
  std::string csv;  // empty when the task produces no table

  std::string to_string() const;  // deterministic byte output
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

Report run_task(const ProblemFile& problem, const RunOptions& opts = {});

}  // namespace ampforge::io
