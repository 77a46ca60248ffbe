/*
Copyright (c) 2026 The sparse-alloc authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsealloc/generators.hpp"
#include "sparsealloc/instance.hpp"

namespace sparsealloc {

enum class Pipeline {
  local,
  local_autoterm,
  mpc,
  mpc_guess,
  round,
  boost,
  oracle
};

Pipeline parse_pipeline(const std::string& name);
std::string pipeline_name(Pipeline p);

struct ExperimentSpec {
  std::optional<std::string> instance_path;
  std::optional<GenSpec> gen;
  Pipeline pipeline = Pipeline::local_autoterm;
  double epsilon = 0.1;
  double alpha = 0.5;
  std::optional<int> tau_override;
  std::optional<int> copies;
  std::optional<int> lambda_guess;
  std::uint64_t seed = 0;
  bool attach_oracle = true;
  std::optional<std::string> out_path;    // JSON report ('-' or unset: stdout)
  std::optional<std::string> trace_path;  // CSV trace
  std::optional<std::string> alloc_out;   // store the produced allocation
};

struct ExperimentReport {
  std::string json;      // rendered report document
  bool feasible = true;  // all produced allocations validated
  double weight = 0.0;   // fractional weight or integral size
  std::optional<double> opt;
  std::optional<double> ratio;
  std::optional<int> rounds_used;
  std::optional<std::int64_t> mpc_rounds;
};

/// Executes the pipeline, validates everything it emits, attaches the
/// exact optimum when the instance is small enough, and renders the JSON
/// report (also written to out_path when set). All floats are serialized
/// with 12 significant digits.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Feasibility and ratio audit of a stored allocation (fractional or
/// integral) against a stored instance.
ExperimentReport verify_allocation(const std::string& instance_path,
                                   const std::string& alloc_path,
                                   const std::optional<std::string>& out_path);

struct SweepSpec {
  ExperimentSpec base;
  /// Cartesian grid in the given order; keys: lambda, seed, eps, n, nl,
  /// nr, p, m, tau, copies, pipeline.
  std::vector<std::pair<std::string, std::vector<std::string>>> vary;
};

/// One CSV row per grid point: the varied parameters followed by
/// rounds, weight, opt, ratio, mpc_rounds. Grid points run on a worker
/// pool capped by SPARSE_ALLOC_THREADS; rows appear in grid order.
std::string sweep(const SweepSpec& spec);

/// Stored allocation file formats:
///   fracalloc <entries>      |  intalloc <entries>
///   x <edge_id> <value>      |  e <edge_id>
void write_fractional_file(const std::string& path,
                           const FractionalAllocation& frac);
void write_integral_file(const std::string& path,
                         const IntegralAllocation& alloc);

/// Round a double to 12 significant digits (the serialization precision).
double sig12(double x);
std::string format_double(double x);

}  // namespace sparsealloc
