//! Experiment configuration, orchestration and file output.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uqhyp/cases.hpp"
#include "uqhyp/diagnostics.hpp"

namespace uqhyp {

struct Sweep {
  std::string parameter;  // "n_x" or "n_xi"
  std::vector<int> values;
};

struct DiagnosticsConfig {
  int q_xi = 1000;                  // xi nodes for TV of computed and analytic fields
  int exact_nodes_per_element = 20; // Gauss nodes per element for exact moments
  int reference_refine = 4;         // fine grid factor of sampled references
  int reference_tv_x_nodes = 16;    // Gauss nodes in the reference element
  int reference_tv_xi_nodes = 50;   // equispaced nodes in the reference element
  int reference_nodes_per_element = 4;
  int component = 0;
};

struct ExperimentConfig {
  CaseId case_id = CaseId::burgers_sine;
  std::vector<Scheme> schemes{Scheme::wenosg};
  bool schemes_explicit = false;  // tvstudy compares all schemes otherwise
  SolverConfig solver;
  std::optional<Sweep> sweep;
  DiagnosticsConfig diagnostics;
  BurgersParams burgers;
  std::string output_dir = "out";
};

/// Parses and validates a JSON config; case defaults are applied first.
ExperimentConfig load_config(const std::string& path, bool full_scale = false);
ExperimentConfig parse_config(const std::string& text, bool full_scale = false);

/// Case of the experiment for one scheme and resolution.
CaseSpec spec_for(const ExperimentConfig& cfg, Scheme scheme, int n_x, int n_xi);

/// Reference data shared by the runs of one case and random resolution.
struct ReferenceData {
  StateFn exact;                       // set for cases with a known solution
  std::optional<SampledReference> sampled;
  MomentProfile moments;
  double tv_x = 0.0, tv_xi = 0.0;
};

ReferenceData build_reference(const CaseSpec& cs, const DiagnosticsConfig& dc);

RunReport analyze(const CaseSpec& cs, const Solver& solver, const RunResult& result,
                  const ReferenceData& ref, const DiagnosticsConfig& dc);

struct CommandOptions {
  bool quiet = false;
};

int cmd_run(const ExperimentConfig& cfg, const CommandOptions& opt = {});
int cmd_convergence(const ExperimentConfig& cfg, const CommandOptions& opt = {});
int cmd_tvstudy(const ExperimentConfig& cfg, const CommandOptions& opt = {});

/// Full command line entry point; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace uqhyp
