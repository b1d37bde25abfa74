#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "json.hpp"

#include "ratiocut/data.hpp"
#include "ratiocut/descent.hpp"
#include "ratiocut/graph.hpp"

namespace ratiocut::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage_or_io = 1,
  exit_numerical = 2,
  exit_not_converged = 3,
};

// Everything that determines a clustering run.
struct RunManifest {
  DescentConfig descent;
  KnnParams knn;
  std::string init = "random";  // random | spectral
  std::string threshold = "sign";  // sign | sweep
  std::string input;   // point-cloud CSV
  std::string graph;   // edge list, used instead of input when set
  std::string truth;   // optional labels file
  std::string out_prefix = "run";
  bool allow_disconnected = false;
};

nlohmann::ordered_json to_json(const RunManifest& m);
// Missing keys keep their defaults.
RunManifest manifest_from_json(const nlohmann::json& j);

struct GenerateOptions {
  TwoMoonsParams moons;
  std::string out;
};

struct EvaluateOptions {
  std::string labels;
  std::string truth;  // labels file or labeled point CSV
  std::string graph;  // optional; enables the RatioCut line
};

int cmd_generate(const GenerateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_cluster(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err);

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ratiocut::cli
