#pragma once

#include <string>

#include "vlmc/analysis.hpp"
#include "vlmc/estimator.hpp"
#include "vlmc/model.hpp"
#include "vlmc/sampler.hpp"

namespace vlmc {

// Model JSON:
//   {"kind":"finite","alphabet":["0","1"],"contexts":[{"w":"10","p":[0.4,0.6]},...]}
//   {"kind":"comb","q0":0.6,"qinf":0.3,"gamma":0.5}
// Rows are ordered by alphabet order. The memoryless model is a finite model
// whose only entry is {"w":"","p":[...]}. Loading validates the suffix
// property and row sums and rejects violations.
Model load_model_json(const std::string& text);
Model load_model_file(const std::string& path);
std::string model_to_json(const Model& model, int indent = 2);

// Sample files: one line of concatenated symbols, newline-terminated, plus a
// "<path>.provenance.json" sidecar with the model, n, seed, burn_in and rng.
void write_sample(const SamplePath& path, const Model& model, const std::string& file);
SamplePath read_sample(const std::string& file);

// {"kind","alphabet","contexts":[{"w","p"}...],"match_at_K":bool|null}
std::string estimation_to_json(const EstimationResult& result, int match_state, int indent = 2);
// match_state: 0 = false, 1 = true, -1 = null

std::string bound_report_to_json(const BoundReport& report, int indent = 2);

}  // namespace vlmc
