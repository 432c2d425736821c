#pragma once

#include "scode/bounds.hpp"
#include "scode/coding.hpp"
#include "scode/source_model.hpp"

#include <json.hpp>

#include <string>

namespace scode {

using OrderedJson = nlohmann::ordered_json;

// Distribution file format:
//   {"symbols":[{"label":"a","p":"1/2"}, ...]}
// Probabilities are exact "num/den" strings; JSON numbers are rejected so
// exactness cannot be lost on ingest.
SourceDistribution distribution_from_json(const std::string& text);
std::string distribution_to_json(const SourceDistribution& dist);

// Codebook format: {"radix":2,"codes":{"a":"0","b":"10"}}
std::string codebook_to_json(const Codebook& book);
Codebook codebook_from_json(const std::string& text);

OrderedJson bound_report_to_json(const BoundReport& report);
OrderedJson convergence_to_json(const ConvergenceTable& table);
std::string convergence_to_csv(const ConvergenceTable& table);
OrderedJson sensitivity_to_json(const SensitivityReport& report);

} // namespace scode
