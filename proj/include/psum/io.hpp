#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "psum/analysis.hpp"
#include "psum/distributions.hpp"
#include "psum/grid.hpp"
#include "psum/rational.hpp"
#include "psum/spectral.hpp"
#include "psum/summation.hpp"

namespace psum {

// Grid documents look like {"rows": m, "cols": n, "entries": [[..], ..]}
// with row-major entries. Readers accept numbers (converted exactly) and
// "p/q" strings; writers emit "p/q" on the exact backend and decimal
// numbers on the float backend. Serialization is canonical: sorted keys,
// compact separators, trailing newline.

Grid<Rational> grid_from_json(const nlohmann::json& doc);

nlohmann::json grid_to_json(const Grid<Rational>& grid, Backend backend);

nlohmann::json distribution_document(const ProbabilityMatrix& pm, Backend backend);

// Grid document plus "generation" and "normalizer"; "signedDescendant"
// appears only when the flag is set.
nlohmann::json generation_document(const SummationOutcome& outcome, std::size_t generation,
                                   Backend backend);

nlohmann::json operator_document(const SummationOperator& op);

nlohmann::json spectral_document(const SpectralReport& report);

nlohmann::json classification_document(const SequenceClassification& result, Backend backend);

// One row per generation: the index, the column-major entries, and the
// L1 distance to the previous generation (blank on the first row).
std::string trace_csv(const std::vector<Grid<Rational>>& trace);

std::string dump_canonical(const nlohmann::json& doc);

// Whole-file helpers. Loading throws FileNotFound when the path cannot
// be opened and MalformedInput when it does not parse.
nlohmann::json load_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace psum
