#include "psum/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "psum/errors.hpp"

namespace psum {
namespace {

using nlohmann::json;

std::string cell_name(std::size_t x, std::size_t y) {
  return "entries[" + std::to_string(x) + "][" + std::to_string(y) + "]";
}

Rational cell_from_json(const json& value, std::size_t x, std::size_t y) {
  if (value.is_string()) {
    try {
      return rational_from_string(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw Error(Errc::MalformedInput, cell_name(x, y) + ": " + e.what());
    }
  }
  if (value.is_number_integer()) {
    return Rational(value.get<long>());
  }
  if (value.is_number_unsigned()) {
    return Rational(value.get<unsigned long>());
  }
  if (value.is_number_float()) {
    return rational_from_double(value.get<double>());
  }
  throw Error(Errc::MalformedInput, cell_name(x, y) + " must be a number or a \"p/q\" string");
}

json cell_to_json(const Rational& value, Backend backend) {
  if (backend == Backend::Exact) return json(to_fraction_string(value));
  return json(to_double(value));
}

std::size_t positive_size_field(const json& doc, const char* field) {
  if (!doc.contains(field)) {
    throw Error(Errc::MalformedInput, std::string("field '") + field + "' is required");
  }
  const json& value = doc.at(field);
  if (!value.is_number_integer() && !value.is_number_unsigned()) {
    throw Error(Errc::MalformedInput, std::string("field '") + field + "' must be a positive integer");
  }
  long long n = value.get<long long>();
  if (n < 1) {
    throw Error(Errc::MalformedInput, std::string("field '") + field + "' must be a positive integer");
  }
  return static_cast<std::size_t>(n);
}

json entries_to_json(const Grid<Rational>& grid, Backend backend) {
  json entries = json::array();
  for (std::size_t x = 0; x < grid.rows(); ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < grid.cols(); ++y) row.push_back(cell_to_json(grid(x, y), backend));
    entries.push_back(std::move(row));
  }
  return entries;
}

std::string format_value(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace

Grid<Rational> grid_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw Error(Errc::MalformedInput, "top-level value must be an object");
  }
  std::size_t rows = positive_size_field(doc, "rows");
  std::size_t cols = positive_size_field(doc, "cols");
  if (!doc.contains("entries")) {
    throw Error(Errc::MalformedInput, "field 'entries' is required");
  }
  const json& entries = doc.at("entries");
  if (!entries.is_array() || entries.size() != rows) {
    throw Error(Errc::MalformedInput,
                "field 'entries' must be an array of " + std::to_string(rows) + " rows");
  }
  Grid<Rational> grid(rows, cols);
  for (std::size_t x = 0; x < rows; ++x) {
    const json& row = entries.at(x);
    if (!row.is_array() || row.size() != cols) {
      throw Error(Errc::MalformedInput, "entries[" + std::to_string(x) + "] must be an array of " +
                                            std::to_string(cols) + " entries");
    }
    for (std::size_t y = 0; y < cols; ++y) grid(x, y) = cell_from_json(row.at(y), x, y);
  }
  return grid;
}

json grid_to_json(const Grid<Rational>& grid, Backend backend) {
  json doc;
  doc["rows"] = grid.rows();
  doc["cols"] = grid.cols();
  doc["entries"] = entries_to_json(grid, backend);
  return doc;
}

json distribution_document(const ProbabilityMatrix& pm, Backend backend) {
  return grid_to_json(pm.grid(), backend);
}

json generation_document(const SummationOutcome& outcome, std::size_t generation,
                         Backend backend) {
  json doc = grid_to_json(outcome.descendant, backend);
  doc["generation"] = generation;
  doc["normalizer"] = cell_to_json(outcome.normalizer, backend);
  if (outcome.signed_descendant) doc["signedDescendant"] = true;
  return doc;
}

json operator_document(const SummationOperator& op) {
  json doc;
  doc["dim"] = op.dim();
  doc["entries"] = entries_to_json(op.matrix(), Backend::Exact);
  doc["sourceShape"] = json{{"rows", op.source_rows()}, {"cols", op.source_cols()}};
  return doc;
}

json spectral_document(const SpectralReport& report) {
  json doc;
  json eigenvalues = json::array();
  for (const Rational& value : report.eigenvalues) eigenvalues.push_back(to_fraction_string(value));
  doc["eigenvalues"] = std::move(eigenvalues);
  doc["dominantUnique"] = report.dominant_unique;
  doc["diagonalizable"] = report.diagonalizable;
  doc["powerMethodApplicable"] = report.power_method_applicable;
  if (report.dominant_value) {
    doc["dominantEigenvalue"] = to_fraction_string(*report.dominant_value);
    doc["dominantIndex"] = report.dominant_index;
  }
  if (report.dominant_eigenvector) {
    json vec = json::array();
    for (const Rational& value : *report.dominant_eigenvector)
      vec.push_back(to_fraction_string(value));
    doc["dominantEigenvector"] = std::move(vec);
  }
  return doc;
}

json classification_document(const SequenceClassification& result, Backend backend) {
  json doc;
  doc["verdict"] = verdict_name(result.verdict);
  doc["iterationsUsed"] = result.iterations_used;
  doc["agreement"] = result.agreement;
  doc["spectral"] = spectral_document(result.spectral);
  if (result.verdict == Verdict::Converged && result.limit) {
    doc["limit"] = grid_to_json(*result.limit, backend);
  }
  if (result.verdict == Verdict::Oscillating) {
    doc["period"] = result.period;
    doc["cycleStart"] = result.cycle_start;
    json cycle = json::array();
    for (const Grid<Rational>& grid : result.cycle) cycle.push_back(grid_to_json(grid, backend));
    doc["cycle"] = std::move(cycle);
  }
  return doc;
}

std::string trace_csv(const std::vector<Grid<Rational>>& trace) {
  if (trace.empty()) return "generation,l1_prev\n";
  const std::size_t m = trace.front().rows();
  const std::size_t n = trace.front().cols();
  std::ostringstream out;
  out << "generation";
  for (std::size_t r = 0; r < m * n; ++r) {
    out << ",p_" << (r % m) << "_" << (r / m);
  }
  out << ",l1_prev\n";
  for (std::size_t gen = 0; gen < trace.size(); ++gen) {
    out << gen;
    for (const Rational& value : trace[gen].data()) out << ',' << format_value(to_double(value));
    out << ',';
    if (gen > 0) {
      Rational l1(0);
      for (std::size_t i = 0; i < trace[gen].size(); ++i) {
        Rational diff = trace[gen].data()[i] - trace[gen - 1].data()[i];
        if (diff < 0) diff = -diff;
        l1 += diff;
      }
      out << format_value(to_double(l1));
    }
    out << '\n';
  }
  return out.str();
}

std::string dump_canonical(const json& doc) { return doc.dump() + "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::FileNotFound, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json load_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedInput, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::FileNotFound, "cannot write " + path);
  }
  out << text;
  if (!out) {
    throw Error(Errc::FileNotFound, "write failed for " + path);
  }
}

}  // namespace psum
