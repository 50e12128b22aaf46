#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "psum/analysis.hpp"
#include "psum/distributions.hpp"
#include "psum/errors.hpp"
#include "psum/io.hpp"
#include "psum/rational.hpp"
#include "psum/spectral.hpp"
#include "psum/summation.hpp"

namespace {

int exit_code_for(psum::Errc code) {
  switch (code) {
    case psum::Errc::NotApplicable:
    case psum::Errc::SignedLimit:
    case psum::Errc::DegenerateSum:
    case psum::Errc::ZeroImage:
      return 3;
    default:
      return 2;
  }
}

// PSUM_BACKEND, when set, wins over the flag.
psum::Backend resolve_backend(const std::string& flag_value) {
  std::string name = flag_value;
  if (const char* env = std::getenv("PSUM_BACKEND"); env && *env) name = env;
  if (name == "exact") return psum::Backend::Exact;
  if (name == "float") return psum::Backend::Float;
  throw psum::Error(psum::Errc::InvalidParams,
                    "backend must be 'exact' or 'float', got '" + name + "'");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    psum::write_text_file(out_path, text);
  }
}

std::string strip_code_prefix(const psum::Error& e) {
  std::string text = e.what();
  std::string prefix = std::string(psum::errc_name(e.code())) + ": ";
  if (text.rfind(prefix, 0) == 0) text.erase(0, prefix.size());
  return text;
}

psum::ProbabilityMatrix load_distribution(const std::string& path, psum::Backend backend) {
  return psum::ProbabilityMatrix::validate(psum::grid_from_json(psum::load_json_file(path)),
                                           backend);
}

psum::WeightFunction load_weights(const std::string& path) {
  return psum::WeightFunction(psum::grid_from_json(psum::load_json_file(path)));
}

void check_shapes(const psum::ProbabilityMatrix& parent, const psum::WeightFunction& g) {
  if (parent.rows() != g.rows() || parent.cols() != g.cols()) {
    throw psum::Error(psum::Errc::ShapeMismatch,
                      "parent is " + std::to_string(parent.rows()) + "x" +
                          std::to_string(parent.cols()) + " but weights are " +
                          std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated partial summations on finite-support distributions"};
  app.require_subcommand(1);

  std::string backend_flag = "exact";
  app.add_option("--backend", backend_flag, "Arithmetic backend: exact or float")
      ->capture_default_str();

  long n1 = 0, n2 = 0, n3 = 0, k_target = 0, sample_size = 0;
  std::string dist_path, weights_path, out_path, trace_path, operator_path;
  std::size_t generations = 0;
  double tol = 1e-10;
  std::size_t max_iter = 10000;

  CLI::App* generate = app.add_subcommand("generate", "Write a parametric distribution as JSON");
  generate->require_subcommand(1);
  CLI::App* inv = generate->add_subcommand("inv-hypergeom", "Bivariate inverse hypergeometric");
  inv->add_option("--N1", n1, "Size of the first class")->required();
  inv->add_option("--N2", n2, "Size of the second class")->required();
  inv->add_option("--N3", n3, "Size of the third class")->required();
  inv->add_option("--k", k_target, "Target count of third-class draws")->required();
  inv->add_option("--out", out_path, "Output path (stdout when omitted)");

  CLI::App* hyper = generate->add_subcommand("hypergeom", "Bivariate hypergeometric");
  hyper->add_option("--N1", n1, "Size of the first class")->required();
  hyper->add_option("--N2", n2, "Size of the second class")->required();
  hyper->add_option("--N3", n3, "Size of the third class")->required();
  hyper->add_option("--sample", sample_size, "Number of draws")->required();
  hyper->add_option("--out", out_path, "Output path (stdout when omitted)");

  CLI::App* iterate_cmd = app.add_subcommand("iterate", "Write generations 0..k as JSON lines");
  iterate_cmd->add_option("--dist", dist_path, "Parent distribution JSON")->required();
  iterate_cmd->add_option("--g", weights_path, "Weight grid JSON (required when --k >= 1)");
  iterate_cmd->add_option("--k", generations, "Number of summations")->required();
  iterate_cmd->add_option("--out", out_path, "Output path (stdout when omitted)");

  CLI::App* limit_cmd = app.add_subcommand("limit", "Write the spectral limit distribution");
  limit_cmd->add_option("--g", weights_path, "Weight grid JSON")->required();
  limit_cmd->add_option("--out", out_path, "Output path (stdout when omitted)");

  CLI::App* classify_cmd = app.add_subcommand("classify", "Classify the descendant sequence");
  classify_cmd->add_option("--dist", dist_path, "Parent distribution JSON")->required();
  classify_cmd->add_option("--g", weights_path, "Weight grid JSON")->required();
  classify_cmd->add_option("--tol", tol, "Entrywise stopping tolerance")->capture_default_str();
  classify_cmd->add_option("--max-iter", max_iter, "Iteration budget")->capture_default_str();
  classify_cmd->add_option("--trace", trace_path, "Write the generation trace as CSV");
  classify_cmd->add_option("--out", out_path, "Output path (stdout when omitted)");

  CLI::App* derive = app.add_subcommand("derive-g", "Weights fixing the given distribution");
  derive->add_option("--dist", dist_path, "Target distribution JSON")->required();
  derive->add_option("--out", out_path, "Output path (stdout when omitted)");

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Write the spectral report");
  analyze_cmd->add_option("--g", weights_path, "Weight grid JSON")->required();
  analyze_cmd->add_option("--dump-operator", operator_path, "Also write the operator matrix JSON");
  analyze_cmd->add_option("--out", out_path, "Output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    psum::Backend backend = resolve_backend(backend_flag);

    if (inv->parsed()) {
      psum::ProbabilityMatrix pm =
          psum::inverse_hypergeometric(psum::InvHypergeomParams{n1, n2, n3, k_target});
      emit(psum::dump_canonical(psum::distribution_document(pm, backend)), out_path);
    } else if (hyper->parsed()) {
      psum::ProbabilityMatrix pm =
          psum::hypergeometric(psum::HypergeomParams{n1, n2, n3, sample_size});
      emit(psum::dump_canonical(psum::distribution_document(pm, backend)), out_path);
    } else if (iterate_cmd->parsed()) {
      psum::ProbabilityMatrix parent = load_distribution(dist_path, backend);
      std::optional<psum::WeightFunction> g;
      if (!weights_path.empty()) {
        g.emplace(load_weights(weights_path));
        check_shapes(parent, *g);
      }
      if (generations >= 1 && !g) {
        throw psum::Error(psum::Errc::InvalidParams, "--g is required when --k >= 1");
      }
      std::string text = psum::dump_canonical(psum::distribution_document(parent, backend));
      if (generations >= 1) {
        std::vector<psum::SummationOutcome> outcomes = psum::iterate(parent, *g, generations);
        for (std::size_t j = 0; j < outcomes.size(); ++j) {
          text += psum::dump_canonical(psum::generation_document(outcomes[j], j + 1, backend));
        }
      }
      emit(text, out_path);
    } else if (limit_cmd->parsed()) {
      psum::SummationOperator op = psum::build_operator(load_weights(weights_path));
      try {
        psum::ProbabilityMatrix pm = psum::limit_distribution(op);
        emit(psum::dump_canonical(psum::distribution_document(pm, backend)), out_path);
      } catch (const psum::Error& e) {
        if (e.code() != psum::Errc::NotApplicable && e.code() != psum::Errc::SignedLimit) throw;
        nlohmann::json doc;
        doc["applicable"] = false;
        doc["error"] = psum::errc_name(e.code());
        doc["reason"] = strip_code_prefix(e);
        emit(psum::dump_canonical(doc), out_path);
        std::cerr << e.what() << '\n';
        return 3;
      }
    } else if (classify_cmd->parsed()) {
      psum::ProbabilityMatrix parent = load_distribution(dist_path, backend);
      psum::WeightFunction g = load_weights(weights_path);
      psum::ClassifyOptions options{tol, max_iter, backend};
      std::vector<psum::Grid<psum::Rational>> trace;
      psum::SequenceClassification result =
          psum::classify(parent, g, options, trace_path.empty() ? nullptr : &trace);
      if (!trace_path.empty()) psum::write_text_file(trace_path, psum::trace_csv(trace));
      emit(psum::dump_canonical(psum::classification_document(result, backend)), out_path);
    } else if (derive->parsed()) {
      psum::ProbabilityMatrix target = load_distribution(dist_path, backend);
      psum::WeightFunction g = psum::derive_fixed_point_weights(target);
      emit(psum::dump_canonical(psum::grid_to_json(g.grid(), backend)), out_path);
    } else if (analyze_cmd->parsed()) {
      psum::SummationOperator op = psum::build_operator(load_weights(weights_path));
      if (!operator_path.empty()) {
        psum::write_text_file(operator_path, psum::dump_canonical(psum::operator_document(op)));
      }
      emit(psum::dump_canonical(psum::spectral_document(psum::analyze(op))), out_path);
    }
    return 0;
  } catch (const psum::Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
}
