// Copyright 2026 The R1D Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "r1d/cli.h"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <numeric>
#include <ostream>
#include <sstream>

#include "r1d/errors.h"
#include "r1d/evaluation.h"
#include "r1d/factorization.h"
#include "r1d/generators.h"
#include "r1d/matrix_io.h"
#include "r1d/oracle.h"
#include "r1d/spectral.h"

namespace r1d::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kResultFile = "result.json";
constexpr const char* kTruthFile = "truth.json";

struct RunConfig {
  std::string command;
  std::string input;
  std::string format;
  std::string out;
  bool to_stdout = false;
  std::uint64_t seed = 0;

  // factorize
  Index rank = 0;
  double gamma = 4.0;
  double eta_bar = 1.0 / 20.0;
  bool monotone = false;
  int max_inner_iters = 100;
  double stagnation_tol = 1e-10;

  // gen-corpus
  Index terms = 0;
  int topics = 0;
  double eps = 0.0;
  int max_len = 0;
  Index docs = 0;

  // gen-images
  Index pixels = 0;
  std::vector<Index> features;
  int per_image = 1;
  Index images = 0;

  // oracle
  Index size_cap = kDefaultSizeCap;
  bool biclique = false;

  // svd
  double tol = 1e-10;
  int max_iter = 1000;

  // eval
  std::string factors_dir;
  std::string truth;
  bool baseline = false;
};

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["seed"] = c.seed;
  if (c.command == "factorize") {
    j["input"] = c.input;
    j["format"] = c.format;
    j["rank"] = c.rank;
    j["gamma"] = c.gamma;
    j["eta_bar"] = c.eta_bar;
    j["monotone"] = c.monotone;
    j["max_inner_iters"] = c.max_inner_iters;
    j["stagnation_tol"] = c.stagnation_tol;
  } else if (c.command == "gen-corpus") {
    j["terms"] = c.terms;
    j["topics"] = c.topics;
    j["eps"] = c.eps;
    j["max_len"] = c.max_len;
    j["docs"] = c.docs;
  } else if (c.command == "gen-images") {
    j["pixels"] = c.pixels;
    j["features"] = c.features;
    j["per_image"] = c.per_image;
    j["images"] = c.images;
  } else if (c.command == "oracle") {
    j["input"] = c.input;
    j["format"] = c.format;
    j["gamma"] = c.gamma;
    j["size_cap"] = c.size_cap;
    j["biclique"] = c.biclique;
  } else if (c.command == "svd") {
    j["input"] = c.input;
    j["format"] = c.format;
    j["rank"] = c.rank;
    j["tol"] = c.tol;
    j["max_iter"] = c.max_iter;
  } else if (c.command == "eval") {
    j["input"] = c.input;
    j["format"] = c.format;
    j["factors"] = c.factors_dir;
    j["truth"] = c.truth;
    j["baseline"] = c.baseline;
  }
  return j;
}

json document(const RunConfig& c) {
  json doc;
  doc["tool"] = "r1d";
  doc["version"] = kVersion;
  doc["config"] = config_json(c);
  return doc;
}

json index_list(const IndexSet& s) { return s.indices(); }

json vector_json(const Eigen::VectorXd& x) {
  return std::vector<double>(x.data(), x.data() + x.size());
}

// Column-major list of columns.
json columns_json(const Eigen::MatrixXd& x) {
  json cols = json::array();
  for (Index k = 0; k < x.cols(); ++k) cols.push_back(vector_json(x.col(k)));
  return cols;
}

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

json read_json(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw r1d::ParseError(path.string() + ": " + e.what(), 0);
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

NonnegMatrix load_input(const RunConfig& c) {
  if (c.format.empty()) return read_matrix(c.input);
  const auto format = parse_format(c.format);
  if (!format) throw InvalidParameter("unknown matrix format '" + c.format + "'");
  return read_matrix(c.input, *format);
}

// Writes a single-file result: --out gets the document, --stdout prints it,
// otherwise `summary` is printed.
void emit(const RunConfig& c, const json& doc, const std::string& summary, std::ostream& out) {
  if (!c.out.empty()) write_text(c.out, dump(doc));
  if (c.to_stdout) {
    out << dump(doc);
  } else {
    out << summary;
  }
}

R1dParams params_of(const RunConfig& c) {
  R1dParams p;
  p.gamma = c.gamma;
  p.eta_bar = c.eta_bar;
  p.monotone = c.monotone;
  p.max_inner_iters = c.max_inner_iters;
  p.stagnation_tol = c.stagnation_tol;
  p.seed = c.seed;
  return p;
}

int cmd_factorize(const RunConfig& c, std::ostream& out) {
  if (c.out.empty() && !c.to_stdout) throw InvalidParameter("factorize needs --out or --stdout");
  const NonnegMatrix a = load_input(c);
  const NmfFactors result = r1d(a, c.rank, params_of(c));

  json doc = document(c);
  doc["matrix"] = {{"rows", a.rows()}, {"cols", a.cols()}, {"nonzeros", a.nonzeros()}};
  doc["achieved_rank"] = result.achieved_rank;
  json factors = json::array();
  for (const auto& f : result.factors) {
    factors.push_back({{"rows", index_list(f.rows)},
                       {"cols", index_list(f.cols)},
                       {"sigma", f.sigma},
                       {"inner_iters", f.inner_iters},
                       {"objective", f.objective},
                       {"penalized_objective", f.penalized_objective},
                       {"converged", f.converged},
                       {"empty_set_event", f.empty_set_event},
                       {"seed_column", f.seed_column}});
  }
  doc["factors"] = factors;
  doc["W"] = "W.mtx";
  doc["H"] = "H.mtx";

  if (!c.out.empty()) {
    const fs::path dir(c.out);
    make_dir(dir);
    write_matrix(NonnegMatrix(result.W), dir / "W.mtx", MatrixFormat::kMatrixMarket);
    write_matrix(NonnegMatrix(result.H), dir / "H.mtx", MatrixFormat::kMatrixMarket);
    write_text(dir / kResultFile, dump(doc));
  }
  if (c.to_stdout) {
    out << dump(doc);
  } else {
    out << "extracted " << result.achieved_rank << " of " << c.rank << " factors\n";
    for (std::size_t k = 0; k < result.factors.size(); ++k) {
      const auto& f = result.factors[k];
      out << "  factor " << k << ": |M| = " << f.rows.size() << ", |N| = " << f.cols.size()
          << ", sigma = " << f.sigma << ", iterations = " << f.inner_iters << "\n";
    }
  }
  return kOk;
}

int cmd_gen_corpus(const RunConfig& c, std::ostream& out) {
  if (c.out.empty()) throw InvalidParameter("gen-corpus needs --out DIR");
  const TextModel model = make_separable_model(c.terms, c.topics, c.eps, c.max_len, c.seed);
  // Documents use a stream independent of the model's.
  const Corpus corpus = generate_corpus(model, c.docs, c.seed + 1);

  json doc = document(c);
  doc["kind"] = "corpus";
  doc["matrix"] = "corpus.mtx";
  json topic_sets = json::array();
  for (const auto& s : model.topic_sets) topic_sets.push_back(index_list(s));
  doc["model"] = {{"terms", model.num_terms()},
                  {"topics", model.num_topics()},
                  {"eps", model.eps},
                  {"max_len", model.max_len},
                  {"tau", vector_json(model.tau)},
                  {"topic_sets", topic_sets},
                  {"P", columns_json(model.terms)}};
  doc["topic_of"] = corpus.topic_of;
  doc["lengths"] = corpus.lengths;

  const fs::path dir(c.out);
  make_dir(dir);
  write_matrix(corpus.counts, dir / "corpus.mtx", MatrixFormat::kMatrixMarket);
  write_text(dir / kTruthFile, dump(doc));
  if (c.to_stdout) {
    out << dump(doc);
  } else {
    out << "wrote " << corpus.counts.rows() << " x " << corpus.counts.cols() << " corpus to "
        << (dir / "corpus.mtx").string() << "\n";
  }
  return kOk;
}

int cmd_gen_images(const RunConfig& c, std::ostream& out) {
  if (c.out.empty()) throw InvalidParameter("gen-images needs --out DIR");
  const Index total = std::accumulate(c.features.begin(), c.features.end(), Index{0});
  if (total != c.pixels) {
    throw InvalidParameter("feature sizes sum to " + std::to_string(total) + ", not --pixels " +
                           std::to_string(c.pixels));
  }
  const ImageModel model = ImageModel::from_sizes(c.features, c.per_image);
  const BitmapDatabase db = generate_bitmaps(model, c.images, c.seed);

  json doc = document(c);
  doc["kind"] = "bitmaps";
  doc["matrix"] = "images.mtx";
  json features = json::array();
  for (const auto& f : model.features) features.push_back(index_list(f));
  doc["features"] = features;
  doc["features_of"] = db.features_of;

  const fs::path dir(c.out);
  make_dir(dir);
  write_matrix(db.pixels, dir / "images.mtx", MatrixFormat::kMatrixMarket);
  write_text(dir / kTruthFile, dump(doc));
  if (c.to_stdout) {
    out << dump(doc);
  } else {
    out << "wrote " << db.pixels.rows() << " x " << db.pixels.cols() << " bitmap database to "
        << (dir / "images.mtx").string() << "\n";
  }
  return kOk;
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
  const NonnegMatrix a = load_input(c);
  const OracleResult r = brute_force_optimum(a, c.gamma, c.size_cap);
  json doc = document(c);
  doc["best_rows"] = index_list(r.best_rows);
  doc["best_cols"] = index_list(r.best_cols);
  doc["best_value"] = r.best_value;
  doc["ties"] = r.ties;
  doc["pairs_examined"] = r.pairs_examined;
  std::ostringstream summary;
  summary << "best value " << r.best_value << " at M = " << r.best_rows
          << ", N = " << r.best_cols << " (" << r.ties << " tied of " << r.pairs_examined
          << " pairs)\n";
  if (c.biclique) {
    const Biclique b = max_biclique(a, c.size_cap);
    doc["biclique"] = {
        {"rows", index_list(b.rows)}, {"cols", index_list(b.cols)}, {"edges", b.edges}};
    summary << "max biclique " << b.edges << " edges at M = " << b.rows << ", N = " << b.cols
            << "\n";
  }
  emit(c, doc, summary.str(), out);
  return kOk;
}

int cmd_svd(const RunConfig& c, std::ostream& out) {
  const NonnegMatrix a = load_input(c);
  PowerOptions options;
  options.tol = c.tol;
  options.max_iter = c.max_iter;
  options.seed = c.seed;
  const SvdResult r = jordan_svd(a.to_dense(), c.rank, options);
  json doc = document(c);
  doc["sigma"] = vector_json(r.sigma);
  doc["U"] = columns_json(r.U);
  doc["V"] = columns_json(r.V);
  std::ostringstream summary;
  summary << "sigma =";
  for (Index k = 0; k < r.sigma.size(); ++k) summary << ' ' << r.sigma(k);
  summary << "\n";
  emit(c, doc, summary.str(), out);
  return kOk;
}

GroundTruth truth_from_json(const json& t, Index rows, Index cols) {
  GroundTruth truth;
  const std::string kind = t.at("kind").get<std::string>();
  if (kind == "corpus") {
    const auto topic_of = t.at("topic_of").get<std::vector<int>>();
    const int topics = t.at("model").at("topics").get<int>();
    for (const auto& s : t.at("model").at("topic_sets")) {
      truth.row_sets.emplace_back(s.get<std::vector<Index>>(), rows);
    }
    std::vector<std::vector<Index>> docs(static_cast<std::size_t>(topics));
    for (std::size_t j = 0; j < topic_of.size(); ++j) {
      docs.at(static_cast<std::size_t>(topic_of[j])).push_back(static_cast<Index>(j));
    }
    for (auto& d : docs) truth.col_sets.emplace_back(std::move(d), cols);
  } else if (kind == "bitmaps") {
    for (const auto& s : t.at("features")) {
      truth.row_sets.emplace_back(s.get<std::vector<Index>>(), rows);
    }
    std::vector<std::vector<Index>> images(truth.row_sets.size());
    const auto features_of = t.at("features_of").get<std::vector<std::vector<int>>>();
    for (std::size_t j = 0; j < features_of.size(); ++j) {
      for (int k : features_of[j]) images.at(static_cast<std::size_t>(k)).push_back(static_cast<Index>(j));
    }
    for (auto& d : images) truth.col_sets.emplace_back(std::move(d), cols);
  } else {
    throw r1d::ParseError("truth document has unknown kind '" + kind + "'", 0);
  }
  return truth;
}

int cmd_eval(const RunConfig& c, std::ostream& out) {
  const fs::path dir(c.factors_dir);
  const json run = read_json(dir / kResultFile);

  RunConfig input_cfg = c;
  if (input_cfg.input.empty()) {
    input_cfg.input = run.at("config").at("input").get<std::string>();
    input_cfg.format = run.at("config").at("format").get<std::string>();
  }
  const NonnegMatrix a = load_input(input_cfg);

  NmfFactors factors;
  factors.W = read_matrix(dir / run.at("W").get<std::string>(), MatrixFormat::kMatrixMarket).to_dense();
  factors.H = read_matrix(dir / run.at("H").get<std::string>(), MatrixFormat::kMatrixMarket).to_dense();
  factors.achieved_rank = run.at("achieved_rank").get<Index>();
  for (const auto& f : run.at("factors")) {
    RankOneSubmatrix s;
    s.rows = IndexSet(f.at("rows").get<std::vector<Index>>(), a.rows());
    s.cols = IndexSet(f.at("cols").get<std::vector<Index>>(), a.cols());
    s.sigma = f.at("sigma").get<double>();
    factors.factors.push_back(std::move(s));
  }
  if (std::ssize(factors.factors) != factors.achieved_rank) {
    throw r1d::ParseError("factor list length differs from achieved_rank", 0);
  }
  const GroundTruth truth = truth_from_json(read_json(c.truth), a.rows(), a.cols());

  RecoveryReport report = match_and_score(a, factors, truth);
  if (c.baseline && factors.achieved_rank > 0) {
    PowerOptions options;
    options.seed = c.seed;
    report.baseline = svd_baseline(a, factors.achieved_rank, truth, options);
  }

  RunConfig doc_cfg = c;
  doc_cfg.input = input_cfg.input;
  doc_cfg.format = input_cfg.format;
  json doc = document(doc_cfg);
  json per_factor = json::array();
  for (const auto& f : report.factors) {
    per_factor.push_back({{"factor", f.factor},
                          {"matched_block", f.block},
                          {"overlap_mass", f.overlap},
                          {"symdiff_ratio", f.symdiff},
                          {"cluster_size", f.cluster_size},
                          {"cluster_purity", optional_json(f.cluster_purity)}});
  }
  json blocks = json::array();
  for (const auto& b : report.blocks) {
    blocks.push_back({{"block", b.block},
                      {"predicted", b.predicted},
                      {"relevant", b.relevant},
                      {"correct", b.correct},
                      {"precision", optional_json(b.precision)},
                      {"recall", optional_json(b.recall)}});
  }
  doc["factors"] = per_factor;
  doc["blocks"] = blocks;
  doc["assigned"] = report.assigned;
  doc["columns"] = a.cols();
  doc["purity"] = optional_json(report.purity);
  doc["mean_factor_purity"] = optional_json(report.mean_factor_purity);
  doc["degenerate"] = report.degenerate;
  if (report.baseline) {
    doc["baseline"] = {{"sigma", vector_json(report.baseline->sigma)},
                       {"purity", optional_json(report.baseline->purity)}};
  }

  std::ostringstream table;
  table << std::fixed << std::setprecision(4);
  table << "factor  block  symdiff   purity  size\n";
  for (const auto& f : report.factors) {
    table << std::setw(6) << f.factor << std::setw(7) << f.block << std::setw(9) << f.symdiff
          << std::setw(9);
    if (f.cluster_purity) {
      table << *f.cluster_purity;
    } else {
      table << "-";
    }
    table << std::setw(6) << f.cluster_size << "\n";
  }
  table << "assigned " << report.assigned << " of " << a.cols() << " columns; purity ";
  if (report.purity) {
    table << *report.purity;
  } else {
    table << "undefined";
  }
  table << "\n";
  if (report.baseline && report.baseline->purity) {
    table << "svd baseline purity " << *report.baseline->purity << "\n";
  }
  emit(c, doc, table.str(), out);
  if (report.degenerate) return kDegenerate;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Rank-one downdate nonnegative matrix factorization", "r1d"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "Seed for every random stream of this run");
    sub->add_flag("--stdout", c.to_stdout, "Print only the result document on stdout");
  };
  auto input = [&](CLI::App* sub) {
    sub->add_option("--input", c.input, "Input matrix (.mtx or .csv)")->required();
    sub->add_option("--format", c.format, "Input format: matrix-market or csv")
        ->check(CLI::IsMember({"matrix-market", "mtx", "csv"}));
  };

  auto* factorize = app.add_subcommand("factorize", "Run R1D on a matrix");
  input(factorize);
  common(factorize);
  factorize->add_option("--rank", c.rank, "Number of factors k")->required()->check(CLI::PositiveNumber);
  factorize->add_option("--gamma", c.gamma, "Penalty parameter (> 1)");
  factorize->add_option("--eta", c.eta_bar, "Size-penalty fraction (0 disables)");
  factorize->add_flag("--monotone", c.monotone, "Force M to shrink and N to grow");
  factorize->add_option("--max-inner-iters", c.max_inner_iters, "Inner iteration cap");
  factorize->add_option("--stagnation-tol", c.stagnation_tol, "Relative sigma change for stagnation");
  factorize->add_option("--out", c.out, "Output directory for W.mtx, H.mtx, result.json");

  auto* gen_corpus = app.add_subcommand("gen-corpus", "Generate an eps-separable corpus");
  common(gen_corpus);
  gen_corpus->add_option("--terms", c.terms, "Number of terms m")->required();
  gen_corpus->add_option("--topics", c.topics, "Number of topics t")->required();
  gen_corpus->add_option("--eps", c.eps, "Separability bound")->required();
  gen_corpus->add_option("--max-len", c.max_len, "Document lengths are < L")->required();
  gen_corpus->add_option("--docs", c.docs, "Number of documents n")->required();
  gen_corpus->add_option("--out", c.out, "Output directory")->required();

  auto* gen_images = app.add_subcommand("gen-images", "Generate a decomposable bitmap database");
  common(gen_images);
  gen_images->add_option("--pixels", c.pixels, "Pixels per image m")->required();
  gen_images->add_option("--features", c.features, "Feature sizes, e.g. 2,3,3,4")
      ->required()
      ->delimiter(',');
  gen_images->add_option("--per-image", c.per_image, "Features per image l")->required();
  gen_images->add_option("--images", c.images, "Number of images n")->required();
  gen_images->add_option("--out", c.out, "Output directory")->required();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum of the spectral objective");
  input(oracle);
  common(oracle);
  oracle->add_option("--gamma", c.gamma, "Penalty parameter (> 1)");
  oracle->add_option("--size-cap", c.size_cap, "Refuse instances with m + n above this");
  oracle->add_flag("--biclique", c.biclique, "Also solve maximum biclique (0/1 input)");
  oracle->add_option("--out", c.out, "Result document path");

  auto* svd = app.add_subcommand("svd", "Greedy power-method SVD");
  input(svd);
  common(svd);
  svd->add_option("--rank", c.rank, "Number of singular triples")->required()->check(CLI::PositiveNumber);
  svd->add_option("--tol", c.tol, "Residual tolerance");
  svd->add_option("--max-iter", c.max_iter, "Power iterations per triple");
  svd->add_option("--out", c.out, "Result document path");

  auto* eval = app.add_subcommand("eval", "Score a factorization against ground truth");
  common(eval);
  eval->add_option("--factors", c.factors_dir, "Directory written by factorize")->required();
  eval->add_option("--truth", c.truth, "truth.json written by gen-corpus or gen-images")->required();
  eval->add_option("--input", c.input, "Matrix that was factorized (defaults to the recorded one)");
  eval->add_option("--format", c.format, "Input format: matrix-market or csv")
      ->check(CLI::IsMember({"matrix-market", "mtx", "csv"}));
  eval->add_flag("--baseline", c.baseline, "Add a greedy-SVD clustering baseline");
  eval->add_option("--out", c.out, "Result document path");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  c.command = app.get_subcommands().front()->get_name();
  try {
    if (c.command == "factorize") return cmd_factorize(c, out);
    if (c.command == "gen-corpus") return cmd_gen_corpus(c, out);
    if (c.command == "gen-images") return cmd_gen_images(c, out);
    if (c.command == "oracle") return cmd_oracle(c, out);
    if (c.command == "svd") return cmd_svd(c, out);
    if (c.command == "eval") return cmd_eval(c, out);
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const SizeCapExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kSizeCap;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << "\n";
    return kConvergence;
  } catch (const DegenerateInput& e) {
    err << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const r1d::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const IndexError& e) {
    err << "index error: " << e.what() << "\n";
    return kIndex;
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << "\n";
    return kContract;
  } catch (const json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
  err << "unknown command\n";
  return kUsage;
}

}  // namespace r1d::cli
