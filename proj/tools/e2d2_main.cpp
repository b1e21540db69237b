// Command-line front end: exposes the library pipeline as subcommands for
// scripted experiments.
//
// Exit codes: 0 success, 1 validation/input error, 2 numerical failure
// (not-positive-definite, non-convergence, degenerate direction), 64 unknown
// subcommand. Errors are reported as one-line JSON on stderr. Stochastic
// subcommands require an explicit --seed; nothing is ever seeded from the
// clock.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "e2d2/e2d2.hpp"

using nlohmann::json;

namespace {

e2d2::EstimatorKind parse_estimator(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::optional<double> par;
  if (colon != std::string::npos) {
    try {
      std::size_t pos = 0;
      par = std::stod(text.substr(colon + 1), &pos);
      if (pos != text.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw e2d2::ValidationError("BadEstimator", "bad estimator parameter in '" + text + "'");
    }
  }
  auto need = [&](const char* what) -> double {
    if (!par) {
      throw e2d2::ValidationError("BadEstimator",
                                  "estimator '" + name + "' needs a " + what +
                                      " parameter, e.g. '" + name + ":0.5'");
    }
    return *par;
  };
  if (name == "mle") return e2d2::EstimatorKind::sample_mle();
  if (name == "lda") return e2d2::EstimatorKind::pseudo_inverse_lda();
  if (name == "diag") return e2d2::EstimatorKind::diag();
  if (name == "shrinkage") return e2d2::EstimatorKind::shrinkage(need("beta"));
  if (name == "crda") return e2d2::EstimatorKind::crda(need("lambda"));
  if (name == "e2d2") return e2d2::EstimatorKind::e2d2(need("lambda"));
  throw e2d2::ValidationError("BadEstimator",
                              "unknown estimator '" + name +
                                  "' (expected mle, lda, diag, shrinkage:B, crda:L, e2d2:L)");
}

std::vector<e2d2::EstimatorKind> parse_estimator_list(const std::string& text) {
  std::vector<e2d2::EstimatorKind> kinds;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) kinds.push_back(parse_estimator(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (kinds.empty()) throw e2d2::ValidationError("BadEstimator", "empty algorithm list");
  return kinds;
}

e2d2::Centering parse_centering(const std::string& text) {
  if (text == "global") return e2d2::Centering::Global;
  if (text == "pooled") return e2d2::Centering::PooledClass;
  throw e2d2::ValidationError("BadCentering", "centering must be 'global' or 'pooled'");
}

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw e2d2::IoError("cannot create directory " + dir + ": " + ec.message());
}

// Shared flags describing a synthetic two-class ground truth.
struct TruthFlags {
  int p = 50;
  std::string structure = "banded";
  int bandwidth = 1;
  int row_support = 2;
  double strength = 0.45;
  double scale = 1.0;
  double mu_sep = 2.0;
  std::uint64_t structure_seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--p", p, "feature dimension")->check(CLI::PositiveNumber);
    cmd->add_option("--structure", structure, "precision pattern: banded or random")
        ->check(CLI::IsMember({"banded", "random"}));
    cmd->add_option("--bandwidth", bandwidth, "band half-width for banded structure")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--row-support", row_support,
                    "off-diagonal partners per row for random structure")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--strength", strength, "off-diagonal value of the truth precision");
    cmd->add_option("--scale", scale, "multiplier applied to the covariance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mu-sep", mu_sep, "Euclidean distance between the class means")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--structure-seed", structure_seed,
                    "seed for the random sparsity pattern");
  }

  e2d2::SyntheticClassSpec spec() const {
    e2d2::SyntheticClassSpec s;
    s.precision.p = p;
    s.precision.structure = structure == "banded"
                                ? e2d2::SparsePrecisionSpec::Structure::Banded
                                : e2d2::SparsePrecisionSpec::Structure::RandomSparse;
    s.precision.bandwidth = bandwidth;
    s.precision.row_support = row_support;
    s.precision.offdiag_strength = strength;
    s.precision.seed = structure_seed;
    s.sigma_scale = scale;
    s.mean_separation = mu_sep;
    return s;
  }
};

struct GlassoFlags {
  e2d2::GlassoConfig cfg;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol", cfg.tol, "outer convergence tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", cfg.max_outer_iters, "outer sweep limit")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--inner-tol", cfg.inner_tol, "inner lasso tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--inner-max-iters", cfg.inner_max_iters, "inner lasso cycle limit")
        ->check(CLI::PositiveNumber);
  }
};

int run_simulate(const TruthFlags& truth_flags, int n_per_class, std::uint64_t seed,
                 const std::string& out_dir) {
  ensure_dir(out_dir);
  const e2d2::GroundTruth truth = e2d2::make_ground_truth(truth_flags.spec());
  e2d2::Rng rng(seed);
  e2d2::LabeledDataset data;
  data.p = truth.sigma.dim();
  for (auto& x : e2d2::sample_mvn(truth.mu_plus, truth.sigma_chol, n_per_class, rng)) {
    data.samples.push_back(std::move(x));
    data.labels.push_back(+1);
  }
  for (auto& x : e2d2::sample_mvn(truth.mu_minus, truth.sigma_chol, n_per_class, rng)) {
    data.samples.push_back(std::move(x));
    data.labels.push_back(-1);
  }
  e2d2::write_dataset_csv_file(join_path(out_dir, "train.csv"), data);
  e2d2::write_vector_file(join_path(out_dir, "mu_plus.txt"), truth.mu_plus);
  e2d2::write_vector_file(join_path(out_dir, "mu_minus.txt"), truth.mu_minus);
  e2d2::write_matrix_file(join_path(out_dir, "sigma.txt"), truth.sigma);
  e2d2::write_matrix_file(join_path(out_dir, "precision.txt"), truth.sigma_inv);

  json summary;
  summary["out_dir"] = out_dir;
  summary["p"] = data.p;
  summary["samples"] = data.size();
  summary["files"] = {"train.csv", "mu_plus.txt", "mu_minus.txt", "sigma.txt", "precision.txt"};
  std::cout << summary.dump() << "\n";
  return 0;
}

int run_glasso(const std::string& input, double lambda, const GlassoFlags& flags,
               const std::string& output, const std::string& w_output) {
  const e2d2::SymMatrix sigma = e2d2::read_matrix_file(input);
  e2d2::GlassoConfig cfg = flags.cfg;
  cfg.lambda = lambda;
  const e2d2::GlassoResult res = e2d2::graphical_lasso(sigma, cfg);
  e2d2::write_matrix_file(output, res.theta);
  if (!w_output.empty()) e2d2::write_matrix_file(w_output, res.w);

  json summary;
  summary["iters"] = res.iters;
  summary["converged"] = res.converged;
  summary["objective"] = res.objective;
  std::cout << summary.dump() << "\n";
  if (!res.converged) {
    json err;
    err["error"] = "NotConverged";
    err["message"] = "glasso stopped after " + std::to_string(res.iters) + " sweeps";
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}

int run_fit(const std::string& data_path, const std::string& estimator,
            const std::string& centering, const GlassoFlags& flags,
            const std::string& output) {
  const e2d2::LabeledDataset data = e2d2::read_dataset_csv_file(data_path);
  const e2d2::LdaModel model = e2d2::fit_lda(data, parse_estimator(estimator),
                                             parse_centering(centering), &flags.cfg);
  e2d2::save_model(output, model);

  json summary;
  summary["model"] = output;
  summary["p"] = model.dim();
  summary["train_samples"] = data.size();
  std::cout << summary.dump() << "\n";
  return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path,
                const std::string& output) {
  const e2d2::LdaModel model = e2d2::load_model(model_path);
  const e2d2::LabeledDataset data = e2d2::read_dataset_csv_file(data_path);
  const e2d2::LdaScorer scorer(model);

  std::ofstream os(output);
  if (!os) throw e2d2::IoError("cannot open for writing: " + output);
  os << "index,label,score,predicted\n";
  e2d2::Confusion confusion;
  for (int i = 0; i < data.size(); ++i) {
    const double s = scorer.score(data.samples[std::size_t(i)]);
    const int predicted = s >= 0.0 ? +1 : -1;
    confusion.add(data.labels[std::size_t(i)], predicted);
    os << i << ',' << data.labels[std::size_t(i)] << ',' << e2d2::format_double(s) << ','
       << predicted << "\n";
  }
  if (!os) throw e2d2::IoError("write failed: " + output);

  const e2d2::ClassificationMetrics m = e2d2::metrics(confusion);
  json summary;
  summary["predictions"] = output;
  summary["samples"] = data.size();
  summary["accuracy"] = m.accuracy;
  summary["f1"] = m.f1.has_value() ? json(*m.f1) : json(nullptr);
  summary["sensitivity"] = m.sensitivity.has_value() ? json(*m.sensitivity) : json(nullptr);
  summary["specificity"] = m.specificity.has_value() ? json(*m.specificity) : json(nullptr);
  std::cout << summary.dump() << "\n";
  return 0;
}

int run_error_rate(const std::string& mu_plus_path, const std::string& mu_minus_path,
                   const std::string& sigma_path, double prior_plus,
                   const std::string& est_mu_plus_path, const std::string& est_mu_minus_path,
                   const std::string& precision_path, int m, double c_rate) {
  const e2d2::Vector mu_plus = e2d2::read_vector_file(mu_plus_path);
  const e2d2::Vector mu_minus = e2d2::read_vector_file(mu_minus_path);
  const e2d2::SymMatrix sigma = e2d2::read_matrix_file(sigma_path);
  const e2d2::Vector est_plus =
      est_mu_plus_path.empty() ? mu_plus : e2d2::read_vector_file(est_mu_plus_path);
  const e2d2::Vector est_minus =
      est_mu_minus_path.empty() ? mu_minus : e2d2::read_vector_file(est_mu_minus_path);
  const e2d2::SymMatrix precision = e2d2::read_matrix_file(precision_path);
  const e2d2::GaussianPair truth(mu_plus, mu_minus, sigma, prior_plus);

  json out;
  try {
    out["error_general"] = e2d2::expected_error_general(truth, est_plus, est_minus, precision);
    out["error_reduced"] = e2d2::expected_error_reduced(est_plus, est_minus, sigma, precision);
  } catch (const e2d2::DegenerateDirection&) {
    out["error_general"] = nullptr;
    out["error_reduced"] = nullptr;
    out["degenerate_direction"] = true;
  }
  out["bound_frobenius"] = e2d2::error_bound_frobenius(est_plus, est_minus, precision, sigma);
  out["bound_rate"] = e2d2::error_bound_rate(est_plus, est_minus, precision, m, c_rate);
  std::cout << out.dump() << "\n";
  return 0;
}

int run_ingest(const std::string& visits_path, const std::string& codemap_path,
               const std::string& targets_text, int horizon, const std::string& policy,
               const std::string& out_path, const std::string& audit_path) {
  std::set<int> targets;
  std::string cur;
  for (char c : targets_text + ",") {
    if (c == ',') {
      if (!cur.empty()) {
        try {
          targets.insert(std::stoi(cur));
        } catch (const std::exception&) {
          throw e2d2::ValidationError("BadTargetCluster", "bad target cluster '" + cur + "'");
        }
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (targets.empty()) {
    throw e2d2::ValidationError("BadTargetCluster", "no target clusters given");
  }
  const auto visits = e2d2::read_visits_csv(visits_path);
  const auto map = e2d2::read_code_map_csv(codemap_path, targets);
  const auto policy_value = policy == "fail" ? e2d2::UnmappedCodePolicy::Fail
                                             : e2d2::UnmappedCodePolicy::SkipWithCount;
  const e2d2::IngestResult res = e2d2::build_frequency_vectors(visits, map, horizon, policy_value);
  e2d2::write_dataset_csv_file(out_path, res.dataset);
  e2d2::write_audit_jsonl_file(audit_path, res.audit);

  int excluded = 0, unmapped = 0;
  for (const auto& a : res.audit) {
    excluded += !a.kept;
    unmapped += a.rows_unmapped;
  }
  json summary;
  summary["patients_in"] = res.audit.size();
  summary["patients_kept"] = res.dataset.size();
  summary["patients_excluded"] = excluded;
  summary["rows_unmapped"] = unmapped;
  summary["dataset"] = out_path;
  summary["audit"] = audit_path;
  std::cout << summary.dump() << "\n";
  return 0;
}

int run_bench_estimators(const TruthFlags& truth_flags, int n_large,
                         const std::vector<int>& sizes, const std::vector<double>& lambdas,
                         int repeats, std::uint64_t seed, const GlassoFlags& flags, int threads,
                         const std::string& out_dir) {
  ensure_dir(out_dir);
  e2d2::EstimatorStudyConfig cfg;
  cfg.truth = truth_flags.spec();
  cfg.n_large_per_class = n_large;
  cfg.sizes_per_class = sizes;
  cfg.lambdas = lambdas;
  cfg.repeats = repeats;
  cfg.base_seed = seed;
  cfg.glasso = flags.cfg;
  cfg.threads = threads;
  const e2d2::EstimatorStudyReport report = e2d2::estimator_error_study(cfg);

  {
    std::ofstream os(join_path(out_dir, "gap_table.csv"));
    e2d2::write_gap_table_csv(os, report);
  }
  {
    std::ofstream os(join_path(out_dir, "estimator_errors.csv"));
    e2d2::write_estimator_errors_csv(os, report);
  }
  {
    std::ofstream os(join_path(out_dir, "error_curves.dat"));
    e2d2::write_error_curves_dat(os, report);
  }

  json summary;
  summary["out_dir"] = out_dir;
  summary["repeats"] = repeats;
  summary["files"] = {"gap_table.csv", "estimator_errors.csv", "error_curves.dat"};
  std::cout << summary.dump() << "\n";
  return 0;
}

int run_bench_classify(const TruthFlags& truth_flags, const std::string& data_path,
                       const std::vector<int>& train_sizes, int test_n,
                       const std::string& algorithms, int repeats, std::uint64_t seed,
                       const std::string& centering, const GlassoFlags& flags, int threads,
                       const std::string& out_dir) {
  ensure_dir(out_dir);
  e2d2::ClassifyBenchConfig cfg;
  if (data_path.empty()) {
    cfg.source = truth_flags.spec();
  } else {
    cfg.source = e2d2::read_dataset_csv_file(data_path);
  }
  cfg.train_sizes_per_class = train_sizes;
  cfg.test_size_per_class = test_n;
  cfg.algorithms = parse_estimator_list(algorithms);
  cfg.repeats = repeats;
  cfg.base_seed = seed;
  cfg.centering = parse_centering(centering);
  cfg.glasso = flags.cfg;
  cfg.threads = threads;
  const e2d2::TrialReport report = e2d2::run_classification_trials(cfg);

  {
    std::ofstream os(join_path(out_dir, "classification.csv"));
    e2d2::write_classification_csv(os, report);
  }

  json summary;
  summary["out_dir"] = out_dir;
  summary["repeats"] = repeats;
  summary["files"] = {"classification.csv"};
  std::cout << summary.dump() << "\n";
  return 0;
}

int error_exit(const std::string& code, const std::string& message, int status) {
  json err;
  err["error"] = code;
  err["message"] = message;
  std::cerr << err.dump() << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covariance-regularized LDA toolkit"};
  app.require_subcommand(1);

  const std::set<std::string> known = {"simulate",        "glasso",  "fit",
                                       "predict",         "error-rate", "ingest",
                                       "bench-estimators", "bench-classify"};
  if (argc >= 2 && argv[1][0] != '-' && !known.count(argv[1])) {
    return error_exit("UnknownSubcommand",
                      std::string("unknown subcommand '") + argv[1] + "'", 64);
  }

  // simulate
  TruthFlags sim_truth;
  int sim_n = 100;
  std::uint64_t sim_seed = 0;
  std::string sim_out = "sim_out";
  auto* sim = app.add_subcommand("simulate", "draw a labeled synthetic dataset plus its truth");
  sim_truth.attach(sim);
  sim->add_option("--n", sim_n, "training samples per class")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "rng seed")->required();
  sim->add_option("--out-dir", sim_out, "output directory");

  // glasso
  std::string gl_input, gl_output = "theta.txt", gl_w_output;
  double gl_lambda = 0.0;
  GlassoFlags gl_flags;
  auto* gl = app.add_subcommand("glasso", "sparse precision estimation from a covariance file");
  gl->add_option("--input", gl_input, "covariance matrix file")->required();
  gl->add_option("--lambda", gl_lambda, "l1 penalty")->required()->check(CLI::NonNegativeNumber);
  gl->add_option("--output", gl_output, "precision output file");
  gl->add_option("--w-output", gl_w_output, "also write the estimated covariance W");
  gl_flags.attach(gl);

  // fit
  std::string fit_data, fit_estimator, fit_centering = "global", fit_output = "model.json";
  GlassoFlags fit_flags;
  auto* fit = app.add_subcommand("fit", "fit an LDA model with a plug-in precision");
  fit->add_option("--data", fit_data, "training dataset CSV")->required();
  fit->add_option("--estimator", fit_estimator,
                  "one of mle, lda, diag, shrinkage:B, crda:L, e2d2:L")
      ->required();
  fit->add_option("--centering", fit_centering, "covariance centering: global or pooled");
  fit->add_option("--output", fit_output, "model JSON path");
  fit_flags.attach(fit);

  // predict
  std::string pred_model, pred_data, pred_output = "predictions.csv";
  auto* pred = app.add_subcommand("predict", "score a dataset with a fitted model");
  pred->add_option("--model", pred_model, "model JSON path")->required();
  pred->add_option("--data", pred_data, "dataset CSV")->required();
  pred->add_option("--output", pred_output, "predictions CSV path");

  // error-rate
  std::string er_mu_plus, er_mu_minus, er_sigma, er_est_plus, er_est_minus, er_precision;
  double er_prior = 0.5, er_c_rate = 1.0;
  int er_m = 100;
  auto* er = app.add_subcommand("error-rate",
                                "closed-form expected error and upper bounds");
  er->add_option("--mu-plus", er_mu_plus, "true positive-class mean (vector file)")->required();
  er->add_option("--mu-minus", er_mu_minus, "true negative-class mean (vector file)")->required();
  er->add_option("--sigma", er_sigma, "true covariance (matrix file)")->required();
  er->add_option("--prior-plus", er_prior, "true positive prior in (0,1)");
  er->add_option("--est-mu-plus", er_est_plus, "estimated positive mean (defaults to truth)");
  er->add_option("--est-mu-minus", er_est_minus, "estimated negative mean (defaults to truth)");
  er->add_option("--precision", er_precision, "plug-in precision (matrix file)")->required();
  er->add_option("--m", er_m, "training sample count for the rate bound")
      ->check(CLI::Range(2, 1 << 30));
  er->add_option("--c-rate", er_c_rate, "rate constant for the stochastic bound")
      ->check(CLI::NonNegativeNumber);

  // ingest
  std::string in_visits, in_codemap, in_targets, in_out = "ehr_dataset.csv",
              in_audit = "ehr_audit.jsonl", in_policy = "skip";
  int in_horizon = 90;
  auto* ing = app.add_subcommand("ingest", "build labeled frequency vectors from visit logs");
  ing->add_option("--visits", in_visits, "visits CSV (patient_id,visit_date,code)")->required();
  ing->add_option("--codemap", in_codemap, "code map CSV (code,cluster)")->required();
  ing->add_option("--target-clusters", in_targets, "comma-separated target cluster ids")
      ->required();
  ing->add_option("--horizon", in_horizon, "pre-diagnosis exclusion window in days")
      ->check(CLI::PositiveNumber);
  ing->add_option("--on-unmapped", in_policy, "skip or fail")
      ->check(CLI::IsMember({"skip", "fail"}));
  ing->add_option("--out", in_out, "output dataset CSV");
  ing->add_option("--audit", in_audit, "output audit JSONL");

  // bench-estimators
  TruthFlags be_truth;
  be_truth.p = 100;
  int be_n_large = 10000, be_repeats = 30, be_threads = 0;
  std::vector<int> be_sizes = {50, 100, 150, 200};
  std::vector<double> be_lambdas = {0.1, 1.0, 10.0};
  std::uint64_t be_seed = 0;
  std::string be_out = "bench_estimators_out";
  GlassoFlags be_flags;
  auto* be = app.add_subcommand("bench-estimators",
                                "l1-distance study of precision estimators vs a large-sample "
                                "reference");
  be_truth.attach(be);
  be->add_option("--n-large", be_n_large, "reference samples per class")
      ->check(CLI::PositiveNumber);
  be->add_option("--sizes", be_sizes, "small training sizes per class")->delimiter(',');
  be->add_option("--lambdas", be_lambdas, "glasso penalties")->delimiter(',');
  be->add_option("--repeats", be_repeats, "trial count")->check(CLI::PositiveNumber);
  be->add_option("--seed", be_seed, "base seed")->required();
  be->add_option("--threads", be_threads, "worker threads (0 = auto)");
  be->add_option("--out-dir", be_out, "output directory");
  be_flags.attach(be);

  // bench-classify
  TruthFlags bc_truth;
  bc_truth.p = 200;
  std::string bc_data;
  std::vector<int> bc_train_sizes = {50};
  int bc_test_n = 500, bc_repeats = 30, bc_threads = 0;
  std::string bc_algorithms = "lda,diag,crda:10,e2d2:10";
  std::string bc_centering = "global";
  std::uint64_t bc_seed = 0;
  std::string bc_out = "bench_classify_out";
  GlassoFlags bc_flags;
  auto* bc = app.add_subcommand("bench-classify",
                                "repeated-trial classification benchmark on synthetic or CSV "
                                "data");
  bc_truth.attach(bc);
  bc->add_option("--data", bc_data, "use this dataset CSV instead of a synthetic truth");
  bc->add_option("--train-sizes", bc_train_sizes, "training sizes per class")->delimiter(',');
  bc->add_option("--test-n", bc_test_n, "test samples per class")->check(CLI::PositiveNumber);
  bc->add_option("--algorithms", bc_algorithms, "comma-separated estimator list");
  bc->add_option("--repeats", bc_repeats, "trial count")->check(CLI::PositiveNumber);
  bc->add_option("--seed", bc_seed, "base seed")->required();
  bc->add_option("--centering", bc_centering, "covariance centering: global or pooled");
  bc->add_option("--threads", bc_threads, "worker threads (0 = auto)");
  bc->add_option("--out-dir", bc_out, "output directory");
  bc_flags.attach(bc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err;
    err["error"] = "BadArguments";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }

  try {
    if (sim->parsed()) return run_simulate(sim_truth, sim_n, sim_seed, sim_out);
    if (gl->parsed()) return run_glasso(gl_input, gl_lambda, gl_flags, gl_output, gl_w_output);
    if (fit->parsed()) return run_fit(fit_data, fit_estimator, fit_centering, fit_flags,
                                      fit_output);
    if (pred->parsed()) return run_predict(pred_model, pred_data, pred_output);
    if (er->parsed()) {
      return run_error_rate(er_mu_plus, er_mu_minus, er_sigma, er_prior, er_est_plus,
                            er_est_minus, er_precision, er_m, er_c_rate);
    }
    if (ing->parsed()) {
      return run_ingest(in_visits, in_codemap, in_targets, in_horizon, in_policy, in_out,
                        in_audit);
    }
    if (be->parsed()) {
      return run_bench_estimators(be_truth, be_n_large, be_sizes, be_lambdas, be_repeats,
                                  be_seed, be_flags, be_threads, be_out);
    }
    if (bc->parsed()) {
      return run_bench_classify(bc_truth, bc_data, bc_train_sizes, bc_test_n, bc_algorithms,
                                bc_repeats, bc_seed, bc_centering, bc_flags, bc_threads,
                                bc_out);
    }
  } catch (const e2d2::NumericalError& e) {
    return error_exit(e.code(), e.what(), 2);
  } catch (const e2d2::Error& e) {
    return error_exit(e.code(), e.what(), 1);
  } catch (const std::exception& e) {
    return error_exit("Internal", e.what(), 1);
  }
  return error_exit("UnknownSubcommand", "no subcommand given", 64);
}
