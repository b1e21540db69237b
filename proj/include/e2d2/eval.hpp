#pragma once

// Repeated-trial experiment runner: balanced-split classification benchmarks
// (accuracy / F1 / sensitivity / specificity, mean and std over R trials)
// and the estimator-error study comparing pseudo-inverse LDA, graphical
// lasso, and the de-sparsified estimator against a large-sample reference
// inverse in entrywise l1 distance.
//
// Determinism: trial r always uses seed base_seed + r, results land in
// per-trial slots and are reduced in index order, so reports and the CSV
// files they produce are byte-identical across reruns and thread counts.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "e2d2/dataset.hpp"
#include "e2d2/discriminant.hpp"
#include "e2d2/errors.hpp"
#include "e2d2/estimators.hpp"
#include "e2d2/glasso.hpp"
#include "e2d2/io.hpp"
#include "e2d2/matrix.hpp"
#include "e2d2/synth.hpp"

namespace e2d2 {

struct Confusion {
  long long tp = 0, tn = 0, fp = 0, fn = 0;
  long long total() const { return tp + tn + fp + fn; }

  void add(int truth, int predicted) {
    if (truth == +1) {
      (predicted == +1 ? tp : fn) += 1;
    } else {
      (predicted == -1 ? tn : fp) += 1;
    }
  }
};

struct ClassificationMetrics {
  double accuracy = 0.0;
  std::optional<double> f1;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
};

inline ClassificationMetrics metrics(const Confusion& c) {
  if (c.total() <= 0) throw EmptyConfusion("metrics: empty confusion matrix");
  if (c.tp < 0 || c.tn < 0 || c.fp < 0 || c.fn < 0) {
    throw ValidationError("BadConfusion", "metrics: negative count");
  }
  ClassificationMetrics m;
  m.accuracy = double(c.tp + c.tn) / double(c.total());
  if (2 * c.tp + c.fp + c.fn > 0) m.f1 = double(2 * c.tp) / double(2 * c.tp + c.fp + c.fn);
  if (c.tp + c.fn > 0) m.sensitivity = double(c.tp) / double(c.tp + c.fn);
  if (c.tn + c.fp > 0) m.specificity = double(c.tn) / double(c.tn + c.fp);
  return m;
}

// ---------------------------------------------------------------------------
// Synthetic ground truth
// ---------------------------------------------------------------------------

struct SyntheticClassSpec {
  SparsePrecisionSpec precision;
  double sigma_scale = 1.0;      // Sigma = sigma_scale * inverse(truth precision)
  double mean_separation = 2.0;  // |mu_plus - mu_minus|_2, along (1,..,1)/sqrt(p)
};

struct GroundTruth {
  Vector mu_plus;
  Vector mu_minus;
  SymMatrix sigma;
  SymMatrix sigma_inv;
  CholeskyFactor sigma_chol;
};

inline GroundTruth make_ground_truth(const SyntheticClassSpec& spec) {
  if (!(spec.sigma_scale > 0.0)) throw InvalidSpec("sigma_scale must be > 0");
  if (!(spec.mean_separation >= 0.0)) throw InvalidSpec("mean_separation must be >= 0");
  const SymMatrix theta = make_precision_truth(spec.precision);
  const SymMatrix sigma = sym_scale(invert_spd(theta), spec.sigma_scale);
  const SymMatrix sigma_inv = sym_scale(theta, 1.0 / spec.sigma_scale);
  const int p = spec.precision.p;
  const double half = 0.5 * spec.mean_separation / std::sqrt(double(p));
  Vector mu_plus(std::size_t(p), half), mu_minus(std::size_t(p), -half);
  CholeskyFactor chol = cholesky(sigma);
  return GroundTruth{std::move(mu_plus), std::move(mu_minus), sigma, sigma_inv, std::move(chol)};
}

// ---------------------------------------------------------------------------
// Classification trials
// ---------------------------------------------------------------------------

using DataSource = std::variant<SyntheticClassSpec, LabeledDataset>;

struct ClassifyBenchConfig {
  DataSource source;
  std::vector<int> train_sizes_per_class;
  int test_size_per_class = 0;
  std::vector<EstimatorKind> algorithms;
  int repeats = 30;
  std::uint64_t base_seed = 0;
  Centering centering = Centering::Global;
  GlassoConfig glasso;  // lambda is taken from each EstimatorKind
  int threads = 0;      // 0 -> hardware concurrency
};

struct MetricAggregate {
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;  // trials where the metric was defined
};

struct CellReport {
  EstimatorKind kind;
  int train_per_class = 0;
  MetricAggregate accuracy, f1, sensitivity, specificity;
  std::vector<std::uint64_t> split_hashes;  // one per trial
};

struct TrialReport {
  std::vector<int> train_sizes_per_class;
  std::vector<EstimatorKind> algorithms;
  int repeats = 0;
  std::uint64_t base_seed = 0;
  // cells[size_index * algorithms.size() + algo_index]
  std::vector<CellReport> cells;

  const CellReport& cell(std::size_t size_index, std::size_t algo_index) const {
    return cells[size_index * algorithms.size() + algo_index];
  }
};

namespace detail {

inline std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h) {
  const auto* b = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= b[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t hash_split(const LabeledDataset& train, const LabeledDataset& test) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& x : train.samples) h = fnv1a(x.data(), x.size() * sizeof(double), h);
  for (int l : train.labels) h = fnv1a(&l, sizeof(l), h);
  for (const auto& x : test.samples) h = fnv1a(x.data(), x.size() * sizeof(double), h);
  for (int l : test.labels) h = fnv1a(&l, sizeof(l), h);
  return h;
}

inline MetricAggregate aggregate(const std::vector<std::optional<double>>& values) {
  MetricAggregate agg;
  double sum = 0.0;
  for (const auto& v : values) {
    if (v.has_value()) {
      sum += *v;
      ++agg.count;
    }
  }
  if (agg.count == 0) return agg;
  agg.mean = sum / agg.count;
  if (agg.count > 1) {
    double ss = 0.0;
    for (const auto& v : values) {
      if (v.has_value()) ss += (*v - agg.mean) * (*v - agg.mean);
    }
    agg.stddev = std::sqrt(ss / (agg.count - 1));
  }
  return agg;
}

// Runs fn(trial_index) for each trial on up to `threads` workers. The first
// exception, if any, is rethrown on the calling thread.
template <typename Fn>
void run_trials(int repeats, int threads, Fn&& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, repeats);
  if (threads <= 1) {
    for (int r = 0; r < repeats; ++r) fn(r);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const int r = next.fetch_add(1);
      if (r >= repeats) break;
      try {
        fn(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Balanced draw of n_per_class samples per class from a synthetic truth.
inline LabeledDataset draw_synthetic(const GroundTruth& truth, int n_per_class, Rng& rng) {
  LabeledDataset data;
  data.p = truth.sigma.dim();
  auto plus = sample_mvn(truth.mu_plus, truth.sigma_chol, n_per_class, rng);
  auto minus = sample_mvn(truth.mu_minus, truth.sigma_chol, n_per_class, rng);
  for (auto& x : plus) {
    data.samples.push_back(std::move(x));
    data.labels.push_back(+1);
  }
  for (auto& x : minus) {
    data.samples.push_back(std::move(x));
    data.labels.push_back(-1);
  }
  return data;
}

struct CsvSplitter {
  std::vector<std::size_t> plus_idx, minus_idx;
  const LabeledDataset* data = nullptr;

  explicit CsvSplitter(const LabeledDataset& d) : data(&d) {
    for (std::size_t i = 0; i < d.samples.size(); ++i) {
      (d.labels[i] == +1 ? plus_idx : minus_idx).push_back(i);
    }
  }

  // Disjoint balanced train/test split, shuffled by the trial generator.
  std::pair<LabeledDataset, LabeledDataset> split(int train_per_class, int test_per_class,
                                                  Rng& rng) const {
    const std::size_t need = std::size_t(train_per_class) + std::size_t(test_per_class);
    if (plus_idx.size() < need || minus_idx.size() < need) {
      throw InsufficientData("need " + std::to_string(need) +
                             " samples per class, have +" + std::to_string(plus_idx.size()) +
                             " / -" + std::to_string(minus_idx.size()));
    }
    auto shuffled = [&rng](std::vector<std::size_t> idx) {
      for (std::size_t i = idx.size(); i > 1; --i) {
        const std::size_t j = std::size_t(rng.below(i));
        std::swap(idx[i - 1], idx[j]);
      }
      return idx;
    };
    const auto plus = shuffled(plus_idx);
    const auto minus = shuffled(minus_idx);
    LabeledDataset train, test;
    train.p = test.p = data->p;
    for (int i = 0; i < train_per_class; ++i) {
      train.samples.push_back(data->samples[plus[std::size_t(i)]]);
      train.labels.push_back(+1);
    }
    for (int i = 0; i < train_per_class; ++i) {
      train.samples.push_back(data->samples[minus[std::size_t(i)]]);
      train.labels.push_back(-1);
    }
    for (int i = 0; i < test_per_class; ++i) {
      test.samples.push_back(data->samples[plus[std::size_t(train_per_class) + std::size_t(i)]]);
      test.labels.push_back(+1);
    }
    for (int i = 0; i < test_per_class; ++i) {
      test.samples.push_back(data->samples[minus[std::size_t(train_per_class) + std::size_t(i)]]);
      test.labels.push_back(-1);
    }
    return {std::move(train), std::move(test)};
  }
};

}  // namespace detail

inline Confusion evaluate_model(const LdaModel& model, const LabeledDataset& test) {
  const LdaScorer scorer(model);
  Confusion c;
  for (int i = 0; i < test.size(); ++i) {
    c.add(test.labels[std::size_t(i)], scorer.predict(test.samples[std::size_t(i)]));
  }
  return c;
}

inline TrialReport run_classification_trials(const ClassifyBenchConfig& config) {
  if (config.repeats < 1) throw InvalidSpec("repeats must be >= 1");
  if (config.test_size_per_class < 1) throw InvalidSpec("test size must be >= 1");
  if (config.train_sizes_per_class.empty()) throw InvalidSpec("no training sizes given");
  if (config.algorithms.empty()) throw InvalidSpec("no algorithms given");
  for (int s : config.train_sizes_per_class) {
    if (s < 1) throw InvalidSpec("training sizes must be >= 1");
  }
  for (const auto& kind : config.algorithms) kind.validate();

  const std::size_t n_sizes = config.train_sizes_per_class.size();
  const std::size_t n_algos = config.algorithms.size();
  const std::size_t n_cells = n_sizes * n_algos;
  const int repeats = config.repeats;

  std::optional<GroundTruth> truth;
  std::optional<detail::CsvSplitter> splitter;
  if (std::holds_alternative<SyntheticClassSpec>(config.source)) {
    truth.emplace(make_ground_truth(std::get<SyntheticClassSpec>(config.source)));
  } else {
    const auto& data = std::get<LabeledDataset>(config.source);
    data.validate();
    splitter.emplace(data);
  }

  struct TrialCell {
    ClassificationMetrics metrics;
    std::uint64_t split_hash = 0;
  };
  std::vector<std::vector<TrialCell>> per_trial(
      static_cast<std::size_t>(repeats), std::vector<TrialCell>(n_cells));

  detail::run_trials(repeats, config.threads, [&](int r) {
    Rng rng(config.base_seed + std::uint64_t(r));
    for (std::size_t si = 0; si < n_sizes; ++si) {
      const int train_n = config.train_sizes_per_class[si];
      LabeledDataset train, test;
      if (truth.has_value()) {
        train = detail::draw_synthetic(*truth, train_n, rng);
        test = detail::draw_synthetic(*truth, config.test_size_per_class, rng);
      } else {
        auto split = splitter->split(train_n, config.test_size_per_class, rng);
        train = std::move(split.first);
        test = std::move(split.second);
      }
      for (std::size_t ai = 0; ai < n_algos; ++ai) {
        const LdaModel model =
            fit_lda(train, config.algorithms[ai], config.centering, &config.glasso);
        TrialCell& cell = per_trial[std::size_t(r)][si * n_algos + ai];
        cell.metrics = metrics(evaluate_model(model, test));
        cell.split_hash = detail::hash_split(train, test);
      }
    }
  });

  TrialReport report;
  report.train_sizes_per_class = config.train_sizes_per_class;
  report.algorithms = config.algorithms;
  report.repeats = repeats;
  report.base_seed = config.base_seed;
  report.cells.resize(n_cells);
  for (std::size_t si = 0; si < n_sizes; ++si) {
    for (std::size_t ai = 0; ai < n_algos; ++ai) {
      CellReport& cell = report.cells[si * n_algos + ai];
      cell.kind = config.algorithms[ai];
      cell.train_per_class = config.train_sizes_per_class[si];
      std::vector<std::optional<double>> acc, f1, sens, spec;
      for (int r = 0; r < repeats; ++r) {
        const TrialCell& tc = per_trial[std::size_t(r)][si * n_algos + ai];
        acc.push_back(tc.metrics.accuracy);
        f1.push_back(tc.metrics.f1);
        sens.push_back(tc.metrics.sensitivity);
        spec.push_back(tc.metrics.specificity);
        cell.split_hashes.push_back(tc.split_hash);
      }
      cell.accuracy = detail::aggregate(acc);
      cell.f1 = detail::aggregate(f1);
      cell.sensitivity = detail::aggregate(sens);
      cell.specificity = detail::aggregate(spec);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Estimator error study
// ---------------------------------------------------------------------------

struct EstimatorStudyConfig {
  SyntheticClassSpec truth;
  int n_large_per_class = 10000;       // reference sample size (per class)
  std::vector<int> sizes_per_class;    // small training sizes (per class)
  std::vector<double> lambdas;
  int repeats = 30;
  std::uint64_t base_seed = 0;
  GlassoConfig glasso;  // lambda overridden per cell
  int threads = 0;
};

struct EstimatorStudyCell {
  int size_per_class = 0;
  double lambda = 0.0;
  // Entrywise-l1 distances to the reference inverse, one per trial.
  std::vector<double> lda_l1, crda_l1, e2d2_l1;
  std::vector<double> gaps;  // lda-independent: crda_l1 - e2d2_l1
  double lda_l1_mean = 0.0, crda_l1_mean = 0.0, e2d2_l1_mean = 0.0;
  double gap_mean = 0.0, gap_median = 0.0, gap_positive_fraction = 0.0;
};

struct EstimatorStudyReport {
  std::vector<int> sizes_per_class;
  std::vector<double> lambdas;
  int repeats = 0;
  std::uint64_t base_seed = 0;
  // cells[size_index * lambdas.size() + lambda_index]
  std::vector<EstimatorStudyCell> cells;

  const EstimatorStudyCell& cell(std::size_t size_index, std::size_t lambda_index) const {
    return cells[size_index * lambdas.size() + lambda_index];
  }
};

namespace detail {

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

inline EstimatorStudyReport estimator_error_study(const EstimatorStudyConfig& config) {
  if (config.repeats < 1) throw InvalidSpec("repeats must be >= 1");
  if (config.sizes_per_class.empty()) throw InvalidSpec("no sizes given");
  if (config.lambdas.empty()) throw InvalidSpec("no lambdas given");
  if (config.n_large_per_class < 2) throw InvalidSpec("n_large must be >= 2");
  for (int s : config.sizes_per_class) {
    if (s < 1) throw InvalidSpec("sizes must be >= 1");
  }
  for (double l : config.lambdas) {
    if (l < 0.0 || !std::isfinite(l)) throw InvalidSpec("lambdas must be >= 0");
  }

  const GroundTruth truth = make_ground_truth(config.truth);
  const std::size_t n_sizes = config.sizes_per_class.size();
  const std::size_t n_lambdas = config.lambdas.size();
  const int repeats = config.repeats;

  struct TrialValues {
    std::vector<double> lda;   // per size
    std::vector<double> crda;  // per (size, lambda)
    std::vector<double> e2d2;
  };
  std::vector<TrialValues> per_trial(static_cast<std::size_t>(repeats));

  detail::run_trials(repeats, config.threads, [&](int r) {
    Rng rng(config.base_seed + std::uint64_t(r));
    // Reference: a large balanced draw and the (pseudo-)inverse of its MLE
    // covariance.
    const LabeledDataset big = detail::draw_synthetic(truth, config.n_large_per_class, rng);
    const SymMatrix sigma_large = sample_covariance_mle(big, Centering::Global);
    SymMatrix ref_inv(1);
    try {
      ref_inv = invert_spd(sigma_large);
    } catch (const NotPositiveDefinite&) {
      ref_inv = pseudo_inverse(sigma_large);
    }

    TrialValues out;
    out.lda.resize(n_sizes);
    out.crda.resize(n_sizes * n_lambdas);
    out.e2d2.resize(n_sizes * n_lambdas);
    for (std::size_t si = 0; si < n_sizes; ++si) {
      const LabeledDataset small =
          detail::draw_synthetic(truth, config.sizes_per_class[si], rng);
      const SymMatrix sigma_small = sample_covariance_mle(small, Centering::Global);
      out.lda[si] = norms(sym_sub(ref_inv, pseudo_inverse(sigma_small))).entrywise_l1;
      for (std::size_t li = 0; li < n_lambdas; ++li) {
        GlassoConfig cfg = config.glasso;
        cfg.lambda = config.lambdas[li];
        const GlassoResult g = graphical_lasso(sigma_small, cfg);
        if (!g.converged) {
          throw NotConverged("estimator study: glasso did not converge (size " +
                             std::to_string(config.sizes_per_class[si]) + ", lambda " +
                             std::to_string(cfg.lambda) + ")");
        }
        const SymMatrix t_hat = desparsify(g.theta, sigma_small);
        out.crda[si * n_lambdas + li] = norms(sym_sub(ref_inv, g.theta)).entrywise_l1;
        out.e2d2[si * n_lambdas + li] = norms(sym_sub(ref_inv, t_hat)).entrywise_l1;
      }
    }
    per_trial[std::size_t(r)] = std::move(out);
  });

  EstimatorStudyReport report;
  report.sizes_per_class = config.sizes_per_class;
  report.lambdas = config.lambdas;
  report.repeats = repeats;
  report.base_seed = config.base_seed;
  report.cells.resize(n_sizes * n_lambdas);
  for (std::size_t si = 0; si < n_sizes; ++si) {
    for (std::size_t li = 0; li < n_lambdas; ++li) {
      EstimatorStudyCell& cell = report.cells[si * n_lambdas + li];
      cell.size_per_class = config.sizes_per_class[si];
      cell.lambda = config.lambdas[li];
      int positive = 0;
      for (int r = 0; r < repeats; ++r) {
        const TrialValues& tv = per_trial[std::size_t(r)];
        const double crda = tv.crda[si * n_lambdas + li];
        const double e2d2 = tv.e2d2[si * n_lambdas + li];
        cell.lda_l1.push_back(tv.lda[si]);
        cell.crda_l1.push_back(crda);
        cell.e2d2_l1.push_back(e2d2);
        cell.gaps.push_back(crda - e2d2);
        positive += (crda - e2d2 > 0.0);
        cell.lda_l1_mean += tv.lda[si];
        cell.crda_l1_mean += crda;
        cell.e2d2_l1_mean += e2d2;
        cell.gap_mean += crda - e2d2;
      }
      cell.lda_l1_mean /= repeats;
      cell.crda_l1_mean /= repeats;
      cell.e2d2_l1_mean /= repeats;
      cell.gap_mean /= repeats;
      cell.gap_median = detail::median(cell.gaps);
      cell.gap_positive_fraction = double(positive) / repeats;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Report writers
// ---------------------------------------------------------------------------

// Wide layout: one row per algorithm cell, metric mean/std columns per
// training size.
inline void write_classification_csv(std::ostream& os, const TrialReport& report) {
  os << "algorithm,parameter";
  for (int s : report.train_sizes_per_class) {
    for (const char* m : {"accuracy", "f1", "sensitivity", "specificity"}) {
      os << ',' << m << "_mean_" << s << ',' << m << "_std_" << s;
    }
  }
  os << "\n";
  auto put = [&os](const MetricAggregate& a) {
    if (a.count == 0) {
      os << ",,";
      return;
    }
    os << ',' << format_double(a.mean) << ',' << format_double(a.stddev);
  };
  for (std::size_t ai = 0; ai < report.algorithms.size(); ++ai) {
    os << report.algorithms[ai].name() << ',' << report.algorithms[ai].parameter();
    for (std::size_t si = 0; si < report.train_sizes_per_class.size(); ++si) {
      const CellReport& cell = report.cell(si, ai);
      put(cell.accuracy);
      put(cell.f1);
      put(cell.sensitivity);
      put(cell.specificity);
    }
    os << "\n";
  }
}

inline std::string format_lambda(double l) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", l);
  return buf;
}

// Rows = sample size, columns = lambda; cell value is the mean l1 gap
// (positive when the de-sparsified estimate is the closer one).
inline void write_gap_table_csv(std::ostream& os, const EstimatorStudyReport& report) {
  os << "samples_per_class";
  for (double l : report.lambdas) os << ",gap_mean_lambda" << format_lambda(l);
  os << "\n";
  for (std::size_t si = 0; si < report.sizes_per_class.size(); ++si) {
    os << report.sizes_per_class[si];
    for (std::size_t li = 0; li < report.lambdas.size(); ++li) {
      os << ',' << format_double(report.cell(si, li).gap_mean);
    }
    os << "\n";
  }
}

// Long layout with the per-cell diagnostics.
inline void write_estimator_errors_csv(std::ostream& os, const EstimatorStudyReport& report) {
  os << "samples_per_class,lambda,lda_l1_mean,crda_l1_mean,e2d2_l1_mean,"
        "gap_mean,gap_median,gap_positive_fraction\n";
  for (std::size_t si = 0; si < report.sizes_per_class.size(); ++si) {
    for (std::size_t li = 0; li < report.lambdas.size(); ++li) {
      const EstimatorStudyCell& c = report.cell(si, li);
      os << c.size_per_class << ',' << format_lambda(c.lambda) << ','
         << format_double(c.lda_l1_mean) << ',' << format_double(c.crda_l1_mean) << ','
         << format_double(c.e2d2_l1_mean) << ',' << format_double(c.gap_mean) << ','
         << format_double(c.gap_median) << ',' << format_double(c.gap_positive_fraction)
         << "\n";
    }
  }
}

// Gnuplot-friendly data block: l1 error against sample size, one column per
// estimator/lambda curve.
inline void write_error_curves_dat(std::ostream& os, const EstimatorStudyReport& report) {
  os << "# samples_per_class lda";
  for (double l : report.lambdas) {
    os << " crda_lambda" << format_lambda(l) << " e2d2_lambda" << format_lambda(l);
  }
  os << "\n";
  for (std::size_t si = 0; si < report.sizes_per_class.size(); ++si) {
    os << report.sizes_per_class[si] << ' ' << format_double(report.cell(si, 0).lda_l1_mean);
    for (std::size_t li = 0; li < report.lambdas.size(); ++li) {
      os << ' ' << format_double(report.cell(si, li).crda_l1_mean) << ' '
         << format_double(report.cell(si, li).e2d2_l1_mean);
    }
    os << "\n";
  }
}

}  // namespace e2d2
