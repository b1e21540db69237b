#pragma once

// Fisher/LDA classifier with an arbitrary plug-in precision matrix. The
// decision statistic is the difference of the two class discriminants
//   delta_c(x) = x'P mu_c - 1/2 mu_c'P mu_c + log pi_c,
// which is the standard well-defined form of the sign-of-log-ratio rule.

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "e2d2/dataset.hpp"
#include "e2d2/errors.hpp"
#include "e2d2/estimators.hpp"
#include "e2d2/matrix.hpp"

namespace e2d2 {

struct LdaModel {
  Vector mu_plus;
  Vector mu_minus;
  SymMatrix precision;  // P-hat, whichever estimator produced it
  double log_prior_plus = 0.0;
  double log_prior_minus = 0.0;

  LdaModel() : precision(1) {}
  LdaModel(Vector mup, Vector mum, SymMatrix prec, double lpp, double lpm)
      : mu_plus(std::move(mup)),
        mu_minus(std::move(mum)),
        precision(std::move(prec)),
        log_prior_plus(lpp),
        log_prior_minus(lpm) {
    if (static_cast<int>(mu_plus.size()) != precision.dim() ||
        mu_plus.size() != mu_minus.size()) {
      throw DimensionMismatch("LdaModel: mean/precision dimensions disagree");
    }
  }

  int dim() const { return precision.dim(); }

  // delta_plus(x) - delta_minus(x); positive means the positive class.
  double score(const Vector& x) const {
    if (x.size() != mu_plus.size()) throw DimensionMismatch("score: input dimension mismatch");
    const Vector pm_plus = matvec(precision, mu_plus);
    const Vector pm_minus = matvec(precision, mu_minus);
    const double delta_plus = dot(x, pm_plus) - 0.5 * dot(mu_plus, pm_plus) + log_prior_plus;
    const double delta_minus = dot(x, pm_minus) - 0.5 * dot(mu_minus, pm_minus) + log_prior_minus;
    return delta_plus - delta_minus;
  }

  // Ties (score exactly 0) go to +1.
  int predict(const Vector& x) const { return score(x) >= 0.0 ? +1 : -1; }
};

inline LdaModel fit_lda(const LabeledDataset& data, const EstimatorKind& kind,
                        Centering centering = Centering::Global,
                        const GlassoConfig* glasso_overrides = nullptr) {
  data.validate();
  const int m_plus = data.count_label(+1);
  const int m_minus = data.count_label(-1);
  if (m_plus == 0 || m_minus == 0) {
    throw SingleClassData("fit_lda: both classes must be present (got " +
                          std::to_string(m_plus) + " positive, " + std::to_string(m_minus) +
                          " negative)");
  }
  Vector mu_plus = mean_vector(data.samples_with_label(+1));
  Vector mu_minus = mean_vector(data.samples_with_label(-1));
  SymMatrix precision = make_precision(data, kind, centering, glasso_overrides);
  const double m = double(data.size());
  return LdaModel(std::move(mu_plus), std::move(mu_minus), std::move(precision),
                  std::log(m_plus / m), std::log(m_minus / m));
}

// A scorer with the precision-mean products precomputed; use for scoring
// many points against one model.
class LdaScorer {
 public:
  explicit LdaScorer(const LdaModel& model)
      : w_(vec_sub(matvec(model.precision, model.mu_plus),
                   matvec(model.precision, model.mu_minus))),
        offset_(-0.5 * bilinear(model.mu_plus, model.precision, model.mu_plus) +
                0.5 * bilinear(model.mu_minus, model.precision, model.mu_minus) +
                model.log_prior_plus - model.log_prior_minus) {}

  double score(const Vector& x) const { return dot(x, w_) + offset_; }
  int predict(const Vector& x) const { return score(x) >= 0.0 ? +1 : -1; }

 private:
  Vector w_;
  double offset_;
};

inline nlohmann::json model_to_json(const LdaModel& model) {
  nlohmann::json j;
  j["p"] = model.dim();
  j["mu_plus"] = model.mu_plus;
  j["mu_minus"] = model.mu_minus;
  j["precision"] = model.precision.data();  // row-major
  j["log_prior_plus"] = model.log_prior_plus;
  j["log_prior_minus"] = model.log_prior_minus;
  return j;
}

inline LdaModel model_from_json(const nlohmann::json& j) {
  try {
    const int p = j.at("p").get<int>();
    Vector mu_plus = j.at("mu_plus").get<Vector>();
    Vector mu_minus = j.at("mu_minus").get<Vector>();
    std::vector<double> prec = j.at("precision").get<std::vector<double>>();
    return LdaModel(std::move(mu_plus), std::move(mu_minus), SymMatrix::from_dense(p, prec),
                    j.at("log_prior_plus").get<double>(), j.at("log_prior_minus").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad model JSON: ") + e.what());
  }
}

inline void save_model(const std::string& path, const LdaModel& model) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << model_to_json(model).dump(2) << "\n";
  if (!os) throw IoError("write failed: " + path);
}

inline LdaModel load_model(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse model JSON " + path + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace e2d2
