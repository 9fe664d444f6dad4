// Copyright 2026 The Seedmine Authors
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


#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "seedmine/classifier/example.hpp"
#include "seedmine/classifier/features.hpp"

namespace seedmine::classifier {

struct Hyperparams {
  double learning_rate = 0.5;
  std::size_t epochs = 20;
  double l2 = 0.0;
  std::uint32_t buckets = kDefaultBuckets;
  std::uint32_t max_order = 2;
  std::uint64_t seed = 42;
  double threshold = 0.5;      // used for dev micro-F1 model selection
  int max_restarts = 3;        // learning-rate halvings on a non-finite loss

  void validate() const;
};

void from_json(const nlohmann::json& j, Hyperparams& h);
void to_json(nlohmann::json& j, const Hyperparams& h);

// One-vs-rest logistic regression over hashed n-gram features.
struct ClassifierModel {
  std::vector<std::string> labels;          // sorted
  std::vector<std::vector<double>> weights;  // [label][bucket]
  std::vector<double> bias;
  Hyperparams hyper;
  nlohmann::json metadata = nlohmann::json::object();

  // Raw sigmoid score per label, in label order.
  std::vector<double> scores(const FeatureVector& x) const;

  void save(const std::filesystem::path& path) const;
  static ClassifierModel load(const std::filesystem::path& path);
};

// Seeded SGD, one pass per epoch over a shuffled order; all labels are
// updated from each example. The model with the best dev micro-F1 (first
// such epoch on ties) is returned; with an empty dev set, the last epoch.
// Throws InsufficientData for an empty training set or a dev label absent
// from training, and NonFiniteLoss once the restarts are spent.
ClassifierModel train(const std::vector<Example>& train, const std::vector<Example>& dev, const Hyperparams& hyper);

struct Prediction {
  std::string label;
  double score = 0.0;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

// Labels scoring at least `threshold`, best first (ties by label).
std::vector<Prediction> predict(const ClassifierModel& model, std::string_view text, double threshold = 0.5);

struct LabelMetrics {
  std::size_t tp = 0, fp = 0, fn = 0, support = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
};

struct EvalReport {
  std::map<std::string, LabelMetrics> per_label;
  double micro_precision = 0.0, micro_recall = 0.0, micro_f1 = 0.0;
  double macro_f1 = 0.0;
  // gold label (or "none") -> predicted label (or "none") -> count
  std::map<std::string, std::map<std::string, std::size_t>> cooccurrence;
  std::size_t records = 0;
};

// Precision with no predictions is 1 when there was nothing to find and 0
// otherwise; recall with no positives is 1 without false positives and 0
// with them.
EvalReport score_predictions(const std::vector<std::string>& labels, const std::vector<std::vector<std::string>>& gold,
                             const std::vector<std::vector<std::string>>& predicted);
EvalReport evaluate(const ClassifierModel& model, const std::vector<Example>& test, double threshold = 0.5);
nlohmann::json to_json(const EvalReport& r);

// Per-label training objective, exposed for gradient checking: mean log
// loss over `examples` plus l2/2 * |w|^2, and its gradient.
struct LossGradient {
  double loss = 0.0;
  std::unordered_map<std::uint32_t, double> weights;  // nonzero coordinates only
  double bias = 0.0;
};
LossGradient label_loss_gradient(const ClassifierModel& model, std::size_t label, const std::vector<Example>& examples,
                                 double l2);
double label_loss(const ClassifierModel& model, std::size_t label, const std::vector<Example>& examples, double l2);

struct ClassifyStats {
  std::size_t records = 0;
  std::size_t errors = 0;
};

// Streams newline-delimited records with a "text" field, writing each back
// with "predicted": [{label, score}] appended. A record that cannot be
// classified is still written, with "predicted": [] and an "error" string;
// an unparseable line becomes {"line", "error"}. Output order follows
// input order.
ClassifyStats classify_corpus(const ClassifierModel& model, std::istream& in, std::ostream& out, double threshold,
                              std::size_t threads = 1);

}  // namespace seedmine::classifier
