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


#include "seedmine/classifier/model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>

#include <spdlog/spdlog.h>

#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/io.hpp"
#include "seedmine/util/rng.hpp"

namespace seedmine::classifier {
namespace {

constexpr char kMagic[8] = {'S', 'E', 'E', 'D', 'C', 'L', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// -log p(y | z) for the logistic model, stable for large |z|.
double log_loss(double z, bool y) { return std::max(z, 0.0) - (y ? z : 0.0) + std::log1p(std::exp(-std::abs(z))); }

double logit(const std::vector<double>& w, double b, const FeatureVector& x) {
  double z = b;
  for (const auto& [i, v] : x.entries) z += w[i] * v;
  return z;
}

double ratio_or(std::size_t num, std::size_t den, double fallback) {
  return den == 0 ? fallback : static_cast<double>(num) / static_cast<double>(den);
}

double f1_of(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

void fill_rates(LabelMetrics& m) {
  m.precision = ratio_or(m.tp, m.tp + m.fp, m.fn == 0 ? 1.0 : 0.0);
  m.recall = ratio_or(m.tp, m.tp + m.fn, m.fp == 0 ? 1.0 : 0.0);
  m.f1 = f1_of(m.precision, m.recall);
}

std::vector<std::string> predicted_labels(const ClassifierModel& m, const FeatureVector& x, double threshold) {
  const auto s = m.scores(x);
  std::vector<std::string> out;
  for (std::size_t l = 0; l < s.size(); ++l) {
    if (s[l] >= threshold) out.push_back(m.labels[l]);
  }
  return out;
}

}  // namespace

void Hyperparams::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::kInvalidParams, "learning_rate must be positive");
  }
  if (epochs == 0) throw Error(ErrorCode::kInvalidParams, "epochs must be >= 1");
  if (!(l2 >= 0.0)) throw Error(ErrorCode::kInvalidParams, "l2 must be >= 0");
  if (buckets == 0 || max_order == 0) throw Error(ErrorCode::kInvalidParams, "buckets and max_order must be >= 1");
  if (max_restarts < 0) throw Error(ErrorCode::kInvalidParams, "max_restarts must be >= 0");
}

void from_json(const nlohmann::json& j, Hyperparams& h) {
  h.learning_rate = j.value("learning_rate", h.learning_rate);
  h.epochs = j.value("epochs", h.epochs);
  h.l2 = j.value("l2", h.l2);
  h.buckets = j.value("buckets", h.buckets);
  h.max_order = j.value("max_order", h.max_order);
  h.seed = j.value("seed", h.seed);
  h.threshold = j.value("threshold", h.threshold);
  h.max_restarts = j.value("max_restarts", h.max_restarts);
}

void to_json(nlohmann::json& j, const Hyperparams& h) {
  j = nlohmann::json{{"learning_rate", h.learning_rate}, {"epochs", h.epochs},       {"l2", h.l2},
                     {"buckets", h.buckets},             {"max_order", h.max_order}, {"seed", h.seed},
                     {"threshold", h.threshold},         {"max_restarts", h.max_restarts}};
}

std::vector<double> ClassifierModel::scores(const FeatureVector& x) const {
  std::vector<double> out(labels.size());
  for (std::size_t l = 0; l < labels.size(); ++l) out[l] = sigmoid(logit(weights[l], bias[l], x));
  return out;
}

ClassifierModel train(const std::vector<Example>& train_set, const std::vector<Example>& dev, const Hyperparams& hyper) {
  hyper.validate();
  if (train_set.empty()) throw Error(ErrorCode::kInsufficientData, "empty training set");
  std::set<std::string> label_set;
  std::map<std::string, std::size_t> counts;
  for (const auto& e : train_set) {
    for (const auto& l : e.labels) {
      label_set.insert(l);
      ++counts[l];
    }
  }
  if (label_set.empty()) throw Error(ErrorCode::kInsufficientData, "training set has no labels");
  for (const auto& e : dev) {
    for (const auto& l : e.labels) {
      if (!label_set.contains(l)) throw Error(ErrorCode::kInsufficientData, "dev label not in training set: " + l);
    }
  }
  const std::vector<std::string> labels(label_set.begin(), label_set.end());
  const std::size_t L = labels.size();

  std::vector<FeatureVector> xs;
  std::vector<std::vector<char>> ys;
  for (const auto& e : train_set) {
    xs.push_back(featurize(e.text, hyper.buckets, hyper.max_order));
    std::vector<char> y(L, 0);
    for (std::size_t l = 0; l < L; ++l) y[l] = std::find(e.labels.begin(), e.labels.end(), labels[l]) != e.labels.end();
    ys.push_back(std::move(y));
  }
  std::vector<FeatureVector> dev_x;
  std::vector<std::vector<std::string>> dev_gold;
  for (const auto& e : dev) {
    dev_x.push_back(featurize(e.text, hyper.buckets, hyper.max_order));
    dev_gold.push_back(e.labels);
  }

  for (int restart = 0; restart <= hyper.max_restarts; ++restart) {
    const double lr = hyper.learning_rate / std::pow(2.0, restart);
    ClassifierModel m;
    m.labels = labels;
    m.weights.assign(L, std::vector<double>(hyper.buckets, 0.0));
    m.bias.assign(L, 0.0);
    m.hyper = hyper;

    ClassifierModel best;
    double best_f1 = -1.0;
    std::size_t best_epoch = 0;
    bool diverged = false;
    std::vector<std::size_t> order(xs.size());

    for (std::size_t epoch = 0; epoch < hyper.epochs && !diverged; ++epoch) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      Rng rng(hash_combine(hyper.seed, epoch));
      rng.shuffle(std::span<std::size_t>(order));
      double loss = 0.0;
      for (std::size_t i : order) {
        const auto& x = xs[i];
        for (std::size_t l = 0; l < L; ++l) {
          auto& w = m.weights[l];
          const double z = logit(w, m.bias[l], x);
          loss += log_loss(z, ys[i][l] != 0);
          const double g = sigmoid(z) - (ys[i][l] != 0 ? 1.0 : 0.0);
          for (const auto& [b, v] : x.entries) w[b] -= lr * (g * v + hyper.l2 * w[b]);
          m.bias[l] -= lr * g;
        }
      }
      if (!std::isfinite(loss)) {
        diverged = true;
        break;
      }
      double f1 = 0.0;
      if (!dev_x.empty()) {
        std::vector<std::vector<std::string>> pred;
        for (const auto& x : dev_x) pred.push_back(predicted_labels(m, x, hyper.threshold));
        f1 = score_predictions(labels, dev_gold, pred).micro_f1;
      }
      spdlog::debug("epoch {} loss {:.6f} dev micro-F1 {:.4f}", epoch, loss / static_cast<double>(xs.size()), f1);
      if (dev_x.empty() || f1 > best_f1) {
        best = m;
        best_f1 = f1;
        best_epoch = epoch;
      }
    }
    if (diverged) {
      spdlog::warn("non-finite loss at learning rate {}; halving", lr);
      continue;
    }

    std::size_t max_count = 0, min_count = SIZE_MAX;
    for (const auto& [l, c] : counts) {
      max_count = std::max(max_count, c);
      min_count = std::min(min_count, c);
    }
    std::size_t negatives = 0;
    for (const auto& e : train_set) negatives += e.labels.empty() ? 1 : 0;
    best.metadata = nlohmann::json{{"train_records", train_set.size()},
                                   {"dev_records", dev.size()},
                                   {"negatives", negatives},
                                   {"label_counts", counts},
                                   {"imbalance_ratio", static_cast<double>(max_count) / static_cast<double>(min_count)},
                                   {"best_epoch", best_epoch},
                                   {"best_dev_micro_f1", dev_x.empty() ? nlohmann::json(nullptr) : nlohmann::json(best_f1)},
                                   {"learning_rate_used", lr},
                                   {"seed", hyper.seed}};
    return best;
  }
  throw Error(ErrorCode::kNonFiniteLoss, "training diverged after " + std::to_string(hyper.max_restarts) +
                                             " learning-rate reductions");
}

std::vector<Prediction> predict(const ClassifierModel& model, std::string_view text, double threshold) {
  const auto x = featurize(text, model.hyper.buckets, model.hyper.max_order);
  const auto s = model.scores(x);
  std::vector<Prediction> out;
  for (std::size_t l = 0; l < s.size(); ++l) {
    if (s[l] >= threshold) out.push_back({model.labels[l], s[l]});
  }
  std::sort(out.begin(), out.end(), [](const Prediction& a, const Prediction& b) {
    return a.score != b.score ? a.score > b.score : a.label < b.label;
  });
  return out;
}

EvalReport score_predictions(const std::vector<std::string>& labels, const std::vector<std::vector<std::string>>& gold,
                             const std::vector<std::vector<std::string>>& predicted) {
  if (gold.size() != predicted.size()) throw Error(ErrorCode::kInvalidParams, "gold and predicted sizes differ");
  EvalReport r;
  r.records = gold.size();
  for (const auto& l : labels) r.per_label[l];
  auto has = [](const std::vector<std::string>& v, const std::string& l) {
    return std::find(v.begin(), v.end(), l) != v.end();
  };
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (const auto& l : labels) {
      auto& m = r.per_label[l];
      const bool g = has(gold[i], l);
      const bool p = has(predicted[i], l);
      m.support += g ? 1 : 0;
      if (g && p) ++m.tp;
      if (!g && p) ++m.fp;
      if (g && !p) ++m.fn;
    }
    const std::vector<std::string> none{"none"};
    const auto& rows = gold[i].empty() ? none : gold[i];
    const auto& cols = predicted[i].empty() ? none : predicted[i];
    for (const auto& g : rows) {
      for (const auto& p : cols) ++r.cooccurrence[g][p];
    }
  }
  LabelMetrics micro;
  double macro = 0.0;
  for (auto& [l, m] : r.per_label) {
    fill_rates(m);
    micro.tp += m.tp;
    micro.fp += m.fp;
    micro.fn += m.fn;
    macro += m.f1;
  }
  fill_rates(micro);
  r.micro_precision = micro.precision;
  r.micro_recall = micro.recall;
  r.micro_f1 = micro.f1;
  r.macro_f1 = r.per_label.empty() ? 0.0 : macro / static_cast<double>(r.per_label.size());
  return r;
}

EvalReport evaluate(const ClassifierModel& model, const std::vector<Example>& test, double threshold) {
  std::vector<std::vector<std::string>> gold, pred;
  for (const auto& e : test) {
    gold.push_back(e.labels);
    pred.push_back(predicted_labels(model, featurize(e.text, model.hyper.buckets, model.hyper.max_order), threshold));
  }
  return score_predictions(model.labels, gold, pred);
}

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [l, m] : r.per_label) {
    per[l] = {{"tp", m.tp},         {"fp", m.fp},         {"fn", m.fn}, {"support", m.support},
              {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
  }
  return nlohmann::json{{"records", r.records},
                        {"per_label", per},
                        {"micro_precision", r.micro_precision},
                        {"micro_recall", r.micro_recall},
                        {"micro_f1", r.micro_f1},
                        {"macro_f1", r.macro_f1},
                        {"cooccurrence", r.cooccurrence}};
}

LossGradient label_loss_gradient(const ClassifierModel& model, std::size_t label, const std::vector<Example>& examples,
                                 double l2) {
  LossGradient out;
  const auto& w = model.weights.at(label);
  const auto& name = model.labels.at(label);
  const double n = static_cast<double>(examples.size());
  for (const auto& e : examples) {
    const auto x = featurize(e.text, model.hyper.buckets, model.hyper.max_order);
    const bool y = std::find(e.labels.begin(), e.labels.end(), name) != e.labels.end();
    const double z = logit(w, model.bias[label], x);
    out.loss += log_loss(z, y) / n;
    const double g = (sigmoid(z) - (y ? 1.0 : 0.0)) / n;
    for (const auto& [b, v] : x.entries) out.weights[b] += g * v;
    out.bias += g;
  }
  for (std::size_t b = 0; b < w.size(); ++b) {
    if (w[b] == 0.0) continue;
    out.loss += 0.5 * l2 * w[b] * w[b];
    out.weights[b] += l2 * w[b];
  }
  return out;
}

double label_loss(const ClassifierModel& model, std::size_t label, const std::vector<Example>& examples, double l2) {
  const auto& w = model.weights.at(label);
  const auto& name = model.labels.at(label);
  double loss = 0.0;
  for (const auto& e : examples) {
    const auto x = featurize(e.text, model.hyper.buckets, model.hyper.max_order);
    const bool y = std::find(e.labels.begin(), e.labels.end(), name) != e.labels.end();
    loss += log_loss(logit(w, model.bias[label], x), y);
  }
  loss /= static_cast<double>(examples.size());
  for (double v : w) loss += 0.5 * l2 * v * v;
  return loss;
}

void ClassifierModel::save(const std::filesystem::path& path) const {
  io::ByteWriter payload;
  payload.u32(hyper.buckets);
  payload.u32(hyper.max_order);
  payload.u32(static_cast<std::uint32_t>(labels.size()));
  for (std::size_t l = 0; l < labels.size(); ++l) {
    payload.str(labels[l]);
    payload.f64(bias[l]);
    std::uint32_t nnz = 0;
    for (double v : weights[l]) nnz += v != 0.0 ? 1 : 0;
    payload.u32(nnz);
    for (std::uint32_t b = 0; b < weights[l].size(); ++b) {
      if (weights[l][b] == 0.0) continue;
      payload.u32(b);
      payload.f64(weights[l][b]);
    }
  }
  payload.str(nlohmann::json(hyper).dump());
  payload.str(metadata.dump());

  io::ByteWriter file;
  file.raw(std::string_view(kMagic, sizeof kMagic));
  file.u32(kVersion);
  file.u32(io::crc32(payload.bytes()));
  file.raw(payload.bytes());
  io::write_file_atomic(path, file.bytes());
}

ClassifierModel ClassifierModel::load(const std::filesystem::path& path) {
  const std::string bytes = io::read_file(path);
  io::ByteReader head(bytes, ErrorCode::kCorruptModel);
  if (head.raw(sizeof kMagic) != std::string_view(kMagic, sizeof kMagic)) {
    throw Error(ErrorCode::kCorruptModel, "bad magic: " + path.string());
  }
  const std::uint32_t version = head.u32();
  if (version != kVersion) {
    throw Error(ErrorCode::kVersionMismatch, "model version " + std::to_string(version) + ", expected " +
                                                 std::to_string(kVersion));
  }
  const std::uint32_t checksum = head.u32();
  const std::string_view body = std::string_view(bytes).substr(sizeof kMagic + 8);
  if (io::crc32(body) != checksum) throw Error(ErrorCode::kCorruptModel, "checksum mismatch: " + path.string());

  io::ByteReader in(body, ErrorCode::kCorruptModel);
  ClassifierModel m;
  const std::uint32_t buckets = in.u32();
  const std::uint32_t max_order = in.u32();
  const std::uint32_t n_labels = in.u32();
  for (std::uint32_t l = 0; l < n_labels; ++l) {
    m.labels.push_back(in.str());
    m.bias.push_back(in.f64());
    std::vector<double> w(buckets, 0.0);
    const std::uint32_t nnz = in.u32();
    for (std::uint32_t k = 0; k < nnz; ++k) {
      const std::uint32_t b = in.u32();
      if (b >= buckets) throw Error(ErrorCode::kCorruptModel, "bucket out of range");
      w[b] = in.f64();
    }
    m.weights.push_back(std::move(w));
  }
  try {
    m.hyper = nlohmann::json::parse(in.str()).get<Hyperparams>();
    m.metadata = nlohmann::json::parse(in.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptModel, std::string("bad model metadata: ") + e.what());
  }
  if (!in.at_end() || m.hyper.buckets != buckets || m.hyper.max_order != max_order) {
    throw Error(ErrorCode::kCorruptModel, "inconsistent model file: " + path.string());
  }
  return m;
}

ClassifyStats classify_corpus(const ClassifierModel& model, std::istream& in, std::ostream& out, double threshold,
                              std::size_t threads) {
  constexpr std::size_t kBlock = 1024;
  ClassifyStats stats;
  std::vector<std::string> lines;
  std::vector<std::string> rendered;
  std::vector<char> failed;
  std::vector<std::size_t> numbers;
  std::size_t line_no = 0;

  auto classify_one = [&](std::size_t i) {
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::exception& e) {
      rendered[i] = nlohmann::json{{"line", numbers[i]}, {"error", std::string("MalformedRecord: ") + e.what()}}.dump();
      failed[i] = 1;
      return;
    }
    nlohmann::json predicted = nlohmann::json::array();
    try {
      if (!rec.is_object() || !rec.contains("text") || !rec.at("text").is_string()) {
        throw Error(ErrorCode::kMalformedRecord, "record has no text field");
      }
      for (const auto& p : predict(model, rec.at("text").get<std::string>(), threshold)) {
        predicted.push_back({{"label", p.label}, {"score", p.score}});
      }
    } catch (const Error& e) {
      if (!rec.is_object()) rec = nlohmann::json{{"line", numbers[i]}};
      rec["error"] = e.what();
      failed[i] = 1;
    }
    rec["predicted"] = std::move(predicted);
    rendered[i] = rec.dump();
  };

  auto flush = [&] {
    rendered.assign(lines.size(), {});
    failed.assign(lines.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < lines.size(); i = next++) classify_one(i);
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::max<std::size_t>(1, threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      out << rendered[i] << '\n';
      ++stats.records;
      if (failed[i]) {
        ++stats.errors;
        spdlog::warn("classify: line {}: {}", numbers[i], rendered[i]);
      }
    }
    lines.clear();
    numbers.clear();
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    numbers.push_back(line_no);
    lines.push_back(std::move(line));
    if (lines.size() == kBlock) flush();
  }
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "read failure while classifying");
  if (!lines.empty()) flush();
  if (!out) throw Error(ErrorCode::kIoFailure, "write failure while classifying");
  return stats;
}

}  // namespace seedmine::classifier
