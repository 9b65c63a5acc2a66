// Copyright 2026 The superdiv Authors
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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "superdiv/corpus.hpp"
#include "superdiv/lexicon.hpp"

namespace superdiv {

enum class SentimentLabel { kNegative = 0, kNeutral = 1, kPositive = 2 };
inline constexpr std::size_t kLabelCount = 3;

std::optional<SentimentLabel> parse_sentiment_label(std::string_view s);
std::string_view to_string(SentimentLabel label);

// Tweets with fewer matched lemmas get no features.
inline constexpr std::size_t kMinMatchedLemmas = 3;

// Statistics over the lexicon valences of a tweet's matched lemmas.
struct SentimentFeatures {
  double mean = 0.0;
  double gmean = 0.0;   // 0 if any matched valence is 0
  double median = 0.0;
  double std = 0.0;     // population standard deviation
  double min = 0.0;
  double max = 0.0;
  std::size_t count_gt7 = 0;
  std::size_t count_gt9 = 0;
  std::size_t count_lt3 = 0;
  std::size_t count_lt1 = 0;
  std::size_t length = 0;   // all lemmas of the tweet, matched or not
  bool has_negation = false;
  std::size_t matched = 0;

  friend bool operator==(const SentimentFeatures&,
                         const SentimentFeatures&) = default;
};

inline constexpr std::size_t kFeatureCount = 12;
using FeatureRow = std::array<double, kFeatureCount>;

FeatureRow to_feature_row(const SentimentFeatures& f);

std::optional<SentimentFeatures> extract_features(const Tweet& tweet,
                                                  const ValenceMap& lexicon);

struct LabeledTweet {
  Tweet tweet;
  SentimentLabel label = SentimentLabel::kNeutral;
};

// JSONL records with `id`, `lemmas` (or `text`) and `label` in
// {negative, neutral, positive}. Negation and POS filtering follow
// ingest_corpus(); the language filter is ignored. Throws ParseError on a
// malformed record.
std::vector<LabeledTweet> load_labeled_tweets(const std::filesystem::path& path,
                                              const IngestOptions& options);
void write_labeled_tweets(std::ostream& out,
                          std::span<const LabeledTweet> data);

// fit/predict contract for the cross-validation harness.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void fit(std::span<const FeatureRow> rows,
                   std::span<const SentimentLabel> labels) = 0;
  virtual SentimentLabel predict(const FeatureRow& row) const = 0;
};

using ClassifierFactory = std::function<std::unique_ptr<Classifier>()>;

// Predicts the most frequent training label (lowest label on ties).
class MajorityClassifier final : public Classifier {
 public:
  void fit(std::span<const FeatureRow> rows,
           std::span<const SentimentLabel> labels) override;
  SentimentLabel predict(const FeatureRow& row) const override;

 private:
  SentimentLabel majority_ = SentimentLabel::kNeutral;
};

// One-vs-rest linear SVM with squared hinge loss and L2 penalty, fitted by
// full-batch gradient descent on standardised features. Deterministic.
class LinearSvmClassifier final : public Classifier {
 public:
  struct Options {
    double lambda = 1e-3;
    std::size_t epochs = 400;
  };

  LinearSvmClassifier() = default;
  explicit LinearSvmClassifier(Options options) : options_(options) {}

  void fit(std::span<const FeatureRow> rows,
           std::span<const SentimentLabel> labels) override;
  SentimentLabel predict(const FeatureRow& row) const override;

 private:
  Options options_;
  FeatureRow center_{};
  FeatureRow scale_{};
  std::array<FeatureRow, kLabelCount> weights_{};
  std::array<double, kLabelCount> bias_{};
};

struct ClassMetrics {
  // Unset when the class is absent from the test fold.
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;

  friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

struct RepeatMetrics {
  bool skipped = false;  // empty train or test fold after dropping
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::size_t dropped = 0;  // tweets without features in this repeat
  double accuracy = 0.0;
  std::array<ClassMetrics, kLabelCount> per_class{};

  friend bool operator==(const RepeatMetrics&, const RepeatMetrics&) = default;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation over defined repeats
  std::size_t defined = 0;

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

enum class Metric { kPrecision = 0, kRecall = 1, kF1 = 2 };

struct EvaluationReport {
  std::vector<RepeatMetrics> repeats;
  MetricSummary accuracy;
  // [label][metric]
  std::array<std::array<MetricSummary, 3>, kLabelCount> per_class{};

  friend bool operator==(const EvaluationReport&,
                         const EvaluationReport&) = default;
};

struct CrossValidationOptions {
  std::size_t repeats = 10;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
};

// Each repeat draws a seeded random train/test split of `data` (the split
// does not depend on the lexicon, so two lexicons evaluated with the same
// options see identical folds), drops tweets without features, fits a fresh
// learner and scores the test fold. Throws DataError for empty data and
// ConfigError for bad options.
EvaluationReport cross_validate(std::span<const LabeledTweet> data,
                                const ValenceMap& lexicon,
                                const ClassifierFactory& make_learner,
                                const CrossValidationOptions& options);

// `lexicon,class,metric,mean,stddev,defined` rows (class "all" for accuracy).
void write_report_header(std::ostream& out);
void write_report_rows(std::ostream& out, std::string_view lexicon_name,
                       const EvaluationReport& report);

}  // namespace superdiv
