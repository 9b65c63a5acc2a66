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

#include "superdiv/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <nlohmann/json.hpp>

#include "superdiv/error.hpp"
#include "superdiv/random.hpp"
#include "superdiv/stats.hpp"
#include "superdiv/text.hpp"

namespace superdiv {

namespace {

constexpr std::array<std::string_view, 3> kMetricNames = {"precision",
                                                          "recall", "f1"};

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  s.defined = values.size();
  if (values.empty()) return s;
  s.mean = mean(values);
  s.stddev = sample_stddev(values);
  return s;
}

}  // namespace

std::optional<SentimentLabel> parse_sentiment_label(std::string_view s) {
  const auto t = to_lower(trim(s));
  if (t == "negative" || t == "neg") return SentimentLabel::kNegative;
  if (t == "neutral" || t == "neu") return SentimentLabel::kNeutral;
  if (t == "positive" || t == "pos") return SentimentLabel::kPositive;
  return std::nullopt;
}

std::string_view to_string(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::kNegative: return "negative";
    case SentimentLabel::kNeutral: return "neutral";
    case SentimentLabel::kPositive: return "positive";
  }
  return "neutral";
}

FeatureRow to_feature_row(const SentimentFeatures& f) {
  return {f.mean,
          f.gmean,
          f.median,
          f.std,
          f.min,
          f.max,
          static_cast<double>(f.count_gt7),
          static_cast<double>(f.count_gt9),
          static_cast<double>(f.count_lt3),
          static_cast<double>(f.count_lt1),
          static_cast<double>(f.length),
          f.has_negation ? 1.0 : 0.0};
}

std::optional<SentimentFeatures> extract_features(const Tweet& tweet,
                                                  const ValenceMap& lexicon) {
  std::vector<double> vals;
  for (const auto& l : tweet.lemmas) {
    if (const auto it = lexicon.find(l.lemma); it != lexicon.end()) {
      vals.push_back(it->second);
    }
  }
  if (vals.size() < kMinMatchedLemmas) return std::nullopt;

  SentimentFeatures f;
  f.matched = vals.size();
  f.length = tweet.lemmas.size();
  f.has_negation = tweet.negated;
  f.mean = mean(vals);
  f.median = median(vals);
  f.std = population_stddev(vals);
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  f.min = *lo;
  f.max = *hi;

  bool any_zero = false;
  long double log_sum = 0.0L;
  for (const double v : vals) {
    if (v > 7.0) ++f.count_gt7;
    if (v > 9.0) ++f.count_gt9;
    if (v < 3.0) ++f.count_lt3;
    if (v < 1.0) ++f.count_lt1;
    if (v == 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(static_cast<long double>(v));
    }
  }
  f.gmean = any_zero ? 0.0
                     : static_cast<double>(
                           std::exp(log_sum / static_cast<long double>(vals.size())));
  return f;
}

std::vector<LabeledTweet> load_labeled_tweets(const std::filesystem::path& path,
                                              const IngestOptions& options) {
  const auto lines = read_lines(path);
  std::vector<LabeledTweet> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    try {
      auto rec = nlohmann::json::parse(lines[i]);
      if (!rec.is_object()) throw DataError("record is not a JSON object");
      const auto label_it = rec.find("label");
      if (label_it == rec.end() || !label_it->is_string()) {
        throw DataError("missing string field 'label'");
      }
      const auto label = parse_sentiment_label(label_it->get<std::string>());
      if (!label) {
        throw DataError("unknown label '" + label_it->get<std::string>() + "'");
      }
      if (!rec.contains("lang")) rec["lang"] = "und";
      out.push_back(LabeledTweet{parse_tweet_record(rec.dump(), options), *label});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string(), i + 1, e.what());
    } catch (const DataError& e) {
      throw ParseError(path.string(), i + 1, e.what());
    }
  }
  return out;
}

void write_labeled_tweets(std::ostream& out,
                          std::span<const LabeledTweet> data) {
  for (const auto& d : data) {
    nlohmann::json rec = nlohmann::json::object();
    rec["id"] = d.tweet.id;
    rec["lang"] = d.tweet.language;
    nlohmann::json lemmas = nlohmann::json::array();
    for (const auto& l : d.tweet.lemmas) {
      lemmas.push_back(nlohmann::json::array({l.lemma, l.pos}));
    }
    rec["lemmas"] = std::move(lemmas);
    rec["negated"] = d.tweet.negated;
    rec["label"] = std::string(to_string(d.label));
    out << rec.dump() << '\n';
  }
}

void MajorityClassifier::fit(std::span<const FeatureRow> /*rows*/,
                             std::span<const SentimentLabel> labels) {
  std::array<std::size_t, kLabelCount> counts{};
  for (const auto l : labels) ++counts[static_cast<std::size_t>(l)];
  majority_ = static_cast<SentimentLabel>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());
}

SentimentLabel MajorityClassifier::predict(const FeatureRow& /*row*/) const {
  return majority_;
}

void LinearSvmClassifier::fit(std::span<const FeatureRow> rows,
                              std::span<const SentimentLabel> labels) {
  if (rows.size() != labels.size() || rows.empty()) {
    throw DataError("LinearSvmClassifier: need matching, non-empty data");
  }
  const std::size_t n = rows.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    double m = 0.0;
    for (const auto& r : rows) m += r[j];
    m *= inv_n;
    double ss = 0.0;
    for (const auto& r : rows) ss += (r[j] - m) * (r[j] - m);
    const double sd = std::sqrt(ss * inv_n);
    center_[j] = m;
    scale_[j] = sd > 0.0 ? 1.0 / sd : 0.0;
  }
  std::vector<FeatureRow> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      z[i][j] = (rows[i][j] - center_[j]) * scale_[j];
    }
  }

  // Standardised columns have unit mean square, so the gradient of the
  // squared hinge term is Lipschitz with constant <= 2 (d + 1).
  const double step =
      1.0 / (options_.lambda + 2.0 * static_cast<double>(kFeatureCount + 1));

  for (std::size_t c = 0; c < kLabelCount; ++c) {
    auto& w = weights_[c];
    double& b = bias_[c];
    w.fill(0.0);
    b = 0.0;
    for (std::size_t epoch = 0; epoch < options_.epochs; ++epoch) {
      FeatureRow grad{};
      double grad_b = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double y = static_cast<std::size_t>(labels[i]) == c ? 1.0 : -1.0;
        double score = b;
        for (std::size_t j = 0; j < kFeatureCount; ++j) score += w[j] * z[i][j];
        const double margin = 1.0 - y * score;
        if (margin <= 0.0) continue;
        const double g = -2.0 * y * margin * inv_n;
        for (std::size_t j = 0; j < kFeatureCount; ++j) grad[j] += g * z[i][j];
        grad_b += g;
      }
      for (std::size_t j = 0; j < kFeatureCount; ++j) {
        w[j] -= step * (grad[j] + options_.lambda * w[j]);
      }
      b -= step * grad_b;
    }
  }
}

SentimentLabel LinearSvmClassifier::predict(const FeatureRow& row) const {
  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t c = 0; c < kLabelCount; ++c) {
    double score = bias_[c];
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      score += weights_[c][j] * (row[j] - center_[j]) * scale_[j];
    }
    if (c == 0 || score > best_score) {
      best = c;
      best_score = score;
    }
  }
  return static_cast<SentimentLabel>(best);
}

EvaluationReport cross_validate(std::span<const LabeledTweet> data,
                                const ValenceMap& lexicon,
                                const ClassifierFactory& make_learner,
                                const CrossValidationOptions& options) {
  if (data.empty()) throw DataError("cross_validate: no labelled data");
  if (options.repeats < 1) throw ConfigError("repeats must be at least 1");
  if (!(options.train_fraction > 0.0 && options.train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie in (0,1)");
  }

  // Features do not depend on the split; extract once.
  std::vector<std::optional<FeatureRow>> features(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (auto f = extract_features(data[i].tweet, lexicon)) {
      features[i] = to_feature_row(*f);
    }
  }

  const auto n_train = static_cast<std::size_t>(std::floor(
      static_cast<double>(data.size()) * options.train_fraction));

  EvaluationReport report;
  std::vector<std::size_t> order(data.size());
  for (std::size_t rep = 0; rep < options.repeats; ++rep) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(options.seed, 0x6376 /* "cv" */, rep));
    shuffle(std::span(order), rng);

    RepeatMetrics m;
    std::vector<FeatureRow> train_rows;
    std::vector<SentimentLabel> train_labels;
    std::vector<FeatureRow> test_rows;
    std::vector<SentimentLabel> test_labels;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::size_t i = order[k];
      if (!features[i]) {
        ++m.dropped;
        continue;
      }
      if (k < n_train) {
        train_rows.push_back(*features[i]);
        train_labels.push_back(data[i].label);
      } else {
        test_rows.push_back(*features[i]);
        test_labels.push_back(data[i].label);
      }
    }
    m.train_size = train_rows.size();
    m.test_size = test_rows.size();
    if (train_rows.empty() || test_rows.empty()) {
      m.skipped = true;
      report.repeats.push_back(m);
      continue;
    }

    auto learner = make_learner();
    learner->fit(train_rows, train_labels);

    std::array<std::size_t, kLabelCount> tp{};
    std::array<std::size_t, kLabelCount> predicted{};
    std::array<std::size_t, kLabelCount> support{};
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test_rows.size(); ++i) {
      const auto p = static_cast<std::size_t>(learner->predict(test_rows[i]));
      const auto t = static_cast<std::size_t>(test_labels[i]);
      ++predicted[p];
      ++support[t];
      if (p == t) {
        ++tp[t];
        ++correct;
      }
    }
    m.accuracy = static_cast<double>(correct) / static_cast<double>(test_rows.size());
    for (std::size_t c = 0; c < kLabelCount; ++c) {
      if (support[c] == 0) continue;
      const double recall = static_cast<double>(tp[c]) / static_cast<double>(support[c]);
      const double precision =
          predicted[c] == 0 ? 0.0
                            : static_cast<double>(tp[c]) / static_cast<double>(predicted[c]);
      const double f1 = precision + recall > 0.0
                            ? 2.0 * precision * recall / (precision + recall)
                            : 0.0;
      m.per_class[c] = ClassMetrics{precision, recall, f1};
    }
    report.repeats.push_back(m);
  }

  std::vector<double> acc;
  std::array<std::array<std::vector<double>, 3>, kLabelCount> values;
  for (const auto& m : report.repeats) {
    if (m.skipped) continue;
    acc.push_back(m.accuracy);
    for (std::size_t c = 0; c < kLabelCount; ++c) {
      const auto& cm = m.per_class[c];
      if (cm.precision) values[c][0].push_back(*cm.precision);
      if (cm.recall) values[c][1].push_back(*cm.recall);
      if (cm.f1) values[c][2].push_back(*cm.f1);
    }
  }
  report.accuracy = summarize(acc);
  for (std::size_t c = 0; c < kLabelCount; ++c) {
    for (std::size_t k = 0; k < 3; ++k) {
      report.per_class[c][k] = summarize(values[c][k]);
    }
  }
  return report;
}

void write_report_header(std::ostream& out) {
  out << "lexicon,class,metric,mean,stddev,defined\n";
}

void write_report_rows(std::ostream& out, std::string_view lexicon_name,
                       const EvaluationReport& report) {
  auto row = [&](std::string_view cls, std::string_view metric,
                 const MetricSummary& s) {
    out << lexicon_name << ',' << cls << ',' << metric << ','
        << format_double(s.mean) << ',' << format_double(s.stddev) << ','
        << s.defined << '\n';
  };
  for (std::size_t c = 0; c < kLabelCount; ++c) {
    for (std::size_t k = 0; k < 3; ++k) {
      row(to_string(static_cast<SentimentLabel>(c)), kMetricNames[k],
          report.per_class[c][k]);
    }
  }
  row("all", "accuracy", report.accuracy);
}

}  // namespace superdiv
