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

#include <cstddef>
#include <span>
#include <vector>

namespace superdiv {

double mean(std::span<const double> xs);

// Population standard deviation (divides by n).
double population_stddev(std::span<const double> xs);

// Sample standard deviation (divides by n - 1); 0 for fewer than 2 values.
double sample_stddev(std::span<const double> xs);

// Mean of the two middle values for even sizes.
double median(std::span<const double> xs);

// Shannon entropy (natural log) of a frequency table; zero counts
// contribute nothing. Returns 0 for an all-zero table.
double shannon_entropy(std::span<const std::size_t> counts);

// Product-moment correlation, clamped to [-1, 1]. Throws DataError on a
// length mismatch, fewer than two pairs, or a constant input vector.
double pearson(std::span<const double> xs, std::span<const double> ys);

// 1-based ranks with ties replaced by their average rank.
std::vector<double> average_ranks(std::span<const double> xs);

// Pearson correlation of average ranks. Same errors as pearson().
double spearman(std::span<const double> xs, std::span<const double> ys);

}  // namespace superdiv
