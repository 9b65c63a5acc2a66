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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "superdiv/corpus.hpp"
#include "superdiv/lexicon.hpp"
#include "superdiv/spreading.hpp"
#include "superdiv/synth.hpp"

namespace superdiv::cli {

// One configuration key. Keys are unique across sections, so the INI file
// and the command line share one flat namespace.
struct OptionSpec {
  std::string_view key;
  std::string_view section;
  std::string_view default_value;
  std::string_view help;
};

std::span<const OptionSpec> option_specs();

// Resolved key -> value text, every known key present.
using Settings = std::map<std::string, std::string, std::less<>>;

// Defaults, overlaid by the INI file (if any), overlaid by `overrides`.
// Throws ConfigError on unknown keys, keys in the wrong section, or an
// unreadable file.
Settings resolve_settings(const std::optional<std::filesystem::path>& ini,
                          const Settings& overrides);

// Reads a flat INI file into section-less key/value pairs.
Settings read_ini(const std::filesystem::path& path);

enum class RegionSource { kGazetteer, kRecords };

struct SweepGrid {
  std::vector<double> range_values;
  std::vector<double> entropy_values;
};

// "lo:hi:step" or a comma-separated list. Throws ConfigError.
std::vector<double> parse_grid(std::string_view key, std::string_view text);

struct RunConfig {
  // input
  std::filesystem::path corpus;
  std::string language;
  IngestOptions ingest;
  // regions
  RegionSource region_source = RegionSource::kGazetteer;
  std::filesystem::path gazetteer;
  NutsLevel level = NutsLevel::kNuts2;
  std::size_t top_k = 0;  // 0 keeps every region
  std::vector<std::string> exclude_regions;
  std::filesystem::path population;
  // lexicons
  std::filesystem::path standard_lexicon;
  LexiconFormat standard_format = LexiconFormat::kSimpleCsv;
  std::filesystem::path swn_lexicon;
  std::filesystem::path badwords_lexicon;
  bool strict_pos = false;
  // spreading and SI
  SpreadingParams spreading;
  std::size_t iterations = 10;
  std::uint64_t base_seed = 0;
  double split_fraction = 0.5;
  std::uint64_t null_seed = 1;
  std::filesystem::path ground_truth;
  // sweep
  SweepGrid sweep;
  std::string sweep_region;
  // classify
  std::filesystem::path labeled_data;
  std::string classifier;
  std::size_t repeats = 10;
  double train_fraction = 0.8;
  std::uint64_t cv_seed = 0;
  double svm_lambda = 1e-3;
  std::size_t svm_epochs = 400;
  // synth
  SynthConfig synth;
  std::size_t synth_vocabulary_size = 600;
  // run
  std::filesystem::path output_dir;
  unsigned jobs = 1;
};

// Typed view of resolved settings. Throws ConfigError naming the key on
// any unparsable or out-of-range value.
RunConfig parse_run_config(const Settings& settings);

// Canonical `key=value` lines in key order; hashed into the manifest.
std::string canonical_settings(const Settings& settings);

}  // namespace superdiv::cli
