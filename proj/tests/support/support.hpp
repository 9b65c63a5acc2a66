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

// Helpers shared by the unit and acceptance tests: scratch directories and
// brute-force reference implementations written independently of the
// library code they check.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <utility>
#include <vector>

namespace superdiv::testing {

// Directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("superdiv-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return path;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Relative closeness: |a - b| <= tol * max(|a|, |b|).
inline bool close_rel(double a, double b, double tol) {
  if (a == b) return true;
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

namespace oracle {

// Bin k holds [10k/n, 10(k+1)/n); the last bin also holds 10. Linear scan
// over the edges.
inline int bin_of(double v, int n) {
  int k = 0;
  for (int j = 1; j < n; ++j) {
    if (v >= 10.0 * j / n) k = j;
  }
  return k;
}

inline std::vector<int> histogram(const std::vector<double>& vals, int n) {
  std::vector<int> h(n, 0);
  for (double v : vals) h[bin_of(v, n)]++;
  return h;
}

inline double entropy(const std::vector<double>& vals, int n) {
  const auto h = histogram(vals, n);
  double e = 0.0;
  for (int c : h) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(vals.size());
    e -= p * std::log(p);
  }
  return e > 0.0 ? e : 0.0;
}

// Nearest rank: smallest 1-based rank r with r * 100 >= q * n.
inline double percentile(std::vector<double> vals, int q) {
  std::sort(vals.begin(), vals.end());
  const std::size_t n = vals.size();
  std::size_t r = 1;
  while (r * 100 < static_cast<std::size_t>(q) * n) ++r;
  return vals[std::min(r, n) - 1];
}

inline double range(const std::vector<double>& vals) {
  return percentile(vals, 90) - percentile(vals, 10);
}

inline double binned_mode(std::vector<double> vals, int n) {
  std::sort(vals.begin(), vals.end());
  const auto h = histogram(vals, n);
  int best = 0;
  for (int k = 1; k < n; ++k) {
    if (h[k] > h[best]) best = k;
  }
  double sum = 0.0;
  int count = 0;
  for (double v : vals) {
    if (bin_of(v, n) == best) {
      sum += v;
      ++count;
    }
  }
  return sum / count;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  // Naive textbook form in extended precision.
  const std::size_t n = x.size();
  long double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const long double mx = sx / n, my = sy / n;
  long double cxy = 0, cxx = 0, cyy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cxy += (x[i] - mx) * (y[i] - my);
    cxx += (x[i] - mx) * (x[i] - mx);
    cyy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(cxy / (std::sqrt(cxx) * std::sqrt(cyy)));
}

inline double ttr(const std::vector<std::vector<std::string>>& tweets) {
  std::set<std::string> types;
  std::size_t tokens = 0;
  for (const auto& t : tweets) {
    for (const auto& w : t) {
      types.insert(w);
      ++tokens;
    }
  }
  return static_cast<double>(types.size()) / static_cast<double>(tokens);
}

inline double language_entropy(const std::vector<std::string>& langs) {
  std::map<std::string, int> counts;
  for (const auto& l : langs) counts[l]++;
  double e = 0.0;
  for (const auto& [l, c] : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(langs.size());
    e -= p * std::log(p);
  }
  return e > 0.0 ? e : 0.0;
}

struct SpreadOutcome {
  std::vector<std::optional<double>> valence;
  std::size_t rounds = 0;
  // (round, node) of every assignment, seeds at round 0.
  std::vector<std::pair<std::size_t, std::size_t>> log;
};

// Materialises the full state of every round and recomputes every untagged
// node against it.
inline SpreadOutcome spread(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                            const std::map<std::size_t, double>& seeds, double R, double S,
                            int bins = 10) {
  std::vector<std::set<std::size_t>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  SpreadOutcome out;
  out.valence.assign(n, std::nullopt);
  for (const auto& [node, v] : seeds) {
    out.valence[node] = v;
    out.log.emplace_back(0, node);
  }
  if (n == 0) return out;
  while (true) {
    ++out.rounds;
    const auto previous = out.valence;
    bool changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (previous[v]) continue;
      std::vector<double> vals;
      for (std::size_t u : adj[v]) {
        if (previous[u]) vals.push_back(*previous[u]);
      }
      if (vals.empty()) continue;
      if (!(range(vals) < R)) continue;
      if (!(entropy(vals, bins) < S)) continue;
      out.valence[v] = binned_mode(vals, bins);
      out.log.emplace_back(out.rounds, v);
      changed = true;
    }
    if (!changed) break;
  }
  return out;
}

}  // namespace oracle

// Random graph with at most `max_nodes` nodes and seeds covering
// 10-60% of them, valences on a 0.01 grid (so bin edges are hit).
struct RandomSpreadCase {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::map<std::size_t, double> seeds;
  double R = 3.0;
  double S = 1.09;
};

inline RandomSpreadCase random_spread_case(std::mt19937_64& rng, std::size_t max_nodes) {
  RandomSpreadCase c;
  std::uniform_int_distribution<std::size_t> size_dist(1, max_nodes);
  c.n = size_dist(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double density = unit(rng);
  for (std::size_t a = 0; a < c.n; ++a) {
    for (std::size_t b = a + 1; b < c.n; ++b) {
      if (unit(rng) < density) c.edges.emplace_back(a, b);
    }
  }
  const double share = 0.1 + 0.5 * unit(rng);
  const auto n_seeds = std::max<std::size_t>(1, static_cast<std::size_t>(std::round(share * c.n)));
  std::vector<std::size_t> nodes(c.n);
  for (std::size_t i = 0; i < c.n; ++i) nodes[i] = i;
  std::shuffle(nodes.begin(), nodes.end(), rng);
  std::uniform_int_distribution<int> hundredths(0, 1000);
  for (std::size_t i = 0; i < std::min(n_seeds, c.n); ++i) {
    c.seeds[nodes[i]] = hundredths(rng) / 100.0;
  }
  const double Rs[] = {1.0, 3.0, 10.0};
  const double Ss[] = {0.5, 1.09, 2.19};
  c.R = Rs[std::uniform_int_distribution<int>(0, 2)(rng)];
  c.S = Ss[std::uniform_int_distribution<int>(0, 2)(rng)];
  return c;
}

inline std::string node_name(std::size_t i) {
  std::string s = std::to_string(i);
  return "n" + std::string(3 - std::min<std::size_t>(3, s.size()), '0') + s;
}

}  // namespace superdiv::testing
