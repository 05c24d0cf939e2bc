// Copyright 2026 The ILDCC Authors
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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "ildcc/errors.hpp"
#include "ildcc/harness.hpp"

namespace ildcc {

namespace {

constexpr std::string_view kResultsHeader =
    "method,n,trial,seed,status,reason,nodes,fprn_count,sprn_count,budget,laplacian_params,"
    "wiener,wiener_hops,mu,mu_w,mu_w_m,mu_w_backbone_m,e_p,i_r,t_r,e_extra,lambda2,"
    "lambda2_backbone,placement";

// Shortest representation that parses back to the same double.
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw IoError("bad number '" + std::string(s) + "'");
  }
  return v;
}

template <typename T>
T parse_uint(std::string_view s) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw IoError("bad integer '" + std::string(s) + "'");
  }
  return v;
}

std::string sanitize(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '\n' || c == '\r'; },
                  ';');
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << body;
  if (!out) throw IoError("write failed for " + path.string());
}

// n, ildcc_<metric>, sp3d_<metric> from the aggregate means.
std::string plot_vs_n(std::span<const AggregateRow> rows, const std::string& metric) {
  std::map<std::size_t, std::pair<double, double>> by_n;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const AggregateRow& r : rows) {
    auto it = by_n.try_emplace(r.n, nan, nan).first;
    const double mean = r.metric(metric).mean;
    if (r.method == kMethodIldcc) it->second.first = mean;
    if (r.method == kMethodSp3d) it->second.second = mean;
  }
  std::string out = "n,ildcc_" + metric + ",sp3d_" + metric + "\n";
  for (const auto& [n, v] : by_n) {
    out += std::to_string(n) + "," + num(v.first) + "," + num(v.second) + "\n";
  }
  return out;
}

}  // namespace

std::string results_csv(std::span<const TrialResult> results) {
  std::string out(kResultsHeader);
  out += "\n";
  for (const TrialResult& r : results) {
    std::string placement;
    for (std::size_t i = 0; i < r.placement.size(); ++i) {
      if (i) placement += ' ';
      placement += std::to_string(r.placement[i]);
    }
    out += r.method + "," + std::to_string(r.n) + "," + std::to_string(r.trial) + "," +
           std::to_string(r.seed) + "," + (r.ok ? "ok" : "failed") + "," + sanitize(r.reason) +
           "," + std::to_string(r.nodes) + "," + std::to_string(r.fprn_count) + "," +
           std::to_string(r.sprn_count) + "," + std::to_string(r.budget) + "," +
           std::to_string(r.laplacian_params);
    for (double v : {r.wiener, r.wiener_hops, r.mu, r.mu_w, r.mu_w_m, r.mu_w_backbone_m, r.e_p,
                     r.i_r, r.t_r, r.e_extra, r.lambda2, r.lambda2_backbone}) {
      out += "," + num(v);
    }
    out += "," + placement + "\n";
  }
  return out;
}

std::vector<TrialResult> parse_results_csv(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kResultsHeader) {
    throw IoError("results.csv header mismatch");
  }
  const std::size_t columns = split(kResultsHeader, ',').size();
  std::vector<TrialResult> out;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto f = split(lines[li], ',');
    if (f.size() != columns) {
      throw IoError("results.csv line " + std::to_string(li + 1) + ": expected " +
                    std::to_string(columns) + " fields");
    }
    TrialResult r;
    r.method = std::string(f[0]);
    r.n = parse_uint<std::size_t>(f[1]);
    r.trial = parse_uint<std::size_t>(f[2]);
    r.seed = parse_uint<std::uint64_t>(f[3]);
    if (f[4] != "ok" && f[4] != "failed") throw IoError("bad status '" + std::string(f[4]) + "'");
    r.ok = f[4] == "ok";
    r.reason = std::string(f[5]);
    r.nodes = parse_uint<std::size_t>(f[6]);
    r.fprn_count = parse_uint<std::size_t>(f[7]);
    r.sprn_count = parse_uint<std::size_t>(f[8]);
    r.budget = parse_uint<std::size_t>(f[9]);
    r.laplacian_params = parse_uint<std::size_t>(f[10]);
    double* doubles[] = {&r.wiener, &r.wiener_hops, &r.mu,      &r.mu_w,
                         &r.mu_w_m, &r.mu_w_backbone_m, &r.e_p, &r.i_r,
                         &r.t_r,    &r.e_extra,     &r.lambda2, &r.lambda2_backbone};
    for (std::size_t i = 0; i < std::size(doubles); ++i) *doubles[i] = parse_double(f[11 + i]);
    if (!f[23].empty()) {
      for (std::string_view p : split(f[23], ' ')) r.placement.push_back(parse_uint<std::size_t>(p));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string aggregate_csv(std::span<const AggregateRow> rows) {
  std::string out = "method,n,trials,failed";
  if (!rows.empty()) {
    for (const auto& [name, s] : rows.front().metrics) out += "," + name + "_mean," + name + "_sd";
  } else {
    // Column set is fixed; derive it from an empty group.
    const std::vector<TrialResult> one{TrialResult{}};
    const std::vector<AggregateRow> blank = aggregate(one);
    for (const auto& [name, s] : blank.front().metrics) {
      out += "," + name + "_mean," + name + "_sd";
    }
  }
  out += "\n";
  for (const AggregateRow& r : rows) {
    out += r.method + "," + std::to_string(r.n) + "," + std::to_string(r.trials) + "," +
           std::to_string(r.failed);
    for (const auto& [name, s] : r.metrics) out += "," + num(s.mean) + "," + num(s.stddev);
    out += "\n";
  }
  return out;
}

std::string convergence_csv(std::span<const GenerationRecord> history) {
  std::string out = "generation,best_fitness,lambda2,feasible_count\n";
  for (const GenerationRecord& g : history) {
    out += std::to_string(g.generation) + "," + num(g.best_fitness) + "," + num(g.lambda2) + "," +
           std::to_string(g.feasible_count) + "\n";
  }
  return out;
}

std::string traffic_csv(std::span<const TrafficRow> rows) {
  std::string out = "n,traffic,trials,t_r,e_p\n";
  for (const TrafficRow& r : rows) {
    out += std::to_string(r.n) + "," + num(r.traffic) + "," + std::to_string(r.trials) + "," +
           num(r.t_r) + "," + num(r.e_p) + "\n";
  }
  return out;
}

void emit_outputs(std::span<const TrialResult> results, std::span<const TrafficRow> traffic,
                  const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());

  write_file(root / "results.csv", results_csv(results));

  std::string timings = "method,n,trial,wallclock_s,evaluations\n";
  for (const TrialResult& r : results) {
    timings += r.method + "," + std::to_string(r.n) + "," + std::to_string(r.trial) + "," +
               num(r.wallclock) + "," + std::to_string(r.evaluations) + "\n";
  }
  write_file(root / "timings.csv", timings);

  const std::vector<AggregateRow> rows = aggregate(results);
  write_file(root / "aggregate.csv", aggregate_csv(rows));

  for (const TrialResult& r : results) {
    if (r.method != kMethodIldcc || r.history.empty()) continue;
    write_file(root / ("convergence_" + std::to_string(r.n) + "_" + std::to_string(r.trial) +
                       ".csv"),
               convergence_csv(r.history));
  }
  write_file(root / "plotdata_mu_w_vs_n.csv", plot_vs_n(rows, "mu_w"));
  write_file(root / "plotdata_tr_vs_n.csv", plot_vs_n(rows, "t_r"));
  write_file(root / "plotdata_lambda2_vs_n.csv", plot_vs_n(rows, "lambda2"));
  write_file(root / "plotdata_tr_vs_load.csv", traffic_csv(traffic));
}

}  // namespace ildcc
