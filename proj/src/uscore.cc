// Copyright 2026 The ubench Authors.
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

#include "ubench/uscore.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "ubench/csv.h"
#include "ubench/error.h"

namespace ubench {
namespace {

double Clip01(double v) { return v < 0 ? 0.0 : (v > 1 ? 1.0 : v); }

void CheckBand(const QuantileBand& band) {
  if (!(band.q10 <= band.q90)) {
    throw Error("band " + BandMetricName(band.metric) + "/" + band.scope_key +
                ": q10 exceeds q90");
  }
}

}  // namespace

std::string BandMetricName(BandMetric metric) {
  switch (metric) {
    case BandMetric::kIou: return "iou";
    case BandMetric::kParams: return "params";
    case BandMetric::kFlops: return "flops";
    case BandMetric::kFps: return "fps";
  }
  return "";
}

std::optional<BandMetric> ParseBandMetric(std::string_view text) {
  for (BandMetric m : {BandMetric::kIou, BandMetric::kParams,
                       BandMetric::kFlops, BandMetric::kFps}) {
    if (BandMetricName(m) == text) return m;
  }
  return std::nullopt;
}

void BandSet::Add(const QuantileBand& band) {
  CheckBand(band);
  bands_[{band.metric, band.scope_key}] = band;
}

const QuantileBand* BandSet::Find(BandMetric metric,
                                  std::string_view key) const {
  auto it = bands_.find(std::make_pair(metric, std::string(key)));
  return it == bands_.end() ? nullptr : &it->second;
}

const QuantileBand& BandSet::Require(BandMetric metric,
                                     std::string_view key) const {
  const QuantileBand* b = Find(metric, key);
  if (b == nullptr) {
    throw Error("missing " + BandMetricName(metric) + " band for '" +
                std::string(key) + "'");
  }
  return *b;
}

std::vector<QuantileBand> BandSet::All() const {
  std::vector<QuantileBand> out;
  for (const auto& [k, v] : bands_) out.push_back(v);
  return out;
}

double Quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error("quantile of an empty list");
  if (!(q >= 0 && q <= 1)) throw Error("quantile level outside [0,1]");
  std::sort(values.begin(), values.end());
  const double pos = (values.size() - 1) * q;
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double h = pos - lo;
  return values[lo] + h * (values[hi] - values[lo]);
}

BandSet ComputeBands(const Registry& registry, Scope scope) {
  BandSet out;
  std::map<std::string, std::vector<double>> by_key;
  for (const auto* r : registry.RecordsIn(scope)) {
    by_key[r->DatasetKey()].push_back(r->mean_iou);
  }
  for (auto& [key, values] : by_key) {
    out.Add({BandMetric::kIou, key, Quantile(values, 0.1),
             Quantile(values, 0.9)});
  }
  if (!registry.models.empty()) {
    std::vector<double> p, g, s;
    for (const auto& m : registry.models) {
      p.push_back(m.params);
      g.push_back(m.flops);
      s.push_back(m.fps);
    }
    out.Add({BandMetric::kParams, kGlobalBandKey, Quantile(p, 0.1),
             Quantile(p, 0.9)});
    out.Add({BandMetric::kFlops, kGlobalBandKey, Quantile(g, 0.1),
             Quantile(g, 0.9)});
    out.Add({BandMetric::kFps, kGlobalBandKey, Quantile(s, 0.1),
             Quantile(s, 0.9)});
  }
  return out;
}

BandSet ParseBandsCsv(std::string_view text, std::string_view context) {
  CsvTable t = ParseCsv(text, context);
  std::size_t c_metric = t.Column("metric", context);
  std::size_t c_key = t.Column("scope_key", context);
  std::size_t c_q10 = t.Column("q10", context);
  std::size_t c_q90 = t.Column("q90", context);
  BandSet out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& row : t.rows) {
    std::string where = std::string(context) + ":" + std::to_string(row.line);
    auto metric = ParseBandMetric(row.cells[c_metric]);
    if (!metric) {
      throw Error(where + ": unknown metric '" + row.cells[c_metric] + "'");
    }
    if (!seen.insert({row.cells[c_metric], row.cells[c_key]}).second) {
      throw Error(where + ": duplicate band");
    }
    QuantileBand b{*metric, row.cells[c_key],
                   ParseDouble(row.cells[c_q10], where + ": q10"),
                   ParseDouble(row.cells[c_q90], where + ": q90")};
    if (b.q10 > b.q90) throw Error(where + ": q10 exceeds q90");
    if ((*metric == BandMetric::kParams || *metric == BandMetric::kFlops) &&
        !(b.q10 > 0)) {
      throw Error(where + ": params/flops bands must be positive");
    }
    out.Add(b);
  }
  return out;
}

std::string BandsCsv(const BandSet& bands) {
  std::string out = CsvLine({"metric", "scope_key", "q10", "q90"});
  for (const auto& b : bands.All()) {
    out += CsvLine({BandMetricName(b.metric), b.scope_key, FormatDouble(b.q10),
                    FormatDouble(b.q90)});
  }
  return out;
}

double NormalizeBenefit(double value, const QuantileBand& band) {
  if (band.q90 == band.q10) return value >= band.q10 ? 1.0 : 0.0;
  return Clip01((value - band.q10) / (band.q90 - band.q10));
}

double NormalizeLogCost(double value, const QuantileBand& band) {
  if (!(value > 0)) throw Error("params and flops must be > 0");
  if (!(band.q10 > 0)) throw Error("cost band must be positive");
  if (band.q90 == band.q10) return value <= band.q10 ? 1.0 : 0.0;
  const double hi = std::log(band.q90);
  const double lo = std::log(band.q10);
  return Clip01((hi - std::log(value)) / (hi - lo));
}

Components NormalizeComponents(const RawMetrics& raw,
                               const QuantileBand& accuracy,
                               const QuantileBand& params,
                               const QuantileBand& flops,
                               const QuantileBand& fps) {
  Components c;
  c.a = NormalizeBenefit(raw.accuracy, accuracy);
  c.p = NormalizeLogCost(raw.params, params);
  c.g = NormalizeLogCost(raw.flops, flops);
  c.s = NormalizeBenefit(raw.fps, fps);
  return c;
}

double HarmonicMean(const std::vector<double>& values,
                    const std::vector<double>& weights) {
  if (values.size() != weights.size() || values.empty()) {
    throw Error("harmonic mean: values and weights must match");
  }
  double wsum = 0;
  double denom = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] < 0) throw Error("harmonic mean: negative weight");
    if (weights[i] == 0) continue;
    if (values[i] <= 0) return 0.0;
    wsum += weights[i];
    denom += weights[i] / values[i];
  }
  if (wsum == 0) throw Error("harmonic mean: all weights are zero");
  return wsum / denom;
}

double UScore(double a, double eff, double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) throw Error("alpha outside [0,1]");
  return HarmonicMean({a, eff}, {alpha, 1.0 - alpha});
}

UScoreBreakdown ComputeBreakdown(const RawMetrics& raw,
                                 const QuantileBand& accuracy,
                                 const BandSet& efficiency,
                                 const UScoreConfig& config) {
  Components c = NormalizeComponents(
      raw, accuracy, efficiency.Require(BandMetric::kParams, kGlobalBandKey),
      efficiency.Require(BandMetric::kFlops, kGlobalBandKey),
      efficiency.Require(BandMetric::kFps, kGlobalBandKey));
  if (config.floor > 0) {
    c.a = std::max(c.a, config.floor);
    c.p = std::max(c.p, config.floor);
    c.g = std::max(c.g, config.floor);
    c.s = std::max(c.s, config.floor);
  }
  UScoreBreakdown b;
  b.raw = raw;
  b.a = c.a;
  b.p = c.p;
  b.g = c.g;
  b.s = c.s;
  b.eff = HarmonicMean({c.p, c.g, c.s}, {config.weights[0], config.weights[1],
                                         config.weights[2]});
  b.u = UScore(b.a, b.eff, config.alpha);
  b.weights = config.weights;
  b.alpha = config.alpha;
  return b;
}

std::vector<UScoreBreakdown> ScoreRegistry(const Registry& registry,
                                           Scope scope, const BandSet& bands,
                                           const UScoreConfig& config) {
  std::vector<UScoreBreakdown> out;
  for (const auto* r : registry.RecordsIn(scope)) {
    const ModelCard* m = registry.FindModel(r->model);
    RawMetrics raw{r->mean_iou, m->params, m->flops, m->fps};
    UScoreBreakdown b = ComputeBreakdown(
        raw, bands.Require(BandMetric::kIou, r->DatasetKey()), bands, config);
    b.model = r->model;
    b.dataset = r->DatasetKey();
    b.scope = scope;
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.model != y.model ? x.model < y.model : x.dataset < y.dataset;
  });
  return out;
}

UScoreBreakdown MacroAverage(const std::vector<UScoreBreakdown>& rows) {
  if (rows.empty()) throw Error("macro average of no breakdowns");
  UScoreBreakdown m = rows.front();
  m.dataset.clear();
  m.a = m.p = m.g = m.s = m.eff = m.u = 0;
  m.raw.accuracy = 0;
  for (const auto& r : rows) {
    m.a += r.a;
    m.p += r.p;
    m.g += r.g;
    m.s += r.s;
    m.eff += r.eff;
    m.u += r.u;
    m.raw.accuracy += r.raw.accuracy;
  }
  const double n = static_cast<double>(rows.size());
  m.a /= n;
  m.p /= n;
  m.g /= n;
  m.s /= n;
  m.eff /= n;
  m.u /= n;
  m.raw.accuracy /= n;
  return m;
}

}  // namespace ubench
