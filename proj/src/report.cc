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

#include "ubench/report.h"

#include <charconv>
#include <set>

#include "json_views.h"
#include "ubench/csv.h"
#include "ubench/error.h"

namespace ubench {

using json_views::ojson;

namespace {

constexpr char kStar[] = "★";
constexpr char kUp[] = "↑";
constexpr char kDown[] = "↓";

// Scores are fractions; tables show percentages with two decimals.
std::string Percent2(double v) { return FormatFixed(100.0 * v, 2); }

// Markdown cells must not contain a raw pipe.
std::string MdCell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\";
    out.push_back(c);
  }
  return out;
}

std::string MdRow(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const auto& c : cells) out += " " + MdCell(c) + " |";
  return out + "\n";
}

std::string MdRule(std::size_t n, std::size_t left_aligned) {
  std::string out = "|";
  for (std::size_t i = 0; i < n; ++i) out += i < left_aligned ? " --- |" : " ---: |";
  return out + "\n";
}

std::vector<std::string> DatasetColumns(
    const std::vector<LeaderboardEntry>& entries) {
  std::set<std::string> keys;
  for (const auto& e : entries) {
    for (const auto& [k, v] : e.per_dataset) keys.insert(k);
  }
  return {keys.begin(), keys.end()};
}

std::string Annotated(double value, const SignificanceTier* tier) {
  std::string s = Percent2(value);
  if (tier == nullptr) return s;
  std::string g = TierGlyph(*tier);
  return g.empty() ? s : s + " " + g;
}

void RequireFormat(ReportFormat format, bool csv, bool json, bool md,
                   const char* what) {
  bool ok = (format == ReportFormat::kCsv && csv) ||
            (format == ReportFormat::kJson && json) ||
            (format == ReportFormat::kMarkdown && md);
  if (!ok) throw Error(std::string("unsupported format for ") + what);
}

}  // namespace

std::optional<ReportFormat> ParseReportFormat(std::string_view text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  if (text == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::string TierGlyph(const SignificanceTier& tier) {
  int stars = 0;
  switch (tier.tier) {
    case Tier::kP0001: stars = 4; break;
    case Tier::kP001: stars = 3; break;
    case Tier::kP01: stars = 2; break;
    case Tier::kP05: stars = 1; break;
    case Tier::kNotSignificant: return "ns";
    case Tier::kUnavailable: return "";
  }
  std::string out;
  for (int i = 0; i < stars; ++i) out += kStar;
  if (tier.direction == Direction::kImproves) out += kUp;
  if (tier.direction == Direction::kDegrades) out += kDown;
  return out;
}

std::string LegendText(const TierLegend& legend, const std::string& baseline) {
  std::string out = "Significance vs " + baseline + ": ";
  for (int i = 0; i < 4; ++i) {
    for (int s = 0; s < 4 - i; ++s) out += kStar;
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), legend.thresholds[i],
                             std::chars_format::fixed);
    out += " p<" + std::string(buf, res.ptr) + ", ";
  }
  out += "ns not significant; ";
  out += std::string(kUp) + " improves, " + kDown + " degrades.";
  return out;
}

std::string EmitLeaderboard(const LeaderboardReport& report,
                            ReportFormat format) {
  const auto& entries = report.entries;
  const std::vector<std::string> columns = DatasetColumns(entries);
  switch (format) {
    case ReportFormat::kCsv: {
      std::vector<std::string> header = {"rank", "model", "value"};
      for (const auto& c : columns) header.push_back(c);
      header.push_back("tier");
      header.push_back("direction");
      std::string out = CsvLine(header);
      for (const auto& e : entries) {
        std::vector<std::string> row = {std::to_string(e.rank), e.model,
                                        FormatDouble(e.value)};
        for (const auto& c : columns) {
          auto it = e.per_dataset.find(c);
          row.push_back(it == e.per_dataset.end() ? "" : FormatDouble(it->second));
        }
        row.push_back(e.tier ? TierName(e.tier->tier) : "");
        row.push_back(e.tier ? DirectionName(e.tier->direction) : "");
        out += CsvLine(row);
      }
      return out;
    }
    case ReportFormat::kJson: {
      ojson j;
      j["metric"] = LeaderboardMetricName(report.metric);
      j["scope"] = ScopeFlagName(report.scope);
      j["baseline"] = report.baseline;
      j["legend"] = json_views::LegendJson(report.legend);
      j["datasets"] = columns;
      j["entries"] = ojson::array();
      for (const auto& e : entries) {
        j["entries"].push_back(json_views::LeaderboardEntryJson(e));
      }
      return j.dump(2) + "\n";
    }
    case ReportFormat::kMarkdown: {
      if (entries.empty()) throw Error("markdown report needs at least one entry");
      std::vector<std::string> header = {"Rank", "Model", "Avg"};
      for (const auto& c : columns) header.push_back(c);
      std::string out = MdRow(header) + MdRule(header.size(), 2);
      for (const auto& e : entries) {
        std::vector<std::string> row = {
            std::to_string(e.rank), e.model,
            Annotated(e.value, e.tier ? &*e.tier : nullptr)};
        for (const auto& c : columns) {
          auto it = e.per_dataset.find(c);
          if (it == e.per_dataset.end()) {
            row.push_back("-");
            continue;
          }
          auto t = e.per_dataset_tier.find(c);
          row.push_back(Annotated(
              it->second, t == e.per_dataset_tier.end() ? nullptr : &t->second));
        }
        out += MdRow(row);
      }
      if (!report.baseline.empty()) {
        out += "\n" + LegendText(report.legend, report.baseline) + "\n";
      }
      return out;
    }
  }
  throw Error("unsupported format");
}

std::string EmitSignificance(const std::vector<SignificanceCell>& cells,
                             ReportFormat format) {
  RequireFormat(format, true, true, false, "significance");
  if (format == ReportFormat::kJson) {
    ojson arr = ojson::array();
    for (const auto& c : cells) arr.push_back(json_views::SignificanceCellJson(c));
    return arr.dump(2) + "\n";
  }
  std::string out = CsvLine(
      {"model", "dataset", "scope", "t", "df", "p", "tier", "direction"});
  for (const auto& c : cells) {
    std::string t, df, p;
    if (c.test) {
      t = FormatDouble(c.test->t_stat);
      df = std::to_string(c.test->df);
      p = FormatDouble(c.test->p_two_sided);
    }
    out += CsvLine({c.model, c.dataset, ScopeName(c.scope), t, df, p,
                    TierName(c.tier.tier), DirectionName(c.tier.direction)});
  }
  return out;
}

std::string EmitScores(const std::vector<UScoreBreakdown>& rows,
                       ReportFormat format) {
  RequireFormat(format, true, true, false, "scores");
  if (format == ReportFormat::kJson) {
    ojson arr = ojson::array();
    for (const auto& r : rows) arr.push_back(json_views::BreakdownJson(r));
    return arr.dump(2) + "\n";
  }
  std::string out =
      CsvLine({"model", "dataset", "scope", "iou", "params_m", "flops_g", "fps",
               "a", "p", "g", "s", "eff", "u"});
  for (const auto& r : rows) {
    out += CsvLine({r.model, r.dataset, ScopeName(r.scope),
                    FormatDouble(r.raw.accuracy), FormatDouble(r.raw.params),
                    FormatDouble(r.raw.flops), FormatDouble(r.raw.fps),
                    FormatDouble(r.a), FormatDouble(r.p), FormatDouble(r.g),
                    FormatDouble(r.s), FormatDouble(r.eff), FormatDouble(r.u)});
  }
  return out;
}

std::string EmitFamilies(const std::vector<FamilyAggregate>& rows,
                         ReportFormat format) {
  RequireFormat(format, true, true, true, "families");
  if (format == ReportFormat::kJson) {
    ojson arr = ojson::array();
    for (const auto& r : rows) {
      ojson j;
      j["family"] = FamilyName(r.family);
      j["members"] = r.members;
      j["value"] = r.value;
      j["per_dataset"] = r.per_dataset;
      arr.push_back(j);
    }
    return arr.dump(2) + "\n";
  }
  if (format == ReportFormat::kMarkdown) {
    std::string out = MdRow({"Family", "Members", "Avg"}) + MdRule(3, 1);
    for (const auto& r : rows) {
      out += MdRow({FamilyName(r.family), std::to_string(r.members),
                    Percent2(r.value)});
    }
    return out;
  }
  std::string out = CsvLine({"family", "members", "value"});
  for (const auto& r : rows) {
    out += CsvLine({FamilyName(r.family), std::to_string(r.members),
                    FormatDouble(r.value)});
  }
  return out;
}

std::string EmitYearBest(const std::vector<YearBest>& rows,
                         ReportFormat format) {
  if (format == ReportFormat::kJson) {
    ojson arr = ojson::array();
    for (const auto& r : rows) {
      arr.push_back({{"year", r.year}, {"model", r.model}, {"value", r.value}});
    }
    return arr.dump(2) + "\n";
  }
  if (format == ReportFormat::kMarkdown) {
    std::string out = MdRow({"Year", "Model", "Avg"}) + MdRule(3, 2);
    for (const auto& r : rows) {
      out += MdRow({std::to_string(r.year), r.model, Percent2(r.value)});
    }
    return out;
  }
  std::string out = CsvLine({"year", "model", "value"});
  for (const auto& r : rows) {
    out += CsvLine({std::to_string(r.year), r.model, FormatDouble(r.value)});
  }
  return out;
}

std::string EmitProfile(const std::string& dataset,
                        const std::vector<std::string>& sample_names,
                        const DatasetForegroundProfile& profile) {
  ojson j;
  j["dataset"] = dataset;
  j["labels"] = {{"scale", ScaleLabelName(profile.scale_label)},
                 {"shape", ShapeLabelName(profile.shape_label)},
                 {"boundary", BoundaryLabelName(profile.boundary_label)}};
  j["medians"] = {{"area_ratio", profile.median_area_ratio},
                  {"shape_score", profile.median_shape_score},
                  {"blur_score", profile.median_blur_score}};
  j["samples"] = ojson::array();
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const auto& s = profile.samples[i];
    ojson r;
    r["name"] = i < sample_names.size() ? sample_names[i] : std::to_string(i);
    r["area_ratio"] = s.area_ratio;
    r["foreground_area"] = s.foreground_area;
    if (s.shape_defined) {
      r["perimeter"] = s.perimeter;
      r["convex_area"] = s.convex_area;
      r["circularity"] = s.circularity;
      r["solidity"] = s.solidity;
      r["shape_score"] = s.shape_score;
    } else {
      r["shape_score"] = nullptr;
    }
    if (s.boundary_defined) {
      r["boundary_width"] = s.boundary_width;
      r["cnr"] = s.cnr;
      r["w_norm"] = profile.w_norm[i];
      r["c_norm"] = profile.c_norm[i];
      r["blur_score"] = profile.blur_score[i];
    } else {
      r["blur_score"] = nullptr;
    }
    r["band_width"] = s.band_width;
    j["samples"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

std::string EmitRankEval(const RankEval& eval, const std::string& label_kind,
                         const GroupSplit& split) {
  ojson j;
  j["label_kind"] = label_kind;
  j["train_groups"] = split.train;
  j["held_out_groups"] = split.held_out;
  ojson ndcg = ojson::object();
  for (const auto& [k, v] : eval.ndcg) ndcg[std::to_string(k)] = v;
  j["ndcg"] = ndcg;
  j["map"] = eval.map;
  j["spearman"] = eval.spearman;
  j["groups"] = ojson::array();
  for (const auto& g : eval.groups) {
    ojson r;
    r["dataset"] = g.dataset;
    ojson gn = ojson::object();
    for (const auto& [k, v] : g.ndcg) gn[std::to_string(k)] = v;
    r["ndcg"] = gn;
    r["average_precision"] = g.average_precision;
    r["spearman"] = g.spearman;
    j["groups"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

std::string EmitAdvice(const AdviceResult& result, const AdviceQuery& query) {
  return json_views::AdviceJson(result, query).dump(2) + "\n";
}

}  // namespace ubench
