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

#include "ubench/cli.h"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <memory>
#include <set>

#include "CLI11.hpp"
#include "ubench/advisor.h"
#include "ubench/api.h"
#include "ubench/csv.h"
#include "ubench/error.h"
#include "ubench/features.h"
#include "ubench/file_io.h"
#include "ubench/foreground.h"
#include "ubench/log.h"
#include "ubench/png_io.h"
#include "ubench/ranker.h"
#include "ubench/registry.h"
#include "ubench/report.h"
#include "ubench/server.h"
#include "ubench/workspace.h"

namespace ubench {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kDefaultHoldout = {"BUSI", "SkinCancer"};

// Writes to `path`, or to `out` when the path is empty.
void Emit(const std::string& path, const std::string& contents,
          std::ostream& out) {
  if (path.empty()) {
    out << contents;
    return;
  }
  bool changed = WriteFileAtomic(path, contents);
  LogInfo(path + (changed ? ": written" : ": unchanged"));
}

Scope ScopeArg(const std::string& text) {
  auto s = ParseScopeFlag(text);
  if (!s) throw UsageError("--scope must be source or target");
  return *s;
}

ReportFormat FormatArg(const std::string& text) {
  auto f = ParseReportFormat(text);
  if (!f) throw UsageError("--format must be csv, json or md");
  return *f;
}

// Options shared by every command that reads a registry.
struct WorkspaceArgs {
  std::string registry;
  std::string bands;
  std::string uscore_values;
  double floor = 0;
  double alpha = 0.5;

  void Attach(CLI::App* cmd, bool scoring) {
    cmd->add_option("--registry", registry, "Registry directory")->required();
    if (!scoring) return;
    cmd->add_option("--bands", bands, "Quantile band override (bands.csv)");
    cmd->add_option("--uscore-values", uscore_values,
                    "Per-dataset U-Score values replacing computed ones");
    cmd->add_option("--floor", floor, "Lower bound for every component")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--alpha", alpha, "Accuracy weight")
        ->check(CLI::Range(0.0, 1.0));
  }

  Workspace Load() const {
    WorkspaceOptions o;
    o.registry_dir = registry;
    if (!bands.empty()) o.bands_path = fs::path(bands);
    if (!uscore_values.empty()) o.uscore_values_path = fs::path(uscore_values);
    o.uscore.floor = floor;
    o.uscore.alpha = alpha;
    return Workspace::Load(o);
  }
};

std::vector<std::string> DefaultHoldout(const Workspace& ws,
                                        const MetricTable& labels) {
  GroupSplit all = SplitGroups(ws.registry(), labels, {});
  std::vector<std::string> out;
  for (const auto& d : kDefaultHoldout) {
    if (std::find(all.train.begin(), all.train.end(), d) != all.train.end()) {
      out.push_back(d);
    }
  }
  return out;
}

LabelKind LabelKindArg(const std::string& text) {
  auto k = ParseLabelKind(text);
  if (!k) throw UsageError("--label-kind must be iou or uscore");
  return *k;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Benchmark scoring and model selection for segmentation zoos",
               "ubench"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  // ingest
  struct {
    std::string from, models, datasets, transfers, records, means, traits,
        registry;
  } ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Validate inputs and write a canonical registry");
  c_ingest->add_option("--from", ingest.from, "Directory holding the input files");
  c_ingest->add_option("--models", ingest.models, "models.json");
  c_ingest->add_option("--datasets", ingest.datasets, "datasets.json");
  c_ingest->add_option("--transfers", ingest.transfers, "transfers.csv");
  c_ingest->add_option("--records", ingest.records, "records.csv");
  c_ingest->add_option("--means", ingest.means, "means.csv");
  c_ingest->add_option("--traits", ingest.traits, "traits.csv with dataset scale, shape and boundary");
  c_ingest->add_option("--registry", ingest.registry, "Output registry directory")->required();

  // characterize
  struct {
    std::string masks, images, dataset, out, registry;
    ForegroundConfig cfg;
  } chr;
  auto* c_chr = app.add_subcommand("characterize", "Foreground scale, shape and boundary profile of a mask set");
  c_chr->add_option("--masks", chr.masks, "Directory of mask PNGs")->required();
  c_chr->add_option("--images", chr.images, "Directory of image PNGs with matching names")->required();
  c_chr->add_option("--dataset", chr.dataset, "Dataset name")->required();
  c_chr->add_option("--out", chr.out, "Profile JSON path");
  c_chr->add_option("--registry", chr.registry, "Registry whose traits.csv is updated");
  c_chr->add_option("--ring-radius", chr.cfg.ring_radius)->check(CLI::PositiveNumber);
  c_chr->add_option("--band-width", chr.cfg.band_width)->check(CLI::PositiveNumber);
  c_chr->add_option("--epsilon", chr.cfg.epsilon)->check(CLI::PositiveNumber);

  // score
  WorkspaceArgs score_ws;
  std::string score_scope = "source", score_out, score_format = "csv", score_bands_out;
  auto* c_score = app.add_subcommand("score", "U-Score breakdown per (model, dataset)");
  score_ws.Attach(c_score, true);
  c_score->add_option("--scope", score_scope, "source|target");
  c_score->add_option("--out", score_out);
  c_score->add_option("--format", score_format, "csv|json");
  c_score->add_option("--bands-out", score_bands_out, "Write the bands used");

  // significance
  WorkspaceArgs sig_ws;
  std::string sig_baseline = kDefaultBaseline, sig_scope = "source", sig_out, sig_format = "csv";
  auto* c_sig = app.add_subcommand("significance", "Paired t-tests of every model against a baseline");
  sig_ws.Attach(c_sig, false);
  c_sig->add_option("--baseline", sig_baseline);
  c_sig->add_option("--scope", sig_scope, "source|target");
  c_sig->add_option("--out", sig_out);
  c_sig->add_option("--format", sig_format, "csv|json");

  // leaderboard
  WorkspaceArgs lb_ws;
  std::string lb_metric = "iou", lb_scope = "source", lb_format = "md", lb_out,
              lb_baseline = kDefaultBaseline, lb_view = "entries";
  int lb_top = 0;
  auto* c_lb = app.add_subcommand("leaderboard", "Ranked models by mean IoU or U-Score");
  lb_ws.Attach(c_lb, true);
  c_lb->add_option("--metric", lb_metric, "iou|uscore");
  c_lb->add_option("--scope", lb_scope, "source|target");
  c_lb->add_option("--format", lb_format, "csv|json|md");
  c_lb->add_option("--out", lb_out);
  auto* lb_baseline_opt = c_lb->add_option("--baseline", lb_baseline);
  c_lb->add_option("--view", lb_view, "entries|families|yearly");
  c_lb->add_option("--top", lb_top, "Keep the first N entries")->check(CLI::NonNegativeNumber);

  // advisor-train
  WorkspaceArgs tr_ws;
  std::string tr_kind = "uscore", tr_out;
  std::vector<std::string> tr_holdout;
  bool tr_no_holdout = false;
  RankerConfig tr_cfg;
  auto* c_tr = app.add_subcommand("advisor-train", "Fit the pairwise ranking advisor");
  tr_ws.Attach(c_tr, true);
  c_tr->add_option("--label-kind", tr_kind, "iou|uscore");
  c_tr->add_option("--out", tr_out, "ranker.json")->required();
  c_tr->add_option("--holdout", tr_holdout, "Datasets kept out of training")->delimiter(',');
  c_tr->add_flag("--no-holdout", tr_no_holdout, "Train on every source dataset");
  c_tr->add_option("--seed", tr_cfg.seed);
  c_tr->add_option("--rounds", tr_cfg.rounds)->check(CLI::NonNegativeNumber);
  c_tr->add_option("--max-depth", tr_cfg.max_depth)->check(CLI::PositiveNumber);
  c_tr->add_option("--learning-rate", tr_cfg.learning_rate)->check(CLI::PositiveNumber);
  c_tr->add_option("--min-leaf", tr_cfg.min_leaf)->check(CLI::PositiveNumber);

  // advisor-eval
  WorkspaceArgs ev_ws;
  std::string ev_ranker, ev_out;
  std::vector<std::string> ev_holdout;
  std::vector<int> ev_ks = {5, 20};
  double ev_relevant_at = 0.75;
  auto* c_ev = app.add_subcommand("advisor-eval", "NDCG, MAP and Spearman on held-out datasets");
  ev_ws.Attach(c_ev, true);
  c_ev->add_option("--ranker", ev_ranker)->required();
  c_ev->add_option("--holdout", ev_holdout, "Evaluation datasets")->delimiter(',');
  c_ev->add_option("--k", ev_ks, "NDCG cutoffs")->delimiter(',');
  c_ev->add_option("--relevant-at", ev_relevant_at, "Relevance counted as relevant for MAP")
      ->check(CLI::Range(0.0, 1.0));
  c_ev->add_option("--out", ev_out);

  // advise
  WorkspaceArgs ad_ws;
  std::string ad_ranker, ad_dataset, ad_modality, ad_scale, ad_shape, ad_boundary,
      ad_storage, ad_compute, ad_speed, ad_out;
  int ad_k = 10;
  auto* c_ad = app.add_subcommand("advise", "Recommend models for dataset traits and resource limits");
  ad_ws.Attach(c_ad, true);
  c_ad->add_option("--ranker", ad_ranker)->required();
  c_ad->add_option("--dataset", ad_dataset, "Take traits from a registered dataset");
  c_ad->add_option("--modality", ad_modality);
  c_ad->add_option("--scale", ad_scale, "small|large");
  c_ad->add_option("--shape", ad_shape, "irregular|regular");
  c_ad->add_option("--boundary", ad_boundary, "clear|blur");
  c_ad->add_option("--storage", ad_storage, "Largest allowed: Tiny|Small|Medium|Large");
  c_ad->add_option("--compute", ad_compute, "Largest allowed: Low|Medium|High");
  c_ad->add_option("--speed", ad_speed, "Slowest allowed: Slow|Medium|Fast");
  c_ad->add_option("--k", ad_k, "Result count")->check(CLI::PositiveNumber);
  c_ad->add_option("--out", ad_out);

  // serve
  WorkspaceArgs sv_ws;
  std::vector<std::string> sv_rankers;
  ServeOptions sv_opts;
  std::string sv_baseline = kDefaultBaseline;
  auto* c_sv = app.add_subcommand("serve", "Read-only HTTP JSON API");
  sv_ws.Attach(c_sv, true);
  c_sv->add_option("--ranker", sv_rankers, "ranker.json, one per label kind");
  c_sv->add_option("--port", sv_opts.port)->check(CLI::Range(0, 65535));
  c_sv->add_option("--host", sv_opts.host);
  c_sv->add_option("--baseline", sv_baseline);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ubench: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty()
                              ? &app
                              : app.get_subcommands().front();
    err << sub->help();
    return 2;
  }

  try {
    if (c_ingest->parsed()) {
      fs::path from = ingest.from;
      auto pick = [&](const std::string& flag, const char* name,
                      bool required) -> std::string {
        if (!flag.empty()) return ReadFile(flag);
        if (!ingest.from.empty() && fs::exists(from / name)) {
          return ReadFile(from / name);
        }
        if (required) {
          throw UsageError(std::string("ingest needs ") + name +
                           " (use --from or --" +
                           std::string(name).substr(0, std::string(name).find('.')) +
                           ")");
        }
        return "";
      };
      RegistryFiles files;
      files.models_json = pick(ingest.models, kModelsFile, true);
      files.datasets_json = pick(ingest.datasets, kDatasetsFile, true);
      files.transfers_csv = pick(ingest.transfers, kTransfersFile, false);
      files.records_csv = pick(ingest.records, kRecordsFile, false);
      files.means_csv = pick(ingest.means, kMeansFile, false);
      Snapshot snap(LoadRegistry(files));
      int changed = WriteRegistryDir(ingest.registry, snap.registry());
      const Registry& r = snap.registry();
      std::string traits_csv = pick(ingest.traits, kTraitsFile, false);
      if (!traits_csv.empty()) {
        auto traits = ParseTraitsCsv(traits_csv, r);
        if (WriteFileAtomic(fs::path(ingest.registry) / kTraitsFile, TraitsCsv(traits))) {
          ++changed;
        }
      }
      out << "models " << r.models.size() << "\n"
          << "datasets " << r.datasets.size() << "\n"
          << "transfers " << r.transfers.size() << "\n"
          << "records " << r.records.size() << "\n"
          << "digest " << snap.digest() << "\n";
      LogInfo(std::to_string(changed) + " registry files changed");
      return 0;
    }

    if (c_chr->parsed()) {
      if (!fs::is_directory(chr.masks)) throw Error("not a directory: " + chr.masks);
      std::vector<fs::path> masks;
      for (const auto& e : fs::directory_iterator(chr.masks)) {
        if (e.is_regular_file() && e.path().extension() == ".png") {
          masks.push_back(e.path());
        }
      }
      std::sort(masks.begin(), masks.end());
      if (masks.empty()) throw Error("no .png masks in " + chr.masks);
      std::vector<MaskImagePair> samples;
      std::vector<std::string> names;
      for (const auto& m : masks) {
        fs::path img = fs::path(chr.images) / m.filename();
        if (!fs::exists(img)) throw Error("missing image for mask " + m.string());
        samples.push_back({ReadMaskPng(m), ReadGrayPng(img)});
        names.push_back(m.filename().string());
      }
      DatasetForegroundProfile prof = CharacterizeDataset(samples, chr.cfg);
      Emit(chr.out, EmitProfile(chr.dataset, names, prof), out);
      if (!chr.registry.empty()) {
        Registry reg = LoadRegistry(ReadRegistryDir(chr.registry));
        const DatasetCard* card = reg.FindDataset(chr.dataset);
        if (card == nullptr) throw Error("unknown dataset '" + chr.dataset + "'");
        fs::path tp = fs::path(chr.registry) / kTraitsFile;
        std::map<std::string, DatasetTraits> traits;
        if (fs::exists(tp)) traits = ParseTraitsCsv(ReadFile(tp), reg);
        DatasetTraits t;
        t.modality = card->modality;
        t.scale = prof.scale_label;
        t.shape = prof.shape_label;
        t.boundary = prof.boundary_label;
        traits[card->name] = t;
        Emit(tp.string(), TraitsCsv(traits), out);
      }
      return 0;
    }

    if (c_score->parsed()) {
      Scope scope = ScopeArg(score_scope);
      ReportFormat fmt = FormatArg(score_format);
      Workspace ws = score_ws.Load();
      Emit(score_out, EmitScores(ws.Scores(scope), fmt), out);
      if (!score_bands_out.empty()) {
        Emit(score_bands_out, BandsCsv(ws.Bands(scope)), out);
      }
      return 0;
    }

    if (c_sig->parsed()) {
      Scope scope = ScopeArg(sig_scope);
      ReportFormat fmt = FormatArg(sig_format);
      Workspace ws = sig_ws.Load();
      Emit(sig_out, EmitSignificance(ws.Significance(sig_baseline, scope), fmt), out);
      return 0;
    }

    if (c_lb->parsed()) {
      auto metric = ParseLeaderboardMetric(lb_metric);
      if (!metric) throw UsageError("--metric must be iou or uscore");
      Scope scope = ScopeArg(lb_scope);
      ReportFormat fmt = FormatArg(lb_format);
      Workspace ws = lb_ws.Load();
      std::string baseline = lb_baseline;
      if (ws.registry().FindModel(baseline) == nullptr) {
        if (lb_baseline_opt->count() > 0) {
          throw Error("unknown baseline model '" + baseline + "'");
        }
        baseline.clear();
      }
      if (lb_view == "families") {
        Emit(lb_out, EmitFamilies(AggregateByFamily(ws.Table(*metric, scope),
                                                    ws.registry()),
                                  fmt),
             out);
        return 0;
      }
      if (lb_view == "yearly") {
        Emit(lb_out,
             EmitYearBest(BestPerYear(ws.Table(*metric, scope), ws.registry()), fmt),
             out);
        return 0;
      }
      if (lb_view != "entries") {
        throw UsageError("--view must be entries, families or yearly");
      }
      LeaderboardReport report;
      report.metric = *metric;
      report.scope = scope;
      report.baseline = baseline;
      report.entries = ws.Leaderboard(*metric, scope, baseline);
      if (lb_top > 0 && static_cast<int>(report.entries.size()) > lb_top) {
        report.entries.resize(lb_top);
      }
      Emit(lb_out, EmitLeaderboard(report, fmt), out);
      return 0;
    }

    if (c_tr->parsed()) {
      LabelKind kind = LabelKindArg(tr_kind);
      Workspace ws = tr_ws.Load();
      MetricTable labels = ws.Labels(kind);
      std::vector<std::string> holdout;
      if (!tr_no_holdout) {
        holdout = tr_holdout.empty() ? DefaultHoldout(ws, labels) : tr_holdout;
      }
      GroupSplit split = SplitGroups(ws.registry(), labels, holdout);
      if (split.train.empty()) throw Error("no training datasets left");
      auto groups = BuildRankingGroups(ws.registry(), ws.traits(), labels, split.train);
      RankerModel model = TrainRanker(std::move(groups), FeatureSchema(), tr_cfg,
                                      LabelKindName(kind));
      LogInfo("trained " + std::to_string(model.trees.size()) + " trees on " +
              std::to_string(split.train.size()) + " datasets");
      Emit(tr_out, RankerToJson(model), out);
      return 0;
    }

    if (c_ev->parsed()) {
      RankerModel model = RankerFromJson(ReadFile(ev_ranker));
      auto kind = ParseLabelKind(model.label_kind);
      if (!kind) throw Error("ranker has unknown label_kind '" + model.label_kind + "'");
      for (int k : ev_ks) {
        if (k < 1) throw UsageError("--k values must be >= 1");
      }
      Workspace ws = ev_ws.Load();
      MetricTable labels = ws.Labels(*kind);
      std::vector<std::string> holdout = ev_holdout;
      if (holdout.empty()) {
        std::set<std::string> trained(model.train_groups.begin(), model.train_groups.end());
        for (const auto& d : SplitGroups(ws.registry(), labels, {}).train) {
          if (!trained.count(d)) holdout.push_back(d);
        }
      }
      if (holdout.empty()) throw Error("no held-out datasets to evaluate");
      GroupSplit split;
      split.train = model.train_groups;
      split.held_out = SplitGroups(ws.registry(), labels, holdout).held_out;
      auto groups = BuildRankingGroups(ws.registry(), ws.traits(), labels, split.held_out);
      EvalOptions opts;
      opts.ks = ev_ks;
      opts.relevant_at = ev_relevant_at;
      RankEval eval = EvaluateRanker(model, groups, model.train_groups, opts);
      Emit(ev_out, EmitRankEval(eval, model.label_kind, split), out);
      return 0;
    }

    if (c_ad->parsed()) {
      RankerModel model = RankerFromJson(ReadFile(ad_ranker));
      Workspace ws = ad_ws.Load();
      AdviceQuery q;
      if (!ad_dataset.empty()) {
        if (ws.registry().FindDataset(ad_dataset) == nullptr) {
          throw Error("unknown dataset '" + ad_dataset + "'");
        }
        q.traits = TraitsFor(ws.registry(), ws.traits(), ad_dataset);
      }
      if (!ad_modality.empty()) q.traits.modality = ad_modality;
      if (q.traits.modality.empty()) {
        throw UsageError("advise needs --modality or --dataset");
      }
      if (!ModalityIndex(q.traits.modality)) {
        throw UsageError("unknown modality '" + q.traits.modality + "'");
      }
      try {
        if (!ad_scale.empty()) q.traits.scale = ParseScaleLabel(ad_scale);
        if (!ad_shape.empty()) q.traits.shape = ParseShapeLabel(ad_shape);
        if (!ad_boundary.empty()) q.traits.boundary = ParseBoundaryLabel(ad_boundary);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      if (!ad_storage.empty()) {
        q.storage = ParseStorageBin(ad_storage);
        if (!q.storage) throw UsageError("--storage must be Tiny, Small, Medium or Large");
      }
      if (!ad_compute.empty()) {
        q.compute = ParseComputeBin(ad_compute);
        if (!q.compute) throw UsageError("--compute must be Low, Medium or High");
      }
      if (!ad_speed.empty()) {
        q.speed = ParseSpeedBin(ad_speed);
        if (!q.speed) throw UsageError("--speed must be Slow, Medium or Fast");
      }
      q.k = ad_k;
      auto kind = ParseLabelKind(model.label_kind);
      if (kind) q.label_kind = *kind;
      AdviceResult result = Advise(ws.registry(), model, q, ws.ModelSummaries());
      Emit(ad_out, EmitAdvice(result, q), out);
      if (result.items.empty() && !result.binding_constraint.empty()) {
        LogWarn("no model satisfies the constraints; binding: " +
                result.binding_constraint);
      }
      return 0;
    }

    if (c_sv->parsed()) {
      auto ws = std::make_shared<const Workspace>(sv_ws.Load());
      std::map<LabelKind, RankerModel> rankers;
      for (const auto& path : sv_rankers) {
        RankerModel m = RankerFromJson(ReadFile(path));
        auto kind = ParseLabelKind(m.label_kind);
        if (!kind) throw Error(path + ": unknown label_kind '" + m.label_kind + "'");
        if (!rankers.emplace(*kind, std::move(m)).second) {
          throw Error("two rankers for label_kind '" + LabelKindName(*kind) + "'");
        }
      }
      ApiService api(ws, std::move(rankers), sv_baseline);
      sv_opts.on_listening = [&out, &sv_opts](int port) {
        out << "listening on http://" << sv_opts.host << ":" << port << "\n"
            << std::flush;
      };
      Serve(api, sv_opts);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "ubench: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "ubench: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "ubench: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace ubench
