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

#include "ubench/registry.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "json.hpp"
#include "ubench/csv.h"
#include "ubench/digest.h"
#include "ubench/error.h"
#include "ubench/file_io.h"

namespace ubench {

using ojson = nlohmann::ordered_json;

namespace {

constexpr double kMeanCrossCheck = 1e-6;
constexpr double kMeanConsistency = 1e-9;
constexpr char kArrow[] = "->";

std::string Quote(std::string_view s) { return "'" + std::string(s) + "'"; }

double MeanOf(const std::vector<double>& xs) {
  double sum = 0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

// Typed field access with a location in every message.
class CardReader {
 public:
  CardReader(const ojson& obj, std::string context)
      : obj_(obj), context_(std::move(context)) {
    if (!obj_.is_object()) throw Error(context_ + ": expected an object");
  }

  const ojson& Field(const char* key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) {
      throw Error(context_ + ": missing field " + Quote(key));
    }
    return *it;
  }
  std::string String(const char* key) const {
    const ojson& v = Field(key);
    if (!v.is_string()) Fail(key, "expected a string");
    return v.get<std::string>();
  }
  bool Bool(const char* key) const {
    const ojson& v = Field(key);
    if (!v.is_boolean()) Fail(key, "expected true or false");
    return v.get<bool>();
  }
  long long Int(const char* key) const {
    const ojson& v = Field(key);
    if (!v.is_number_integer()) Fail(key, "expected an integer");
    return v.get<long long>();
  }
  double Positive(const char* key) const {
    const ojson& v = Field(key);
    if (!v.is_number()) Fail(key, "expected a number");
    double x = v.get<double>();
    if (!(x > 0) || !std::isfinite(x)) Fail(key, "must be > 0");
    return x;
  }
  [[noreturn]] void Fail(const char* key, const std::string& why) const {
    throw Error(context_ + ": field " + Quote(key) + ": " + why);
  }

 private:
  const ojson& obj_;
  std::string context_;
};

ojson ParseJsonArray(std::string_view text, std::string_view context) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string(context) + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw Error(std::string(context) + ": top level must be an array");
  }
  return doc;
}

std::string CardContext(std::string_view file, std::size_t index,
                        const ojson& obj) {
  std::string ctx = std::string(file) + ": entry " + std::to_string(index + 1);
  if (obj.is_object()) {
    auto it = obj.find("name");
    if (it != obj.end() && it->is_string()) {
      ctx += " (" + it->get<std::string>() + ")";
    }
  }
  return ctx;
}

// Splits "SRC->TGT". Returns false when there is no arrow.
bool SplitPairKey(std::string_view key, std::string* source,
                  std::string* target) {
  auto pos = key.find(kArrow);
  if (pos == std::string_view::npos) return false;
  *source = std::string(key.substr(0, pos));
  *target = std::string(key.substr(pos + 2));
  return true;
}

struct RecordKey {
  std::string model, source, dataset;
  Scope scope;
  auto Tie() const { return std::tie(model, source, dataset, scope); }
  bool operator<(const RecordKey& o) const { return Tie() < o.Tie(); }
};

// Resolves the dataset column of a records/means row.
void ResolveDatasetField(const Registry& reg, std::string_view field,
                         Scope scope, const std::string& where,
                         std::string* source, std::string* dataset) {
  std::string src, tgt;
  if (SplitPairKey(field, &src, &tgt)) {
    if (scope != Scope::kZeroShot) {
      throw Error(where + ": dataset " + Quote(field) +
                  " names a transfer pair but scope is in_domain");
    }
    bool known = std::any_of(
        reg.transfers.begin(), reg.transfers.end(),
        [&](const TransferPair& p) { return p.source == src && p.target == tgt; });
    if (!known) {
      throw Error(where + ": unknown transfer pair " + Quote(field));
    }
    *source = src;
    *dataset = tgt;
    return;
  }
  const DatasetCard* card = reg.FindDataset(field);
  if (card == nullptr) {
    throw Error(where + ": unknown dataset " + Quote(field));
  }
  if (scope == Scope::kInDomain) {
    if (card->role != Role::kSource) {
      throw Error(where + ": in_domain record on target dataset " +
                  Quote(field));
    }
    source->clear();
    *dataset = card->name;
    return;
  }
  std::vector<std::string> sources;
  for (const TransferPair& p : reg.transfers) {
    if (p.target == field) sources.push_back(p.source);
  }
  if (sources.empty()) {
    throw Error(where + ": dataset " + Quote(field) +
                " is not a transfer target");
  }
  if (sources.size() > 1) {
    throw Error(where + ": target " + Quote(field) +
                " has several sources; write SOURCE->TARGET");
  }
  *source = sources.front();
  *dataset = card->name;
}

Scope ScopeOrThrow(std::string_view text, const std::string& where) {
  auto scope = ParseScope(text);
  if (!scope) {
    throw Error(where + ": scope must be in_domain or zero_shot, got " +
                Quote(text));
  }
  return *scope;
}

}  // namespace

std::string FamilyName(Family family) {
  switch (family) {
    case Family::kCnn: return "CNN";
    case Family::kTransformer: return "Transformer";
    case Family::kMamba: return "Mamba";
    case Family::kRwkv: return "RWKV";
    case Family::kHybrid: return "Hybrid";
  }
  return "";
}

std::optional<Family> ParseFamily(std::string_view text) {
  for (Family f : AllFamilies()) {
    if (FamilyName(f) == text) return f;
  }
  return std::nullopt;
}

const std::vector<Family>& AllFamilies() {
  static const std::vector<Family> kAll = {Family::kCnn, Family::kTransformer,
                                           Family::kMamba, Family::kRwkv,
                                           Family::kHybrid};
  return kAll;
}

std::string RoleName(Role role) {
  return role == Role::kSource ? "source" : "target";
}

std::optional<Role> ParseRole(std::string_view text) {
  if (text == "source") return Role::kSource;
  if (text == "target") return Role::kTarget;
  return std::nullopt;
}

std::string ScopeName(Scope scope) {
  return scope == Scope::kInDomain ? "in_domain" : "zero_shot";
}

std::optional<Scope> ParseScope(std::string_view text) {
  if (text == "in_domain") return Scope::kInDomain;
  if (text == "zero_shot") return Scope::kZeroShot;
  return std::nullopt;
}

std::optional<Scope> ParseScopeFlag(std::string_view text) {
  if (text == "source") return Scope::kInDomain;
  if (text == "target") return Scope::kZeroShot;
  return std::nullopt;
}

std::string ScopeFlagName(Scope scope) {
  return scope == Scope::kInDomain ? "source" : "target";
}

const std::vector<std::string>& Modalities() {
  static const std::vector<std::string> kAll = {
      "Ultrasound", "Dermoscopy", "Endoscopy", "Fundus", "Histopathology",
      "Nuclear",    "X-Ray",      "MRI",       "CT",     "OCT"};
  return kAll;
}

std::optional<std::size_t> ModalityIndex(std::string_view modality) {
  const auto& all = Modalities();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] == modality) return i;
  }
  return std::nullopt;
}

std::string EvaluationRecord::DatasetKey() const {
  if (scope == Scope::kZeroShot) return source + kArrow + dataset;
  return dataset;
}

const ModelCard* Registry::FindModel(std::string_view name) const {
  for (const auto& m : models) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

const DatasetCard* Registry::FindDataset(std::string_view name) const {
  for (const auto& d : datasets) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const EvaluationRecord* Registry::FindRecord(std::string_view model,
                                             std::string_view dataset_key,
                                             Scope scope) const {
  for (const auto& r : records) {
    if (r.scope == scope && r.model == model && r.DatasetKey() == dataset_key) {
      return &r;
    }
  }
  return nullptr;
}

std::vector<const EvaluationRecord*> Registry::RecordsIn(Scope scope) const {
  std::vector<const EvaluationRecord*> out;
  for (const auto& r : records) {
    if (r.scope == scope) out.push_back(&r);
  }
  return out;
}

std::vector<std::string> Registry::DatasetKeys(Scope scope) const {
  std::set<std::string> keys;
  for (const auto& r : records) {
    if (r.scope == scope) keys.insert(r.DatasetKey());
  }
  return {keys.begin(), keys.end()};
}

std::vector<ModelCard> ParseModelCards(std::string_view text,
                                       std::string_view context) {
  ojson doc = ParseJsonArray(text, context);
  std::vector<ModelCard> cards;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    CardReader r(doc[i], CardContext(context, i, doc[i]));
    ModelCard c;
    c.name = r.String("name");
    if (c.name.empty()) r.Fail("name", "must not be empty");
    std::string family = r.String("family");
    auto f = ParseFamily(family);
    if (!f) {
      r.Fail("family", "unknown family " + Quote(family) +
                           " (CNN, Transformer, Mamba, RWKV, Hybrid)");
    }
    c.family = *f;
    c.year = static_cast<int>(r.Int("year"));
    c.venue = r.String("venue");
    c.deep_supervision = r.Bool("deep_supervision");
    c.pretrained = r.Bool("pretrained");
    c.params = r.Positive("params_m");
    c.flops = r.Positive("flops_g");
    c.fps = r.Positive("fps");
    if (!seen.insert(c.name).second) {
      throw Error(std::string(context) + ": duplicate model name " +
                  Quote(c.name));
    }
    cards.push_back(std::move(c));
  }
  return cards;
}

std::vector<DatasetCard> ParseDatasetCards(std::string_view text,
                                           std::string_view context) {
  ojson doc = ParseJsonArray(text, context);
  std::vector<DatasetCard> cards;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    CardReader r(doc[i], CardContext(context, i, doc[i]));
    DatasetCard c;
    c.name = r.String("name");
    if (c.name.empty()) r.Fail("name", "must not be empty");
    if (c.name.find(kArrow) != std::string::npos) {
      r.Fail("name", "must not contain '->'");
    }
    c.modality = r.String("modality");
    if (!ModalityIndex(c.modality)) {
      r.Fail("modality", "unknown modality " + Quote(c.modality));
    }
    std::string role = r.String("role");
    auto parsed = ParseRole(role);
    if (!parsed) r.Fail("role", "must be source or target");
    c.role = *parsed;
    long long classes = r.Int("class_count");
    if (classes < 1 || classes > 255) r.Fail("class_count", "must be in 1..255");
    c.class_count = static_cast<int>(classes);
    if (!seen.insert(c.name).second) {
      throw Error(std::string(context) + ": duplicate dataset name " +
                  Quote(c.name));
    }
    cards.push_back(std::move(c));
  }
  return cards;
}

std::vector<TransferPair> ParseTransferPairs(std::string_view text,
                                             std::string_view context) {
  std::vector<TransferPair> pairs;
  if (text.empty()) return pairs;
  CsvTable t = ParseCsv(text, context);
  std::size_t src = t.Column("source", context);
  std::size_t tgt = t.Column("target", context);
  for (const auto& row : t.rows) {
    pairs.push_back({row.cells[src], row.cells[tgt]});
  }
  return pairs;
}

std::vector<TransferPair> ResolveTransfers(const std::vector<TransferPair>& pairs,
                                           const Registry& registry) {
  std::vector<TransferPair> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const TransferPair& p : pairs) {
    std::string what = "transfer " + p.source + "->" + p.target;
    const DatasetCard* s = registry.FindDataset(p.source);
    const DatasetCard* t = registry.FindDataset(p.target);
    if (s == nullptr) throw Error(what + ": unknown dataset " + Quote(p.source));
    if (t == nullptr) throw Error(what + ": unknown dataset " + Quote(p.target));
    if (p.source == p.target) throw Error(what + ": source equals target");
    if (s->role != Role::kSource) {
      throw Error(what + ": role violation, " + Quote(p.source) +
                  " is not a source dataset");
    }
    if (t->role != Role::kTarget) {
      throw Error(what + ": role violation, " + Quote(p.target) +
                  " is not a target dataset");
    }
    if (!seen.insert({p.source, p.target}).second) {
      throw Error(what + ": duplicate pair");
    }
    out.push_back(p);
  }
  return out;
}

Registry BuildRegistry(std::vector<ModelCard> models,
                       std::vector<DatasetCard> datasets,
                       const std::vector<TransferPair>& pairs) {
  Registry reg;
  reg.models = std::move(models);
  reg.datasets = std::move(datasets);
  reg.transfers = ResolveTransfers(pairs, reg);
  ValidateRegistry(reg);
  return reg;
}

Registry IngestRecords(std::string_view records_csv, std::string_view means_csv,
                       const Registry& registry) {
  Registry out = registry;
  std::map<RecordKey, std::size_t> index;  // key -> slot in `out.records`
  for (std::size_t i = 0; i < out.records.size(); ++i) {
    const auto& r = out.records[i];
    index[{r.model, r.source, r.dataset, r.scope}] = i;
  }
  std::set<RecordKey> existing;
  for (const auto& [k, v] : index) existing.insert(k);

  // Per-sample rows.
  struct Pending {
    RecordKey key;
    std::vector<std::pair<long long, double>> samples;
    std::size_t first_line;
  };
  std::vector<Pending> pending;
  std::map<RecordKey, std::size_t> pending_index;
  if (!records_csv.empty()) {
    const std::string ctx = kRecordsFile;
    CsvTable t = ParseCsv(records_csv, ctx);
    std::size_t c_model = t.Column("model", ctx);
    std::size_t c_dataset = t.Column("dataset", ctx);
    std::size_t c_scope = t.Column("scope", ctx);
    std::size_t c_index = t.Column("sample_index", ctx);
    std::size_t c_iou = t.Column("iou", ctx);
    for (const auto& row : t.rows) {
      std::string where = ctx + ":" + std::to_string(row.line);
      const std::string& model = row.cells[c_model];
      if (out.FindModel(model) == nullptr) {
        throw Error(where + ": unknown model " + Quote(model));
      }
      Scope scope = ScopeOrThrow(row.cells[c_scope], where);
      RecordKey key{model, "", "", scope};
      ResolveDatasetField(out, row.cells[c_dataset], scope, where, &key.source,
                          &key.dataset);
      if (existing.count(key)) {
        throw Error(where + ": duplicate record for (" + model + ", " +
                    row.cells[c_dataset] + ", " + ScopeName(scope) + ")");
      }
      long long idx = ParseInt(row.cells[c_index], where + ": sample_index");
      double iou = ParseDouble(row.cells[c_iou], where + ": iou");
      if (iou < 0 || iou > 1) {
        throw Error(where + ": iou " + row.cells[c_iou] + " outside [0,1]");
      }
      auto [it, fresh] = pending_index.try_emplace(key, pending.size());
      if (fresh) pending.push_back({key, {}, row.line});
      pending[it->second].samples.emplace_back(idx, iou);
    }
  }

  std::vector<EvaluationRecord> added;
  std::map<RecordKey, std::size_t> added_index;
  for (auto& p : pending) {
    std::sort(p.samples.begin(), p.samples.end());
    for (std::size_t i = 1; i < p.samples.size(); ++i) {
      if (p.samples[i].first == p.samples[i - 1].first) {
        throw Error(std::string(kRecordsFile) + ": duplicate sample_index " +
                    std::to_string(p.samples[i].first) + " for (" +
                    p.key.model + ", " + p.key.dataset + ")");
      }
    }
    EvaluationRecord r;
    r.model = p.key.model;
    r.dataset = p.key.dataset;
    r.source = p.key.source;
    r.scope = p.key.scope;
    for (const auto& s : p.samples) r.sample_ious.push_back(s.second);
    r.mean_iou = MeanOf(r.sample_ious);
    added_index[p.key] = added.size();
    added.push_back(std::move(r));
  }

  // Means: cross-check sample records, otherwise create mean-only records.
  if (!means_csv.empty()) {
    const std::string ctx = kMeansFile;
    CsvTable t = ParseCsv(means_csv, ctx);
    std::size_t c_model = t.Column("model", ctx);
    std::size_t c_dataset = t.Column("dataset", ctx);
    std::size_t c_scope = t.Column("scope", ctx);
    std::size_t c_mean = t.Column("mean_iou", ctx);
    std::set<RecordKey> seen_means;
    for (const auto& row : t.rows) {
      std::string where = ctx + ":" + std::to_string(row.line);
      const std::string& model = row.cells[c_model];
      if (out.FindModel(model) == nullptr) {
        throw Error(where + ": unknown model " + Quote(model));
      }
      Scope scope = ScopeOrThrow(row.cells[c_scope], where);
      RecordKey key{model, "", "", scope};
      ResolveDatasetField(out, row.cells[c_dataset], scope, where, &key.source,
                          &key.dataset);
      double mean = ParseDouble(row.cells[c_mean], where + ": mean_iou");
      if (mean < 0 || mean > 1) {
        throw Error(where + ": mean_iou " + row.cells[c_mean] +
                    " outside [0,1]");
      }
      if (!seen_means.insert(key).second || existing.count(key)) {
        throw Error(where + ": duplicate record for (" + model + ", " +
                    row.cells[c_dataset] + ", " + ScopeName(scope) + ")");
      }
      auto it = added_index.find(key);
      if (it != added_index.end()) {
        double computed = added[it->second].mean_iou;
        if (std::fabs(computed - mean) > kMeanCrossCheck) {
          throw Error(where + ": mean_iou " + row.cells[c_mean] +
                      " disagrees with the sample mean " +
                      FormatDouble(computed));
        }
        continue;
      }
      EvaluationRecord r;
      r.model = key.model;
      r.dataset = key.dataset;
      r.source = key.source;
      r.scope = key.scope;
      r.mean_iou = mean;
      added.push_back(std::move(r));
    }
  }

  for (auto& r : added) out.records.push_back(std::move(r));
  ValidateRegistry(out);
  return out;
}

void ValidateRegistry(const Registry& registry) {
  std::set<std::string> names;
  for (const auto& m : registry.models) {
    if (m.name.empty()) throw Error("model with empty name");
    if (!names.insert(m.name).second) {
      throw Error("duplicate model name " + Quote(m.name));
    }
    if (!(m.params > 0) || !(m.flops > 0) || !(m.fps > 0)) {
      throw Error("model " + Quote(m.name) +
                  ": params, flops and fps must be > 0");
    }
  }
  names.clear();
  for (const auto& d : registry.datasets) {
    if (!names.insert(d.name).second) {
      throw Error("duplicate dataset name " + Quote(d.name));
    }
    if (d.class_count < 1) {
      throw Error("dataset " + Quote(d.name) + ": class_count must be >= 1");
    }
    if (!ModalityIndex(d.modality)) {
      throw Error("dataset " + Quote(d.name) + ": unknown modality " +
                  Quote(d.modality));
    }
  }
  ResolveTransfers(registry.transfers, registry);

  std::set<RecordKey> keys;
  for (const auto& r : registry.records) {
    std::string what = "record (" + r.model + ", " + r.DatasetKey() + ", " +
                       ScopeName(r.scope) + ")";
    if (registry.FindModel(r.model) == nullptr) {
      throw Error(what + ": unknown model " + Quote(r.model));
    }
    const DatasetCard* d = registry.FindDataset(r.dataset);
    if (d == nullptr) throw Error(what + ": unknown dataset " + Quote(r.dataset));
    if (r.scope == Scope::kInDomain) {
      if (!r.source.empty()) throw Error(what + ": in_domain record with source");
      if (d->role != Role::kSource) {
        throw Error(what + ": in_domain record on a target dataset");
      }
    } else {
      bool known = std::any_of(registry.transfers.begin(),
                               registry.transfers.end(),
                               [&](const TransferPair& p) {
                                 return p.source == r.source &&
                                        p.target == r.dataset;
                               });
      if (!known) throw Error(what + ": dataset is not a transfer target");
    }
    for (double x : r.sample_ious) {
      if (!(x >= 0 && x <= 1)) throw Error(what + ": sample IoU outside [0,1]");
    }
    if (!(r.mean_iou >= 0 && r.mean_iou <= 1)) {
      throw Error(what + ": mean_iou outside [0,1]");
    }
    if (r.HasSamples() &&
        std::fabs(MeanOf(r.sample_ious) - r.mean_iou) > kMeanConsistency) {
      throw Error(what + ": mean_iou is not the mean of its samples");
    }
    if (!keys.insert({r.model, r.source, r.dataset, r.scope}).second) {
      throw Error(what + ": duplicate record");
    }
  }
}

Registry Canonicalize(Registry registry) {
  std::sort(registry.models.begin(), registry.models.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  std::sort(registry.datasets.begin(), registry.datasets.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  std::sort(registry.transfers.begin(), registry.transfers.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.source, a.target) < std::tie(b.source, b.target);
            });
  std::sort(registry.records.begin(), registry.records.end(),
            [](const auto& a, const auto& b) {
              return std::make_tuple(a.model, a.scope, a.dataset, a.source) <
                     std::make_tuple(b.model, b.scope, b.dataset, b.source);
            });
  return registry;
}

namespace {

ojson ModelJson(const ModelCard& m) {
  ojson j;
  j["name"] = m.name;
  j["family"] = FamilyName(m.family);
  j["year"] = m.year;
  j["venue"] = m.venue;
  j["deep_supervision"] = m.deep_supervision;
  j["pretrained"] = m.pretrained;
  j["params_m"] = m.params;
  j["flops_g"] = m.flops;
  j["fps"] = m.fps;
  return j;
}

ojson DatasetJson(const DatasetCard& d) {
  ojson j;
  j["name"] = d.name;
  j["modality"] = d.modality;
  j["role"] = RoleName(d.role);
  j["class_count"] = d.class_count;
  return j;
}

}  // namespace

RegistryFiles SerializeRegistry(const Registry& registry) {
  Registry reg = Canonicalize(registry);
  RegistryFiles files;
  ojson models = ojson::array();
  for (const auto& m : reg.models) models.push_back(ModelJson(m));
  files.models_json = models.dump(2) + "\n";
  ojson datasets = ojson::array();
  for (const auto& d : reg.datasets) datasets.push_back(DatasetJson(d));
  files.datasets_json = datasets.dump(2) + "\n";

  files.transfers_csv = CsvLine({"source", "target"});
  for (const auto& p : reg.transfers) {
    files.transfers_csv += CsvLine({p.source, p.target});
  }
  files.records_csv =
      CsvLine({"model", "dataset", "scope", "sample_index", "iou"});
  files.means_csv = CsvLine({"model", "dataset", "scope", "mean_iou"});
  for (const auto& r : reg.records) {
    std::string key = r.DatasetKey();
    std::string scope = ScopeName(r.scope);
    for (std::size_t i = 0; i < r.sample_ious.size(); ++i) {
      files.records_csv += CsvLine({r.model, key, scope, std::to_string(i),
                                    FormatDouble(r.sample_ious[i])});
    }
    files.means_csv +=
        CsvLine({r.model, key, scope, FormatDouble(r.mean_iou)});
  }
  return files;
}

Registry LoadRegistry(const RegistryFiles& files) {
  Registry reg =
      BuildRegistry(ParseModelCards(files.models_json),
                    ParseDatasetCards(files.datasets_json),
                    ParseTransferPairs(files.transfers_csv));
  return Canonicalize(IngestRecords(files.records_csv, files.means_csv, reg));
}

RegistryFiles ReadRegistryDir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error("registry directory not found: " + dir.string());
  }
  auto optional_file = [&](const char* name) -> std::string {
    auto p = dir / name;
    return std::filesystem::exists(p) ? ReadFile(p) : std::string();
  };
  RegistryFiles f;
  f.models_json = ReadFile(dir / kModelsFile);
  f.datasets_json = ReadFile(dir / kDatasetsFile);
  f.transfers_csv = optional_file(kTransfersFile);
  f.records_csv = optional_file(kRecordsFile);
  f.means_csv = optional_file(kMeansFile);
  return f;
}

int WriteRegistryDir(const std::filesystem::path& dir,
                     const Registry& registry) {
  RegistryFiles f = SerializeRegistry(registry);
  int changed = 0;
  changed += WriteFileAtomic(dir / kModelsFile, f.models_json);
  changed += WriteFileAtomic(dir / kDatasetsFile, f.datasets_json);
  changed += WriteFileAtomic(dir / kTransfersFile, f.transfers_csv);
  changed += WriteFileAtomic(dir / kRecordsFile, f.records_csv);
  changed += WriteFileAtomic(dir / kMeansFile, f.means_csv);
  changed += WriteFileAtomic(dir / kSnapshotFile, SnapshotJson(registry) + "\n");
  return changed;
}

std::string SnapshotJson(const Registry& registry) {
  Registry reg = Canonicalize(registry);
  ojson doc;
  doc["format"] = kSnapshotFormat;
  doc["models"] = ojson::array();
  for (const auto& m : reg.models) doc["models"].push_back(ModelJson(m));
  doc["datasets"] = ojson::array();
  for (const auto& d : reg.datasets) doc["datasets"].push_back(DatasetJson(d));
  doc["transfers"] = ojson::array();
  for (const auto& p : reg.transfers) {
    doc["transfers"].push_back({{"source", p.source}, {"target", p.target}});
  }
  doc["records"] = ojson::array();
  for (const auto& r : reg.records) {
    ojson j;
    j["model"] = r.model;
    j["dataset"] = r.dataset;
    j["source"] = r.source;
    j["scope"] = ScopeName(r.scope);
    j["mean_iou"] = r.mean_iou;
    j["sample_ious"] = r.sample_ious;
    doc["records"].push_back(std::move(j));
  }
  return doc.dump();
}

Registry ParseSnapshotJson(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("snapshot: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != kSnapshotFormat) {
    throw Error(std::string("snapshot: expected format ") + kSnapshotFormat);
  }
  Registry reg;
  try {
    reg.models = ParseModelCards(doc.at("models").dump(), "snapshot models");
    reg.datasets =
        ParseDatasetCards(doc.at("datasets").dump(), "snapshot datasets");
    for (const auto& p : doc.at("transfers")) {
      reg.transfers.push_back({p.at("source").get<std::string>(),
                               p.at("target").get<std::string>()});
    }
    for (const auto& j : doc.at("records")) {
      EvaluationRecord r;
      r.model = j.at("model").get<std::string>();
      r.dataset = j.at("dataset").get<std::string>();
      r.source = j.at("source").get<std::string>();
      auto scope = ParseScope(j.at("scope").get<std::string>());
      if (!scope) throw Error("snapshot: bad scope");
      r.scope = *scope;
      r.mean_iou = j.at("mean_iou").get<double>();
      r.sample_ious = j.at("sample_ious").get<std::vector<double>>();
      reg.records.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("snapshot: ") + e.what());
  }
  ValidateRegistry(reg);
  return reg;
}

Snapshot::Snapshot(Registry registry) {
  ValidateRegistry(registry);
  registry_ = std::make_shared<const Registry>(Canonicalize(std::move(registry)));
  canonical_json_ = SnapshotJson(*registry_);
  digest_ = Sha256Hex(canonical_json_);
}

}  // namespace ubench
