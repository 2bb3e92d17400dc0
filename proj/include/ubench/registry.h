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

#ifndef UBENCH_REGISTRY_H_
#define UBENCH_REGISTRY_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ubench {

enum class Family { kCnn, kTransformer, kMamba, kRwkv, kHybrid };
enum class Role { kSource, kTarget };
enum class Scope { kInDomain, kZeroShot };

std::string FamilyName(Family family);
std::optional<Family> ParseFamily(std::string_view text);
const std::vector<Family>& AllFamilies();

std::string RoleName(Role role);
std::optional<Role> ParseRole(std::string_view text);

// "in_domain" / "zero_shot".
std::string ScopeName(Scope scope);
std::optional<Scope> ParseScope(std::string_view text);
// Command-line spelling: "source" is in-domain, "target" is zero-shot.
std::optional<Scope> ParseScopeFlag(std::string_view text);
std::string ScopeFlagName(Scope scope);

// The ten imaging modalities, in one-hot order.
const std::vector<std::string>& Modalities();
std::optional<std::size_t> ModalityIndex(std::string_view modality);

struct ModelCard {
  std::string name;
  Family family = Family::kCnn;
  int year = 0;
  std::string venue;
  bool deep_supervision = false;
  bool pretrained = false;
  double params = 0;  // millions
  double flops = 0;   // GFLOPs
  double fps = 0;

  bool operator==(const ModelCard&) const = default;
};

struct DatasetCard {
  std::string name;
  std::string modality;
  Role role = Role::kSource;
  int class_count = 1;

  bool operator==(const DatasetCard&) const = default;
};

struct TransferPair {
  std::string source;
  std::string target;

  bool operator==(const TransferPair&) const = default;
};

// One model on one dataset in one scope. Zero-shot records also name the
// source dataset the model was trained on, since one target can be reached
// from several sources.
struct EvaluationRecord {
  std::string model;
  std::string dataset;
  std::string source;  // empty for in-domain
  Scope scope = Scope::kInDomain;
  std::vector<double> sample_ious;  // empty for mean-only records
  double mean_iou = 0;

  bool HasSamples() const { return !sample_ious.empty(); }
  // "BUSI" in-domain, "BUSI->BUS" zero-shot.
  std::string DatasetKey() const;

  bool operator==(const EvaluationRecord&) const = default;
};

struct Registry {
  std::vector<ModelCard> models;
  std::vector<DatasetCard> datasets;
  std::vector<EvaluationRecord> records;
  std::vector<TransferPair> transfers;

  const ModelCard* FindModel(std::string_view name) const;
  const DatasetCard* FindDataset(std::string_view name) const;
  const EvaluationRecord* FindRecord(std::string_view model,
                                     std::string_view dataset_key,
                                     Scope scope) const;
  std::vector<const EvaluationRecord*> RecordsIn(Scope scope) const;
  // Dataset keys that have records in `scope`, sorted.
  std::vector<std::string> DatasetKeys(Scope scope) const;

  bool operator==(const Registry&) const = default;
};

// Parses a models.json document. Cards keep file order.
std::vector<ModelCard> ParseModelCards(std::string_view text,
                                       std::string_view context = "models.json");
std::vector<DatasetCard> ParseDatasetCards(
    std::string_view text, std::string_view context = "datasets.json");
// Parses transfers.csv rows without validating them.
std::vector<TransferPair> ParseTransferPairs(
    std::string_view text, std::string_view context = "transfers.csv");

// Checks pairs against registered datasets and their roles.
std::vector<TransferPair> ResolveTransfers(const std::vector<TransferPair>& pairs,
                                           const Registry& registry);

// Returns a registry holding the cards, or throws without side effects.
Registry BuildRegistry(std::vector<ModelCard> models,
                       std::vector<DatasetCard> datasets,
                       const std::vector<TransferPair>& pairs);

// Parses records.csv (per-sample rows) and means.csv (per-record means) and
// returns `registry` with the new records attached. Either text may be empty.
// Fails atomically.
Registry IngestRecords(std::string_view records_csv, std::string_view means_csv,
                       const Registry& registry);

// Full referential and value validation. Throws on the first violation.
void ValidateRegistry(const Registry& registry);

// Entities sorted by name (records by model, dataset key, scope).
Registry Canonicalize(Registry registry);

// The on-disk files of a registry directory.
struct RegistryFiles {
  std::string models_json;
  std::string datasets_json;
  std::string transfers_csv;
  std::string records_csv;
  std::string means_csv;
};

RegistryFiles SerializeRegistry(const Registry& registry);
// Parses, validates and canonicalizes.
Registry LoadRegistry(const RegistryFiles& files);

inline constexpr char kModelsFile[] = "models.json";
inline constexpr char kDatasetsFile[] = "datasets.json";
inline constexpr char kTransfersFile[] = "transfers.csv";
inline constexpr char kRecordsFile[] = "records.csv";
inline constexpr char kMeansFile[] = "means.csv";
inline constexpr char kSnapshotFile[] = "snapshot.json";

// Missing records/means files are treated as empty.
RegistryFiles ReadRegistryDir(const std::filesystem::path& dir);
// Returns the number of files whose bytes changed.
int WriteRegistryDir(const std::filesystem::path& dir, const Registry& registry);

// Immutable, shareable view of a canonical registry.
class Snapshot {
 public:
  explicit Snapshot(Registry registry);

  const Registry& registry() const { return *registry_; }
  const std::string& canonical_json() const { return canonical_json_; }
  const std::string& digest() const { return digest_; }

 private:
  std::shared_ptr<const Registry> registry_;
  std::string canonical_json_;
  std::string digest_;
};

inline constexpr char kSnapshotFormat[] = "ubench-registry/1";

std::string SnapshotJson(const Registry& registry);
Registry ParseSnapshotJson(std::string_view text);

}  // namespace ubench

#endif  // UBENCH_REGISTRY_H_
