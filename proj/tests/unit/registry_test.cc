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

#include "doctest.h"
#include "test_support.h"
#include "ubench/error.h"
#include "ubench/file_io.h"
#include "ubench/registry.h"

namespace ubench {
namespace {

using testing::FixturePath;

std::string ModelJson(const std::string& name, double params = 34.53,
                      double flops = 65.52, double fps = 137.05) {
  return R"({"name": ")" + name +
         R"(", "family": "CNN", "year": 2015, "venue": "MICCAI",
             "deep_supervision": false, "pretrained": false, "params_m": )" +
         std::to_string(params) + R"(, "flops_g": )" + std::to_string(flops) +
         R"(, "fps": )" + std::to_string(fps) + "}";
}

constexpr char kDatasets[] = R"([
  {"name": "BUSI", "modality": "Ultrasound", "role": "source", "class_count": 1},
  {"name": "BUSBRA", "modality": "Ultrasound", "role": "source", "class_count": 1},
  {"name": "BUS", "modality": "Ultrasound", "role": "target", "class_count": 1},
  {"name": "Kvasir", "modality": "Endoscopy", "role": "source", "class_count": 1},
  {"name": "CVC300", "modality": "Endoscopy", "role": "target", "class_count": 1},
  {"name": "CVC-ClinicDB", "modality": "Endoscopy", "role": "target", "class_count": 1}
])";

Registry SmallRegistry() {
  auto models = ParseModelCards("[" + ModelJson("U-Net") + "," +
                                ModelJson("TinyNet", 1, 1, 200) + "]");
  auto datasets = ParseDatasetCards(kDatasets);
  auto pairs = ParseTransferPairs(
      "source,target\nBUSI,BUS\nBUSBRA,BUS\nKvasir,CVC300\n");
  return BuildRegistry(models, datasets, pairs);
}

Registry ZooRegistry() {
  return LoadRegistry(ReadRegistryDir(FixturePath("zoo")));
}

TEST_SUITE("registry") {

TEST_CASE("model card fields") {
  auto cards = ParseModelCards("[" + ModelJson("U-Net") + "]");
  REQUIRE(cards.size() == 1);
  CHECK(cards[0].name == "U-Net");
  CHECK(cards[0].family == Family::kCnn);
  CHECK(cards[0].params == 34.53);
  CHECK(cards[0].flops == 65.52);
  CHECK(cards[0].fps == 137.05);
  CHECK(ParseModelCards("[]").empty());
}

TEST_CASE("model card errors name the entry and field") {
  CHECK_THROWS_WITH_AS(
      BuildRegistry(ParseModelCards("[" + ModelJson("U-Net") + "," +
                                    ModelJson("U-Net") + "]"),
                    {}, {}),
      doctest::Contains("U-Net"), Error);
  try {
    ParseModelCards("[" + ModelJson("A") + "," + ModelJson("B", -1) + "]");
    FAIL("expected an error");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("entry 2") != std::string::npos);
    CHECK(msg.find("(B)") != std::string::npos);
    CHECK(msg.find("params_m") != std::string::npos);
  }
  CHECK_THROWS_AS(ParseModelCards(R"([{"name": "X"}])"), Error);
  CHECK_THROWS_AS(ParseModelCards("{}"), Error);
  CHECK_THROWS_AS(ParseModelCards("[1,"), Error);
}

TEST_CASE("dataset cards reject unknown modalities") {
  CHECK_THROWS_AS(ParseDatasetCards(R"([{"name": "X", "modality": "Thermal",
      "role": "source", "class_count": 1}])"),
                  Error);
  CHECK(ParseDatasetCards(kDatasets).size() == 6);
}

TEST_CASE("transfer pairs") {
  Registry reg = SmallRegistry();
  auto pairs = ResolveTransfers(
      ParseTransferPairs("source,target\nKvasir,CVC300\nKvasir,CVC-ClinicDB\n"),
      reg);
  CHECK(pairs.size() == 2);
  CHECK(ResolveTransfers({}, reg).empty());
  CHECK_THROWS_AS(ResolveTransfers({{"BUS", "BUSI"}}, reg), Error);
  CHECK_THROWS_AS(ResolveTransfers({{"BUSI", "Nowhere"}}, reg), Error);
  CHECK_THROWS_AS(ResolveTransfers({{"BUSI", "BUS"}, {"BUSI", "BUS"}}, reg),
                  Error);
}

TEST_CASE("per-sample rows become a record with their mean") {
  Registry reg = IngestRecords(
      "model,dataset,scope,sample_index,iou\n"
      "U-Net,BUSI,in_domain,2,0.7\nU-Net,BUSI,in_domain,0,0.6\n"
      "U-Net,BUSI,in_domain,1,0.7\n",
      "", SmallRegistry());
  REQUIRE(reg.records.size() == 1);
  const auto& r = reg.records[0];
  CHECK(r.mean_iou == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(r.sample_ious == std::vector<double>{0.6, 0.7, 0.7});
  CHECK(r.DatasetKey() == "BUSI");
}

TEST_CASE("ingest errors leave the registry untouched") {
  const Registry before = SmallRegistry();
  CHECK_THROWS_WITH_AS(IngestRecords("model,dataset,scope,sample_index,iou\n"
                                     "Foo,BUSI,in_domain,0,0.5\n",
                                     "", before),
                       doctest::Contains("Foo"), Error);
  // Duplicate sample index.
  CHECK_THROWS_AS(IngestRecords("model,dataset,scope,sample_index,iou\n"
                                "U-Net,BUSI,in_domain,0,0.5\n"
                                "U-Net,BUSI,in_domain,0,0.6\n",
                                "", before),
                  Error);
  // IoU out of range.
  CHECK_THROWS_AS(IngestRecords("model,dataset,scope,sample_index,iou\n"
                                "U-Net,BUSI,in_domain,0,1.5\n",
                                "", before),
                  Error);
  // Mean disagrees with the samples.
  CHECK_THROWS_AS(IngestRecords("model,dataset,scope,sample_index,iou\n"
                                "U-Net,BUSI,in_domain,0,0.5\n",
                                "model,dataset,scope,mean_iou\n"
                                "U-Net,BUSI,in_domain,0.6\n",
                                before),
                  Error);
  // In-domain record on a target dataset.
  CHECK_THROWS_AS(IngestRecords("", "model,dataset,scope,mean_iou\n"
                                    "U-Net,BUS,in_domain,0.6\n",
                                before),
                  Error);
  CHECK(SmallRegistry() == before);
}

TEST_CASE("zero-shot rows resolve their source") {
  Registry base = SmallRegistry();
  Registry reg = IngestRecords(
      "", "model,dataset,scope,mean_iou\n"
          "U-Net,BUSI->BUS,zero_shot,0.5\nU-Net,BUSBRA->BUS,zero_shot,0.4\n"
          "U-Net,CVC300,zero_shot,0.7\n",
      base);
  REQUIRE(reg.records.size() == 3);
  CHECK(reg.FindRecord("U-Net", "BUSI->BUS", Scope::kZeroShot)->mean_iou == 0.5);
  CHECK(reg.FindRecord("U-Net", "Kvasir->CVC300", Scope::kZeroShot) != nullptr);
  // BUS is reached from two sources, so a bare name is ambiguous.
  CHECK_THROWS_AS(IngestRecords("", "model,dataset,scope,mean_iou\n"
                                    "U-Net,BUS,zero_shot,0.5\n",
                                base),
                  Error);
  CHECK_THROWS_AS(IngestRecords("", "model,dataset,scope,mean_iou\n"
                                    "U-Net,BUSI->CVC300,zero_shot,0.5\n",
                                base),
                  Error);
}

TEST_CASE("zoo fixture") {
  Registry reg = ZooRegistry();
  CHECK(reg.models.size() == 100);
  CHECK(reg.datasets.size() == 28);
  CHECK(reg.transfers.size() == 9);
  int zero_shot = 0;
  for (const auto& r : reg.records) {
    if (r.model == "RWKV-UNet" && r.scope == Scope::kZeroShot) ++zero_shot;
  }
  CHECK(zero_shot == 9);
  const ModelCard* unet = reg.FindModel("U-Net");
  REQUIRE(unet != nullptr);
  CHECK(unet->params == 34.53);
  CHECK(unet->flops == 65.52);
  CHECK(unet->fps == 137.05);
  CHECK_NOTHROW(ValidateRegistry(reg));
}

TEST_CASE("serialize and load round-trip") {
  Registry reg = Canonicalize(IngestRecords(
      "model,dataset,scope,sample_index,iou\n"
      "U-Net,BUSI,in_domain,0,0.61\nU-Net,BUSI,in_domain,1,0.73\n",
      "model,dataset,scope,mean_iou\nTinyNet,BUSI->BUS,zero_shot,0.333\n",
      SmallRegistry()));
  Registry back = LoadRegistry(SerializeRegistry(reg));
  CHECK(back == reg);
  CHECK(ParseSnapshotJson(SnapshotJson(reg)) == reg);

  testing::TempDir dir;
  CHECK(WriteRegistryDir(dir.path(), reg) > 0);
  CHECK(WriteRegistryDir(dir.path(), reg) == 0);
  CHECK(LoadRegistry(ReadRegistryDir(dir.path())) == reg);
}

TEST_CASE("zoo round-trips through a directory") {
  Registry reg = Canonicalize(ZooRegistry());
  testing::TempDir dir;
  WriteRegistryDir(dir.path(), reg);
  CHECK(LoadRegistry(ReadRegistryDir(dir.path())) == reg);
}

TEST_CASE("digest") {
  Registry reg = IngestRecords("", "model,dataset,scope,mean_iou\n"
                                   "U-Net,BUSI,in_domain,0.7\n",
                               SmallRegistry());
  Snapshot a(reg), b(reg);
  CHECK(a.digest() == b.digest());
  CHECK(a.digest().size() == 64);

  Registry shuffled = reg;
  std::reverse(shuffled.models.begin(), shuffled.models.end());
  std::reverse(shuffled.datasets.begin(), shuffled.datasets.end());
  CHECK(Snapshot(shuffled).digest() == a.digest());

  Registry perturbed = reg;
  perturbed.records[0].mean_iou += 1e-3;
  CHECK(Snapshot(perturbed).digest() != a.digest());

  Snapshot empty{Registry{}};
  CHECK(empty.digest() == Snapshot(Registry{}).digest());
  CHECK(empty.canonical_json().find("ubench-registry/1") != std::string::npos);
  CHECK(empty.digest() != a.digest());
}

TEST_CASE("scope spellings") {
  CHECK(ParseScopeFlag("source") == Scope::kInDomain);
  CHECK(ParseScopeFlag("target") == Scope::kZeroShot);
  CHECK(!ParseScopeFlag("in_domain"));
  CHECK(ParseScope("zero_shot") == Scope::kZeroShot);
  CHECK(Modalities().size() == 10);
  CHECK(ModalityIndex("Ultrasound").has_value());
  CHECK(!ModalityIndex("Thermal"));
}

}

}  // namespace
}  // namespace ubench
