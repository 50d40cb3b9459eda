// Copyright 2026 The Fairlink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fairlink/records.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"

namespace fairlink {
namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

TEST(LoadDataset, ParsesWellFormedRows) {
  const std::string path = write_temp(
      "fl_ok.csv",
      "entity_id,given_name,surname,suburb,postcode,sex\n"
      "1,anna,smith,newtown,2042,f\n"
      "2,peter,jones,ryde,2112,m\n"
      "3,maria,lopez,epping,2121,f\n");
  const Dataset ds = load_dataset(path, Schema::default_person());
  ASSERT_EQ(ds.records.size(), 3u);
  EXPECT_EQ(ds.records[0].entity_id, "1");
  EXPECT_EQ(ds.records[0].attributes[1], "smith");
  EXPECT_EQ(ds.records[0].group, 2);  // "f" is the second label
  EXPECT_EQ(ds.records[1].group, 1);
}

TEST(LoadDataset, MissingProtectedColumnIsSchemaError) {
  const std::string path = write_temp("fl_nosex.csv",
                                      "entity_id,given_name,surname,suburb,postcode\n"
                                      "1,anna,smith,newtown,2042\n");
  EXPECT_THROW(load_dataset(path, Schema::default_person()), std::runtime_error);
}

TEST(LoadDataset, DuplicateEntityIdIsIntegrityError) {
  const std::string path = write_temp(
      "fl_dup.csv",
      "entity_id,given_name,surname,suburb,postcode,sex\n"
      "7,anna,smith,newtown,2042,f\n"
      "7,peter,jones,ryde,2112,m\n");
  EXPECT_THROW(load_dataset(path, Schema::default_person()), std::runtime_error);
}

TEST(LoadDataset, UnknownGroupLabelIsSchemaError) {
  const std::string path = write_temp(
      "fl_badgroup.csv",
      "entity_id,given_name,surname,suburb,postcode,sex\n"
      "1,anna,smith,newtown,2042,x\n");
  EXPECT_THROW(load_dataset(path, Schema::default_person()), std::runtime_error);
}

TEST(GenerateSynthetic, OverlapControlsGroundTruthSize) {
  auto [a, b, gt] = generate_synthetic(100, 0.5, {0.5, 0.5}, 1);
  EXPECT_EQ(a.records.size(), 100u);
  EXPECT_EQ(b.records.size(), 100u);
  EXPECT_EQ(gt.matches.size(), 50u);
}

TEST(GenerateSynthetic, ZeroOverlapMeansEmptyGroundTruth) {
  auto [a, b, gt] = generate_synthetic(40, 0.0, {0.5, 0.5}, 1);
  EXPECT_TRUE(gt.matches.empty());
}

TEST(GenerateSynthetic, DeterministicUnderSeed) {
  auto [a1, b1, g1] = generate_synthetic(60, 0.4, {0.5, 0.5}, 99);
  auto [a2, b2, g2] = generate_synthetic(60, 0.4, {0.5, 0.5}, 99);
  ASSERT_EQ(a1.records.size(), a2.records.size());
  for (std::size_t i = 0; i < a1.records.size(); ++i) {
    EXPECT_EQ(a1.records[i].entity_id, a2.records[i].entity_id);
    EXPECT_EQ(a1.records[i].attributes, a2.records[i].attributes);
    EXPECT_EQ(a1.records[i].group, a2.records[i].group);
  }
  EXPECT_EQ(g1.matches, g2.matches);
}

TEST(GenerateSynthetic, GroupProportionsWithinOneRecord) {
  for (std::uint64_t seed : {1, 2, 3}) {
    auto [a, b, gt] = generate_synthetic(101, 0.5, {0.7, 0.3}, seed);
    int g1 = 0;
    for (const auto& r : a.records) g1 += r.group == 1 ? 1 : 0;
    EXPECT_NEAR(g1, 101 * 0.7, 1.0 + 1e-9);
  }
}

TEST(GenerateSynthetic, RejectsEmptyInput) {
  EXPECT_THROW(generate_synthetic(0, 0.5, {0.5, 0.5}, 1), std::invalid_argument);
}

TEST(GenerateSynthetic, EntityIdsUniquePerParty) {
  auto [a, b, gt] = generate_synthetic(200, 0.5, {0.5, 0.5}, 7);
  std::set<std::string> ids;
  for (const auto& r : a.records) EXPECT_TRUE(ids.insert(r.entity_id).second);
}

TEST(CorruptRecord, PreservesIdentityAndGroup) {
  const Record r{"e1", {"peter", "smith", "ryde", "2112"}, 2};
  CorruptionConfig cc;
  cc.ops_per_record = 3;
  const Record out = corrupt_record(r, cc, 5);
  EXPECT_EQ(out.entity_id, "e1");
  EXPECT_EQ(out.group, 2);
  EXPECT_NE(out.attributes, r.attributes);
}

TEST(CorruptRecord, SubstituteKeepsLengthAndChangesOnePosition) {
  const Record r{"e1", {"smith"}, 1};
  CorruptionConfig cc;
  cc.edit_ops = static_cast<unsigned>(EditOp::kSubstitute);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Record out = corrupt_record(r, cc, seed);
    ASSERT_EQ(out.attributes[0].size(), 5u);
    int diffs = 0;
    for (int i = 0; i < 5; ++i) diffs += out.attributes[0][i] != r.attributes[0][i] ? 1 : 0;
    EXPECT_EQ(diffs, 1);
  }
}

TEST(CorruptRecord, DeterministicUnderSeed) {
  const Record r{"e1", {"peter", "smith", "ryde", "2112"}, 1};
  CorruptionConfig cc;
  cc.ops_per_record = 2;
  const Record a = corrupt_record(r, cc, 13);
  const Record b = corrupt_record(r, cc, 13);
  EXPECT_EQ(a.attributes, b.attributes);
}

TEST(CorruptRecord, AllOpsDisabledIsConfigurationError) {
  const Record r{"e1", {"smith"}, 1};
  CorruptionConfig cc;
  cc.edit_ops = 0;
  EXPECT_THROW(corrupt_record(r, cc, 1), std::invalid_argument);
}

TEST(CorruptDataset, RateZeroLeavesRecordsUntouched) {
  auto [a, b, gt] = generate_synthetic(50, 0.5, {0.5, 0.5}, 3);
  CorruptionConfig cc;
  cc.corruption_rate = 0.0;
  const Dataset out = corrupt_dataset(a, cc, 4);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(out.records[i].attributes, a.records[i].attributes);
  }
}

// Per-group corruption override is the bias lever: the group with the
// higher rate must end up with strictly higher mean edit distance between
// matched pairs.
TEST(CorruptDataset, HigherGroupRateMeansMoreDamage) {
  auto [a, b, gt] = generate_synthetic(2000, 1.0, {0.5, 0.5}, 21);
  CorruptionConfig cc;
  cc.per_group_rates = {0.2, 0.6};
  cc.ops_per_record = 2;
  const Dataset corrupted = corrupt_dataset(b, cc, 22);

  auto normalized_distance = [](const Record& x, const Record& y) {
    // Attribute-wise Hamming-style distance, padded to the longer string.
    double total = 0.0;
    for (std::size_t i = 0; i < x.attributes.size(); ++i) {
      const auto& s = x.attributes[i];
      const auto& t = y.attributes[i];
      const std::size_t common = std::min(s.size(), t.size());
      std::size_t diff = std::max(s.size(), t.size()) - common;
      for (std::size_t j = 0; j < common; ++j) diff += s[j] != t[j] ? 1 : 0;
      total += static_cast<double>(diff) / std::max(s.size(), t.size());
    }
    return total / x.attributes.size();
  };

  double dist[3] = {0, 0, 0};
  int count[3] = {0, 0, 0};
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const int g = a.records[i].group;
    dist[g] += normalized_distance(a.records[i], corrupted.records[i]);
    count[g] += 1;
  }
  ASSERT_GT(count[1], 500);
  ASSERT_GT(count[2], 500);
  EXPECT_LT(dist[1] / count[1], dist[2] / count[2]);
}

TEST(DatasetRoundTrip, SaveLoadPreservesRecords) {
  auto [a, b, gt] = generate_synthetic(30, 0.5, {0.5, 0.5}, 8);
  const std::string path = (std::filesystem::temp_directory_path() / "fl_rt.csv").string();
  save_dataset(path, a);
  const Dataset back = load_dataset(path, a.schema);
  ASSERT_EQ(back.records.size(), a.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(back.records[i].entity_id, a.records[i].entity_id);
    EXPECT_EQ(back.records[i].attributes, a.records[i].attributes);
    EXPECT_EQ(back.records[i].group, a.records[i].group);
  }
}

}  // namespace
}  // namespace fairlink
