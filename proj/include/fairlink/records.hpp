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

#ifndef FAIRLINK_RECORDS_HPP
#define FAIRLINK_RECORDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fairlink/csv.hpp"
#include "fairlink/name_pools.hpp"
#include "fairlink/rng.hpp"

namespace fairlink {

/// One person record: an opaque entity id (ground-truth key), ordered QID
/// attribute values, and a 1-based protected-feature group index.
struct Record {
  std::string entity_id;
  std::vector<std::string> attributes;
  int group = 1;
};

/// Column layout of a dataset: QID attribute names plus the protected
/// feature column and its admissible group labels (order defines the
/// group index, 1-based).
struct Schema {
  std::vector<std::string> qid_names;
  std::string protected_name;
  std::vector<std::string> group_labels;

  int group_count() const { return static_cast<int>(group_labels.size()); }

  int group_of(const std::string& label) const {
    for (std::size_t i = 0; i < group_labels.size(); ++i) {
      if (group_labels[i] == label) return static_cast<int>(i) + 1;
    }
    return -1;
  }

  static Schema default_person() {
    return Schema{{"given_name", "surname", "suburb", "postcode"}, "sex", {"m", "f"}};
  }
};

struct Dataset {
  std::vector<Record> records;
  Schema schema;
};

/// Ground-truth one-to-one match links between two datasets.
struct GroundTruth {
  std::set<std::pair<std::string, std::string>> matches;

  bool contains(const std::string& a, const std::string& b) const {
    return matches.count({a, b}) > 0;
  }
};

enum class EditOp : unsigned { kInsert = 1, kDelete = 2, kSubstitute = 4, kTranspose = 8 };

inline unsigned operator|(EditOp a, EditOp b) {
  return static_cast<unsigned>(a) | static_cast<unsigned>(b);
}

struct CorruptionConfig {
  double corruption_rate = 0.0;
  std::vector<double> per_group_rates;  // empty = use corruption_rate for all
  unsigned edit_ops = EditOp::kInsert | EditOp::kDelete |
                      static_cast<unsigned>(EditOp::kSubstitute) |
                      static_cast<unsigned>(EditOp::kTranspose);
  int ops_per_record = 1;

  double rate_for(int group) const {
    if (per_group_rates.empty()) return corruption_rate;
    if (group < 1 || group > static_cast<int>(per_group_rates.size())) {
      throw std::invalid_argument("corruption: group index out of range");
    }
    return per_group_rates[group - 1];
  }

  void validate() const {
    auto check = [](double r) {
      if (r < 0.0 || r > 1.0) throw std::invalid_argument("corruption rate outside [0,1]");
    };
    check(corruption_rate);
    for (double r : per_group_rates) check(r);
    if (ops_per_record < 1) throw std::invalid_argument("ops_per_record must be >= 1");
    if (edit_ops == 0) throw std::invalid_argument("all edit operations disabled");
  }
};

// ---------------------------------------------------------------------------
// CSV ingestion

/// Loads a dataset from CSV. The header must name the entity_id column, all
/// schema QID columns, and the protected-feature column.
inline Dataset load_dataset(const std::string& path, const Schema& schema) {
  csv::Table t = csv::read_file(path);
  const int id_col = t.column("entity_id");
  if (id_col < 0) throw std::runtime_error("schema error: missing column entity_id");
  std::vector<int> qid_cols;
  for (const auto& name : schema.qid_names) {
    const int c = t.column(name);
    if (c < 0) throw std::runtime_error("schema error: missing column " + name);
    qid_cols.push_back(c);
  }
  const int prot_col = t.column(schema.protected_name);
  if (prot_col < 0) {
    throw std::runtime_error("schema error: missing column " + schema.protected_name);
  }

  Dataset ds;
  ds.schema = schema;
  std::unordered_set<std::string> seen_ids;
  for (const auto& row : t.rows) {
    Record r;
    r.entity_id = row[id_col];
    if (r.entity_id.empty()) throw std::runtime_error("integrity error: empty entity_id");
    if (!seen_ids.insert(r.entity_id).second) {
      throw std::runtime_error("integrity error: duplicate entity_id " + r.entity_id);
    }
    for (int c : qid_cols) r.attributes.push_back(row[c]);
    r.group = schema.group_of(row[prot_col]);
    if (r.group < 0) {
      throw std::runtime_error("schema error: unknown group label " + row[prot_col]);
    }
    ds.records.push_back(std::move(r));
  }
  return ds;
}

inline void save_dataset(const std::string& path, const Dataset& ds) {
  csv::Table t;
  t.header.push_back("entity_id");
  for (const auto& q : ds.schema.qid_names) t.header.push_back(q);
  t.header.push_back(ds.schema.protected_name);
  for (const auto& r : ds.records) {
    std::vector<std::string> row;
    row.push_back(r.entity_id);
    for (const auto& a : r.attributes) row.push_back(a);
    row.push_back(ds.schema.group_labels.at(r.group - 1));
    t.rows.push_back(std::move(row));
  }
  csv::write_file(path, t);
}

inline void save_ground_truth(const std::string& path, const GroundTruth& gt) {
  csv::Table t;
  t.header = {"id_a", "id_b"};
  for (const auto& [a, b] : gt.matches) t.rows.push_back({a, b});
  csv::write_file(path, t);
}

inline GroundTruth load_ground_truth(const std::string& path) {
  csv::Table t = csv::read_file(path);
  const int a = t.column("id_a"), b = t.column("id_b");
  if (a < 0 || b < 0) throw std::runtime_error("schema error: ground truth needs id_a,id_b");
  GroundTruth gt;
  for (const auto& row : t.rows) gt.matches.insert({row[a], row[b]});
  return gt;
}

// ---------------------------------------------------------------------------
// Synthetic generation

namespace detail {

/// Rank-weighted (Zipf, s = 1) index draw from a pool of n entries.
inline std::size_t zipf_index(rng::Stream& stream, std::size_t n) {
  // Inverse-CDF on the harmonic weights, cached per pool size.
  static thread_local std::map<std::size_t, std::vector<double>> cache;
  auto& cum = cache[n];
  if (cum.empty()) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += 1.0 / static_cast<double>(i + 1);
      cum.push_back(total);
    }
  }
  const double u = stream.next_unit() * cum.back();
  const auto it = std::lower_bound(cum.begin(), cum.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), n - 1);
}

inline std::string postcode_for_suburb(std::size_t suburb_index) {
  return std::to_string(1000 + static_cast<int>(suburb_index) * 7);
}

/// Allocates n slots to groups by largest remainder; totals match
/// proportions within one record per group.
inline std::vector<int> allocate_groups(int n, const std::vector<double>& proportions) {
  const int g_count = static_cast<int>(proportions.size());
  std::vector<int> counts(g_count, 0);
  std::vector<std::pair<double, int>> remainders;
  int assigned = 0;
  for (int g = 0; g < g_count; ++g) {
    const double exact = proportions[g] * n;
    counts[g] = static_cast<int>(exact);
    assigned += counts[g];
    remainders.push_back({exact - counts[g], g});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; i < n - assigned; ++i) counts[remainders[i % g_count].second]++;
  std::vector<int> groups;
  for (int g = 0; g < g_count; ++g) {
    groups.insert(groups.end(), counts[g], g + 1);
  }
  return groups;
}

inline Record make_person(rng::Stream& stream, std::string entity_id, int group) {
  Record r;
  r.entity_id = std::move(entity_id);
  r.group = group;
  const bool pool1 = (group % 2) == 1;
  const std::size_t given = pool1 ? zipf_index(stream, pools::kGivenNamesGroup1.size())
                                  : zipf_index(stream, pools::kGivenNamesGroup2.size());
  const std::size_t surname = zipf_index(stream, pools::kSurnames.size());
  const std::size_t suburb = zipf_index(stream, pools::kSuburbs.size());
  r.attributes = {pool1 ? pools::kGivenNamesGroup1[given] : pools::kGivenNamesGroup2[given],
                  pools::kSurnames[surname], pools::kSuburbs[suburb],
                  postcode_for_suburb(suburb)};
  return r;
}

}  // namespace detail

/// Generates two party datasets of n records each with round(overlap*n)
/// shared entities, plus the ground truth listing exactly those pairs.
/// Group sizes follow group_proportions within one record. Deterministic
/// under seed.
inline std::tuple<Dataset, Dataset, GroundTruth> generate_synthetic(
    int n, double overlap, const std::vector<double>& group_proportions,
    std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("generate_synthetic: record count must be positive");
  if (overlap < 0.0 || overlap > 1.0) {
    throw std::invalid_argument("generate_synthetic: overlap outside [0,1]");
  }
  double prop_sum = 0.0;
  for (double p : group_proportions) prop_sum += p;
  if (group_proportions.empty() || std::fabs(prop_sum - 1.0) > 1e-9) {
    throw std::invalid_argument("generate_synthetic: group proportions must sum to 1");
  }

  Schema schema = Schema::default_person();
  if (group_proportions.size() != schema.group_labels.size()) {
    schema.group_labels.clear();
    for (std::size_t g = 1; g <= group_proportions.size(); ++g) {
      schema.group_labels.push_back("g" + std::to_string(g));
    }
  }

  const int shared = static_cast<int>(std::lround(overlap * n));
  Dataset a, b;
  a.schema = b.schema = schema;
  GroundTruth gt;

  rng::Stream stream = rng::derive(seed, "synthetic");
  const std::vector<int> shared_groups = detail::allocate_groups(shared, group_proportions);
  const std::vector<int> solo_groups = detail::allocate_groups(n - shared, group_proportions);

  for (int i = 0; i < shared; ++i) {
    const std::string id = "s" + std::to_string(i);
    Record r = detail::make_person(stream, id, shared_groups[i]);
    a.records.push_back(r);
    b.records.push_back(r);
    gt.matches.insert({id, id});
  }
  for (int i = 0; i < n - shared; ++i) {
    a.records.push_back(detail::make_person(stream, "a" + std::to_string(i), solo_groups[i]));
  }
  for (int i = 0; i < n - shared; ++i) {
    b.records.push_back(detail::make_person(stream, "b" + std::to_string(i), solo_groups[i]));
  }
  return {std::move(a), std::move(b), std::move(gt)};
}

// ---------------------------------------------------------------------------
// Corruption

namespace detail {

// Single-character confusion pairs standing in for OCR/phonetic lookup
// tables. Applied by the substitute operation when one matches; substitution
// always preserves string length.
inline char confused_char(char c) {
  switch (c) {
    case '0': return 'o';
    case 'o': return '0';
    case '1': return 'l';
    case 'l': return '1';
    case '5': return 's';
    case 's': return '5';
    case '2': return 'z';
    case 'z': return '2';
    case '8': return 'b';
    case 'b': return '8';
    default: return '\0';
  }
}

inline char random_letter(rng::Stream& stream) {
  return static_cast<char>('a' + stream.uniform_below(26));
}

inline void apply_edit(std::string& value, EditOp op, rng::Stream& stream) {
  switch (op) {
    case EditOp::kInsert: {
      const std::size_t pos = stream.uniform_below(value.size() + 1);
      value.insert(value.begin() + pos, random_letter(stream));
      break;
    }
    case EditOp::kDelete: {
      if (value.size() <= 1) return;  // keep attributes non-empty
      const std::size_t pos = stream.uniform_below(value.size());
      value.erase(value.begin() + pos);
      break;
    }
    case EditOp::kSubstitute: {
      const std::size_t pos = stream.uniform_below(value.size());
      const char confused = confused_char(value[pos]);
      if (confused != '\0') {
        value[pos] = confused;
      } else {
        char c = random_letter(stream);
        while (c == value[pos]) c = random_letter(stream);
        value[pos] = c;
      }
      break;
    }
    case EditOp::kTranspose: {
      if (value.size() < 2) return;
      const std::size_t pos = stream.uniform_below(value.size() - 1);
      std::swap(value[pos], value[pos + 1]);
      break;
    }
  }
}

}  // namespace detail

/// Applies ops_per_record random edit operations to randomly chosen
/// attribute values. entity_id and group are never touched.
inline Record corrupt_record(const Record& record, const CorruptionConfig& config,
                             std::uint64_t seed) {
  config.validate();
  bool any_nonempty = false;
  for (const auto& a : record.attributes) any_nonempty |= !a.empty();
  if (!any_nonempty) {
    throw std::invalid_argument("corrupt_record: record has no non-empty attribute");
  }

  std::vector<EditOp> enabled;
  for (EditOp op : {EditOp::kInsert, EditOp::kDelete, EditOp::kSubstitute, EditOp::kTranspose}) {
    if (config.edit_ops & static_cast<unsigned>(op)) enabled.push_back(op);
  }

  Record out = record;
  rng::Stream stream = rng::derive(seed, "corrupt", {rng::hash64(record.entity_id)});
  for (int i = 0; i < config.ops_per_record; ++i) {
    std::size_t attr = stream.uniform_below(out.attributes.size());
    while (out.attributes[attr].empty()) attr = stream.uniform_below(out.attributes.size());
    const EditOp op = enabled[stream.uniform_below(enabled.size())];
    detail::apply_edit(out.attributes[attr], op, stream);
  }
  return out;
}

/// Corrupts a random corruption_rate(group) fraction of the dataset's
/// records in place. Selection and edits are deterministic under seed.
inline Dataset corrupt_dataset(const Dataset& ds, const CorruptionConfig& config,
                               std::uint64_t seed) {
  config.validate();
  Dataset out = ds;
  rng::Stream select = rng::derive(seed, "corrupt-select");
  for (auto& r : out.records) {
    if (select.bernoulli(config.rate_for(r.group))) {
      r = corrupt_record(r, config, seed);
    }
  }
  return out;
}

}  // namespace fairlink

#endif  // FAIRLINK_RECORDS_HPP
