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

#ifndef FAIRLINK_ENCODING_HPP
#define FAIRLINK_ENCODING_HPP

#include <bit>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairlink/records.hpp"
#include "fairlink/rng.hpp"

namespace fairlink {

/// Parameters of the record-level CLK encoding: filter length n_l, k hash
/// functions per q-gram, q-gram length, the bit positions projected into the
/// blocking label, and the shared hash key.
struct EncodingConfig {
  int n_l = 300;
  int k = 30;
  int q = 2;
  std::vector<int> label_positions;  // n_b distinct indices < n_l
  std::uint64_t hash_seed = 0;

  int n_b() const { return static_cast<int>(label_positions.size()); }

  void validate() const {
    if (n_l <= 0) throw std::invalid_argument("encoding: n_l must be positive");
    if (k < 1 || k > n_l) throw std::invalid_argument("encoding: k outside [1, n_l]");
    if (q < 1) throw std::invalid_argument("encoding: q must be >= 1");
    if (label_positions.size() > 64) {
      throw std::invalid_argument("encoding: at most 64 label positions supported");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n_l), false);
    for (int p : label_positions) {
      if (p < 0 || p >= n_l) throw std::invalid_argument("encoding: label position out of range");
      if (seen[static_cast<std::size_t>(p)]) {
        throw std::invalid_argument("encoding: duplicate label position");
      }
      seen[static_cast<std::size_t>(p)] = true;
    }
  }
};

/// Default label selection: the first n_b indices of a hash_seed-keyed
/// pseudorandom permutation of [0, n_l). Both parties derive the same
/// positions from the shared key.
inline std::vector<int> default_label_positions(int n_l, int n_b, std::uint64_t hash_seed) {
  if (n_b < 0 || n_b > n_l || n_b > 64) {
    throw std::invalid_argument("encoding: n_b outside [0, min(n_l, 64)]");
  }
  std::vector<int> perm(static_cast<std::size_t>(n_l));
  std::iota(perm.begin(), perm.end(), 0);
  rng::Stream stream = rng::derive(hash_seed, "label-positions");
  for (std::size_t i = perm.size() - 1; i > 0; --i) {
    std::swap(perm[i], perm[stream.uniform_below(i + 1)]);
  }
  perm.resize(static_cast<std::size_t>(n_b));
  return perm;
}

/// Fixed-length bit vector encoding of one record. is_dummy and
/// source_entity_id exist for evaluation bookkeeping only; classifiers never
/// read them.
class BloomFilter {
 public:
  BloomFilter() = default;
  explicit BloomFilter(int n_bits)
      : n_bits_(n_bits), words_((static_cast<std::size_t>(n_bits) + 63) / 64, 0) {}

  int size() const { return n_bits_; }

  bool test(int i) const { return (words_[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1; }

  void set(int i) { words_[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64); }

  void flip(int i) { words_[static_cast<std::size_t>(i) / 64] ^= std::uint64_t{1} << (i % 64); }

  int popcount() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  int and_popcount(const BloomFilter& other) const {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & other.words_[i]);
    return c;
  }

  bool operator==(const BloomFilter& other) const {
    return n_bits_ == other.n_bits_ && words_ == other.words_;
  }

  /// Hex serialization, two chars per byte, byte 0 first; bit i lives in
  /// byte i/8 at position i%8.
  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    const int n_bytes = (n_bits_ + 7) / 8;
    std::string out;
    out.reserve(static_cast<std::size_t>(n_bytes) * 2);
    for (int b = 0; b < n_bytes; ++b) {
      const unsigned byte =
          static_cast<unsigned>(words_[static_cast<std::size_t>(b) / 8] >> ((b % 8) * 8)) & 0xffu;
      out.push_back(digits[byte >> 4]);
      out.push_back(digits[byte & 0xf]);
    }
    return out;
  }

  static BloomFilter from_hex(const std::string& hex, int n_bits) {
    BloomFilter f(n_bits);
    const int n_bytes = (n_bits + 7) / 8;
    if (hex.size() != static_cast<std::size_t>(n_bytes) * 2) {
      throw std::runtime_error("bloom filter hex length mismatch");
    }
    auto nibble = [](char c) -> unsigned {
      if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
      if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
      if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
      throw std::runtime_error("bloom filter hex: invalid digit");
    };
    for (int b = 0; b < n_bytes; ++b) {
      const unsigned byte = (nibble(hex[2 * b]) << 4) | nibble(hex[2 * b + 1]);
      f.words_[static_cast<std::size_t>(b) / 8] |= std::uint64_t{byte} << ((b % 8) * 8);
    }
    return f;
  }

  bool is_dummy = false;
  int group = 1;
  std::string source_entity_id;  // empty for dummies in released views

 private:
  int n_bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Blocking label: the filter bits projected at the configured label
/// positions, packed LSB-first in position order.
struct BinLabel {
  std::uint64_t bits = 0;
  int length = 0;

  bool operator<(const BinLabel& other) const {
    return length != other.length ? length < other.length : bits < other.bits;
  }
  bool operator==(const BinLabel& other) const {
    return length == other.length && bits == other.bits;
  }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(length), '0');
    for (int i = 0; i < length; ++i) {
      if ((bits >> i) & 1) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
  }

  static BinLabel from_string(const std::string& s) {
    BinLabel l;
    l.length = static_cast<int>(s.size());
    for (int i = 0; i < l.length; ++i) {
      if (s[static_cast<std::size_t>(i)] == '1') l.bits |= std::uint64_t{1} << i;
    }
    return l;
  }
};

// ---------------------------------------------------------------------------
// q-grams and hashing

/// Lowercases and trims the string, then returns its len-q+1 contiguous
/// q-grams (empty when shorter than q). No padding characters are added.
inline std::vector<std::string> qgrams(const std::string& s, int q) {
  if (q < 1) throw std::invalid_argument("qgrams: q must be >= 1");
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  std::string norm;
  norm.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i]))));
  }
  std::vector<std::string> grams;
  if (norm.size() < static_cast<std::size_t>(q)) return grams;
  for (std::size_t i = 0; i + q <= norm.size(); ++i) grams.push_back(norm.substr(i, q));
  return grams;
}

namespace detail {

// Keyed 64-bit string hash: FNV-1a over the bytes, seed folded in, then a
// splitmix-style avalanche.
inline std::uint64_t keyed_hash(const std::string& s, std::uint64_t seed) {
  std::uint64_t h = rng::hash64(s) ^ (seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

}  // namespace detail

/// Sets the k double-hashed positions of one q-gram: h_i = h1 + i*h2 mod n_l.
inline void add_qgram(BloomFilter& filter, const std::string& gram, const EncodingConfig& cfg) {
  const std::uint64_t h1 = detail::keyed_hash(gram, cfg.hash_seed);
  std::uint64_t h2 = detail::keyed_hash(gram, cfg.hash_seed ^ 0x517cc1b727220a95ULL);
  // A step of 0 mod n_l would collapse all k probes onto one position.
  h2 = h2 % static_cast<std::uint64_t>(cfg.n_l - 1 > 0 ? cfg.n_l - 1 : 1) + 1;
  const auto n = static_cast<std::uint64_t>(cfg.n_l);
  for (int i = 0; i < cfg.k; ++i) {
    filter.set(static_cast<int>((h1 + static_cast<std::uint64_t>(i) * h2) % n));
  }
}

/// Record-level CLK: the union of all attributes' q-grams hashed into one
/// filter. A record whose attributes are all empty yields an all-zero filter.
inline BloomFilter encode_record(const Record& r, const EncodingConfig& cfg) {
  cfg.validate();
  if (r.attributes.empty()) throw std::invalid_argument("encode_record: record has no attributes");
  BloomFilter f(cfg.n_l);
  f.group = r.group;
  f.is_dummy = false;
  f.source_entity_id = r.entity_id;
  for (const auto& attr : r.attributes) {
    for (const auto& gram : qgrams(attr, cfg.q)) add_qgram(f, gram, cfg);
  }
  return f;
}

inline std::vector<BloomFilter> encode_dataset(const Dataset& ds, const EncodingConfig& cfg) {
  std::vector<BloomFilter> out;
  out.reserve(ds.records.size());
  for (const auto& r : ds.records) out.push_back(encode_record(r, cfg));
  return out;
}

/// Dice similarity 2c/(x1+x2); 0.0 when both filters are empty (two empty
/// encodings carry no matching evidence).
inline double dice(const BloomFilter& a, const BloomFilter& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dice: filter length mismatch");
  const int x1 = a.popcount();
  const int x2 = b.popcount();
  if (x1 + x2 == 0) return 0.0;
  return 2.0 * a.and_popcount(b) / static_cast<double>(x1 + x2);
}

inline BinLabel bin_label(const BloomFilter& f, const EncodingConfig& cfg) {
  BinLabel label;
  label.length = cfg.n_b();
  for (int i = 0; i < label.length; ++i) {
    if (f.test(cfg.label_positions[static_cast<std::size_t>(i)])) {
      label.bits |= std::uint64_t{1} << i;
    }
  }
  return label;
}

/// Mean popcount/n_l over a set of filters; feeds the analytics fill
/// parameter when the measured rate is preferred over the modeling default.
inline double measure_fill_rate(const std::vector<BloomFilter>& filters) {
  if (filters.empty()) throw std::invalid_argument("measure_fill_rate: no filters");
  double total = 0.0;
  for (const auto& f : filters) total += static_cast<double>(f.popcount()) / f.size();
  return total / static_cast<double>(filters.size());
}

// ---------------------------------------------------------------------------
// Serialization: "fairlink-bf 1" format. One line per filter:
//   <hex bits> <group> <is_dummy 0|1> <entity_id or ->
// Released views write is_dummy as 0 and omit the entity id; the private
// sidecar used for evaluation keeps both (see blocking.hpp).

inline void save_filters(const std::string& path, const std::vector<BloomFilter>& filters,
                         const EncodingConfig& cfg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write filter file: " + path);
  out << "fairlink-bf 1 n_l=" << cfg.n_l << "\n";
  for (const auto& f : filters) {
    out << f.to_hex() << ' ' << f.group << ' ' << (f.is_dummy ? 1 : 0) << ' '
        << (f.source_entity_id.empty() ? "-" : f.source_entity_id) << "\n";
  }
}

inline std::vector<BloomFilter> load_filters(const std::string& path, int* n_l_out = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open filter file: " + path);
  std::string magic, version_info;
  int version = 0;
  in >> magic >> version >> version_info;
  if (magic != "fairlink-bf" || version != 1 || version_info.rfind("n_l=", 0) != 0) {
    throw std::runtime_error("unrecognized filter file header: " + path);
  }
  const int n_l = std::stoi(version_info.substr(4));
  if (n_l_out) *n_l_out = n_l;
  std::vector<BloomFilter> filters;
  std::string hex, entity;
  int group = 0, dummy = 0;
  while (in >> hex >> group >> dummy >> entity) {
    BloomFilter f = BloomFilter::from_hex(hex, n_l);
    f.group = group;
    f.is_dummy = dummy != 0;
    f.source_entity_id = entity == "-" ? "" : entity;
    filters.push_back(std::move(f));
  }
  return filters;
}

}  // namespace fairlink

#endif  // FAIRLINK_ENCODING_HPP
