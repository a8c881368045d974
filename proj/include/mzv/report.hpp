#pragma once

// Result records shared by the command layer: JSON and text rendering and a
// JSON-lines result cache.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mzv {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct ResultRecord {
  std::string composition;  // "(3,1)"
  std::string word;         // "0011"
  unsigned weight = 0;
  unsigned depth = 0;
  unsigned digits = 0;
  std::string value;
  std::string algorithm;
  unsigned long N = 0;
  std::string certified_error;  // rounded up, scientific
  double wall_ms = 0;
  bool cached = false;
  /// Tail indices; absent for plain zeta values.
  std::optional<unsigned long> m;
  std::optional<unsigned long> n;
  /// Independent reference value (tails only), with its own error.
  std::optional<std::string> reference_value;
  std::optional<std::string> reference_error;

  bool operator==(const ResultRecord&) const = default;
};

void to_json(nlohmann::json& j, const ResultRecord& r);
void from_json(const nlohmann::json& j, ResultRecord& r);

/// One compact JSON object, no trailing newline.
std::string to_json_line(const ResultRecord& r);
ResultRecord parse_json_line(const std::string& line);

std::string to_text(const ResultRecord& r);

struct CacheKey {
  std::string composition;
  unsigned digits = 0;
  std::string algorithm;
  std::optional<unsigned long> m;
  std::optional<unsigned long> n;
  std::string version = kLibraryVersion;

  bool operator==(const CacheKey&) const = default;
};

CacheKey key_of(const ResultRecord& r);

/// Append-only JSON-lines file. Each record is written with a single write
/// on an O_APPEND descriptor; malformed lines are skipped on load.
class ResultCache {
 public:
  explicit ResultCache(std::string path);

  const std::string& path() const noexcept { return path_; }
  /// Latest record stored under key, marked cached.
  std::optional<ResultRecord> lookup(const CacheKey& key) const;
  void store(const ResultRecord& r);

 private:
  struct Entry {
    CacheKey key;
    ResultRecord record;
  };
  void load();

  std::string path_;
  std::vector<Entry> entries_;
};

}  // namespace mzv
