#include "mzv/report.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mzv {

using nlohmann::json;

void to_json(json& j, const ResultRecord& r) {
  j = json{{"composition", r.composition},
           {"word", r.word},
           {"weight", r.weight},
           {"depth", r.depth},
           {"digits", r.digits},
           {"value", r.value},
           {"algorithm", r.algorithm},
           {"N", r.N},
           {"certified_error", r.certified_error},
           {"wall_ms", r.wall_ms},
           {"cached", r.cached}};
  if (r.m) j["m"] = *r.m;
  if (r.n) j["n"] = *r.n;
  if (r.reference_value) j["reference_value"] = *r.reference_value;
  if (r.reference_error) j["reference_error"] = *r.reference_error;
}

void from_json(const json& j, ResultRecord& r) {
  j.at("composition").get_to(r.composition);
  j.at("word").get_to(r.word);
  j.at("weight").get_to(r.weight);
  j.at("depth").get_to(r.depth);
  j.at("digits").get_to(r.digits);
  j.at("value").get_to(r.value);
  j.at("algorithm").get_to(r.algorithm);
  j.at("N").get_to(r.N);
  j.at("certified_error").get_to(r.certified_error);
  j.at("wall_ms").get_to(r.wall_ms);
  r.cached = j.value("cached", false);
  r.m.reset();
  r.n.reset();
  r.reference_value.reset();
  r.reference_error.reset();
  if (j.contains("m")) r.m = j.at("m").get<unsigned long>();
  if (j.contains("n")) r.n = j.at("n").get<unsigned long>();
  if (j.contains("reference_value")) r.reference_value = j.at("reference_value").get<std::string>();
  if (j.contains("reference_error")) r.reference_error = j.at("reference_error").get<std::string>();
}

std::string to_json_line(const ResultRecord& r) { return json(r).dump(); }

ResultRecord parse_json_line(const std::string& line) { return json::parse(line).get<ResultRecord>(); }

std::string to_text(const ResultRecord& r) {
  std::ostringstream out;
  const std::string label = r.composition.empty() ? "[" + r.word + "]" : r.composition;
  if (r.m) {
    out << "zeta" << label << "_{" << *r.m << "," << *r.n << "}";
  } else {
    out << "zeta" << r.composition;
  }
  out << "  word " << (r.word.empty() ? "(empty)" : r.word) << "  weight " << r.weight << "  depth " << r.depth << "\n";
  out << "  value " << r.value << "\n";
  out << "  error <= " << r.certified_error << "  (" << r.algorithm << ", N=" << r.N << ", ";
  out.precision(3);
  out << std::fixed << r.wall_ms << " ms" << (r.cached ? ", cached" : "") << ")\n";
  if (r.reference_value) {
    out << "  reference " << *r.reference_value << "  (oracle, error <= " << r.reference_error.value_or("?") << ")\n";
  }
  return out.str();
}

CacheKey key_of(const ResultRecord& r) {
  // Tails may use words without a composition, so they are keyed by word.
  const std::string target = r.m ? "word:" + r.word : r.composition;
  return CacheKey{target, r.digits, r.algorithm, r.m, r.n, kLibraryVersion};
}

ResultCache::ResultCache(std::string path) : path_(std::move(path)) { load(); }

void ResultCache::load() {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      Entry e{CacheKey{}, j.get<ResultRecord>()};
      e.key = key_of(e.record);
      e.key.version = j.value("version", std::string());
      entries_.push_back(std::move(e));
    } catch (const std::exception&) {
      // A torn or foreign line; later lines are still usable.
    }
  }
}

std::optional<ResultRecord> ResultCache::lookup(const CacheKey& key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->key == key) {
      ResultRecord r = it->record;
      r.cached = true;
      return r;
    }
  }
  return std::nullopt;
}

void ResultCache::store(const ResultRecord& r) {
  ResultRecord stored = r;
  stored.cached = false;
  json j = stored;
  j["version"] = kLibraryVersion;
  const std::string line = j.dump() + "\n";
  const int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw std::runtime_error("cannot open cache '" + path_ + "': " + std::strerror(errno));
  const ssize_t written = ::write(fd, line.data(), line.size());
  const int err = errno;
  ::close(fd);
  if (written != static_cast<ssize_t>(line.size())) {
    throw std::runtime_error("short write to cache '" + path_ + "': " + std::strerror(err));
  }
  Entry e{key_of(stored), stored};
  entries_.push_back(std::move(e));
}

}  // namespace mzv
