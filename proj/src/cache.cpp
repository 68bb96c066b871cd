#include "simplexlab/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace simplexlab::cache {

std::string Key::canonical() const { return operation + "|" + params + "|" + std::to_string(digits); }

std::string Key::digest() const {
  const std::string text = canonical();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xf];
  }
  return out;
}

std::string serialize(const Entry& entry) {
  nlohmann::ordered_json j;
  j["schema"] = "simplexlab/1";
  j["key"] = {{"operation", entry.key.operation}, {"params", entry.key.params}, {"digits", entry.key.digits}};
  j["value"] = entry.value;
  j["error_bound"] = entry.error_bound;
  j["created"] = entry.created;
  j["tool_version"] = entry.tool_version;
  return j.dump(2) + "\n";
}

Entry deserialize(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Entry e;
    e.key.operation = j.at("key").at("operation").get<std::string>();
    e.key.params = j.at("key").at("params").get<std::string>();
    e.key.digits = j.at("key").at("digits").get<int>();
    e.value = j.at("value").get<std::string>();
    e.error_bound = j.at("error_bound").get<std::string>();
    e.created = j.at("created").get<std::string>();
    e.tool_version = j.at("tool_version").get<std::string>();
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw std::runtime_error(std::string("malformed cache entry: ") + ex.what());
  }
}

DirectoryStore::DirectoryStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path DirectoryStore::path_for(const Key& key) const { return dir_ / (key.digest() + ".json"); }

std::optional<Entry> DirectoryStore::lookup(const Key& key) {
  std::ifstream in(path_for(key));
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    Entry e = deserialize(buffer.str());
    // A digest collision or a hand-edited file: treat as a miss.
    if (e.key.canonical() != key.canonical()) return std::nullopt;
    return e;
  } catch (const std::runtime_error&) {
    return std::nullopt;
  }
}

void DirectoryStore::put(const Entry& entry) { write_atomically(path_for(entry.key), serialize(entry)); }

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  static std::atomic<unsigned long> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ostringstream suffix;
  suffix << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << counter++;
  const std::filesystem::path tmp = path.string() + suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace simplexlab::cache
