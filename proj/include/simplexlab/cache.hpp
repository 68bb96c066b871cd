#pragma once

#include <filesystem>
#include <optional>
#include <string>

// Persistent results cache: one file per entry, named by the SHA-256 hex
// digest of the key, holding the entry as UTF-8 JSON.
namespace simplexlab::cache {

inline constexpr const char* kToolVersion = "simplexlab 1.0.0";

struct Key {
  std::string operation;
  // Canonical parameter string, e.g. "1/6".
  std::string params;
  int digits = 0;

  std::string canonical() const;
  std::string digest() const;
};

struct Entry {
  Key key;
  std::string value;
  std::string error_bound;
  std::string created;
  std::string tool_version = kToolVersion;
};

std::string serialize(const Entry& entry);
// Throws std::runtime_error on malformed content.
Entry deserialize(const std::string& text);

class Store {
 public:
  virtual ~Store() = default;
  virtual std::optional<Entry> lookup(const Key& key) = 0;
  virtual void put(const Entry& entry) = 0;
};

class DirectoryStore final : public Store {
 public:
  explicit DirectoryStore(std::filesystem::path dir);

  std::optional<Entry> lookup(const Key& key) override;
  void put(const Entry& entry) override;

  std::filesystem::path path_for(const Key& key) const;
  const std::filesystem::path& directory() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

// Writes through a temporary sibling file and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& content);

// Current UTC time as ISO-8601.
std::string utc_timestamp();

}  // namespace simplexlab::cache
