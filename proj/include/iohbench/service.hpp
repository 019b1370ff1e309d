#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "iohbench/dataset.hpp"
#include "iohbench/report.hpp"

namespace httplib {
class Server;
}

namespace iohbench {

/// Immutable snapshot of one registered dataset.
struct DatasetEntry {
  std::string id;
  std::string source;
  LoadReport report;
  std::shared_ptr<const RunDataset> full;
  std::shared_ptr<const RunDataset> active;  // full or trimmed
  bool efficient = false;
  std::size_t cap = 0;
};

/// Readers take snapshots under a shared lock; writers swap entries.
class DatasetRegistry {
 public:
  std::shared_ptr<const DatasetEntry> add(RunDataset dataset, LoadReport report, std::string source);
  /// Throws LookupError for unknown ids.
  std::shared_ptr<const DatasetEntry> get(const std::string& id) const;
  std::vector<std::shared_ptr<const DatasetEntry>> list() const;
  bool remove(const std::string& id);
  std::shared_ptr<const DatasetEntry> set_efficient(const std::string& id, bool enabled, std::size_t cap);

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const DatasetEntry>> entries_;
  std::uint64_t next_id_ = 1;
};

struct ServiceOptions {
  std::uint64_t max_upload_bytes = std::uint64_t{512} << 20;
  std::optional<std::filesystem::path> assets;  // dashboard build served at /
};

struct HttpRequest {
  std::string method;
  std::string path;
  ParamMap query;
  std::string body;
  std::string content_type;
  std::map<std::string, std::string> files;  // multipart field -> content
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

class Service {
 public:
  explicit Service(ServiceOptions options = {});

  DatasetRegistry& registry() { return registry_; }

  std::shared_ptr<const DatasetEntry> load_path(const std::filesystem::path& folder);
  /// Throws ParseError for archives that do not hold a result folder.
  std::shared_ptr<const DatasetEntry> load_archive(std::string_view zip);

  /// Routes one API request; never throws.
  HttpResponse handle(const HttpRequest& request);

  /// Installs the API routes and static assets on `server`.
  void mount(httplib::Server& server);

  /// Blocks until the server stops. Returns false when the port cannot be bound.
  bool listen(const std::string& host, int port);

 private:
  HttpResponse route(const HttpRequest& request);

  ServiceOptions options_;
  DatasetRegistry registry_;
};

}  // namespace iohbench
