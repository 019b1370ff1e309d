#include "iohbench/service.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>

#include <httplib.h>
#include <json.hpp>

#include "iohbench/error.hpp"
#include "iohbench/zip.hpp"

namespace iohbench {

namespace fs = std::filesystem;
using json = nlohmann::json;

// ---- registry -----------------------------------------------------------------

std::shared_ptr<const DatasetEntry> DatasetRegistry::add(RunDataset dataset, LoadReport report, std::string source) {
  auto entry = std::make_shared<DatasetEntry>();
  entry->source = std::move(source);
  entry->report = std::move(report);
  entry->full = std::make_shared<const RunDataset>(std::move(dataset));
  entry->active = entry->full;
  std::unique_lock lock(mutex_);
  entry->id = "ds" + std::to_string(next_id_++);
  entries_[entry->id] = entry;
  return entry;
}

std::shared_ptr<const DatasetEntry> DatasetRegistry::get(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(id);
  if (it == entries_.end()) throw LookupError("unknown dataset '" + id + "'");
  return it->second;
}

std::vector<std::shared_ptr<const DatasetEntry>> DatasetRegistry::list() const {
  std::shared_lock lock(mutex_);
  std::vector<std::shared_ptr<const DatasetEntry>> out;
  for (const auto& [id, e] : entries_) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a->id.size() != b->id.size() ? a->id.size() < b->id.size() : a->id < b->id;
  });
  return out;
}

bool DatasetRegistry::remove(const std::string& id) {
  std::unique_lock lock(mutex_);
  return entries_.erase(id) > 0;
}

std::shared_ptr<const DatasetEntry> DatasetRegistry::set_efficient(const std::string& id, bool enabled,
                                                                   std::size_t cap) {
  const auto current = get(id);
  auto next = std::make_shared<DatasetEntry>(*current);
  next->efficient = enabled;
  next->cap = enabled ? cap : 0;
  // Trimming runs outside the lock; the swap below is the only write.
  next->active = enabled ? std::make_shared<const RunDataset>(trim_efficient(*current->full, cap)) : current->full;
  std::unique_lock lock(mutex_);
  const auto it = entries_.find(id);
  if (it == entries_.end()) throw LookupError("unknown dataset '" + id + "'");
  it->second = next;
  return next;
}

// ---- service ------------------------------------------------------------------

namespace {

json entry_json(const DatasetEntry& e) {
  json algorithms = json::array();
  json functions = json::array();
  json dims = json::array();
  std::vector<std::string> parameters;
  for (const auto& [key, group] : e.full->groups) {
    if (std::find(algorithms.begin(), algorithms.end(), key.algorithm) == algorithms.end()) {
      algorithms.push_back(key.algorithm);
    }
    if (std::find(functions.begin(), functions.end(), key.function_id) == functions.end()) {
      functions.push_back(key.function_id);
    }
    if (std::find(dims.begin(), dims.end(), key.dimension) == dims.end()) dims.push_back(key.dimension);
    for (const auto& p : group.parameter_names) {
      if (std::find(parameters.begin(), parameters.end(), p) == parameters.end()) parameters.push_back(p);
    }
  }
  json j;
  j["id"] = e.id;
  j["source"] = e.source;
  j["runs"] = e.full->run_count();
  j["direction"] = e.full->direction == Direction::maximize ? "maximize" : "minimize";
  j["algorithms"] = algorithms;
  j["funcIds"] = functions;
  j["dims"] = dims;
  j["parameters"] = parameters;
  j["efficient"] = e.efficient;
  j["cap"] = e.cap;
  j["report"] = e.report.lines();
  j["warnings"] = e.report.warnings;
  return j;
}

HttpResponse json_response(int status, const json& body) { return {status, "application/json", body.dump()}; }

HttpResponse error_response(int status, const std::string& error, const std::string& detail) {
  return json_response(status, json{{"error", error}, {"detail", detail}});
}

std::vector<std::string> path_parts(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start < path.size()) {
    auto slash = path.find('/', start);
    if (slash == std::string::npos) slash = path.size();
    if (slash > start) parts.push_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return parts;
}

fs::path unique_temp_dir() {
  static std::atomic<std::uint64_t> counter{0};
  std::random_device rd;
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto dir = fs::temp_directory_path() / ("iohbench-upload-" + std::to_string(stamp) + "-" +
                                            std::to_string(rd()) + "-" + std::to_string(counter++));
    if (fs::create_directory(dir)) return dir;
  }
  throw IoError(fs::temp_directory_path(), "cannot create a temporary directory");
}

}  // namespace

Service::Service(ServiceOptions options) : options_(std::move(options)) {}

std::shared_ptr<const DatasetEntry> Service::load_path(const fs::path& folder) {
  LoadReport report;
  auto ds = load_folder(folder, &report);
  return registry_.add(std::move(ds), std::move(report), folder.string());
}

std::shared_ptr<const DatasetEntry> Service::load_archive(std::string_view zip) {
  const auto dir = unique_temp_dir();
  struct Cleanup {
    fs::path dir;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  } cleanup{dir};
  const auto entries = read_zip(zip, options_.max_upload_bytes * 16);
  if (entries.empty()) throw ParseError("zip archive", 0, "archive contains no files");
  extract_zip(zip, dir);
  LoadReport report;
  RunDataset ds;
  try {
    ds = load_folder(dir, &report);
  } catch (const IoError& e) {
    throw ParseError("zip archive", 0, e.what());
  }
  return registry_.add(std::move(ds), std::move(report), "upload");
}

HttpResponse Service::handle(const HttpRequest& request) {
  try {
    return route(request);
  } catch (const LookupError& e) {
    return error_response(404, "not found", e.what());
  } catch (const ParseError& e) {
    return error_response(422, "unprocessable input", e.what());
  } catch (const IntegrityError& e) {
    return error_response(422, "unprocessable input", e.what());
  } catch (const IoError& e) {
    return error_response(400, "bad request", e.what());
  } catch (const InputError& e) {
    return error_response(400, "bad request", e.what());
  } catch (const json::exception& e) {
    return error_response(400, "bad request", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal error", e.what());
  }
}

HttpResponse Service::route(const HttpRequest& req) {
  const auto parts = path_parts(req.path);
  if (parts.size() < 2 || parts[0] != "api" || parts[1] != "datasets") {
    return error_response(404, "not found", "no route for " + req.path);
  }
  if (req.body.size() > options_.max_upload_bytes) {
    return error_response(413, "payload too large", "limit is " + std::to_string(options_.max_upload_bytes) + " bytes");
  }

  if (parts.size() == 2) {
    if (req.method == "GET") {
      json list = json::array();
      for (const auto& e : registry_.list()) list.push_back(entry_json(*e));
      return json_response(200, json{{"datasets", list}});
    }
    if (req.method == "POST") {
      if (!req.files.empty()) {
        const auto it = req.files.count("file") ? req.files.find("file") : req.files.begin();
        return json_response(201, entry_json(*load_archive(it->second)));
      }
      const auto body = json::parse(req.body.empty() ? "{}" : req.body);
      if (body.contains("format") && body["format"] != "iohprofiler") {
        throw InputError("only the IOHprofiler format is supported");
      }
      if (!body.contains("path") || !body["path"].is_string()) {
        throw InputError("expected a multipart zip upload or {\"path\": ...}");
      }
      return json_response(201, entry_json(*load_path(body["path"].get<std::string>())));
    }
    return error_response(405, "method not allowed", req.method + " " + req.path);
  }

  const std::string& id = parts[2];
  if (parts.size() == 3) {
    if (req.method == "GET") return json_response(200, entry_json(*registry_.get(id)));
    if (req.method == "DELETE") {
      if (!registry_.remove(id)) throw LookupError("unknown dataset '" + id + "'");
      return json_response(200, json{{"deleted", id}});
    }
    return error_response(405, "method not allowed", req.method + " " + req.path);
  }
  if (parts.size() != 4) return error_response(404, "not found", "no route for " + req.path);

  const std::string& action = parts[3];
  if (action == "efficient") {
    if (req.method != "POST") return error_response(405, "method not allowed", req.method + " " + req.path);
    const auto body = json::parse(req.body.empty() ? "{}" : req.body);
    const bool enabled = body.value("enabled", true);
    const auto cap = body.value("cap", std::int64_t{100});
    if (cap < 2) throw InputError("cap must be at least 2");
    return json_response(200, entry_json(*registry_.set_efficient(id, enabled, static_cast<std::size_t>(cap))));
  }
  if (req.method != "GET") return error_response(405, "method not allowed", req.method + " " + req.path);

  const auto entry = registry_.get(id);
  const Query query = parse_query(action, req.query);
  const Table table = run_query(*entry->active, query);
  const auto fmt = req.query.find("format");
  if (fmt != req.query.end() && fmt->second == "csv") return {200, "text/csv; charset=utf-8", to_csv(table)};
  return {200, "application/json", to_json(table, *entry->active, query)};
}

void Service::mount(httplib::Server& server) {
  server.set_payload_max_length(static_cast<std::size_t>(options_.max_upload_bytes));
  auto adapter = [this](const httplib::Request& in, httplib::Response& out) {
    HttpRequest req;
    req.method = in.method;
    req.path = in.path;
    for (const auto& [k, v] : in.params) req.query.emplace(k, v);
    req.body = in.body;
    req.content_type = in.get_header_value("Content-Type");
    for (const auto& [field, file] : in.files) {
      if (!file.filename.empty()) req.files.emplace(field, file.content);
    }
    const auto res = handle(req);
    out.status = res.status;
    out.set_content(res.body, res.content_type);
  };
  server.Get(R"(/api/.*)", adapter);
  server.Post(R"(/api/.*)", adapter);
  server.Delete(R"(/api/.*)", adapter);
  if (options_.assets && fs::is_directory(*options_.assets)) {
    server.set_mount_point("/", options_.assets->string());
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& out) {
      out.set_content(
          "<!doctype html><title>iohbench</title><p>iohbench service is running. The dashboard is not "
          "bundled; the API lives under <code>/api/datasets</code>.</p>",
          "text/html");
    });
  }
}

bool Service::listen(const std::string& host, int port) {
  httplib::Server server;
  mount(server);
  if (!server.bind_to_port(host, port)) return false;
  return server.listen_after_bind();
}

}  // namespace iohbench
