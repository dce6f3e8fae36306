#include "reekit/store.hpp"

#include <fmt/format.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "reekit/error.hpp"
#include "reekit/hash.hpp"

namespace reekit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kManifestFormat = "reekit-dataset/1";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool looks_like_id(std::string_view id) {
  return id.size() == 32 && id.find_first_not_of("0123456789abcdef") == std::string_view::npos;
}

}  // namespace

DatasetStore::DatasetStore(fs::path storage_root) : root_(std::move(storage_root)) {
  if (!root_.empty()) fs::create_directories(root_);
}

std::string DatasetStore::put(const Dataset& dataset, std::string_view original_csv,
                              const ImportOptions* options) {
  const std::string id = dataset.dataset_id;
  std::lock_guard write_lock(write_mutex_);
  {
    std::shared_lock lock(mutex_);
    if (datasets_.count(id)) return id;
  }
  auto stored = std::make_shared<Dataset>(dataset);

  if (!root_.empty()) {
    const fs::path target = root_ / id;
    if (fs::exists(target / "manifest.json")) {
      stored->provenance.imported_at =
          json::parse(read_file(target / "manifest.json")).value("imported_at", "");
    } else {
      stored->provenance.imported_at = utc_timestamp();
      std::random_device rd;
      const fs::path staging = root_ / fmt::format(".staging-{}-{:08x}", id, rd());
      fs::create_directories(staging);
      const std::string canonical = serialize_dataset(dataset);
      write_file(staging / "dataset.csv", canonical);
      if (!original_csv.empty()) write_file(staging / "original.csv", original_csv);

      json manifest = {
          {"format", kManifestFormat},
          {"dataset_id", id},
          {"name", dataset.provenance.source_name},
          {"dataset_sha256", sha256_hex(canonical)},
          {"imported_at", stored->provenance.imported_at},
          {"rows", dataset.patterns.size()},
          {"categories", dataset.category_schema},
      };
      if (!original_csv.empty()) manifest["original_sha256"] = sha256_hex(original_csv);
      if (options) {
        manifest["import_options"] = {
            {"delimiter", std::string(1, options->delimiter)},
            {"unit", to_string(options->unit)},
            {"nonpositive", to_string(options->nonpositive)},
        };
      }
      write_file(staging / "manifest.json", manifest.dump(2) + "\n");
      std::error_code ec;
      fs::rename(staging, target, ec);
      if (ec) fs::remove_all(staging);  // another writer got there first
    }
  }

  std::unique_lock lock(mutex_);
  datasets_.emplace(id, std::move(stored));
  return id;
}

std::shared_ptr<const Dataset> DatasetStore::load(const std::string& dataset_id) const {
  if (root_.empty() || !looks_like_id(dataset_id)) return nullptr;
  const fs::path dir = root_ / dataset_id;
  if (!fs::exists(dir / "manifest.json") || !fs::exists(dir / "dataset.csv")) return nullptr;
  const json manifest = json::parse(read_file(dir / "manifest.json"));
  ImportOptions options;
  options.source_name = manifest.value("name", "");
  auto imported = parse_csv(read_file(dir / "dataset.csv"), options);
  if (imported.dataset.dataset_id != dataset_id) {
    throw std::runtime_error(fmt::format("dataset {} does not match its content hash", dataset_id));
  }
  imported.dataset.provenance.imported_at = manifest.value("imported_at", "");
  return std::make_shared<const Dataset>(std::move(imported.dataset));
}

std::shared_ptr<const Dataset> DatasetStore::get(const std::string& dataset_id) const {
  {
    std::shared_lock lock(mutex_);
    const auto it = datasets_.find(dataset_id);
    if (it != datasets_.end()) return it->second;
  }
  auto loaded = load(dataset_id);
  if (!loaded) throw Error(ErrorCode::NotFound, fmt::format("dataset '{}' not found", dataset_id));
  std::unique_lock lock(mutex_);
  return datasets_.try_emplace(dataset_id, std::move(loaded)).first->second;
}

std::vector<DatasetSummary> DatasetStore::list() const {
  std::map<std::string, DatasetSummary> summaries;
  {
    std::shared_lock lock(mutex_);
    for (const auto& [id, ds] : datasets_) {
      summaries[id] = {id, ds->provenance.source_name, ds->patterns.size(), ds->category_schema};
    }
  }
  if (!root_.empty()) {
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root_, ec)) {
      const std::string id = entry.path().filename().string();
      if (!looks_like_id(id) || summaries.count(id)) continue;
      const fs::path manifest_path = entry.path() / "manifest.json";
      if (!fs::exists(manifest_path)) continue;
      const json manifest = json::parse(read_file(manifest_path), nullptr, false);
      if (manifest.is_discarded()) continue;
      summaries[id] = {id, manifest.value("name", ""), manifest.value("rows", std::size_t{0}),
                       manifest.value("categories", std::vector<std::string>{})};
    }
  }
  std::vector<DatasetSummary> out;
  for (auto& [id, s] : summaries) out.push_back(std::move(s));
  return out;
}

std::optional<std::string> DatasetStore::cached(const std::string& dataset_id,
                                                const std::string& key) const {
  std::shared_lock lock(cache_mutex_);
  const auto it = cache_.find(dataset_id + "\n" + key);
  if (it == cache_.end()) return std::nullopt;
  return it->second;
}

void DatasetStore::cache(const std::string& dataset_id, const std::string& key, std::string value) {
  std::unique_lock lock(cache_mutex_);
  cache_[dataset_id + "\n" + key] = std::move(value);
}

}  // namespace reekit
