#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "reekit/domain.hpp"
#include "reekit/ingestion.hpp"

namespace reekit {

struct DatasetSummary {
  std::string dataset_id;
  std::string name;
  std::size_t rows = 0;
  std::vector<std::string> categories;
};

// Content-addressed dataset store. With a storage root, every dataset lives in
//
//   <root>/<dataset_id>/dataset.csv     canonical serialisation (reloaded on get)
//   <root>/<dataset_id>/original.csv    uploaded bytes, when supplied
//   <root>/<dataset_id>/manifest.json   name, hashes, import options, timestamp
//
// A dataset directory is assembled under a temporary name and renamed into
// place, so readers never see a partial write. An empty root keeps everything
// in memory.
//
// Also holds a cache of derived results keyed by (dataset id, config key).
class DatasetStore {
 public:
  explicit DatasetStore(std::filesystem::path storage_root = {});

  // Returns the content id; storing the same content twice is a no-op.
  std::string put(const Dataset& dataset, std::string_view original_csv = {},
                  const ImportOptions* options = nullptr);

  // Throws Error(NotFound).
  std::shared_ptr<const Dataset> get(const std::string& dataset_id) const;
  std::vector<DatasetSummary> list() const;

  std::optional<std::string> cached(const std::string& dataset_id, const std::string& key) const;
  void cache(const std::string& dataset_id, const std::string& key, std::string value);

  const std::filesystem::path& storage_root() const noexcept { return root_; }

 private:
  std::shared_ptr<const Dataset> load(const std::string& dataset_id) const;

  std::filesystem::path root_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const Dataset>> datasets_;
  std::mutex write_mutex_;
  mutable std::shared_mutex cache_mutex_;
  std::map<std::string, std::string> cache_;
};

}  // namespace reekit
