#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "newform.hpp"

// Optional LMFDB REST client used to refresh the bundled metadata
// fixtures.  Every test runs from fixtures; nothing here is on a hot path.

namespace heckefield {

struct NetworkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// the response did not carry a field the mapping needs
struct SchemaDriftError : std::runtime_error {
  explicit SchemaDriftError(const std::string& field)
      : std::runtime_error("LMFDB response is missing expected field: " + field),
        missing_field(field) {}
  std::string missing_field;
};

struct LmfdbConfig {
  std::string base_url = "https://www.lmfdb.org";
  std::string cache_dir;       // empty = no on-disk cache
  int max_retries = 3;
  int backoff_ms = 500;        // doubled per attempt
  bool force_refresh = false;  // bypass cache reads (still writes)
};

class LmfdbClient {
 public:
  explicit LmfdbClient(LmfdbConfig config);

  // Weight-one newforms with exotic projective image up to the level bound.
  std::vector<MetadataRecord> fetch_metadata(long level_bound,
                                             const std::vector<std::string>& types = {
                                                 "A4", "S4", "A5"});

  // One GET against the API, honoring cache and retry policy; returns the
  // body.  Exposed for tests.
  std::string get_raw(const std::string& path_and_query);

  static MetadataRecord map_item(const nlohmann::json& item);

 private:
  LmfdbConfig config_;
  std::string cache_path(const std::string& path_and_query) const;
};

}  // namespace heckefield
