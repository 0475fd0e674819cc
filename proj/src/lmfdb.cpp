#include "heckefield/lmfdb.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "heckefield/numutil.hpp"

namespace heckefield {

namespace {

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

bool is_squarefree_level(long n) {
  for (auto [p, e] : factorize(n)) {
    (void)p;
    if (e > 1) return false;
  }
  return true;
}

}  // namespace

LmfdbClient::LmfdbClient(LmfdbConfig config) : config_(std::move(config)) {}

std::string LmfdbClient::cache_path(const std::string& path_and_query) const {
  return config_.cache_dir + "/" + hex64(fnv1a64(config_.base_url + path_and_query)) + ".json";
}

std::string LmfdbClient::get_raw(const std::string& path_and_query) {
  if (!config_.cache_dir.empty() && !config_.force_refresh) {
    std::ifstream in(cache_path(path_and_query));
    if (in) {
      std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      return body;
    }
  }

  httplib::Client client(config_.base_url);
  client.set_follow_location(true);
  client.set_connection_timeout(20, 0);
  client.set_read_timeout(60, 0);

  std::string body;
  std::string last_error = "no attempt made";
  bool got = false;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0 && config_.backoff_ms > 0)
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config_.backoff_ms * (1 << (attempt - 1))));
    auto res = client.Get(path_and_query);
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "server returned status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw NetworkError("LMFDB request failed with status " + std::to_string(res->status) +
                         " for " + path_and_query);
    }
    body = res->body;
    got = true;
    break;
  }
  if (!got)
    throw NetworkError("LMFDB request failed after " + std::to_string(config_.max_retries + 1) +
                       " attempts (" + last_error + ") for " + path_and_query);

  if (!config_.cache_dir.empty()) {
    // write-to-temp-then-rename: concurrent runs never see partial files
    std::filesystem::create_directories(config_.cache_dir);
    std::string final_path = cache_path(path_and_query);
    std::string tmp_path = final_path + ".tmp" + std::to_string(::getpid());
    {
      std::ofstream out(tmp_path, std::ios::binary);
      out << body;
    }
    std::filesystem::rename(tmp_path, final_path);
  }
  return body;
}

MetadataRecord LmfdbClient::map_item(const nlohmann::json& item) {
  auto need = [&](const char* field) -> const nlohmann::json& {
    if (!item.contains(field)) throw SchemaDriftError(field);
    return item.at(field);
  };
  MetadataRecord rec;
  rec.label = need("label").get<std::string>();
  rec.level = need("level").get<long>();
  rec.char_order = need("char_order").get<long>();
  std::string t = need("projective_image").get<std::string>();
  if (t == "A4") rec.proj_type = ProjType::A4;
  else if (t == "S4") rec.proj_type = ProjType::S4;
  else if (t == "A5") rec.proj_type = ProjType::A5;
  else throw SchemaDriftError("projective_image (unrecognized value " + t + ")");
  rec.twist_minimal = need("is_twist_minimal").get<bool>();
  rec.hecke_degree = need("dim").get<long>();
  rec.squarefree = is_squarefree_level(rec.level);
  return rec;
}

std::vector<MetadataRecord> LmfdbClient::fetch_metadata(long level_bound,
                                                        const std::vector<std::string>& types) {
  std::vector<MetadataRecord> out;
  for (const auto& type : types) {
    std::string path =
        "/api/mf_newforms/?_format=json&weight=i1&level=le." + std::to_string(level_bound) +
        "&projective_image=s" + type +
        "&_fields=label,level,char_order,projective_image,is_twist_minimal,dim";
    while (!path.empty()) {
      std::string body = get_raw(path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(body);
      } catch (const std::exception& e) {
        throw NetworkError(std::string("LMFDB response is not JSON: ") + e.what());
      }
      if (!j.contains("data")) throw SchemaDriftError("data");
      for (const auto& item : j.at("data")) out.push_back(map_item(item));
      path.clear();
      if (j.contains("next") && j.at("next").is_string()) {
        std::string next = j.at("next").get<std::string>();
        if (!next.empty() && next != "null") path = next;
      }
    }
  }
  return out;
}

}  // namespace heckefield
