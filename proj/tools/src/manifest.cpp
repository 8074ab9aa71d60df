#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <memory>
#include <sstream>

#include "germscan/errors.hpp"

namespace germscan::cli {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

json config_to_json(const SearchConfig& cfg) {
  return {{"kappas", cfg.kappas},       {"d", cfg.d},
          {"eps0", cfg.eps0},           {"stages", cfg.stages},
          {"tol", cfg.tol},             {"sep_factor", cfg.sep_factor},
          {"restarts", cfg.restarts},   {"max_iters", cfg.max_iters},
          {"seed", cfg.seed}};
}

SearchConfig config_from_json(const json& j) {
  SearchConfig cfg;
  cfg.kappas = j.at("kappas").get<std::vector<unsigned>>();
  cfg.d = j.at("d").get<unsigned>();
  cfg.eps0 = j.at("eps0").get<double>();
  cfg.stages = j.at("stages").get<unsigned>();
  cfg.tol = j.at("tol").get<double>();
  cfg.sep_factor = j.at("sep_factor").get<double>();
  cfg.restarts = j.at("restarts").get<unsigned>();
  cfg.max_iters = j.at("max_iters").get<unsigned>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

json manifest_to_json(const RunManifest& m) {
  json inputs = json::array();
  for (const auto& in : m.inputs) inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
  json out = {{"command", m.command}, {"inputs", inputs},       {"seed", m.seed},
              {"version", m.version}, {"timestamp", m.timestamp}, {"exact", m.exact}};
  out["config"] = m.has_config ? config_to_json(m.config) : json(nullptr);
  return out;
}

RunManifest manifest_from_json(const json& j) {
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    for (const auto& in : j.at("inputs")) {
      m.inputs.push_back({in.at("path").get<std::string>(), in.at("sha256").get<std::string>()});
    }
    m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.timestamp = j.at("timestamp").get<std::string>();
    m.exact = j.at("exact").get<bool>();
    if (!j.at("config").is_null()) {
      m.config = config_from_json(j.at("config"));
      m.has_config = true;
    }
    return m;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace germscan::cli
