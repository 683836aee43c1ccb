#include "ltr/pipeline/manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ltr::pipeline {

namespace {

std::string digest_to_hex(const unsigned char* digest, unsigned len) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

struct EvpCtx {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  ~EvpCtx() { EVP_MD_CTX_free(ctx); }
};

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  EvpCtx c;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (!EVP_DigestInit_ex(c.ctx, EVP_sha256(), nullptr) ||
      !EVP_DigestUpdate(c.ctx, bytes.data(), bytes.size()) ||
      !EVP_DigestFinal_ex(c.ctx, digest, &len)) {
    throw std::runtime_error("sha256 failed");
  }
  return digest_to_hex(digest, len);
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot hash missing file: " + path);
  EvpCtx c;
  if (!EVP_DigestInit_ex(c.ctx, EVP_sha256(), nullptr)) throw std::runtime_error("sha256 failed");
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    const std::streamsize n = in.gcount();
    if (n > 0 && !EVP_DigestUpdate(c.ctx, buf, static_cast<std::size_t>(n))) {
      throw std::runtime_error("sha256 failed");
    }
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (!EVP_DigestFinal_ex(c.ctx, digest, &len)) throw std::runtime_error("sha256 failed");
  return digest_to_hex(digest, len);
}

void Manifest::save(const std::string& path) const {
  nlohmann::json j;
  j["config_hash"] = config_hash;
  nlohmann::json stages_j = nlohmann::json::object();
  for (const auto& [name, stage] : stages) {
    stages_j[name] = {{"config_hash", stage.config_hash},
                      {"inputs", stage.inputs},
                      {"outputs", stage.outputs}};
  }
  j["stages"] = std::move(stages_j);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << j.dump(1) << '\n';
}

Manifest Manifest::load(const std::string& path) {
  Manifest m;
  std::ifstream in(path);
  if (!in) return m;
  nlohmann::json j;
  in >> j;
  m.config_hash = j.value("config_hash", "");
  if (j.contains("stages")) {
    for (const auto& [name, sj] : j.at("stages").items()) {
      Stage s;
      s.config_hash = sj.value("config_hash", "");
      if (sj.contains("inputs")) {
        s.inputs = sj.at("inputs").get<std::map<std::string, std::string>>();
      }
      if (sj.contains("outputs")) {
        s.outputs = sj.at("outputs").get<std::map<std::string, std::string>>();
      }
      m.stages[name] = std::move(s);
    }
  }
  return m;
}

}  // namespace ltr::pipeline
