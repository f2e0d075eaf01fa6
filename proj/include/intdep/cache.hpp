#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>
#include <unistd.h>

#include <json.hpp>

#include "intdep/groebner.hpp"

namespace intdep {

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

/// Groebner bases persisted as one JSON file per canonical key. Files are
/// written to a temporary name and renamed into place. Unreadable or
/// mismatching entries are deleted and reported as warnings.
class FileGroebnerStore : public GroebnerStore {
 public:
  /// Warnings are also written to `warning_stream` when it is non-null.
  explicit FileGroebnerStore(std::filesystem::path dir, bool verify = false, std::ostream* warning_stream = nullptr)
      : dir_(std::move(dir)), verify_(verify), echo_(warning_stream) {
    std::filesystem::create_directories(dir_);
  }

  std::optional<std::vector<Polynomial>> load(const std::string& key, std::size_t nvars, const Field& field,
                                              const MonomialOrder& order) override {
    const auto path = path_for(key);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
      const nlohmann::json doc = nlohmann::json::parse(in);
      if (doc.at("key").get<std::string>() != key) throw std::runtime_error("key mismatch");
      if (doc.at("checksum").get<std::string>() != sha256_hex(key + doc.at("basis").dump())) {
        throw std::runtime_error("checksum mismatch");
      }
      std::vector<Polynomial> basis;
      for (const auto& p : doc.at("basis")) {
        std::vector<Term> terms;
        for (const auto& t : p) {
          const mpq_class coeff(t.at(0).get<std::string>());
          const auto exps = t.at(1).get<std::vector<long long>>();
          if (exps.size() != nvars) throw std::runtime_error("wrong exponent length");
          terms.push_back({Monomial::from_exponents(exps), coeff});
        }
        basis.push_back(Polynomial::from_terms(nvars, field, order, std::move(terms)));
      }
      return basis;
    } catch (const std::exception& e) {
      warn("discarding corrupt cache entry " + path.string() + ": " + e.what());
      std::error_code ec;
      std::filesystem::remove(path, ec);
      return std::nullopt;
    }
  }

  void save(const std::string& key, const std::vector<Polynomial>& basis) override {
    nlohmann::json doc;
    doc["key"] = key;
    doc["basis"] = nlohmann::json::array();
    for (const Polynomial& p : basis) {
      nlohmann::json terms = nlohmann::json::array();
      for (const Term& t : p.terms()) {
        terms.push_back({t.coeff.get_str(), std::vector<long long>(t.mono.exponents().begin(), t.mono.exponents().end())});
      }
      doc["basis"].push_back(std::move(terms));
    }
    doc["checksum"] = sha256_hex(key + doc["basis"].dump());
    const auto path = path_for(key);
    const auto tmp = path.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter_.fetch_add(1));
    {
      std::ofstream out(tmp);
      out << doc.dump();
      if (!out) {
        warn("could not write cache entry " + tmp);
        return;
      }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
      warn("could not install cache entry " + path.string() + ": " + ec.message());
      std::filesystem::remove(tmp, ec);
    }
  }

  bool verify_hits() const override { return verify_; }

  std::vector<std::string> warnings() const {
    std::lock_guard lock(mutex_);
    return warnings_;
  }

  std::filesystem::path path_for(const std::string& key) const { return dir_ / (sha256_hex(key) + ".json"); }

 private:
  void warn(const std::string& message) {
    std::lock_guard lock(mutex_);
    warnings_.push_back(message);
    if (echo_ != nullptr) *echo_ << "warning: " << message << "\n";
  }

  std::filesystem::path dir_;
  bool verify_;
  std::ostream* echo_;
  std::atomic<unsigned> counter_{0};
  mutable std::mutex mutex_;
  std::vector<std::string> warnings_;
};

}  // namespace intdep
