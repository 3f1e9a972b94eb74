#include "manifest.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "pst/json_out.hpp"

namespace pst::cli {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "' for hashing");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx, buf, static_cast<size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

Manifest::Manifest(std::vector<std::string> argv) : argv_(std::move(argv)) {}

void Manifest::input(const std::string& path) { inputs_.push_back(path); }
void Manifest::output(const std::string& path) { outputs_.push_back(path); }
void Manifest::note(const std::string& key, nlohmann::ordered_json value) { notes_[key] = std::move(value); }

void Manifest::write(const std::string& path, double wall_seconds) const {
  nlohmann::ordered_json doc;
  doc["tool"] = "pst";
  doc["version"] = "1.0.0";
  doc["command_line"] = argv_;
  auto files = [](const std::vector<std::string>& paths) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : paths) arr.push_back({{"path", p}, {"sha256", sha256_file(p)}});
    return arr;
  };
  doc["inputs"] = files(inputs_);
  doc["outputs"] = files(outputs_);
  doc["notes"] = notes_;
  doc["wall_clock_seconds"] = wall_seconds;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest '" + path + "'");
  out << dump_json(doc) << "\n";
}

}  // namespace pst::cli
