#include "wl1/io.hpp"

#include <fstream>
#include <sstream>

#include "wl1/error.hpp"

namespace wl1 {

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

std::string write_csv(const CsvTable& table, const std::string& path) {
  std::string body = table.header;
  body += '\n';
  for (const auto& row : table.rows) {
    body += row;
    body += '\n';
  }
  const std::string digest = hex64(fnv1a64(body));

  std::ofstream out(path);
  if (!out) throw Error("write_csv: cannot open " + path);
  for (const auto& [key, value] : table.meta) {
    out << "# " << key << ": " << value << '\n';
  }
  out << "# body_digest: fnv1a64:" << digest << '\n';
  out << body;
  if (!out) throw Error("write_csv: write failed for " + path);
  return digest;
}

nlohmann::json to_json(const RunManifest& manifest) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& [file, digest] : manifest.outputs) {
    outputs.push_back({{"file", file}, {"digest", digest}});
  }
  return nlohmann::json{{"tool", manifest.tool},
                        {"version", manifest.version},
                        {"command", manifest.command},
                        {"params", manifest.params},
                        {"seed", manifest.seed},
                        {"outputs", outputs}};
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("write_manifest: cannot open " + path);
  out << to_json(manifest).dump(2) << '\n';
  if (!out) throw Error("write_manifest: write failed for " + path);
}

}  // namespace wl1
