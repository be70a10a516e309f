#include "questlab/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

namespace questlab {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSchema = "questlab.checkpoint";
constexpr int kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

}  // namespace

void write_checkpoint(const std::string& path, const std::string& meta_json,
                      const std::vector<NamedArray>& arrays) {
  ordered_json header;
  header["schema"] = kSchema;
  header["version"] = kVersion;
  header["meta"] = nlohmann::json::parse(meta_json);
  header["arrays"] = ordered_json::array();
  for (const auto& a : arrays) {
    header["arrays"].push_back({{"name", a.name}, {"rows", a.rows}, {"cols", a.cols}});
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << header.dump() << "\n";
  for (const auto& a : arrays) {
    out.write(reinterpret_cast<const char*>(a.data.data()),
              static_cast<std::streamsize>(a.data.size() * sizeof(float)));
  }
  if (!out) throw std::runtime_error("short write to " + path);
}

std::pair<std::string, std::vector<NamedArray>> read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string header_line;
  if (!std::getline(in, header_line)) throw std::runtime_error("empty checkpoint " + path);
  ordered_json header = ordered_json::parse(header_line);
  if (header.value("schema", "") != kSchema) {
    throw std::runtime_error("not a questlab checkpoint: " + path);
  }
  if (header.value("version", 0) != kVersion) {
    throw std::runtime_error("unsupported checkpoint version in " + path);
  }
  std::vector<NamedArray> arrays;
  for (const auto& spec : header.at("arrays")) {
    NamedArray a;
    a.name = spec.at("name").get<std::string>();
    a.rows = spec.at("rows").get<int>();
    a.cols = spec.at("cols").get<int>();
    a.data.resize(static_cast<std::size_t>(a.rows) * a.cols);
    in.read(reinterpret_cast<char*>(a.data.data()),
            static_cast<std::streamsize>(a.data.size() * sizeof(float)));
    if (!in) throw std::runtime_error("truncated checkpoint " + path);
    arrays.push_back(std::move(a));
  }
  return {header.at("meta").dump(), arrays};
}

}  // namespace questlab
