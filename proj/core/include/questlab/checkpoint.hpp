#pragma once

#include <string>
#include <vector>

#include "questlab/nn.hpp"

namespace questlab {

/// One array in a checkpoint container. Data is row-major float32.
struct NamedArray {
  std::string name;
  int rows = 0;
  int cols = 0;
  std::vector<float> data;
};

/// Container format: one JSON header line (schema, version, metadata, array
/// names and shapes) followed by the raw little-endian float32 arrays in
/// header order.
void write_checkpoint(const std::string& path, const std::string& meta_json,
                      const std::vector<NamedArray>& arrays);
std::pair<std::string, std::vector<NamedArray>> read_checkpoint(const std::string& path);

template <typename T>
std::vector<NamedArray> to_arrays(const nn::ParameterSet<T>& params) {
  std::vector<NamedArray> out;
  for (const nn::Param<T>* p : params.all()) {
    NamedArray a;
    a.name = p->name;
    a.rows = static_cast<int>(p->value.rows());
    a.cols = static_cast<int>(p->value.cols());
    a.data.reserve(static_cast<std::size_t>(a.rows) * a.cols);
    for (int i = 0; i < a.rows; ++i) {
      for (int j = 0; j < a.cols; ++j) {
        a.data.push_back(static_cast<float>(p->value(i, j)));
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

template <typename T>
void from_arrays(nn::ParameterSet<T>& params, const std::vector<NamedArray>& arrays) {
  auto all = params.all();
  if (all.size() != arrays.size()) {
    throw std::runtime_error("checkpoint has a different parameter count");
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    nn::Param<T>* p = all[i];
    const NamedArray& a = arrays[i];
    if (a.name != p->name || a.rows != p->value.rows() || a.cols != p->value.cols()) {
      throw std::runtime_error("checkpoint mismatch at parameter " + p->name +
                               " (found " + a.name + ")");
    }
    std::size_t at = 0;
    for (int r = 0; r < a.rows; ++r) {
      for (int c = 0; c < a.cols; ++c) {
        p->value(r, c) = static_cast<T>(a.data[at++]);
      }
    }
  }
}

template <typename T>
void save_params(const std::string& path, const nn::ParameterSet<T>& params,
                 const std::string& meta_json = "{}") {
  write_checkpoint(path, meta_json, to_arrays(params));
}

template <typename T>
std::string load_params(const std::string& path, nn::ParameterSet<T>& params) {
  auto [meta, arrays] = read_checkpoint(path);
  from_arrays(params, arrays);
  return meta;
}

}  // namespace questlab
