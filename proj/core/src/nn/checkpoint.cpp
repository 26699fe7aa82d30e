#include "wfl/nn/checkpoint.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace wfl::nn {

namespace {

void put_le64(std::string& out, std::uint64_t u) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

std::uint64_t get_le64(const unsigned char* p) {
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return u;
}

}  // namespace

CheckpointBlock& Checkpoint::add_block(std::string name, std::span<const double> data,
                                       std::vector<int> layer_sizes) {
  blocks.push_back(CheckpointBlock{std::move(name),
                                   std::vector<double>(data.begin(), data.end()),
                                   std::move(layer_sizes)});
  return blocks.back();
}

const CheckpointBlock* Checkpoint::find(const std::string& name) const {
  for (const auto& b : blocks)
    if (b.name == name) return &b;
  return nullptr;
}

void Checkpoint::save(const std::string& base_path) const {
  nlohmann::json meta;
  meta["format"] = "wfl-checkpoint-v1";

  std::string raw;
  std::size_t offset = 0;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& b : blocks) {
    nlohmann::json e;
    e["name"] = b.name;
    e["offset"] = offset;
    e["count"] = b.data.size();
    if (!b.layer_sizes.empty()) e["layer_sizes"] = b.layer_sizes;
    entries.push_back(e);
    for (double d : b.data) put_le64(raw, std::bit_cast<std::uint64_t>(d));
    offset += b.data.size();
  }
  meta["blocks"] = entries;
  // JSON has no literal for non-finite numbers; encode those as strings
  nlohmann::json sj = nlohmann::json::object();
  for (const auto& [k, v] : scalars) {
    if (std::isfinite(v))
      sj[k] = v;
    else
      sj[k] = v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  }
  meta["scalars"] = sj;
  meta["counters"] = counters;

  std::ofstream bin(base_path + ".f64", std::ios::binary | std::ios::trunc);
  if (!bin) throw std::runtime_error("checkpoint: cannot open " + base_path + ".f64");
  bin.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!bin) throw std::runtime_error("checkpoint: write failed for " + base_path + ".f64");

  std::ofstream js(base_path + ".json", std::ios::trunc);
  if (!js) throw std::runtime_error("checkpoint: cannot open " + base_path + ".json");
  js << meta.dump(2) << '\n';
}

Checkpoint Checkpoint::load(const std::string& base_path) {
  std::ifstream js(base_path + ".json");
  if (!js) throw std::runtime_error("checkpoint: cannot open " + base_path + ".json");
  nlohmann::json meta = nlohmann::json::parse(js);
  if (meta.value("format", "") != "wfl-checkpoint-v1")
    throw std::runtime_error("checkpoint: unknown format in " + base_path + ".json");

  std::ifstream bin(base_path + ".f64", std::ios::binary);
  if (!bin) throw std::runtime_error("checkpoint: cannot open " + base_path + ".f64");
  std::string raw((std::istreambuf_iterator<char>(bin)), std::istreambuf_iterator<char>());

  Checkpoint ck;
  for (const auto& e : meta.at("blocks")) {
    CheckpointBlock b;
    b.name = e.at("name").get<std::string>();
    const std::size_t offset = e.at("offset").get<std::size_t>();
    const std::size_t count = e.at("count").get<std::size_t>();
    if ((offset + count) * 8 > raw.size())
      throw std::runtime_error("checkpoint: truncated data file " + base_path + ".f64");
    if (e.contains("layer_sizes")) b.layer_sizes = e.at("layer_sizes").get<std::vector<int>>();
    b.data.resize(count);
    const auto* p = reinterpret_cast<const unsigned char*>(raw.data()) + offset * 8;
    for (std::size_t i = 0; i < count; ++i)
      b.data[i] = std::bit_cast<double>(get_le64(p + i * 8));
    ck.blocks.push_back(std::move(b));
  }
  if (meta.contains("scalars")) {
    for (const auto& [k, v] : meta.at("scalars").items()) {
      if (v.is_string()) {
        const std::string s = v.get<std::string>();
        ck.scalars[k] = s == "inf" ? std::numeric_limits<double>::infinity()
                        : s == "-inf" ? -std::numeric_limits<double>::infinity()
                                      : std::numeric_limits<double>::quiet_NaN();
      } else {
        ck.scalars[k] = v.get<double>();
      }
    }
  }
  if (meta.contains("counters"))
    ck.counters = meta.at("counters").get<std::map<std::string, std::int64_t>>();
  return ck;
}

}  // namespace wfl::nn
