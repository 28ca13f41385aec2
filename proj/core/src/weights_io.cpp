#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gmprime/errors.hpp"
#include "gmprime/primality.hpp"
#include "json.hpp"

namespace gmprime {

std::string weights_to_json(const std::map<u64, u64>& weights) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [base, weight] : weights) j[std::to_string(base)] = weight;
  return j.dump(2) + "\n";
}

std::map<u64, u64> weights_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("weights file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("weights file must hold a JSON object");
  std::map<u64, u64> out;
  for (const auto& [key, value] : j.items()) {
    u64 base = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), base);
    if (ec != std::errc{} || ptr != key.data() + key.size() || key.empty()) {
      throw DomainError("weights key '" + key + "' is not a decimal base");
    }
    if (!value.is_number_unsigned()) {
      throw DomainError("weight for base " + key + " must be a non-negative integer");
    }
    out[base] = value.get<u64>();
  }
  return out;
}

std::map<u64, u64> load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open weights file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return weights_from_json(buf.str());
}

void save_weights(const std::string& path, const std::map<u64, u64>& weights) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw DomainError("cannot write weights file " + tmp.string());
    out << weights_to_json(weights);
    out.flush();
    if (!out) throw DomainError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace gmprime
