#include "rel/core/dataset.hpp"

#include <fstream>

#include "rel/core/error.hpp"
#include "rel/core/text.hpp"

namespace rel {

std::size_t save_dataset(std::span<const TaskInstance> instances,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& inst : instances) {
    out << instance_to_json(inst).dump() << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path);
  return instances.size();
}

std::vector<Json> read_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Json> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      rows.push_back(Json::parse(line));
    } catch (const Json::exception& e) {
      throw SchemaError(lineno, std::string("invalid JSON: ") + e.what());
    }
  }
  return rows;
}

void write_jsonl(const std::vector<Json>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& r : rows) out << r.dump() << '\n';
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  Dataset out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      out.push_back(instance_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw SchemaError(lineno, std::string("invalid JSON: ") + e.what());
    } catch (const Error& e) {
      throw SchemaError(lineno, e.what());
    }
  }
  return out;
}

}  // namespace rel
