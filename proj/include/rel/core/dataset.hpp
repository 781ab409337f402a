#pragma once

#include <span>
#include <string>
#include <vector>

#include "rel/core/task.hpp"

namespace rel {

using Dataset = std::vector<TaskInstance>;

// One JSON object per line, LF-terminated. Returns the number written.
std::size_t save_dataset(std::span<const TaskInstance> instances,
                         const std::string& path);

// Throws SchemaError naming the first malformed line.
Dataset load_dataset(const std::string& path);

// Generic JSONL helpers shared by the run/score files.
std::vector<Json> read_jsonl(const std::string& path);
void write_jsonl(const std::vector<Json>& rows, const std::string& path);

}  // namespace rel
