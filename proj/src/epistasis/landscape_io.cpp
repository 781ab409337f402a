#include <map>
#include <string>

#include "rel/core/error.hpp"
#include "rel/core/text.hpp"
#include "rel/epistasis/landscape_io.hpp"

namespace rel::epistasis {
namespace {

struct Block {
  std::vector<std::string> labels;
  std::map<std::uint32_t, double> fitness;
  bool duplicate = false;
};

std::vector<std::string> cells_of(std::string_view line) {
  std::vector<std::string> out;
  for (const std::string& c : split(line, ',')) out.emplace_back(trim(c));
  return out;
}

}  // namespace

FitnessTable parse_fitness_table(std::string_view csv) {
  std::vector<std::string> lines = split(csv, '\n');
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first == lines.size()) throw SchemaError(1, "fitness table is empty");
  std::vector<std::string> header = cells_of(trim(lines[first]));
  const int header_line = static_cast<int>(first) + 1;
  if (header.size() < 4 || header[0] != "background_id" ||
      header[1] != "genotype" || header.back() != "fitness") {
    throw SchemaError(header_line,
                      "header must be background_id,genotype,label_1..label_k,"
                      "fitness");
  }
  const int k = static_cast<int>(header.size()) - 3;
  for (int i = 0; i < k; ++i) {
    if (header[2 + i] != "label_" + std::to_string(i + 1)) {
      throw SchemaError(header_line, "expected column label_" +
                                         std::to_string(i + 1));
    }
  }

  std::vector<std::string> order;
  std::map<std::string, Block> blocks;
  for (std::size_t li = first + 1; li < lines.size(); ++li) {
    std::string_view line = trim(lines[li]);
    if (line.empty()) continue;
    const int lineno = static_cast<int>(li) + 1;
    std::vector<std::string> cells = cells_of(line);
    if (cells.size() != header.size()) {
      throw SchemaError(lineno, "expected " + std::to_string(header.size()) +
                                    " columns");
    }
    if (cells[1].size() != static_cast<std::size_t>(k)) {
      throw SchemaError(lineno, "genotype must have " + std::to_string(k) +
                                    " bits");
    }
    std::uint32_t mask;
    try {
      mask = genotype_mask(cells[1]);
    } catch (const ParseError& e) {
      throw SchemaError(lineno, e.what());
    }
    auto fit = parse_double(cells.back());
    if (!fit) throw SchemaError(lineno, "fitness is not a number");
    auto [it, fresh] = blocks.try_emplace(cells[0]);
    Block& b = it->second;
    if (fresh) {
      order.push_back(cells[0]);
      b.labels.assign(cells.begin() + 2, cells.end() - 1);
    } else if (!std::equal(b.labels.begin(), b.labels.end(),
                           cells.begin() + 2)) {
      throw SchemaError(lineno, "labels differ within background '" +
                                    cells[0] + "'");
    }
    if (!b.fitness.emplace(mask, *fit).second) b.duplicate = true;
  }

  FitnessTable out;
  for (const std::string& id : order) {
    const Block& b = blocks.at(id);
    if (b.duplicate || b.fitness.size() != (std::size_t{1} << k)) {
      ++out.skipped;
      continue;
    }
    LocalLandscape land;
    land.k = k;
    land.labels = b.labels;
    land.background_id = id;
    for (const auto& [mask, f] : b.fitness) land.fitness.push_back(f);
    out.landscapes.push_back(std::move(land));
  }
  return out;
}

FitnessTable load_fitness_table(const std::string& path) {
  return parse_fitness_table(read_file(path));
}

}  // namespace rel::epistasis
