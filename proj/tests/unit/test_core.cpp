#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "rel/algebra/generate.hpp"
#include "rel/core/dataset.hpp"
#include "rel/core/error.hpp"
#include "rel/core/rng.hpp"
#include "rel/core/task.hpp"
#include "rel/harness/generate.hpp"

using namespace rel;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("rel_core_" + name)).string();
}

std::vector<TaskInstance> a3_batch(std::size_t n, std::uint64_t seed) {
  algebra::MatrixOptions opts;
  opts.rule.code = TaskCode::A3;
  std::vector<TaskInstance> out;
  SeededRng root(seed);
  for (std::size_t i = 0; i < n; ++i) out.push_back(algebra::gen_matrix_task(opts, root.split(i)));
  return out;
}

}  // namespace

TEST_CASE("degenerate range draws its only value") {
  auto rng = new_rng(0);
  CHECK(rng.uniform_int(0, 0) == 0);
  CHECK_THROWS_AS(rng.uniform_int(1, 0), ParameterError);
}

TEST_CASE("same seed and path give the same stream") {
  auto a = new_rng(123).split("x").split(4);
  auto b = new_rng(123).split("x").split(4);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
  CHECK(a.path() == b.path());
}

TEST_CASE("sibling splits differ") {
  auto a = new_rng(42).split("a");
  auto b = new_rng(42).split("b");
  int same = 0;
  for (int i = 0; i < 64; ++i) same += a.next_u64() == b.next_u64();
  CHECK(same == 0);
  // Splitting does not disturb the parent stream.
  auto p = new_rng(42);
  auto q = new_rng(42);
  (void)p.split("c");
  CHECK(p.next_u64() == q.next_u64());
}

TEST_CASE("rng helpers stay in range") {
  auto rng = new_rng(9);
  for (int i = 0; i < 2000; ++i) {
    auto v = rng.uniform_int(-3, 5);
    REQUIRE(v >= -3);
    REQUIRE(v <= 5);
    double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  auto idx = rng.sample_indices(10, 10);
  CHECK(std::set<std::size_t>(idx.begin(), idx.end()).size() == 10);
  std::vector<int> v{1, 2, 3, 4, 5, 6};
  rng.shuffle(v);
  CHECK(std::multiset<int>(v.begin(), v.end()) == std::multiset<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("uniform_index is close to uniform") {
  auto rng = new_rng(77);
  std::vector<int> counts(8);
  const int n = 80000;
  for (int i = 0; i < n; ++i) ++counts[rng.uniform_index(8)];
  for (int c : counts) CHECK(std::abs(c - n / 8) < 600);
}

TEST_CASE("empty dataset writes zero lines") {
  auto path = temp_path("empty.jsonl");
  CHECK(save_dataset(std::vector<TaskInstance>{}, path) == 0);
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 0);
  CHECK(load_dataset(path).empty());
}

TEST_CASE("125 matrix instances round-trip") {
  auto data = a3_batch(125, 5);
  std::set<std::string> ids;
  for (const auto& d : data) ids.insert(d.id);
  CHECK(ids.size() == 125);
  auto path = temp_path("a3.jsonl");
  CHECK(save_dataset(data, path) == 125);
  auto back = load_dataset(path);
  REQUIRE(back.size() == 125);
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == data[i]);
  // Second save is byte-identical.
  auto path2 = temp_path("a3b.jsonl");
  save_dataset(back, path2);
  std::ifstream a(path), b(path2);
  std::string sa((std::istreambuf_iterator<char>(a)), {});
  std::string sb((std::istreambuf_iterator<char>(b)), {});
  CHECK(sa == sb);
}

TEST_CASE("malformed line is reported by number") {
  auto data = a3_batch(4, 1);
  auto path = temp_path("bad.jsonl");
  save_dataset(data, path);
  std::vector<std::string> lines;
  {
    std::ifstream in(path);
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
  }
  lines[2] = "{\"id\": \"broken\"";
  {
    std::ofstream out(path);
    for (auto& l : lines) out << l << '\n';
  }
  try {
    load_dataset(path);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  // Valid JSON but wrong schema also names the line.
  lines[2] = "{\"id\": 5}";
  {
    std::ofstream out(path);
    for (auto& l : lines) out << l << '\n';
  }
  try {
    load_dataset(path);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(load_dataset(temp_path("does_not_exist.jsonl")), IoError);
}

TEST_CASE("generation is deterministic and rc follows the law") {
  for (const char* code : {"A1", "A2", "A4", "A5", "A6", "A7", "B2"}) {
    Json params = {{"count", 6}};
    auto tc = parse_task_code(code);
    auto a = harness::generate_tasks(tc, params, 99, REL_SOURCE_DIR);
    auto b = harness::generate_tasks(tc, params, 99, REL_SOURCE_DIR);
    REQUIRE(a.size() == 6);
    CHECK(a == b);
    for (const auto& inst : a) {
      CHECK(inst.rc == expected_rc(inst.task_code, inst.gen_params));
      CHECK(inst.id == instance_id(inst.task_code, inst.gen_params, inst.seed));
      CHECK_FALSE(inst.prompt.empty());
      CHECK_NOTHROW(validate_instance(inst));
    }
  }
}

TEST_CASE("rc law constants") {
  CHECK(expected_rc(TaskCode::A1, Json{{"n", 3}}) == 1);
  CHECK(expected_rc(TaskCode::A2, Json{{"n", 3}}) == 2);
  CHECK(expected_rc(TaskCode::A3, Json{{"n", 9}}) == 9);
  CHECK(expected_rc(TaskCode::A4, Json{{"n", 15}}) == 15);
  CHECK(expected_rc(TaskCode::A5, Json::object()) == 4);
  CHECK(expected_rc(TaskCode::A6, Json::object()) == 5);
  CHECK(expected_rc(TaskCode::A7, Json{{"n", 3}}) == 6);
  CHECK(expected_rc(TaskCode::B1, Json{{"n_ht", 7}}) == 7);
  CHECK(expected_rc(TaskCode::B2, Json{{"k", 3}}) == 3);
}

TEST_CASE("answer variants round-trip through json") {
  std::vector<AnswerSpec> answers{
      ChoiceIndex{3, {1, 2, 3, 4, 5, 6, 7, 8}},
      YesNoTaxa{true, {"3", "46"}},
      Letter{'C', 3},
      SmilesSet{{"CC", "CCO"}},
      Smiles{"c1ccccc1"},
      MotifMap{{{0, "CCCCCC"}, {1, "CCCCCO"}}, 1, "alcohol"}};
  for (const auto& a : answers) CHECK(answer_from_json(answer_to_json(a)) == a);
}

TEST_CASE("validate_instance rejects broken instances") {
  auto inst = a3_batch(1, 3)[0];
  auto bad = inst;
  bad.prompt.clear();
  CHECK_THROWS_AS(validate_instance(bad), IntegrityError);
  bad = inst;
  bad.rc += 1;
  CHECK_THROWS_AS(validate_instance(bad), IntegrityError);
  bad = inst;
  std::get<ChoiceIndex>(bad.answer).index = 8;
  CHECK_THROWS_AS(validate_instance(bad), IntegrityError);
}
