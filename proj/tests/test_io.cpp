#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "ybe/ybe.hpp"

using namespace ybe;

namespace {
  std::string data_file(std::string const& name) {
    return std::string(YBE_DATA_DIR) + "/" + name;
  }
}  // namespace

TEST_CASE("solutions round-trip through JSON", "[io]") {
  auto s = build_solution(JFamily{AbGroup({6}), {0, 2, 2, 5, 2, 2}});
  auto j = solution_to_json(s);
  auto back = solution_from_json(j);
  CHECK(std::vector<point_t>(back.table().begin(), back.table().end())
        == std::vector<point_t>(s.table().begin(), s.table().end()));
  CHECK(solution_to_json(back).dump() == j.dump());

  auto path = (std::filesystem::temp_directory_path() / "ybe_io_roundtrip.json").string();
  write_json_file(path, j);
  CHECK(read_json_file(path) == j);
  std::remove(path.c_str());
}

TEST_CASE("shipped data files load", "[io]") {
  auto z6 = family_from_json(read_json_file(data_file("z6_family.json")));
  CHECK(z6.j == std::vector<std::size_t>{0, 2, 2, 5, 2, 2});
  auto k4 = family_from_json(read_json_file(data_file("k4_family.json")));
  CHECK(k4.group.order() == 4);
  auto sol = solution_from_json(read_json_file(data_file("z6_solution.json")));
  CHECK(sol.size() == 36);
  auto crt = solution_from_json(read_json_file(data_file("crt23_solution.json")));
  CHECK(crt.size() == 36);
  CHECK(verify(crt).ok());
  auto b72 = brace_from_json(read_json_file(data_file("example_brace_72.json")));
  CHECK(b72.size() == 72);
  CHECK(verify_axioms(b72).ok());
  auto b6 = brace_from_json(read_json_file(data_file("trivial_brace_6.json")));
  CHECK(verify_axioms(b6).ok());
  CHECK_FALSE(is_simple_brace(b6));
}

TEST_CASE("malformed and invalid inputs are distinguished", "[io]") {
  CHECK_THROWS_AS(solution_from_json(read_json_file(data_file("malformed_solution.json"))), StructuralError);
  CHECK_THROWS_AS(solution_from_json(read_json_file(data_file("broken_solution.json"))), VerificationError);
  CHECK_THROWS_AS(read_json_file(data_file("does_not_exist.json")), StructuralError);
  CHECK_THROWS_AS(solution_from_json(json::parse(R"({"size": 0, "sigma": []})")), StructuralError);
  CHECK_THROWS_AS(solution_from_json(json::parse(R"({"size": 2, "sigma": [[0, 2], [1, 0]]})")), StructuralError);
  CHECK_THROWS_AS(solution_from_json(json::parse(R"({"size": 2, "sigma": [[0, 1], [1, 0]], "label": 3})")),
                  StructuralError);
  CHECK_THROWS_AS(solution_from_json(json::parse("[1, 2]")), StructuralError);
  CHECK_THROWS_AS(brace_from_json(json::parse(R"({"size": 2, "add": [[0, 1], [1, 0]]})")), StructuralError);
  CHECK_THROWS_AS(brace_from_json(json::parse(R"({"size": 5000, "add": [], "mul": []})")), BoundError);
}

TEST_CASE("families accept indices or coordinate arrays", "[io]") {
  auto by_index = family_from_json(json::parse(R"({"group": "2,2", "j": [0, 3, 1, 2]})"));
  auto by_coords = family_from_json(json::parse(R"({"group": "2,2", "j": [[0, 0], [1, 1], [0, 1], [1, 0]]})"));
  CHECK(by_index.j == by_coords.j);
  // coordinates are reduced modulo the cyclic factors
  auto reduced = family_from_json(json::parse(R"({"group": "2,2", "j": [[2, 0], [3, 1], [0, -1], [1, 0]]})"));
  CHECK(reduced.j == by_index.j);
  CHECK(family_to_json(by_index) == json::parse(R"({"group": "2,2", "j": [0, 3, 1, 2]})"));
  CHECK_THROWS_AS(family_from_json(json::parse(R"({"group": "4", "j": [0, 1, 4, 1]})")), StructuralError);
  CHECK_THROWS_AS(family_from_json(json::parse(R"({"group": "4", "j": [0, "x", 0, 1]})")), StructuralError);
  CHECK_THROWS_AS(family_from_json(json::parse(R"({"j": [0]})")), StructuralError);
  CHECK_THROWS_AS(family_from_json(json::parse(R"({"group": "4", "j": [0, 1]})")), Error);
}

TEST_CASE("integer lists", "[io]") {
  CHECK(parse_int_list("0,2,2,5") == std::vector<std::int64_t>{0, 2, 2, 5});
  CHECK(parse_int_list("-1, 3") == std::vector<std::int64_t>{-1, 3});
  CHECK_THROWS_AS(parse_int_list("1,x"), StructuralError);
  CHECK_THROWS_AS(parse_int_list("1,2a"), StructuralError);
}

TEST_CASE("serialisation is deterministic", "[io]") {
  auto b = to_dense(theorem_example_brace({2, 3}));
  CHECK(brace_to_json(b).dump() == brace_to_json(b).dump());
  json j;
  j["zeta"] = 1;
  j["alpha"] = 2;
  CHECK(j.dump() == R"({"alpha":2,"zeta":1})");
}
