#include "doctest.h"
#include "misync/errors.hpp"
#include "misync/graph.hpp"
#include "misync/sampling.hpp"

using namespace misync;

namespace {

MeasurementGraph path_graph(int n, Group grp = Group::SO2) {
  MeasurementGraph g;
  g.group = grp;
  g.num_nodes = n;
  for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, Rotation::identity(grp), 1.0});
  return g;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("validate accepts a clean graph") {
  MeasurementGraph g = path_graph(5);
  CHECK_NOTHROW(validate_graph(g));
  g.truth.assign(5, Rotation::identity(Group::SO2));
  CHECK_NOTHROW(validate_graph(g));
}

TEST_CASE("validate rejects structural violations") {
  {
    MeasurementGraph g = path_graph(1);
    CHECK_THROWS_AS(validate_graph(g), StructuralError);
  }
  {
    MeasurementGraph g = path_graph(5);
    g.edges.push_back({2, 2, Rotation::identity(Group::SO2), 1.0});
    CHECK_THROWS_AS(validate_graph(g), StructuralError);
  }
  {
    MeasurementGraph g = path_graph(5);
    g.edges.push_back({3, 1, Rotation::identity(Group::SO2), 1.0});  // stored backwards
    CHECK_THROWS_AS(validate_graph(g), StructuralError);
  }
  {
    MeasurementGraph g = path_graph(5);
    g.edges.push_back({0, 1, Rotation::identity(Group::SO2), 1.0});  // duplicate pair
    CHECK_THROWS_AS(validate_graph(g), StructuralError);
  }
  {
    MeasurementGraph g = path_graph(5);
    g.edges[0].kappa = 0.0;
    CHECK_THROWS_AS(validate_graph(g), StructuralError);
  }
  {
    MeasurementGraph g = path_graph(5);
    g.edges[0].j = 7;
    CHECK_THROWS_AS(validate_graph(g), StructuralError);
  }
  {
    MeasurementGraph g = path_graph(5);
    g.edges[2].rel = Rotation::identity(Group::SO3);  // group mismatch
    CHECK_THROWS_AS(validate_graph(g), StructuralError);
  }
  {
    MeasurementGraph g = path_graph(5);
    g.truth.assign(3, Rotation::identity(Group::SO2));  // wrong length
    CHECK_THROWS_AS(validate_graph(g), StructuralError);
  }
}

TEST_CASE("connectivity") {
  MeasurementGraph g = path_graph(6);
  CHECK(is_connected(g));
  CHECK_NOTHROW(require_connected(g));

  g.edges.erase(g.edges.begin() + 2);  // cut 2-3
  CHECK_FALSE(is_connected(g));
  CHECK_THROWS_AS(require_connected(g), StructuralError);
  try {
    require_connected(g);
  } catch (const StructuralError& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("incidence lists index edges per node") {
  MeasurementGraph g = path_graph(4);
  g.edges.push_back({0, 3, Rotation::identity(Group::SO2), 1.0});
  const auto inc = incidence_lists(g);
  REQUIRE(inc.size() == 4);
  CHECK(inc[0].size() == 2);
  CHECK(inc[1].size() == 2);
  CHECK(inc[3].size() == 2);
  CHECK(inc[0][0] == 0);
  CHECK(inc[0][1] == 3);
}

}  // TEST_SUITE
