#include <doctest.h>

#include <filesystem>
#include <string>

#include "fracdmd/errors.hpp"
#include "fracdmd/io.hpp"

using namespace fracdmd;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fracdmd_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("trajectory CSV round-trips bit-exactly") {
  Trajectory t{0.1, Eigen::MatrixXd(4, 2)};
  t.states << 1.0 / 3.0, -2e-300, 0.1 + 0.2, 1e300, std::nextafter(1.0, 2.0), 0.0, -7.25, 5e-324;
  const std::string text = format_trajectory_csv(t, 2.0);
  CHECK(text.rfind("t,x1,x2\n", 0) == 0);
  const TrajectoryFile back = parse_trajectory_csv(text);
  CHECK(back.t0 == 2.0);
  CHECK(back.trajectory.dt == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(back.trajectory.states == t.states);
}

TEST_CASE("CSV tolerates CRLF and trailing blank lines") {
  const auto f = parse_trajectory_csv("t,x1\r\n0,1\r\n0.5,2\r\n1,3\r\n\r\n");
  CHECK(f.trajectory.samples() == 3);
  CHECK(f.trajectory.states(2, 0) == 3.0);
}

TEST_CASE("CSV rejects malformed input") {
  CHECK_THROWS_AS(parse_trajectory_csv(""), FormatError);
  CHECK_THROWS_AS(parse_trajectory_csv("time,x1\n0,1\n1,2\n"), FormatError);
  CHECK_THROWS_AS(parse_trajectory_csv("t,y\n0,1\n1,2\n"), FormatError);
  CHECK_THROWS_AS(parse_trajectory_csv("t,x1\n0,1\n"), FormatError);
  CHECK_THROWS_AS(parse_trajectory_csv("t,x1\n0,1\n1,nan\n"), FormatError);
  CHECK_THROWS_AS(parse_trajectory_csv("t,x1\n0,1\n1,inf\n"), FormatError);
  CHECK_THROWS_AS(parse_trajectory_csv("t,x1\n0,1\n1,abc\n"), FormatError);
  CHECK_THROWS_AS(parse_trajectory_csv("t,x1\n0,1\n1,2,3\n"), FormatError);
  CHECK_THROWS_AS(parse_trajectory_csv("t,x1\n0,1\n1,2\n0.5,3\n"), FormatError);
  CHECK_THROWS_AS(parse_trajectory_csv("t,x1\n0,1\n1,2\n1,3\n"), FormatError);
  CHECK_THROWS_AS(parse_trajectory_csv("t,x1\n0,1\n1,2\n2.5,3\n"), FormatError);
  CHECK_THROWS_AS(read_trajectory_csv("/nonexistent/file.csv"), FormatError);
}

TEST_CASE("run config resolves paths against its directory") {
  const fs::path dir = scratch("run");
  write_text(dir / "a.csv", "t,x1\n0,1\n1,2\n");
  write_text(dir / "cfg.json", R"({"kernel":"expdot:mu=2","variant":"liouville","q":0.4,"reg":1e-6,
      "quad_refine":2,"max_modes":3,"trajectories":["a.csv"],"model_out":"out/m.json"})");
  const RunConfig rc = load_run_config(dir / "cfg.json");
  CHECK(rc.decomposition.kernel == KernelSpec{KernelFamily::ExponentialDot, 2.0});
  CHECK(rc.decomposition.variant == OperatorVariant::Liouville);
  CHECK(rc.decomposition.q == 0.4);
  CHECK(rc.decomposition.reg == 1e-6);
  CHECK(rc.decomposition.quad_refine == 2);
  CHECK(*rc.decomposition.max_modes == 3);
  CHECK(rc.trajectories.at(0) == dir / "a.csv");
  CHECK(rc.model_out == dir / "out/m.json");
  CHECK(rc.report_out == dir / "report.txt");
}

TEST_CASE("run config errors") {
  const fs::path dir = scratch("runerr");
  CHECK_THROWS_AS(parse_run_config(R"({"q":0.5,"trajectories":["missing.csv"]})", dir), FormatError);
  CHECK_THROWS_AS(parse_run_config(R"({"q":0.5,"trajectories":[]})", dir), FormatError);
  write_text(dir / "a.csv", "t,x1\n0,1\n1,2\n");
  CHECK_THROWS_AS(parse_run_config(R"({"q":1.5,"trajectories":["a.csv"]})", dir), FormatError);
  CHECK_THROWS_AS(parse_run_config(R"({"trajectories":["a.csv"]})", dir), FormatError);
  CHECK_THROWS_AS(parse_run_config(R"({"q":0.5,"kernel":"cubic","trajectories":["a.csv"]})", dir), FormatError);
  CHECK_THROWS_AS(parse_run_config("not json", dir), FormatError);
  CHECK_NOTHROW(parse_run_config(R"({"q":0.5,"trajectories":["a.csv"]})", dir));
}

TEST_CASE("simulation config blocks") {
  const auto specs = parse_simulation_config(R"({"problems":[
      {"q":0.5,"T":1,"dt":0.1,"rhs":{"type":"linear-1d","lambda":-1},
       "initial_grid":{"lo":[0.5],"hi":[2.0],"count":4},"out_dir":"d","prefix":"p"},
      {"q":0.9,"T":1,"dt":0.1,"rhs":{"type":"linear-nd","matrix":[[0,1],[-1,0]]},
       "initial_conditions":[[1,0],[0,1]]},
      {"q":0.7,"T":1,"dt":0.1,"rhs":{"type":"logistic","r":1,"capacity":2},
       "initial_random":{"lo":[0.1],"hi":[0.2],"count":3,"seed":5}}]})",
                                             "/base");
  REQUIRE(specs.size() == 3);
  CHECK(specs[0].initial_conditions.size() == 4);
  CHECK(specs[0].initial_conditions[3](0) == 2.0);
  CHECK(specs[0].out_dir == fs::path("/base/d"));
  CHECK(specs[0].prefix == "p");
  CHECK(specs[1].initial_conditions[1](1) == 1.0);
  CHECK(field_name(specs[1].problem.rhs) == field_name(VectorField{fields::LinearNd{}}));
  CHECK(specs[2].initial_conditions.size() == 3);
  for (const auto& x : specs[2].initial_conditions) CHECK((x(0) >= 0.1 && x(0) <= 0.2));
  const auto again = parse_simulation_config(R"({"q":0.7,"T":1,"dt":0.1,"rhs":{"type":"logistic","r":1,"capacity":2},
       "initial_random":{"lo":[0.1],"hi":[0.2],"count":3,"seed":5}})",
                                             "/base");
  CHECK(again[0].initial_conditions[2] == specs[2].initial_conditions[2]);
}

TEST_CASE("simulation config errors") {
  CHECK_THROWS_AS(parse_simulation_config(R"({"q":0.5,"T":1,"dt":0.1,"rhs":{"type":"zero"}})", "."), FormatError);
  CHECK_THROWS_AS(parse_simulation_config(
                      R"({"q":0.5,"T":1,"dt":0.1,"rhs":{"type":"chaos"},"initial_conditions":[[1]]})", "."),
                  FormatError);
  CHECK_THROWS_AS(parse_simulation_config(
                      R"({"q":0.5,"T":1,"dt":0.3,"rhs":{"type":"zero"},"initial_conditions":[[1]]})", "."),
                  FormatError);
  CHECK_THROWS_AS(parse_simulation_config(
                      R"({"q":0.5,"T":1,"dt":0.1,"rhs":{"type":"linear-1d","lambda":-1},"initial_conditions":[[1,2]]})",
                      "."),
                  FormatError);
}

TEST_CASE("vector field parsing") {
  const VectorField f = parse_vector_field(R"({"type":"polynomial","coeffs":[1,2,3]})");
  CHECK(evaluate(f, Eigen::VectorXd::Constant(1, 2.0))(0) == 17.0);
  CHECK_THROWS_AS(parse_vector_field(R"({"type":"polynomial"})"), FormatError);
}

}
