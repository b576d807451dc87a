#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "ect/io.hpp"

// Drives the installed binary end to end: exit codes, file outputs, and the
// determinism contract (byte-identical reruns, thread-count independence).

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "ect_cli_scratch";

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const fs::path out = kDir / "stdout.txt";
  const fs::path err = kDir / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + ECT_CLI_PATH + " " + args +
                          " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = ect::read_file(out);
  r.err = ect::read_file(err);
  return r;
}

fs::path write_fixture(const std::string& name, const std::string& content) {
  const fs::path p = kDir / name;
  std::ofstream f(p, std::ios::binary);
  f << content;
  return p;
}

struct Scratch {
  Scratch() {
    fs::remove_all(kDir);
    fs::create_directories(kDir);
  }
} scratch_setup;

const char* kHollowTriangle = "v 0 0\nv 1 0\nv 0.5 1\ns 0 1\ns 0 2\ns 1 2\n";
const char* kTetraOff =
    "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n";

}  // namespace

TEST_CASE("ecc on the hollow triangle") {
  const fs::path in = write_fixture("tri.txt", kHollowTriangle);
  const fs::path out = kDir / "tri_ecc.csv";
  auto r = run("ecc " + in.string() + " --angle pi/2 --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("chi=0") != std::string::npos);
  CHECK(r.out.find("breakpoints=2") != std::string::npos);
  CHECK(ect::read_file(out) == "a,chi\n0,1\n1,0\n");
}

TEST_CASE("ecc on an all-background image") {
  const fs::path in = write_fixture("blank.pgm", "P2\n2 2\n255\n0 0 0 0\n");
  const fs::path out = kDir / "blank_ecc.csv";
  auto r = run("ecc " + in.string() + " --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("chi=0") != std::string::npos);
  CHECK(r.out.find("breakpoints=0") != std::string::npos);
  CHECK(ect::read_file(out) == "a,chi\n");
}

TEST_CASE("ecc on the OFF tetrahedron") {
  const fs::path in = write_fixture("tetra.off", kTetraOff);
  const fs::path out = kDir / "tetra_ecc.csv";
  auto r = run("ecc " + in.string() + " --vector 0.3,-1,0.8 --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("chi=2") != std::string::npos);
}

TEST_CASE("ect of a single vertex substitutes a usable radius") {
  const fs::path in = write_fixture("vertex.txt", "v 0 0\n");
  const fs::path out = kDir / "vertex_ect.csv";
  auto r = run("ect " + in.string() + " -n 4 -T 3 --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.err.find("radius is 0") != std::string::npos);

  const std::string csv = ect::read_file(out);
  auto grid = ect::read_grid_csv(csv);
  REQUIRE(grid.rows.size() == 3);
  CHECK(grid.col0 == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(grid.rows[0] == std::vector<double>{0, 0, 0, 0});
  CHECK(grid.rows[1] == std::vector<double>{1, 1, 1, 1});
  CHECK(grid.rows[2] == std::vector<double>{1, 1, 1, 1});
  CHECK(fs::exists(out.string() + ".meta"));
}

TEST_CASE("ect column for the hollow triangle") {
  const fs::path in = write_fixture("tri2.txt", kHollowTriangle);
  const fs::path out = kDir / "tri_ect.csv";
  auto r = run("ect " + in.string() + " -n 4 -T 3 --out " + out.string());
  REQUIRE(r.code == 0);
  auto grid = ect::read_grid_csv(ect::read_file(out));
  REQUIRE(grid.rows.size() == 3);
  CHECK(grid.rows[0][1] == 0.0);
  CHECK(grid.rows[1][1] == 1.0);
  CHECK(grid.rows[2][1] == 0.0);
}

TEST_CASE("outputs are byte-identical across reruns and thread counts") {
  const fs::path in = write_fixture("leafy.pgm",
                                    "P2\n4 4\n9\n"
                                    "9 0 0 9\n"
                                    "9 9 0 9\n"
                                    "0 9 9 9\n"
                                    "9 9 0 9\n");
  const fs::path out = kDir / "det.csv";
  const fs::path pgm = kDir / "det.pgm";
  const std::string args = "ect " + in.string() + " -n 16 -T 9 --threshold 5 --out " +
                           out.string() + " --pgm " + pgm.string();

  REQUIRE(run(args, "ECT_THREADS=1").code == 0);
  const std::string csv1 = ect::read_file(out);
  const std::string pgm1 = ect::read_file(pgm);
  const std::string meta1 = ect::read_file(out.string() + ".meta");
  for (const char* env : {"ECT_THREADS=1", "ECT_THREADS=2", "ECT_THREADS=3",
                          "ECT_THREADS=8"}) {
    REQUIRE(run(args, env).code == 0);
    CHECK(ect::read_file(out) == csv1);
    CHECK(ect::read_file(pgm) == pgm1);
    CHECK(ect::read_file(out.string() + ".meta") == meta1);
  }
  // Atomic writes leave no droppings.
  CHECK_FALSE(fs::exists(out.string() + ".tmp"));
  CHECK_FALSE(fs::exists(pgm.string() + ".tmp"));
}

TEST_CASE("ect per-direction mode emits ranges and index rows") {
  const fs::path in = write_fixture("tri_pd.txt", kHollowTriangle);
  const fs::path out = kDir / "tri_pd.csv";
  auto r = run("ect " + in.string() + " -n 4 -T 5 --mode per-direction --out " +
               out.string());
  REQUIRE(r.code == 0);
  auto grid = ect::read_grid_csv(ect::read_file(out));
  CHECK(grid.corner_label == "threshold_index");
  CHECK(grid.col0 == std::vector<double>{0, 1, 2, 3, 4});
  for (std::size_t j = 0; j < grid.header.size(); ++j)
    CHECK(grid.rows.back()[j] == 0.0);  // chi of the hollow triangle
  const std::string meta = ect::read_file(out.string() + ".meta");
  CHECK(meta.find("range_0=") != std::string::npos);
  CHECK(meta.find("range_3=") != std::string::npos);
}

TEST_CASE("sect runs and reports endpoints near zero") {
  const fs::path in = write_fixture("tri3.txt", kHollowTriangle);
  const fs::path out = kDir / "tri_sect.csv";
  auto r = run("sect " + in.string() + " -n 8 -T 11 --out " + out.string());
  REQUIRE(r.code == 0);
  auto grid = ect::read_grid_csv(ect::read_file(out));
  REQUIRE(grid.rows.size() == 11);
  for (double v : grid.rows.front()) CHECK(std::abs(v) <= 1e-9);
  for (double v : grid.rows.back()) CHECK(std::abs(v) <= 1e-9);
}

TEST_CASE("dist of a file with itself prints zero") {
  const fs::path in = write_fixture("tri4.txt", kHollowTriangle);
  const fs::path out = kDir / "tri_ect2.csv";
  REQUIRE(run("ect " + in.string() + " -n 8 -T 5 --out " + out.string()).code == 0);
  auto r = run("dist " + out.string() + " " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");
  auto rmax = run("dist " + out.string() + " " + out.string() + " --metric max");
  CHECK(rmax.out == "0\n");
}

TEST_CASE("dist rejects mismatched grids") {
  const fs::path in = write_fixture("tri5.txt", kHollowTriangle);
  const fs::path a = kDir / "a.csv";
  const fs::path b = kDir / "b.csv";
  REQUIRE(run("ect " + in.string() + " -n 8 -T 5 --out " + a.string()).code == 0);
  REQUIRE(run("ect " + in.string() + " -n 8 -T 7 --out " + b.string()).code == 0);
  auto r = run("dist " + a.string() + " " + b.string());
  CHECK(r.code == 3);
  CHECK(r.err.find("mismatch") != std::string::npos);
}

TEST_CASE("validate accepts good input") {
  const fs::path in = write_fixture("tri6.txt", kHollowTriangle);
  auto r = run("validate " + in.string());
  CHECK(r.code == 0);
  CHECK(r.out == "OK\n");
}

TEST_CASE("detect over a constant series emits identical rows") {
  const fs::path in = write_fixture("sq.pgm", "P2\n2 2\n1\n1 1 1 0\n");
  const fs::path out = kDir / "detect.csv";
  auto r = run("detect " + in.string() + " " + in.string() + " " + in.string() +
               " -n 8 -H 9 --out " + out.string());
  REQUIRE(r.code == 0);
  auto grid = ect::read_grid_csv(ect::read_file(out));
  REQUIRE(grid.rows.size() == 3);
  CHECK(grid.rows[0] == grid.rows[1]);
  CHECK(grid.rows[0] == grid.rows[2]);
  const std::string meta = ect::read_file(out.string() + ".meta");
  CHECK(meta.find("detect_quadrature=direction_mean") != std::string::npos);
}

TEST_CASE("lect identities on a constant image") {
  const fs::path in = write_fixture("flat.pgm", "P2\n3 2\n9\n5 5 5 5 5 5\n");
  auto exact = run("lect " + in.string() + " --angle 0 --height 99 --level 5");
  CHECK(exact.code == 0);
  CHECK(exact.out == "1\n");  // filled rectangle is contractible
  auto miss = run("lect " + in.string() + " --angle 0 --height 99 --level 4");
  CHECK(miss.out == "0\n");
  auto sup = run("lect " + in.string() + " --angle 0 --height 99 --level 0 --superlevel");
  CHECK(sup.out == "1\n");
  auto levels = run("lect " + in.string() + " --angle 0 --height 99 --enumerate-levels");
  CHECK(levels.code == 0);
  CHECK(levels.out == "t,chi\n5,1\n");
}

TEST_CASE("align writes an aligned shape and a report") {
  const fs::path in = write_fixture("cloud.txt",
                                    "v 0 0\nv 4 1\nv 8 0\nv 2 0.5\nv 6 0.5\nv 1 0.2\n");
  const fs::path out = kDir / "aligned.txt";
  auto r = run("align " + in.string() + " --out " + out.string());
  REQUIRE(r.code == 0);
  auto aligned = ect::read_simplex_list(ect::read_file(out));
  CHECK(aligned.points().size() == 6);
  const std::string meta = ect::read_file(out.string() + ".meta");
  CHECK(meta.find("rotation_row_0=") != std::string::npos);
  CHECK(meta.find("translation=") != std::string::npos);
}

TEST_CASE("error exit codes") {
  const fs::path bad = write_fixture("bad.off", "OFF\n2 1 0\n0 0 0\n1 0 0\n3 0 1 9\n");
  CHECK(run("ecc " + bad.string() + " --out " + (kDir / "x.csv").string()).code == 2);

  const fs::path missing = kDir / "does_not_exist.txt";
  CHECK(run("ecc " + missing.string() + " --out " + (kDir / "y.csv").string()).code == 2);

  const fs::path in = write_fixture("tri7.txt", kHollowTriangle);
  CHECK(run("ect " + in.string() + " -n 4 -T 1 --out " + (kDir / "z.csv").string()).code ==
        3);
  CHECK(run("ect " + in.string() + " -n 4 -T 3 --scheme fibonacci --out " +
            (kDir / "w.csv").string())
            .code == 3);
  CHECK(run("nope").code == 3);
}
