#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "icspec/io.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string command = std::string(ICSPEC_CLI) + " " + args + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    return text.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("icspec-cli-" + std::to_string(std::rand()) + "-" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_values(const std::string& path, const std::vector<double>& values) {
    std::ofstream out(path);
    for (double v : values) out << icspec::format_double(v) << '\n';
}

}  // namespace

TEST_CASE("constant input gives a zero surface") {
    TempDir dir;
    write_values(dir / "x.csv", std::vector<double>(40, 3.0));
    REQUIRE(run("estimate --input " + dir / "x.csv" + " --d 8 --quantiles 4 --output " + dir / "s.csv") == 0);
    const auto surface = icspec::read_surface_csv(dir / "s.csv");
    for (const auto& z : surface.entries()) CHECK(z == icspec::Complex(0.0, 0.0));
}

TEST_CASE("two observations give one row per frequency and pair") {
    TempDir dir;
    write_values(dir / "x.csv", {0.3, -1.0});
    REQUIRE(run("estimate --input " + dir / "x.csv" + " --d 8 --quantiles 0.5 --output " + dir / "s.csv") == 0);
    const auto surface = icspec::read_surface_csv(dir / "s.csv");
    CHECK(surface.frequencies().size() == 5);
    CHECK(surface.entries().size() == 5);
}

TEST_CASE("outputs are reproducible and replayable") {
    TempDir dir;
    REQUIRE(run("simulate --model M1 --n 300 --seed 4 --output " + dir / "x.csv") == 0);
    REQUIRE(run("simulate --model M1 --n 300 --seed 4 --output " + dir / "y.csv") == 0);
    CHECK(slurp(dir / "x.csv") == slurp(dir / "y.csv"));
    REQUIRE(run("simulate --config " + dir / "x.csv" + " --output " + dir / "z.csv") == 0);
    CHECK(slurp(dir / "x.csv") == slurp(dir / "z.csv"));

    REQUIRE(run("test-tr --input " + dir / "x.csv" + " --output " + dir / "r1.json") == 0);
    REQUIRE(run("test-tr --input " + dir / "x.csv" + " --output " + dir / "r2.json") == 0);
    CHECK(slurp(dir / "r1.json") == slurp(dir / "r2.json"));
    REQUIRE(run("--config " + dir / "r1.json" + " --output " + dir / "r3.json") == 0);
    CHECK(slurp(dir / "r1.json") == slurp(dir / "r3.json"));

    REQUIRE(run("experiment --kind competitors --model M0,M6a --n 40 --reps 5 --seed 2 --output " + dir / "e1.csv" +
                " --summary " + dir / "e1.json") == 0);
    REQUIRE(run("experiment --kind competitors --model M0,M6a --n 40 --reps 5 --seed 2 --threads 2 --output " +
                dir / "e2.csv" + " --summary " + dir / "e2.json") == 0);
    CHECK(slurp(dir / "e1.csv") == slurp(dir / "e2.csv"));
    CHECK(slurp(dir / "e1.json") == slurp(dir / "e2.json"));
}

TEST_CASE("errors exit nonzero") {
    TempDir dir;
    write_values(dir / "x.csv", oracle::normal_series(50, 1));
    CHECK(run("test-tr --input " + dir / "x.csv" + " --b 60") != 0);
    CHECK(run("estimate --input " + dir / "x.csv" + " --bogus 1") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("estimate --input " + dir / "missing.csv") != 0);
    CHECK(run("catalog") == 0);
}
