#include "doctest.h"

#include "fungal/grid_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace
{

struct Scratch
{
    fs::path dir;
    Scratch() : dir(fs::temp_directory_path() / ("fungal_cli_test_" + std::to_string(::getpid())))
    {
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    fs::path write(const std::string& name, const std::string& text) const
    {
        const fs::path p = dir / name;
        fungal::write_file_atomic(p, text);
        return p;
    }
};

int run_cli(const std::string& args, const fs::path& out = "/dev/null")
{
    const std::string command = std::string(FUNGAL_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("run writes the toppled grid")
{
    const Scratch s;
    const auto grid = s.write("one.grid", "0 0 4\n");
    const auto out = s.dir / "out.grid";
    CHECK(run_cli("run " + grid.string() + " --word A --steps 1 -o " + out.string()) == 0);
    CHECK(fungal::parse_grid(fungal::read_file(out)) ==
          fungal::ChipGrid{{{0, -1}, 1}, {{-1, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}});
}

TEST_CASE("malformed input exits with the parse status")
{
    const Scratch s;
    const auto bad = s.write("bad.grid", "0 0 4\n0 0 1\n");
    CHECK(run_cli("run " + bad.string() + " --word A --steps 1") == 2);
    CHECK(run_cli("run " + (s.dir / "missing.grid").string() + " --steps 1") == 2);
    CHECK(run_cli("run --no-such-flag") == 2);
    const auto cyclic = s.write("c.net", "input a\ngate g AND a h\ngate h OR g a\noutput h\n");
    CHECK(run_cli("compile " + cyclic.string()) == 2);
}

TEST_CASE("probe on an occupied site is a domain error")
{
    const Scratch s;
    const auto grid = s.write("one.grid", "0 0 4\n");
    CHECK(run_cli("probe " + grid.string() + " --word A -T 2 --x 0 --y 0") == 3);
    CHECK(run_cli("probe " + grid.string() + " --word A -T 2 --x 1 --y 0") == 0);
}

TEST_CASE("verify-gadget reports shipped gadgets as passing")
{
    CHECK(run_cli("verify-gadget " + (fs::path(FUNGAL_CATALOG_DIR) / "h4v4_cross.gadget").string()) == 0);
    CHECK(run_cli("verify-gadget " + (fs::path(FUNGAL_CATALOG_DIR) / "hv_and2.gadget").string()) == 0);
}

TEST_CASE("compile and check a small netlist")
{
    const Scratch s;
    const auto net = s.write("and.net", "input a\ninput b\ngate g AND a b\noutput g\n");
    const auto prefix = s.dir / "layout";
    CHECK(run_cli("compile " + net.string() + " -o " + prefix.string()) == 0);
    CHECK(fs::exists(prefix.string() + ".grid"));
    CHECK(fs::exists(prefix.string() + ".json"));
    CHECK(run_cli("check " + net.string()) == 0);
    CHECK(run_cli("compile " + net.string() + " --word HV") == 3);
}

TEST_CASE("search writes a manifest and is repeatable")
{
    const Scratch s;
    const auto m1 = s.dir / "m1.json";
    const auto m2 = s.dir / "m2.json";
    CHECK(run_cli("search --word HV --width 2 --height 2 --contract QUIESCENT_WIRE --manifest " + m1.string()) == 0);
    CHECK(run_cli("search --word HV --width 2 --height 2 --contract QUIESCENT_WIRE --manifest " + m2.string()) == 0);
    CHECK(fungal::read_file(m1) == fungal::read_file(m2));
    CHECK(run_cli("search --word HV --width 3 --height 3 --contract CROSS --budget 5") == 3);
}
