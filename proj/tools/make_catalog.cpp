#include "fungal/designs.hpp"
#include "fungal/error.hpp"
#include "fungal/gadget.hpp"
#include "fungal/grid_io.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <filesystem>

int main(int argc, char** argv)
{
    CLI::App app{"Regenerates the gadget catalog from the built-in designs"};
    std::string dir = FUNGAL_CATALOG_DIR;
    bool verbose = false;
    app.add_option("dir", dir, "Output directory");
    app.add_flag("-v,--verbose", verbose, "Print every verification report");
    CLI11_PARSE(app, argc, argv);

    try
    {
        std::filesystem::create_directories(dir);
        int failed = 0;
        for (const fungal::Gadget& g : fungal::designs::catalog_gadgets())
        {
            const auto report = fungal::verify_gadget(g, g.latency + 4);
            if (verbose || !report.passed(g))
            {
                fmt::print("{}", fungal::format_report(g, report));
            }
            if (!report.passed(g))
            {
                ++failed;
                fmt::print("skipping {}\n", g.name);
                continue;
            }
            fungal::write_file_atomic(std::filesystem::path(dir) / (g.name + ".gadget"), fungal::format_gadget(g));
            fmt::print("wrote {} (latency {}, backward {})\n", g.name, g.latency, g.backward);
        }
        return failed == 0 ? 0 : 1;
    }
    catch (const fungal::Error& e)
    {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
}
