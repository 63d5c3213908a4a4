//---------------------------------------------------------------------------//
//! \file evx_cli.cpp
//---------------------------------------------------------------------------//
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "evx/error.hpp"
#include "evx/fft.hpp"
#include "evx/io.hpp"
#include "evx/scenario.hpp"

namespace
{
int exit_code(evx::ErrorKind kind)
{
    switch (kind)
    {
        case evx::ErrorKind::validation:
            return 2;
        case evx::ErrorKind::io:
            return 3;
        default:
            return 4;
    }
}

int run(std::string const& path, std::string const& kind, std::string const& out)
{
    auto config = evx::load_config(path, kind);
    if (!out.empty())
    {
        config.output_dir = out;
    }
    auto result = evx::run_scenario(config);
    for (auto const& a : result.artifacts)
    {
        std::cout << a.string() << "\n";
    }
    std::cout << result.manifest.string() << "\n";
    return 0;
}

int verify()
{
    auto rows = evx::verify_oracles();
    bool all = true;
    std::printf("%-52s %14s %14s %9s  %s\n", "check", "value", "reference", "tol", "result");
    for (auto const& r : rows)
    {
        std::printf("%-52s %14.8g %14.8g %9.1e  %s\n", r.check.c_str(), r.value,
                    r.reference, r.tolerance, r.pass ? "PASS" : "FAIL");
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

int inspect(std::string const& path)
{
    auto f = evx::read_field(path);
    std::cout << "nx " << f.grid.nx << "\nny " << f.grid.ny << "\ndx_nm " << f.grid.dx
              << "\ndy_nm " << f.grid.dy << "\ncomponents " << f.components.size()
              << "\nbytes " << evx::field_file_bytes(f) << "\nsha256 "
              << evx::sha256_file(path) << "\n";
    return 0;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"evx: free-electron vortex simulation and analysis"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "FFT threads (overrides EVX_THREADS)");

    std::string config_path;
    std::string out_dir;
    auto* run_cmd = app.add_subcommand("run", "Run the scenario named in a config file");
    run_cmd->add_option("config", config_path, "JSON config")->required();
    run_cmd->add_option("--out", out_dir, "Output directory override");

    std::string chosen_kind;
    for (auto const& kind : evx::scenario_kinds())
    {
        auto* sub = app.add_subcommand(kind, "Run a " + kind + " scenario");
        sub->add_option("config", config_path, "JSON config")->required();
        sub->add_option("--out", out_dir, "Output directory override");
        sub->callback([&chosen_kind, kind] { chosen_kind = kind; });
    }

    auto* verify_cmd = app.add_subcommand("verify", "Run the module consistency oracles");
    std::string field_path;
    auto* inspect_cmd = app.add_subcommand("inspect", "Print the header of an EVF1 file");
    inspect_cmd->add_option("file", field_path, "EVF1 file")->required();

    CLI11_PARSE(app, argc, argv);
    if (threads > 0)
    {
        evx::set_fft_threads(threads);
    }
    try
    {
        if (verify_cmd->parsed())
        {
            return verify();
        }
        if (inspect_cmd->parsed())
        {
            return inspect(field_path);
        }
        return run(config_path, run_cmd->parsed() ? std::string{} : chosen_kind, out_dir);
    }
    catch (evx::Error const& e)
    {
        std::cerr << "error [" << evx::to_cstring(e.kind()) << "]: " << e.what() << "\n";
        return exit_code(e.kind());
    }
}
