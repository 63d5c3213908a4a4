//---------------------------------------------------------------------------//
//! \file evx/scenario.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace evx
{
//! One accepted parameter of a scenario block
struct ParamSpec
{
    enum class Kind
    {
        number,  //!< key carries a unit suffix
        integer,  //!< dimensionless count or index
        text,
    };
    std::string key;
    Kind kind{Kind::number};
    nlohmann::json fallback;
};

std::vector<std::string> const& scenario_kinds();

// Accepted parameters of a scenario kind; validation error if unknown
std::vector<ParamSpec> const& scenario_parameters(std::string const& kind);

// True if the key ends in one of the recognised unit suffixes
bool has_unit_suffix(std::string const& key);

/*!
 * Validated scenario description.
 *
 * Top-level keys: scenario, output_dir, seed, parameters. Parameters not
 * given take their defaults.
 */
struct ScenarioConfig
{
    std::string kind;
    std::filesystem::path output_dir{"evx_out"};
    std::uint64_t seed{0};
    nlohmann::json parameters = nlohmann::json::object();
};

// Validation errors name the offending key and its line in the text. A
// nonempty expected kind fills a missing "scenario" and must match a given one.
ScenarioConfig parse_config(std::string const& text,
                            std::string const& expected_kind = {});
ScenarioConfig load_config(std::filesystem::path const& path,
                           std::string const& expected_kind = {});

struct RunResult
{
    std::vector<std::filesystem::path> artifacts;
    std::filesystem::path manifest;
};

// Run one scenario, writing its artifacts and manifest.json
RunResult run_scenario(ScenarioConfig const& config);

//! One row of the module consistency table
struct VerifyRow
{
    std::string check;
    double value{0};
    double reference{0};
    double tolerance{0};  //!< relative unless reference is 0
    bool pass{false};
};

// Dual-route oracles across the modules
std::vector<VerifyRow> verify_oracles();

//---------------------------------------------------------------------------//
}  // namespace evx
