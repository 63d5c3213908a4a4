//---------------------------------------------------------------------------//
//! \file evx/io.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "evx/field.hpp"

namespace evx
{
namespace fs = std::filesystem;

//---------------------------------------------------------------------------//
// FIELD FILES
//---------------------------------------------------------------------------//
/*!
 * Binary field payload.
 *
 * Layout, little-endian: "EVF1", u32 nx, u32 ny, f64 dx_nm, f64 dy_nm,
 * u32 n_components, then n_components x ny x nx (f64 re, f64 im) pairs in
 * row-major order.
 */
struct FieldFile
{
    Grid grid;
    std::vector<std::vector<cplx>> components;
};

inline constexpr std::size_t field_header_bytes = 4 + 4 + 4 + 8 + 8 + 4;

std::size_t field_file_bytes(FieldFile const& file);

FieldFile to_field_file(ComplexField2D const& field);

void write_field(fs::path const& path, FieldFile const& file);

// Errors: io for unreadable files, layout for a bad magic or length
FieldFile read_field(fs::path const& path);

//! Sidecar metadata stored next to a field payload
struct FieldMeta
{
    double energy_kev{0};
    double z_nm{0};
    std::string provenance;
    nlohmann::json parameters = nlohmann::json::object();
};

nlohmann::json sidecar_json(FieldMeta const& meta, FieldFile const& file);

// Versioned JSON schema the sidecar validates against
nlohmann::json const& sidecar_schema();

// Empty when valid, else one message per violation
std::vector<std::string> validate_sidecar(nlohmann::json const& sidecar);

//---------------------------------------------------------------------------//
// CSV
//---------------------------------------------------------------------------//
//! Table with unit-suffixed column names
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<double> const& values);
    void add(std::vector<std::string> row);
};

// %.17g text: 17 significant digits round-trip any double
std::string format_double(double value);

// RFC-4180 text with LF line endings
std::string to_csv(CsvTable const& table);

void write_csv(fs::path const& path, CsvTable const& table);

//---------------------------------------------------------------------------//
// HASHES AND MANIFEST
//---------------------------------------------------------------------------//
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(fs::path const& path);

void write_text(fs::path const& path, std::string const& text);
std::string read_text(fs::path const& path);

// manifest.json listing each artifact (relative to dir) with size and hash
fs::path write_manifest(fs::path const& dir,
                        std::vector<fs::path> const& artifacts);

//---------------------------------------------------------------------------//
}  // namespace evx
