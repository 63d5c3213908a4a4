//---------------------------------------------------------------------------//
//! \file io.cpp
//---------------------------------------------------------------------------//
#include "evx/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <openssl/evp.h>

#include "evx/error.hpp"

namespace evx
{
namespace
{
char const magic[4] = {'E', 'V', 'F', '1'};

template<class U>
void put_le(std::string& out, U v)
{
    for (std::size_t i = 0; i < sizeof(U); ++i)
    {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

template<class U>
U get_le(std::string const& in, std::size_t& pos)
{
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i)
    {
        v |= static_cast<U>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    }
    pos += sizeof(U);
    return v;
}

void put_f64(std::string& out, double v)
{
    put_le(out, std::bit_cast<std::uint64_t>(v));
}

double get_f64(std::string const& in, std::size_t& pos)
{
    return std::bit_cast<double>(get_le<std::uint64_t>(in, pos));
}

bool needs_quotes(std::string const& s)
{
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

std::string quote(std::string const& s)
{
    if (!needs_quotes(s))
    {
        return s;
    }
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
        {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}
}  // namespace

//---------------------------------------------------------------------------//
std::size_t field_file_bytes(FieldFile const& file)
{
    return field_header_bytes + file.components.size() * file.grid.size() * 16;
}

FieldFile to_field_file(ComplexField2D const& field)
{
    return {field.grid, {field.samples}};
}

void write_field(fs::path const& path, FieldFile const& file)
{
    for (auto const& c : file.components)
    {
        if (c.size() != file.grid.size())
        {
            fail(ErrorKind::layout, "field component does not match its grid");
        }
    }
    std::string out;
    out.reserve(field_file_bytes(file));
    out.append(magic, 4);
    put_le(out, static_cast<std::uint32_t>(file.grid.nx));
    put_le(out, static_cast<std::uint32_t>(file.grid.ny));
    put_f64(out, file.grid.dx);
    put_f64(out, file.grid.dy);
    put_le(out, static_cast<std::uint32_t>(file.components.size()));
    for (auto const& c : file.components)
    {
        for (auto v : c)
        {
            put_f64(out, v.real());
            put_f64(out, v.imag());
        }
    }
    write_text(path, out);
}

FieldFile read_field(fs::path const& path)
{
    std::string in = read_text(path);
    if (in.size() < field_header_bytes || std::memcmp(in.data(), magic, 4) != 0)
    {
        fail(ErrorKind::layout, "not an EVF1 file: " + path.string());
    }
    std::size_t pos = 4;
    FieldFile f;
    f.grid.nx = static_cast<int>(get_le<std::uint32_t>(in, pos));
    f.grid.ny = static_cast<int>(get_le<std::uint32_t>(in, pos));
    f.grid.dx = get_f64(in, pos);
    f.grid.dy = get_f64(in, pos);
    auto ncomp = get_le<std::uint32_t>(in, pos);
    f.components.assign(ncomp, std::vector<cplx>(f.grid.size()));
    if (in.size() != field_file_bytes(f))
    {
        fail(ErrorKind::layout, "EVF1 payload length mismatch: " + path.string());
    }
    for (auto& c : f.components)
    {
        for (auto& v : c)
        {
            double re = get_f64(in, pos);
            double im = get_f64(in, pos);
            v = {re, im};
        }
    }
    return f;
}

//---------------------------------------------------------------------------//
nlohmann::json sidecar_json(FieldMeta const& meta, FieldFile const& file)
{
    return {
        {"schema", "evx-field-sidecar/1"},
        {"format", "EVF1"},
        {"nx", file.grid.nx},
        {"ny", file.grid.ny},
        {"dx_nm", file.grid.dx},
        {"dy_nm", file.grid.dy},
        {"n_components", file.components.size()},
        {"energy_kev", meta.energy_kev},
        {"z_nm", meta.z_nm},
        {"provenance", meta.provenance},
        {"parameters", meta.parameters},
    };
}

nlohmann::json const& sidecar_schema()
{
    static nlohmann::json const schema = nlohmann::json::parse(R"({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "evx-field-sidecar/1",
  "type": "object",
  "additionalProperties": false,
  "required": ["schema", "format", "nx", "ny", "dx_nm", "dy_nm",
               "n_components", "energy_kev", "z_nm", "provenance",
               "parameters"],
  "properties": {
    "schema": {"const": "evx-field-sidecar/1"},
    "format": {"const": "EVF1"},
    "nx": {"type": "integer", "minimum": 1},
    "ny": {"type": "integer", "minimum": 1},
    "dx_nm": {"type": "number", "exclusiveMinimum": 0},
    "dy_nm": {"type": "number", "exclusiveMinimum": 0},
    "n_components": {"type": "integer", "minimum": 1},
    "energy_kev": {"type": "number", "exclusiveMinimum": 0},
    "z_nm": {"type": "number"},
    "provenance": {"type": "string"},
    "parameters": {"type": "object"}
  }
})");
    return schema;
}

std::vector<std::string> validate_sidecar(nlohmann::json const& sidecar)
{
    // Interprets the subset of JSON Schema used by sidecar_schema()
    std::vector<std::string> errors;
    auto const& schema = sidecar_schema();
    if (!sidecar.is_object())
    {
        return {"sidecar is not an object"};
    }
    for (auto const& key : schema["required"])
    {
        if (!sidecar.contains(key.get<std::string>()))
        {
            errors.push_back("missing key " + key.get<std::string>());
        }
    }
    auto const& props = schema["properties"];
    for (auto const& [key, value] : sidecar.items())
    {
        if (!props.contains(key))
        {
            errors.push_back("unknown key " + key);
            continue;
        }
        auto const& rule = props[key];
        if (rule.contains("const") && value != rule["const"])
        {
            errors.push_back(key + " must be " + rule["const"].dump());
        }
        if (!rule.contains("type"))
        {
            continue;
        }
        auto type = rule["type"].get<std::string>();
        bool ok = (type == "integer" && value.is_number_integer())
                  || (type == "number" && value.is_number())
                  || (type == "string" && value.is_string())
                  || (type == "object" && value.is_object());
        if (!ok)
        {
            errors.push_back(key + " must be of type " + type);
            continue;
        }
        if (rule.contains("minimum") && value.get<double>() < rule["minimum"].get<double>())
        {
            errors.push_back(key + " is below its minimum");
        }
        if (rule.contains("exclusiveMinimum")
            && !(value.get<double>() > rule["exclusiveMinimum"].get<double>()))
        {
            errors.push_back(key + " must be positive");
        }
    }
    return errors;
}

//---------------------------------------------------------------------------//
void CsvTable::add(std::vector<double> const& values)
{
    std::vector<std::string> row;
    for (double v : values)
    {
        row.push_back(format_double(v));
    }
    add(std::move(row));
}

void CsvTable::add(std::vector<std::string> row)
{
    if (row.size() != header.size())
    {
        fail(ErrorKind::layout, "CSV row width differs from the header");
    }
    rows.push_back(std::move(row));
}

std::string format_double(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string to_csv(CsvTable const& table)
{
    std::string out;
    auto line = [&](std::vector<std::string> const& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            if (i)
            {
                out += ',';
            }
            out += quote(cells[i]);
        }
        out += '\n';
    };
    line(table.header);
    for (auto const& r : table.rows)
    {
        line(r);
    }
    return out;
}

void write_csv(fs::path const& path, CsvTable const& table)
{
    write_text(path, to_csv(table));
}

//---------------------------------------------------------------------------//
std::string sha256_hex(std::string_view bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr)
        != 1)
    {
        fail(ErrorKind::io, "SHA-256 digest failed");
    }
    static char const hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i)
    {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string sha256_file(fs::path const& path)
{
    return sha256_hex(read_text(path));
}

void write_text(fs::path const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        fail(ErrorKind::io, "cannot write " + path.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
    {
        fail(ErrorKind::io, "write failed for " + path.string());
    }
}

std::string read_text(fs::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        fail(ErrorKind::io, "cannot read " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path write_manifest(fs::path const& dir, std::vector<fs::path> const& artifacts)
{
    std::vector<std::string> names;
    for (auto const& a : artifacts)
    {
        names.push_back(fs::relative(a, dir).generic_string());
    }
    std::sort(names.begin(), names.end());
    nlohmann::json list = nlohmann::json::array();
    for (auto const& n : names)
    {
        auto p = dir / n;
        list.push_back({{"file", n},
                        {"bytes", fs::file_size(p)},
                        {"sha256", sha256_file(p)}});
    }
    nlohmann::json manifest{{"schema", "evx-manifest/1"}, {"artifacts", list}};
    auto path = dir / "manifest.json";
    write_text(path, manifest.dump(2) + "\n");
    return path;
}

//---------------------------------------------------------------------------//
}  // namespace evx
