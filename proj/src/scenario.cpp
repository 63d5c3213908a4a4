//---------------------------------------------------------------------------//
//! \file scenario.cpp
//---------------------------------------------------------------------------//
#include "evx/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "evx/dirac.hpp"
#include "evx/error.hpp"
#include "evx/io.hpp"
#include "evx/magneto.hpp"
#include "evx/metrology.hpp"
#include "evx/modes.hpp"
#include "evx/optics.hpp"
#include "evx/radiation.hpp"
#include "evx/scattering.hpp"
#include "evx/units.hpp"

namespace evx
{
namespace
{
using json = nlohmann::json;
using Kind = ParamSpec::Kind;
using units::pi;

ParamSpec num(std::string key, double v)
{
    return {std::move(key), Kind::number, v};
}
ParamSpec integer(std::string key, int v)
{
    return {std::move(key), Kind::integer, v};
}
ParamSpec text(std::string key, std::string v)
{
    return {std::move(key), Kind::text, std::move(v)};
}

std::map<std::string, std::vector<ParamSpec>> const& tables()
{
    static std::map<std::string, std::vector<ParamSpec>> const t{
        {"mode-synthesis",
         {text("family", "laguerre_gauss"),
          integer("l", 2),
          integer("n", 0),
          num("energy_kev", 200),
          integer("grid_n", 256),
          num("pitch_nm", 1),
          num("waist_nm", 30),
          num("kappa_per_nm", 0.3),
          num("kappa_max_per_nm", 0.3),
          num("z_nm", 0)}},
        {"optics-pipeline",
         {num("energy_kev", 200),
          integer("grid_n", 512),
          num("pitch_nm", 1),
          num("illumination_waist_nm", 50),
          integer("l0", 1),
          num("period_nm", 32),
          num("duty_ratio", 0.5),
          integer("phase_steps", 32),
          integer("max_order", 3)}},
        {"metrology",
         {num("energy_kev", 200),
          integer("grid_n", 512),
          num("pitch_nm", 1),
          integer("l", 2),
          num("waist_nm", 40),
          num("fork_period_nm", 16),
          num("triangle_side_nm", 120),
          num("knife_azimuth_rad", 0.3),
          num("mpi_waist_nm", 60),
          integer("pinholes", 7),
          num("pinhole_radius_nm", 30),
          num("pinhole_diameter_nm", 4)}},
        {"landau",
         {num("energy_kev", 200),
          num("field_t", 1),
          integer("l", 2),
          integer("n", 0),
          integer("grid_n", 256),
          num("pitch_nm", 4),
          num("tilt_rad", 0.1),
          integer("trajectory_periods", 2)}},
        {"dirac",
         {num("energy_kev", 817.6),
          num("kappa_over_k_ratio", 0.7),
          integer("l", 1),
          num("spin_hbar", 0.5),
          integer("grid_n", 256)}},
        {"scattering",
         {num("energy1_kev", 2100),
          num("kappa1_kev", 200),
          num("width1_kev", 10),
          num("jz1_hbar", 0.5),
          num("energy2_kev", 2100),
          num("kappa2_kev", 100),
          num("width2_kev", 5),
          num("jz2_hbar", 6.5),
          num("k1_out_perp_kev", 500),
          num("screening_kev", 1),
          num("coulomb_alpha_ratio", 0),
          num("phase0_rad", 0.3),
          num("half_extent_kev", 360),
          integer("grid_n", 41),
          integer("smearing_nodes", 16)}},
        {"radiation",
         {num("energy_kev", 340.66593),
          num("refractive_index_ratio", 1.5),
          num("omega_rad_per_s", 0),
          num("theta0_rad", 0.3),
          num("jz1_hbar", 3.5),
          num("jz2_hbar", 0.5),
          num("amplitude2_ratio", 1),
          integer("theta_cells", 180),
          integer("phi_cells", 72),
          integer("cone_nodes", 720),
          integer("l", 1000),
          num("spin_hbar", 0),
          num("photon_energy_ev", 5),
          num("incidence_rad", 1.2217304763960306)}},
    };
    return t;
}

std::vector<std::string> const unit_suffixes{
    "_kev", "_ev",  "_nm",    "_per_nm", "_um",   "_mm",        "_rad",
    "_mrad", "_t",  "_s",     "_hbar",   "_ratio", "_rad_per_s"};

int line_of(std::string const& text, std::string const& key)
{
    auto pos = text.find('"' + key + '"');
    if (pos == std::string::npos)
    {
        return 0;
    }
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

[[noreturn]] void reject(std::string const& text,
                         std::string const& key,
                         std::string const& why)
{
    int line = line_of(text, key);
    std::string where = line ? "line " + std::to_string(line) + ": " : "";
    fail(ErrorKind::validation, where + "key '" + key + "': " + why);
}

//---------------------------------------------------------------------------//
// Scenario helpers
//---------------------------------------------------------------------------//
struct Output
{
    ScenarioConfig const& config;
    std::vector<fs::path> artifacts;

    fs::path path(std::string const& name) const { return config.output_dir / name; }

    void csv(std::string const& name, CsvTable const& t)
    {
        write_csv(path(name), t);
        artifacts.push_back(path(name));
    }

    void field(std::string const& stem, FieldFile const& f, FieldMeta meta)
    {
        meta.provenance = "evx " + config.kind + " scenario";
        meta.parameters = {{"scenario", config.kind},
                           {"seed", config.seed},
                           {"parameters", config.parameters}};
        write_field(path(stem + ".evf"), f);
        write_text(path(stem + ".json"), sidecar_json(meta, f).dump(2) + "\n");
        artifacts.push_back(path(stem + ".evf"));
        artifacts.push_back(path(stem + ".json"));
    }
};

FieldMeta meta_at(double energy_kev, double z_nm)
{
    FieldMeta m;
    m.energy_kev = energy_kev;
    m.z_nm = z_nm;
    return m;
}

CsvTable quantities()
{
    return CsvTable{{"quantity", "value"}, {}};
}

void add_quantity(CsvTable& t, std::string const& name, double v)
{
    t.add(std::vector<std::string>{name, format_double(v)});
}

CsvTable spectrum_table(OamSpectrum const& s)
{
    CsvTable t{{"l", "weight"}, {}};
    for (auto const& [l, w] : s.weights)
    {
        t.add(std::vector<double>{double(l), w});
    }
    return t;
}

void run_modes(json const& p, Output& out)
{
    auto state = electron_state(p["energy_kev"].get<double>());
    auto grid = Grid::square(p["grid_n"].get<int>(), p["pitch_nm"].get<double>());
    int l = p["l"].get<int>();
    auto family = p["family"].get<std::string>();
    ModeSpec spec;
    if (family == "bessel")
    {
        spec = ModeSpec::bessel(p["kappa_per_nm"].get<double>(), l);
    }
    else if (family == "laguerre_gauss")
    {
        spec = ModeSpec::laguerre_gauss(p["waist_nm"].get<double>(), l, p["n"].get<int>());
    }
    else if (family == "aperture_limited")
    {
        spec = ModeSpec::aperture_limited(p["kappa_max_per_nm"].get<double>(), l);
    }
    else
    {
        fail(ErrorKind::validation,
             "key 'family': expected bessel, laguerre_gauss or aperture_limited");
    }
    double z = p["z_nm"].get<double>();
    auto field = synthesize(spec, grid, state, z);
    auto obs = observables(field, spec);

    out.field("field", to_field_file(field), meta_at(state.kinetic_energy, z));
    auto t = quantities();
    add_quantity(t, "lz_hbar", obs.canonical_oam);
    add_quantity(t, "lz_circulation_hbar", obs.circulation_oam);
    add_quantity(t, "intrinsic_oam_hbar", obs.intrinsic_oam);
    add_quantity(t, "extrinsic_oam_hbar", obs.extrinsic_oam);
    add_quantity(t, "centroid_x_nm", obs.centroid.x);
    add_quantity(t, "centroid_y_nm", obs.centroid.y);
    add_quantity(t, "magnetic_moment_bohr", obs.magnetic_moment);
    add_quantity(t, "probability", field.probability());
    if (obs.gouy_phase)
    {
        add_quantity(t, "gouy_phase_rad", *obs.gouy_phase);
    }
    out.csv("observables.csv", t);
    out.csv("oam_spectrum.csv", spectrum_table(azimuthal_decompose(field)));
}

void run_optics(json const& p, Output& out)
{
    auto state = electron_state(p["energy_kev"].get<double>());
    auto grid = Grid::square(p["grid_n"].get<int>(), p["pitch_nm"].get<double>());
    auto input = synthesize(
        ModeSpec::laguerre_gauss(p["illumination_waist_nm"].get<double>(), 0), grid, state);
    double period = p["period_nm"].get<double>();
    BinaryForkHologram h{p["l0"].get<int>(), period, p["duty_ratio"].get<double>()};
    int steps = p["phase_steps"].get<int>();
    int max_order = p["max_order"].get<int>();
    if (2 * max_order + 2 > steps)
    {
        fail(ErrorKind::validation, "key 'phase_steps': too few for max_order");
    }

    auto transmitted = apply(h, input);
    double total = transmitted.probability();
    auto far = far_field(transmitted);
    out.field("far_field", to_field_file(far), meta_at(state.kinetic_energy, 0));

    auto orders = diffraction_orders(input, h, steps);
    CsvTable t{{"order", "charge", "power_fraction"}, {}};
    for (int n = -max_order; n <= max_order; ++n)
    {
        auto c = orders[n + steps / 2 - 1];
        double power = c.probability() / total;
        if (power < 1e-4)
        {
            continue;
        }
        for (int iy = 0; iy < grid.ny; ++iy)
        {
            for (int ix = 0; ix < grid.nx; ++ix)
            {
                c(ix, iy) *= std::polar(1.0, n * 2 * pi / period * grid.x(ix));
            }
        }
        auto s = azimuthal_decompose(far_field(c));
        t.add(std::vector<double>{double(n), double(s.dominant()), power});
    }
    out.csv("orders.csv", t);
}

void run_metrology(json const& p, Output& out)
{
    auto state = electron_state(p["energy_kev"].get<double>());
    auto grid = Grid::square(p["grid_n"].get<int>(), p["pitch_nm"].get<double>());
    int l = p["l"].get<int>();
    double waist = p["waist_nm"].get<double>();
    auto field = synthesize(ModeSpec::laguerre_gauss(waist, l), grid, state);
    out.field("probe", to_field_file(field), meta_at(state.kinetic_energy, 0));

    CsvTable t{{"method", "charge", "status"}, {}};
    auto record = [&](std::string const& method, std::function<std::pair<int, std::string>()> f) {
        try
        {
            auto [charge, status] = f();
            t.add(std::vector<std::string>{method, std::to_string(charge), status});
        }
        catch (Error const& e)
        {
            t.add(std::vector<std::string>{method, "", to_cstring(e.kind())});
        }
    };
    record("fork", [&] {
        auto r = fork_readout(field, BinaryForkHologram{1, p["fork_period_nm"].get<double>()});
        return std::pair{r.charge, std::string(r.reduced_confidence ? "reduced_confidence" : "ok")};
    });
    record("triangle", [&] {
        auto r = triangular_aperture_count(field, {p["triangle_side_nm"].get<double>(), 0});
        return std::pair{r.readout.charge(), std::string("ok")};
    });
    record("knife_edge", [&] {
        auto r = knife_edge_shift(field, p["knife_azimuth_rad"].get<double>());
        int sign = (r.perpendicular > 0) - (r.perpendicular < 0);
        return std::pair{sign, std::string("sign_only")};
    });
    record("astigmatic", [&] {
        AstigmaticLens lens{matched_astigmatism(waist), pi / 4};
        return std::pair{astigmatic_lobes(field, lens).readout.charge(), std::string("ok")};
    });
    record("mpi", [&] {
        auto vortex = apply(SpiralPhasePlate{double(l)},
                            synthesize(ModeSpec::laguerre_gauss(p["mpi_waist_nm"].get<double>(), 0),
                                       grid, state));
        MpiLayout layout{p["pinholes"].get<int>(),
                         p["pinhole_radius_nm"].get<double>(),
                         p["pinhole_diameter_nm"].get<double>()};
        auto s = mpi_spectrum(vortex, layout);
        return std::pair{s.dominant(), "modulo " + std::to_string(s.modulus)};
    });
    out.csv("readouts.csv", t);
}

CsvTable trajectory_table(std::vector<SemiclassicalState> const& traj)
{
    CsvTable t{{"t_s", "x_nm", "y_nm", "z_nm", "px", "py", "pz", "Lx", "Ly", "Lz"}, {}};
    for (auto const& s : traj)
    {
        t.add(std::vector<double>{s.t, s.r[0], s.r[1], s.r[2], s.p[0], s.p[1],
                                  s.p[2], s.L[0], s.L[1], s.L[2]});
    }
    return t;
}

void run_landau(json const& p, Output& out)
{
    auto state = electron_state(p["energy_kev"].get<double>());
    auto grid = Grid::square(p["grid_n"].get<int>(), p["pitch_nm"].get<double>());
    double b = p["field_t"].get<double>();
    auto env = magnetic_environment(b, state);
    LandauSpec spec{p["l"].get<int>(), p["n"].get<int>(), env};
    auto field = landau_field(spec, grid);
    out.field("landau", to_field_file(field), meta_at(state.kinetic_energy, 0));

    auto k = kinetic_oam(spec, grid);
    auto e = landau_energies(spec);
    auto t = quantities();
    add_quantity(t, "landau_index", e.landau_index);
    add_quantity(t, "kinetic_oam_hbar", k.closed_form);
    add_quantity(t, "kinetic_oam_grid_hbar", k.grid);
    add_quantity(t, "magnetic_moment_bohr", k.magnetic_moment);
    add_quantity(t, "zeeman_kev", e.zeeman);
    add_quantity(t, "gouy_kev", e.gouy);
    add_quantity(t, "transverse_kev", e.transverse);
    add_quantity(t, "magnetic_length_nm", env.magnetic_length);
    add_quantity(t, "larmor_length_nm", env.larmor_length);
    add_quantity(t, "larmor_rad_per_s", env.larmor);
    out.csv("landau.csv", t);

    double tilt = p["tilt_rad"].get<double>();
    double kk = state.wavenumber;
    SemiclassicalState s0;
    s0.p = {kk * std::sin(tilt), 0, kk * std::cos(tilt)};
    s0.L = {spec.l * std::sin(tilt), 0, spec.l * std::cos(tilt)};
    UniformFields f;
    f.magnetic = {0, 0, b};
    double period = 2 * pi / env.cyclotron;
    int periods = p["trajectory_periods"].get<int>();
    auto traj = integrate_semiclassical(s0, f, periods * period, period / 400, 200);
    out.csv("trajectory.csv", trajectory_table(traj));
}

void run_dirac(json const& p, Output& out)
{
    auto state = electron_state(p["energy_kev"].get<double>());
    double kappa = p["kappa_over_k_ratio"].get<double>() * state.wavenumber;
    auto spec = DiracBesselSpec::make(state, kappa, p["l"].get<int>(),
                                      SpinBasis::fixed_spin, p["spin_hbar"].get<double>());
    auto grid = Grid::square(p["grid_n"].get<int>(), pi / (6 * kappa));
    auto field = dirac_bessel(spec, grid);
    FieldFile f{grid, {}};
    for (auto const& c : field.components)
    {
        f.components.push_back(c);
    }
    out.field("spinor", f, meta_at(state.kinetic_energy, 0));

    auto e = sam_oam_expectations(spec, grid);
    auto t = quantities();
    add_quantity(t, "soi_lambda", soi_parameter(spec));
    add_quantity(t, "lz_hbar", e.orbital);
    add_quantity(t, "sz_hbar", e.spin);
    add_quantity(t, "lz_grid_hbar", e.grid_orbital);
    add_quantity(t, "sz_grid_hbar", e.grid_spin);
    add_quantity(t, "jz_hbar", spec.total_angular_momentum());
    add_quantity(t, "magnetic_moment_bohr", e.magnetic_moment);
    out.csv("dirac.csv", t);
}

void run_scattering(json const& p, Output& out)
{
    CollisionSetup s;
    s.beam1 = {p["energy1_kev"].get<double>(), p["kappa1_kev"].get<double>(),
               p["width1_kev"].get<double>(), p["jz1_hbar"].get<double>(), +1};
    s.beam2 = {p["energy2_kev"].get<double>(), p["kappa2_kev"].get<double>(),
               p["width2_kev"].get<double>(), p["jz2_hbar"].get<double>(), -1};
    s.k1_out_perp = p["k1_out_perp_kev"].get<double>();
    s.screening = p["screening_kev"].get<double>();
    s.alpha = p["coulomb_alpha_ratio"].get<double>();
    s.phase0 = p["phase0_rad"].get<double>();
    s.smearing_nodes = p["smearing_nodes"].get<int>();
    auto d = vortex_vortex_distribution(s, p["half_extent_kev"].get<double>(),
                                        p["grid_n"].get<int>());
    CsvTable t{{"kx_kev", "ky_kev", "dsigma"}, {}};
    for (std::size_t iy = 0; iy < d.ky.size(); ++iy)
    {
        for (std::size_t ix = 0; ix < d.kx.size(); ++ix)
        {
            t.add(std::vector<double>{d.kx[ix], d.ky[iy], d(ix, iy)});
        }
    }
    out.csv("distribution.csv", t);
    auto q = quantities();
    add_quantity(q, "updown_asymmetry", updown_asymmetry(d, s.k1_out_azimuth));
    add_quantity(q, "singular_endpoints", d.singular_endpoints ? 1 : 0);
    out.csv("summary.csv", q);
}

void run_radiation(json const& p, Output& out)
{
    auto state = electron_state(p["energy_kev"].get<double>());
    CherenkovConfig cfg{constant_index(p["refractive_index_ratio"].get<double>()),
                        state, p["theta0_rad"].get<double>()};
    double omega = p["omega_rad_per_s"].get<double>();
    VortexSuperposition sup{p["jz1_hbar"].get<double>(), p["jz2_hbar"].get<double>(),
                            {1, 0}, {p["amplitude2_ratio"].get<double>(), 0}};
    int cells = p["theta_cells"].get<int>();
    std::vector<double> thetas;
    for (int i = 0; i < cells; ++i)
    {
        thetas.push_back((i + 0.5) * (pi / 2) / cells);
    }
    auto m = cherenkov_vortex_map(cfg, sup, omega, thetas, p["phi_cells"].get<int>(),
                                  p["cone_nodes"].get<int>());
    CsvTable t{{"theta_rad", "phi_rad", "intensity"}, {}};
    for (std::size_t i = 0; i < m.outer.size(); ++i)
    {
        for (std::size_t j = 0; j < m.inner.size(); ++j)
        {
            t.add(std::vector<double>{m.outer[i], m.inner[j], m(i, j)});
        }
    }
    out.csv("cherenkov_map.csv", t);

    auto a = cherenkov_angle(cfg, omega);
    TransitionConfig tr{state, p["l"].get<int>(), p["spin_hbar"].get<double>(),
                        p["photon_energy_ev"].get<double>() * units::ev,
                        p["incidence_rad"].get<double>()};
    auto q = quantities();
    add_quantity(q, "emits", a.emits ? 1 : 0);
    add_quantity(q, "theta_ch_rad", a.theta);
    add_quantity(q, "cutoff_rad_per_s", cherenkov_cutoff(cfg));
    add_quantity(q, "spectral_density_per_rad_per_s", cherenkov_spectral_density(cfg, omega));
    add_quantity(q, "vortex_integral_per_rad_per_s", cherenkov_vortex_integral(cfg, omega));
    add_quantity(q, "backward_fraction", cherenkov_backward_fraction(cfg, omega));
    add_quantity(q, "transition_epsilon", transition_epsilon(tr));
    add_quantity(q, "transition_asymmetry_unit_g", transition_asymmetry(tr, unit_geometry()));
    out.csv("radiation.csv", q);
}
}  // namespace

//---------------------------------------------------------------------------//
std::vector<std::string> const& scenario_kinds()
{
    static std::vector<std::string> const kinds = [] {
        std::vector<std::string> k;
        for (auto const& [name, table] : tables())
        {
            k.push_back(name);
        }
        return k;
    }();
    return kinds;
}

std::vector<ParamSpec> const& scenario_parameters(std::string const& kind)
{
    auto it = tables().find(kind);
    if (it == tables().end())
    {
        fail(ErrorKind::validation, "unknown scenario kind '" + kind + "'");
    }
    return it->second;
}

bool has_unit_suffix(std::string const& key)
{
    return std::any_of(unit_suffixes.begin(), unit_suffixes.end(), [&](auto const& s) {
        return key.size() > s.size() && key.ends_with(s);
    });
}

ScenarioConfig parse_config(std::string const& text, std::string const& expected_kind)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (json::parse_error const& e)
    {
        fail(ErrorKind::validation, std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object())
    {
        fail(ErrorKind::validation, "config must be a JSON object");
    }
    ScenarioConfig c;
    for (auto const& [key, value] : root.items())
    {
        if (key == "scenario")
        {
            if (!value.is_string())
            {
                reject(text, key, "expects a string");
            }
            c.kind = value.get<std::string>();
        }
        else if (key == "output_dir")
        {
            if (!value.is_string())
            {
                reject(text, key, "expects a string");
            }
            c.output_dir = value.get<std::string>();
        }
        else if (key == "seed")
        {
            if (!value.is_number_unsigned())
            {
                reject(text, key, "expects a non-negative integer");
            }
            c.seed = value.get<std::uint64_t>();
        }
        else if (key != "parameters")
        {
            reject(text, key, "unknown key");
        }
    }
    if (c.kind.empty())
    {
        c.kind = expected_kind;
    }
    if (c.kind.empty())
    {
        fail(ErrorKind::validation, "missing key 'scenario'");
    }
    if (!expected_kind.empty() && c.kind != expected_kind)
    {
        reject(text, "scenario", "config is for '" + c.kind + "', not '" + expected_kind + "'");
    }
    auto const& table = scenario_parameters(c.kind);
    json given = root.value("parameters", json::object());
    if (!given.is_object())
    {
        reject(text, "parameters", "expects an object");
    }
    for (auto const& spec : table)
    {
        c.parameters[spec.key] = spec.fallback;
    }
    for (auto const& [key, value] : given.items())
    {
        auto it = std::find_if(table.begin(), table.end(),
                               [&](auto const& s) { return s.key == key; });
        if (it == table.end())
        {
            for (auto const& s : table)
            {
                if (s.kind == Kind::number && s.key.starts_with(key + "_"))
                {
                    reject(text, key, "missing unit suffix (expected '" + s.key + "')");
                }
            }
            reject(text, key, "unknown key for scenario " + c.kind);
        }
        bool ok = (it->kind == Kind::number && value.is_number())
                  || (it->kind == Kind::integer && value.is_number_integer())
                  || (it->kind == Kind::text && value.is_string());
        if (!ok)
        {
            char const* want = it->kind == Kind::number    ? "a number"
                               : it->kind == Kind::integer ? "an integer"
                                                           : "a string";
            reject(text, key, std::string("expects ") + want);
        }
        c.parameters[key] = value;
    }
    return c;
}

ScenarioConfig load_config(fs::path const& path, std::string const& expected_kind)
{
    return parse_config(read_text(path), expected_kind);
}

RunResult run_scenario(ScenarioConfig const& config)
{
    static std::map<std::string, std::function<void(json const&, Output&)>> const runners{
        {"mode-synthesis", run_modes},
        {"optics-pipeline", run_optics},
        {"metrology", run_metrology},
        {"landau", run_landau},
        {"dirac", run_dirac},
        {"scattering", run_scattering},
        {"radiation", run_radiation},
    };
    scenario_parameters(config.kind);
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec)
    {
        fail(ErrorKind::io, "cannot create " + config.output_dir.string());
    }
    Output out{config, {}};
    runners.at(config.kind)(config.parameters, out);
    RunResult r;
    r.artifacts = out.artifacts;
    r.manifest = write_manifest(config.output_dir, out.artifacts);
    return r;
}

//---------------------------------------------------------------------------//
std::vector<VerifyRow> verify_oracles()
{
    std::vector<VerifyRow> rows;
    auto row = [&](std::string name, double value, double ref, double tol) {
        double err = ref == 0 ? std::abs(value) : std::abs(value - ref) / std::abs(ref);
        rows.push_back({std::move(name), value, ref, tol, err <= tol});
    };

    auto s200 = electron_state(200);
    {
        auto grid = Grid::square(256, 1.0);
        auto f = synthesize(ModeSpec::bessel(0.3, 3), grid, s200);
        auto o = observables(f);
        row("OAM operator vs current circulation (Bessel l=3)",
            o.circulation_oam, o.canonical_oam, 1e-6);
    }
    {
        auto env = magnetic_environment(1.0, s200);
        auto k = kinetic_oam(LandauSpec{2, 1, env}, Grid::square(256, 4.0));
        row("kinetic OAM grid vs closed form (l=2, n=1, 1 T)", k.grid, k.closed_form, 5e-3);
    }
    {
        auto fast = electron_state_from_momentum(2.4 * units::electron_mass);
        double kappa = 0.7 * fast.wavenumber;
        auto spec = DiracBesselSpec::make(fast, kappa, 1, SpinBasis::fixed_spin, 0.5);
        auto e = sam_oam_expectations(spec, Grid::square(256, pi / (6 * kappa)));
        row("Dirac <L_z> grid vs closed form (l=1, s=1/2)", e.grid_orbital, e.orbital, 5e-3);
        row("Dirac <S_z> grid vs closed form (l=1, s=1/2)", e.grid_spin, e.spin, 5e-3);
    }
    {
        auto slow = electron_state_from_momentum(4.0 / 3 * units::electron_mass);
        CherenkovConfig cfg{constant_index(1.5), slow, 0.3};
        row("Cherenkov vortex rate vs plane-wave rate",
            cherenkov_vortex_integral(cfg, 0), cherenkov_spectral_density(cfg, 0), 5e-3);
        double dth = 0.005;
        std::vector<double> thetas;
        for (double th = 0.2; th < 1.0; th += dth)
        {
            thetas.push_back(th);
        }
        auto m = cherenkov_vortex_map(cfg, {}, 0, thetas, 12, 4000);
        double total = 0;
        for (std::size_t i = 0; i < thetas.size(); ++i)
        {
            for (int j = 0; j < 12; ++j)
            {
                total += m(i, j) * std::sin(thetas[i]) * dth * 2 * pi / 12;
            }
        }
        row("Cherenkov cone quadrature vs closed form", total,
            cherenkov_vortex_integral(cfg, 0), 5e-3);
    }
    {
        std::vector<Vec3> qs{{3, 1, 0.5}, {-7, 2, 1}, {0.1, -9, 4}};
        row("Friedel's law for a screened Coulomb potential",
            friedel_violation(ScreenedCoulomb{26, 0.05}, qs), 0, 1e-13);
        row("transition interference over the full sphere",
            transition_full_sphere(1.0, unit_geometry()), 0, 1e-12);
    }
    {
        auto m = monopole_oracle(1.0, s200);
        row("monopole azimuthal momentum gain", m.p_phi_gain, m.expected, 1e-2);
    }
    return rows;
}

//---------------------------------------------------------------------------//
}  // namespace evx
