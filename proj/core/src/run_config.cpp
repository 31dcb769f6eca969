// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "fpsens/error.hpp"
#include "fpsens/fv_solver.hpp"

namespace fpsens
{
RunMode parse_run_mode(std::string_view text)
{
    if (text == "forward" || text == "forward_only")
        return RunMode::forward_only;
    if (text == "sens" || text == "with_sensitivities")
        return RunMode::with_sensitivities;
    if (text == "verify" || text == "with_fd_verify")
        return RunMode::with_fd_verify;
    fail(ErrorCode::invalid_config,
         fmt::format("unknown run mode '{}' (expected forward|sens|verify)",
                     text));
}

char const* to_string(RunMode mode) noexcept
{
    switch (mode)
    {
        case RunMode::forward_only: return "forward";
        case RunMode::with_sensitivities: return "sens";
        case RunMode::with_fd_verify: return "verify";
    }
    return "unknown";
}

namespace
{
std::string_view trim(std::string_view s)
{
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Line
{
    std::size_t number;
    std::string key;
    std::string value;
};

double to_double(Line const& line)
{
    try
    {
        std::size_t used = 0;
        double v = std::stod(line.value, &used);
        if (used == line.value.size())
            return v;
    }
    catch (std::exception const&)
    {
    }
    fail(ErrorCode::parse_error,
         fmt::format("line {}: {} = '{}' is not a number", line.number,
                     line.key, line.value));
}

std::size_t to_count(Line const& line)
{
    double v = to_double(line);
    if (v < 0 || v != std::floor(v))
        fail(ErrorCode::parse_error,
             fmt::format("line {}: {} = '{}' is not a non-negative integer",
                         line.number, line.key, line.value));
    return static_cast<std::size_t>(v);
}

bool to_bool(Line const& line)
{
    auto const& v = line.value;
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    fail(ErrorCode::parse_error,
         fmt::format("line {}: {} = '{}' is not a boolean", line.number,
                     line.key, v));
}

BeamKind to_beam_kind(Line const& line)
{
    if (line.value == "mono")
        return BeamKind::mono;
    if (line.value == "gaussian")
        return BeamKind::gaussian;
    fail(ErrorCode::parse_error,
         fmt::format("line {}: beam.kind must be mono or gaussian, got '{}'",
                     line.number, line.value));
}

MaterialTable make_material(std::string const& name, EnergyGrid const& grid)
{
    if (name == "surrogate")
        return water_surrogate(grid);
    return load_material(name, grid);
}

// Steps per MeV-half so that round beam energies land on nodes
std::size_t step_unit(double cutoff)
{
    double halves = cutoff / 0.5;
    double rounded = std::round(halves);
    if (rounded >= 1 && std::abs(halves - rounded) < 1e-9)
        return static_cast<std::size_t>(rounded);
    return 1;
}
}  // namespace

//---------------------------------------------------------------------------//
RunConfig parse_config(std::string_view text)
{
    RunConfig config;
    std::vector<std::string> unknown;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw))
    {
        ++number;
        std::string_view content = raw;
        if (auto hash = content.find('#'); hash != std::string_view::npos)
            content = content.substr(0, hash);
        content = trim(content);
        if (content.empty())
            continue;
        auto eq = content.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorCode::parse_error,
                 fmt::format("line {}: expected 'key = value', got '{}'",
                             number, content));
        Line line{number, std::string(trim(content.substr(0, eq))),
                  std::string(trim(content.substr(eq + 1)))};
        auto const& k = line.key;

        if (k == "slab.length_cm")
            config.slab.length_cm = to_double(line);
        else if (k == "slab.n_cells")
            config.slab.n_cells = to_count(line);
        else if (k == "slab.density")
            config.slab.density = to_double(line);
        else if (k == "energy.cutoff_mev")
            config.energy.cutoff_mev = to_double(line);
        else if (k == "energy.n_nodes")
            config.energy.n_nodes = to_count(line);
        else if (k == "energy.cfl_factor")
            config.energy.cfl_factor = to_double(line);
        else if (k == "pn.order")
            config.pn_order = static_cast<int>(to_count(line));
        else if (k == "beam.kind")
            config.beam.kind = to_beam_kind(line);
        else if (k == "beam.center_mev")
            config.beam.center_mev = to_double(line);
        else if (k == "beam.amplitude")
            config.beam.amplitude = to_double(line);
        else if (k == "beam.sigma_energy_mev")
            config.beam.sigma_energy_mev = to_double(line);
        else if (k == "beam.sigma_mu")
            config.beam.sigma_mu = to_double(line);
        else if (k == "material")
            config.material = line.value;
        else if (k == "run.mode")
            config.mode = parse_run_mode(line.value);
        else if (k == "run.exact_normalization")
            config.exact_normalization = to_bool(line);
        else if (k == "fd.h_rel")
            config.fd.h_rel = to_double(line);
        else if (k == "fd.node_stride")
            config.fd.node_stride = to_count(line);
        else if (k == "output.dir")
            config.output_dir = line.value;
        else
            unknown.push_back(fmt::format("line {}: {}", number, k));
    }
    if (!unknown.empty())
    {
        std::string msg = "unknown configuration keys:";
        for (auto const& u : unknown)
            msg += "\n  " + u;
        fail(ErrorCode::parse_error, msg);
    }
    return config;
}

RunConfig load_config(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::io_error,
             fmt::format("cannot open config '{}'", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::vector<std::string> config_violations(RunConfig const& c)
{
    std::vector<std::string> v;
    if (c.slab.length_cm < 0 || !std::isfinite(c.slab.length_cm))
        v.push_back("slab.length_cm must be positive (or 0 for auto)");
    if (c.slab.n_cells < 1)
        v.push_back("slab.n_cells must be at least 1");
    if (!(c.slab.density > 0))
        v.push_back("slab.density must be positive");
    if (!(c.energy.cutoff_mev > 0))
        v.push_back("energy.cutoff_mev must be positive");
    if (c.energy.n_nodes == 1 || c.energy.n_nodes == 2)
        v.push_back("energy.n_nodes must be at least 3 (or 0 for auto)");
    if (!(c.energy.cfl_factor > 0 && c.energy.cfl_factor <= 1))
        v.push_back("energy.cfl_factor must lie in (0, 1]");
    if (c.pn_order < 1)
        v.push_back("pn.order must be at least 1");
    if (!(c.beam.center_mev > 0 && c.beam.center_mev < c.energy.cutoff_mev))
        v.push_back(fmt::format("beam.center_mev must lie in (0, {})",
                                c.energy.cutoff_mev));
    if (!std::isfinite(c.beam.amplitude))
        v.push_back("beam.amplitude must be finite");
    if (c.beam.kind == BeamKind::gaussian)
    {
        if (c.beam.sigma_energy_mev < 0)
            v.push_back("beam.sigma_energy_mev must be positive (or 0 for "
                        "auto)");
        if (!(c.beam.sigma_mu > 0))
            v.push_back("beam.sigma_mu must be positive");
    }
    if (c.material.empty())
        v.push_back("material must be 'surrogate' or a CSV path");
    if (!(c.fd.h_rel > 0 && c.fd.h_rel < 0.5))
        v.push_back("fd.h_rel must lie in (0, 0.5)");
    if (c.fd.node_stride < 1)
        v.push_back("fd.node_stride must be at least 1");
    return v;
}

void validate_config(RunConfig const& config)
{
    auto v = config_violations(config);
    if (v.empty())
        return;
    std::string msg = "invalid configuration:";
    for (auto const& item : v)
        msg += "\n  " + item;
    fail(ErrorCode::invalid_config, msg);
}

std::size_t auto_energy_nodes(SlabGrid const& slab,
                              std::string const& material,
                              PnConfig const& pn,
                              double cutoff_mev,
                              double cfl_factor)
{
    auto const a = flux_matrix(pn);
    auto const unit = step_unit(cutoff_mev);
    auto probe = make_material(material, EnergyGrid(cutoff_mev, 4001));
    double step = max_energy_step(slab, probe, a, cfl_factor);
    auto steps = static_cast<std::size_t>(std::ceil(cutoff_mev / step));
    steps = std::max<std::size_t>(2, (steps + unit - 1) / unit * unit);
    // The resampled table can dip below the probe's minimum between probe
    // nodes; grow until the actual grid is stable
    for (int attempt = 0; attempt < 64; ++attempt)
    {
        EnergyGrid grid(cutoff_mev, steps + 1);
        auto table = make_material(material, grid);
        if (grid.spacing() <= max_energy_step(slab, table, a, cfl_factor))
            return steps + 1;
        steps += unit;
    }
    fail(ErrorCode::cfl_violation,
         "could not find a CFL-stable energy grid for the material");
}

ResolvedRun resolve_run(RunConfig const& config)
{
    validate_config(config);
    ResolvedRun out{
        Problem{SlabGrid(1, 1), water_surrogate(EnergyGrid(1, 2)), {}, {}, {}},
        {}};

    double length = config.slab.length_cm;
    if (length == 0)
        length = config.beam.center_mev >= 16 ? 9.0 : 6.0;
    SlabGrid slab(length, config.slab.n_cells, config.slab.density);

    PnConfig pn{config.pn_order};
    for (auto& w : check_pn_config(pn))
        out.warnings.push_back(std::move(w));

    std::size_t n_nodes = config.energy.n_nodes;
    if (n_nodes == 0)
        n_nodes = auto_energy_nodes(slab, config.material, pn,
                                    config.energy.cutoff_mev,
                                    config.energy.cfl_factor);
    EnergyGrid grid(config.energy.cutoff_mev, n_nodes);

    BeamSpec beam;
    if (config.beam.kind == BeamKind::mono)
    {
        beam = BeamSpec::mono(config.beam.center_mev, config.beam.amplitude);
        double snapped = grid.node(grid.nearest_node(beam.center));
        if (std::abs(snapped - beam.center) > 1e-9 * grid.spacing())
        {
            out.warnings.push_back(fmt::format(
                "mono beam at {} MeV snapped to the nearest energy node {:.6g} "
                "MeV",
                beam.center, snapped));
        }
        beam.center = snapped;
    }
    else
    {
        beam = BeamSpec::gaussian(config.beam.center_mev, config.beam.amplitude);
        if (config.beam.sigma_energy_mev > 0)
            beam.sigma_energy = config.beam.sigma_energy_mev;
        beam.sigma_mu = config.beam.sigma_mu;
    }
    for (auto& w : beam_warnings(beam, grid))
        out.warnings.push_back(std::move(w));

    out.problem = Problem{std::move(slab), make_material(config.material, grid),
                          beam, pn,
                          SolverOptions{config.energy.cfl_factor}};
    return out;
}

}  // namespace fpsens
