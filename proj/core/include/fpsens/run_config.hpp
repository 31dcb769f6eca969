// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! \file fpsens/run_config.hpp
//! Experiment configuration: flat `key = value` files and their defaults.
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fpsens/fd_oracle.hpp"
#include "fpsens/pn_system.hpp"

namespace fpsens
{
enum class RunMode
{
    forward_only,
    with_sensitivities,
    with_fd_verify,
};

//! Accepts forward|sens|verify and the long names
RunMode parse_run_mode(std::string_view text);
char const* to_string(RunMode mode) noexcept;

/*!
 * User-facing run description.
 *
 * Zero-valued "auto" fields are filled in by resolve_run: the slab length
 * becomes 6 cm (9 cm for beams at 16 MeV and above), the energy node count is
 * the smallest CFL-stable count that puts every half-MeV energy on a node, and
 * the gaussian energy spread becomes 10% FWHM of the beam center.
 */
struct RunConfig
{
    struct Slab
    {
        double length_cm = 0;  //!< 0 = auto
        std::size_t n_cells = 300;
        double density = 1;
    } slab;

    struct Energy
    {
        double cutoff_mev = 20.5;
        std::size_t n_nodes = 0;  //!< 0 = auto
        double cfl_factor = 0.9;
    } energy;

    int pn_order = 15;

    struct Beam
    {
        BeamKind kind = BeamKind::gaussian;
        double center_mev = 10;
        double amplitude = 1;
        double sigma_energy_mev = 0;  //!< 0 = auto
        double sigma_mu = 0.1;
    } beam;

    std::string material = "surrogate";  //!< "surrogate" or a CSV path
    RunMode mode = RunMode::with_sensitivities;
    bool exact_normalization = false;

    struct Fd
    {
        double h_rel = 1e-3;
        std::size_t node_stride = 5;
    } fd;

    std::filesystem::path output_dir = ".";
};

//! Parse `key = value` lines; `#` starts a comment
RunConfig parse_config(std::string_view text);
RunConfig load_config(std::filesystem::path const& path);

//! Every violated constraint, empty when valid
std::vector<std::string> config_violations(RunConfig const& config);
//! Throws invalid_config listing all violations
void validate_config(RunConfig const& config);

//! A RunConfig turned into solver inputs
struct ResolvedRun
{
    Problem problem;
    std::vector<std::string> warnings;
};

ResolvedRun resolve_run(RunConfig const& config);

//! Smallest node count that is CFL-stable for the material and slab
std::size_t auto_energy_nodes(SlabGrid const& slab,
                              std::string const& material,
                              PnConfig const& pn,
                              double cutoff_mev,
                              double cfl_factor);

}  // namespace fpsens
