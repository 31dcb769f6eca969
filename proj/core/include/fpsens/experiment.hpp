// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! \file fpsens/experiment.hpp
//! End-to-end runs: forward solve, functionals, adjoint kernels, FD checks.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fpsens/fd_oracle.hpp"
#include "fpsens/functionals.hpp"
#include "fpsens/run_config.hpp"
#include "fpsens/sensitivity.hpp"

namespace fpsens
{
struct RunResult
{
    std::filesystem::path output_dir;
    std::vector<std::string> warnings;
    std::size_t n_energy_nodes = 0;
    FunctionalReport report;
    std::optional<RelativeSensitivity> rel_s;
    std::optional<RelativeSensitivity> rel_t;
    std::optional<FdReport> fd_s;
    std::optional<FdReport> fd_t;
};

/*!
 * Run one configuration and write its artifacts into config.output_dir.
 *
 * Always: dose_profile.csv, pdd.csv. With sensitivities: kernels.csv and
 * summary.json. With FD verification additionally fd_report.csv.
 */
RunResult run(RunConfig const& config, unsigned threads = 0);

struct Table1Row
{
    double beam_energy_mev = 0;
    double x_norm = 0;
    double sup_norm_rel_t = 0;
    double sup_norm_rel_s = 0;
};

/*!
 * Sweep gaussian beam energies and write table1.csv.
 *
 * Each energy runs concurrently in its own subdirectory `beam_<E>MeV` of the
 * base output directory. If any run fails the rows that did finish are written
 * to table1.partial.csv and the first error is rethrown.
 */
std::vector<Table1Row> table1(RunConfig const& base,
                              std::vector<double> const& energies
                              = {6, 9, 12, 16},
                              unsigned threads = 0);

void write_table1_csv(std::vector<Table1Row> const& rows,
                      std::filesystem::path const& path);

}  // namespace fpsens
