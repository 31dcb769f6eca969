// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! \file fpsens/fd_oracle.hpp
//! Central finite differences of x-bar under nodal coefficient perturbations.
#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "fpsens/fv_solver.hpp"
#include "fpsens/material.hpp"
#include "fpsens/moment_field.hpp"
#include "fpsens/pn_system.hpp"
#include "fpsens/sensitivity.hpp"
#include "fpsens/slab.hpp"

namespace fpsens
{
//! Everything a forward solve needs
struct Problem
{
    SlabGrid slab;
    MaterialTable material;
    BeamSpec beam;
    PnConfig pn;
    SolverOptions options;

    EnergyGrid const& grid() const noexcept { return material.grid(); }
};

//! x-bar from one forward solve of \c problem
double solve_average_depth(Problem const& problem);

struct FdReport
{
    Coefficient parameter = Coefficient::stopping_power;
    double h_rel = 0;
    std::vector<std::size_t> nodes;
    std::vector<double> energies;
    std::vector<double> fd_values;
    std::vector<double> adjoint_values;
    double rel_error_linf = 0;
};

class FdOracle
{
  public:
    explicit FdOracle(Problem base);

    Problem const& problem() const noexcept { return base_; }
    MomentField const& base_field() const noexcept { return field_; }

    /*!
     * Kernel density at \c node by central differences.
     *
     * The nodal value is shifted by +/- h with h = h_rel |coefficient| (or
     * h_rel times the largest value when the node is zero); the result is
     * (x+ - x-) / (2 h w_j).
     */
    double kernel(Coefficient which, std::size_t node, double h_rel = 1e-3) const;

    //! Evaluate \c nodes concurrently and compare against \c adjoint
    FdReport verify(SensitivityKernel const& adjoint,
                    std::vector<std::size_t> const& nodes,
                    double h_rel = 1e-3,
                    unsigned threads = 0) const;

  private:
    Problem base_;
    MomentField field_;
    double peak_ = 0;

    bool populated(Coefficient which, std::size_t node) const;
};

//! Every \c stride-th node plus the node nearest \c center
std::vector<std::size_t>
fd_nodes(EnergyGrid const& grid, std::size_t stride, double center);

//! max |fd - adj| / max(|adj|, 1e-3 max|adj|) over the listed nodes
double relative_error_linf(std::vector<double> const& fd,
                           std::vector<double> const& adjoint_at_nodes,
                           std::vector<double> const& adjoint_all);

//! CSV `energy_mev,fd,adjoint,abs_err` followed by a `#` summary line
void write_fd_csv(FdReport const& report, std::filesystem::path const& path);
//! Several reports in one file, each block followed by its summary line
void write_fd_csv(std::vector<FdReport> const& reports,
                  std::filesystem::path const& path);

}  // namespace fpsens
