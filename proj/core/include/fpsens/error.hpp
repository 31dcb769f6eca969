// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpsens
{
//! Machine-readable failure categories shared by every module.
enum class ErrorCode
{
    invalid_argument,
    io_error,
    parse_error,
    non_monotone_grid,
    invalid_material,
    out_of_range,
    off_grid_beam,
    dimension_mismatch,
    cfl_violation,
    non_finite,
    degenerate_profile,
    resolution_failure,
    invalid_config,
    empty_batch,
};

std::string_view to_string(ErrorCode code) noexcept;

//! Exception carrying an ErrorCode alongside the human-readable message.
class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, std::string const& what);

}  // namespace fpsens
