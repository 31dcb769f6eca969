// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/error.hpp"

namespace fpsens
{
std::string_view to_string(ErrorCode code) noexcept
{
    switch (code)
    {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::io_error: return "io_error";
        case ErrorCode::parse_error: return "parse_error";
        case ErrorCode::non_monotone_grid: return "non_monotone_grid";
        case ErrorCode::invalid_material: return "invalid_material";
        case ErrorCode::out_of_range: return "out_of_range";
        case ErrorCode::off_grid_beam: return "off_grid_beam";
        case ErrorCode::dimension_mismatch: return "dimension_mismatch";
        case ErrorCode::cfl_violation: return "cfl_violation";
        case ErrorCode::non_finite: return "non_finite";
        case ErrorCode::degenerate_profile: return "degenerate_profile";
        case ErrorCode::resolution_failure: return "resolution_failure";
        case ErrorCode::invalid_config: return "invalid_config";
        case ErrorCode::empty_batch: return "empty_batch";
    }
    return "unknown";
}

void fail(ErrorCode code, std::string const& what)
{
    throw Error(code, what);
}

}  // namespace fpsens
