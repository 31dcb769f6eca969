// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/moment_field.hpp"

#include <fstream>

#include <fmt/format.h>

#include "fpsens/error.hpp"

namespace fpsens
{
char const* to_string(FieldKind kind) noexcept
{
    switch (kind)
    {
        case FieldKind::forward: return "forward";
        case FieldKind::adjoint: return "adjoint";
        case FieldKind::source: return "source";
    }
    return "unknown";
}

MomentField::MomentField(FieldKind kind, EnergyGrid energy, SlabGrid slab,
                         int order)
    : kind_(kind)
    , energy_(std::move(energy))
    , slab_(std::move(slab))
    , order_(order)
{
    if (order < 0)
        fail(ErrorCode::invalid_argument,
             fmt::format("moment order must be non-negative, got {}", order));
    data_.assign(energy_.size() * slab_.size() * this->moments(), 0.0);
}

bool MomentField::same_layout(MomentField const& other) const noexcept
{
    return energy_ == other.energy_ && slab_ == other.slab_
           && order_ == other.order_;
}

void write_field_csv(MomentField const& field, std::filesystem::path const& path)
{
    std::ofstream out(path);
    if (!out)
        fail(ErrorCode::io_error,
             fmt::format("cannot write '{}'", path.string()));
    out << "j,i,k,value\n";
    for (std::size_t j = 0; j < field.energy().size(); ++j)
        for (std::size_t i = 0; i < field.slab().size(); ++i)
            for (std::size_t k = 0; k < field.moments(); ++k)
                out << fmt::format("{},{},{},{:.17g}\n", j, i, k,
                                   field(j, i, k));
}

}  // namespace fpsens
