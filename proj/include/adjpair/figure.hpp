#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "adjpair/onedim.hpp"

namespace adjpair {

/// SVG scatter of the atoms z_1..z_count in ℂ (count ≥ 2; filled where
/// ξ_k ≠ 0) with the fitted line x - ty = s, or a "canonical only" note.
std::string render_figure(const DiscreteModel& model, const Classification& c, std::size_t count = 24);

/// Writes render_figure to path. Throws IoError.
void emit_figure(const DiscreteModel& model, const Classification& c, const std::filesystem::path& path,
                 std::size_t count = 24);

}  // namespace adjpair
