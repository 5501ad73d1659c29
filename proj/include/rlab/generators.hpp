#pragma once

#include <cstdint>
#include <random>

#include "rlab/grid2d.hpp"
#include "rlab/halfspace.hpp"
#include "rlab/lattice.hpp"
#include "rlab/step1d.hpp"

namespace rlab {

using Rng = std::mt19937_64;

// Generator for case `index` of a run seeded with `seed`; cases are
// independent of each other and of evaluation order.
inline Rng case_rng(std::uint64_t seed, std::uint64_t index) { return Rng(seed + index); }

// Up to max_pieces pieces with breakpoints on the 1/64 grid of [-8, 8] and
// values on the 1/64 grid of (0, 10]; about one interior piece in four is a
// zero gap. Dyadic data keeps every polarization and integral exact.
StepFunction random_step_function(Rng& rng, int max_pieces = 20);

enum class OffsetRange { Any, NonNegative, Positive };

// Random sign; offset on the 1/64 grid of [-2, 2], [0, 2] or (0, 2].
Halfspace random_halfspace_1d(Rng& rng, OffsetRange range);

// Uniform angle in [0, 2 pi) and offset in (0, rho].
Halfspace random_halfspace_2d(Rng& rng, double rho);

// Distinct sites drawn from [-site_radius, site_radius], integer values in
// [1, max_value].
LatticeFunction random_lattice_function(Rng& rng, std::size_t max_support = 50, int max_value = 9,
                                        Site site_radius = 60);

// Nonnegative values on the 1/16 grid of [0, 8], about half the cells zero.
GridFunction random_grid_function(Rng& rng, int half_width, double cell_size);

// Any direction with |s| <= limit (half-integers for X and Y).
LatticeHyperplane random_lattice_hyperplane(Rng& rng, int limit);

}  // namespace rlab
