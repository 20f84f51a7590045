#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cuntzwalk/spectral.hpp"
#include "cuntzwalk/walk_model.hpp"

namespace cuntz::fixtures {

/// Five vertices, labels l1 l2 l3. Vertex 0 splits evenly to 1 (l3) and 4
/// (l2); 1 ->l1 2 ->l1 3, 3 splits evenly to 2 (l2) and 1 (l1); 4 loops on l1.
LabeledWalk branching_walk();

/// branching_walk with the loop at 4 replaced by a two-cycle 4 <->l1 5.
LabeledWalk branching_walk_two_cycle();

/// Triangle 1, 2, 3 with l1: 1->2->3->1 and l2: 2->1, 3->2, 1->3, all of
/// modulus 1/sqrt2; the l1 amplitudes carry phases 1, i, -1.
LabeledWalk phased_triangle_walk();

/// The same triangle with every amplitude 1/sqrt2.
LabeledWalk uniform_triangle_walk();

/// Z/MZ with labels "+1" and "-1", both of amplitude 1/sqrt2.
LabeledWalk cyclic_walk(std::size_t m);

/// Z/2Z with the single generator 1: a two-cycle with amplitude 1.
LabeledWalk z2_swap_walk();

/// Z/2Z with generators {0, 1}: a fixed loop and a swap, amplitude 1/sqrt2.
LabeledWalk z2_full_walk();

/// Z/3Z Cayley walk with generators {1, 2}.
LabeledWalk z3_cayley_walk();

/// Named collection of every walk above (cyclic walks for M = 2, 3, 4, 6, 9).
std::vector<std::pair<std::string, LabeledWalk>> all_walks();

/// R = 4, B = {0, 2}, L = {0, 1}, unit weights: the quarter Cantor measure.
SpectralSystem quarter_cantor_system();

/// R = 2, B = {0, 1}, L = {0, 1}, unit weights: Lebesgue measure on [0, 1].
SpectralSystem unit_interval_system();

/// Addition table of Z/MZ.
std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t m);

}  // namespace cuntz::fixtures
