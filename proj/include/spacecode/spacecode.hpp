#pragma once

// spacecode: near-optimal prefix-free codes whose designated space mark may
// appear only at codeword ends, the optimal one-to-one codes they are built
// from, the entropy bounds that sandwich their average lengths, and an
// exhaustive oracle that certifies the construction's optimality gap.

#include "spacecode/bench.hpp"
#include "spacecode/bounds.hpp"
#include "spacecode/errors.hpp"
#include "spacecode/io.hpp"
#include "spacecode/one_to_one.hpp"
#include "spacecode/oracle.hpp"
#include "spacecode/radix.hpp"
#include "spacecode/source_model.hpp"
#include "spacecode/space_code.hpp"
