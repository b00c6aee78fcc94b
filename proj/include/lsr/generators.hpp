#pragma once

#include <cstdint>

#include "lsr/instruction.hpp"

namespace lsr {

/// m instructions over the plane's plane_size^2 qubits: operand pair uniform
/// without replacement, basis uniform in {XX, ZZ}. Reproducible per seed.
InstructionList gen_random(int m, int plane_size, uint64_t seed);

/// Stair program: instruction i measures ZZ on qubits q{i+1}, q{i+2}.
InstructionList gen_stair(int m);

/// Hub program: instruction i measures ZZ on qubits q1, q{i+2}.
InstructionList gen_hub(int m);

}  // namespace lsr
