#include "lsr/generators.hpp"

#include <random>

#include "lsr/errors.hpp"

namespace lsr {

namespace {

// Rejection-sampled bounded draw; avoids the library-dependent behaviour of
// std::uniform_int_distribution so seeds reproduce across toolchains.
uint64_t uniform_below(std::mt19937_64& rng, uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

std::string qsym(int i) { return "q" + std::to_string(i); }

}  // namespace

InstructionList gen_random(int m, int plane_size, uint64_t seed) {
    if (plane_size < 2) throw DomainError("gen_random needs plane_size >= 2");
    if (m < 0) throw DomainError("m must be >= 0");
    const uint64_t n_qubits = uint64_t(plane_size) * plane_size;
    std::mt19937_64 rng(seed);
    InstructionList out;
    for (int i = 0; i < m; ++i) {
        uint64_t a = uniform_below(rng, n_qubits);
        uint64_t b = uniform_below(rng, n_qubits - 1);
        if (b >= a) ++b;
        Basis basis = uniform_below(rng, 2) == 0 ? Basis::XX : Basis::ZZ;
        out.push(Instruction(qsym(int(a) + 1), qsym(int(b) + 1), basis));
    }
    return out;
}

InstructionList gen_stair(int m) {
    if (m < 1) throw DomainError("gen_stair needs m >= 1");
    InstructionList out;
    for (int i = 0; i < m; ++i) out.push(Instruction(qsym(i + 1), qsym(i + 2), Basis::ZZ));
    return out;
}

InstructionList gen_hub(int m) {
    if (m < 1) throw DomainError("gen_hub needs m >= 1");
    InstructionList out;
    for (int i = 0; i < m; ++i) out.push(Instruction(qsym(1), qsym(i + 2), Basis::ZZ));
    return out;
}

}  // namespace lsr
