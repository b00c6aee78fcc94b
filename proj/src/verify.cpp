#include "lsr/verify.hpp"

#include <algorithm>

#include "lsr/errors.hpp"

namespace lsr {

namespace {

// Tableau layout: data 0..m-1, references m..2m-1, ancillas 2m+.
int tab_qubit(const MeasProgram& prog, int prog_qubit) {
    return prog_qubit < prog.n_data ? prog_qubit : prog_qubit + prog.n_data;
}

Pauli step_pauli(const MeasProgram& prog, const MeasProgram::Step& st, int n_tab) {
    if (st.kind == MeasProgram::Step::Measure) {
        Pauli p(n_tab);
        for (const auto& [q, b] : st.ops) {
            Pauli s = Pauli::single(n_tab, tab_qubit(prog, q), b);
            p.mul(s);
        }
        return p;
    }
    return Pauli::single(n_tab, tab_qubit(prog, st.anc), st.destroy_basis);
}

std::vector<int> kept_qubits(int n_data) {
    std::vector<int> kept(2 * n_data);
    for (int i = 0; i < 2 * n_data; ++i) kept[i] = i;
    return kept;
}

}  // namespace

StabilizerState simulate_program(const MeasProgram& prog, uint64_t seed,
                                 const std::vector<int>* forced) {
    const int n_tab = 2 * prog.n_data + prog.n_anc;
    Tableau tab(n_tab);
    for (int i = 0; i < prog.n_data; ++i) tab.bell(i, prog.n_data + i);
    std::mt19937_64 rng(seed);

    StabilizerState st;
    st.n_data = prog.n_data;
    size_t forced_i = 0;
    for (const auto& step : prog.steps) {
        switch (step.kind) {
            case MeasProgram::Step::Init:
                if (step.init_plus) tab.h(tab_qubit(prog, step.anc));
                break;
            case MeasProgram::Step::Measure:
            case MeasProgram::Step::Destroy: {
                Pauli p = step_pauli(prog, step, n_tab);
                std::optional<int> force;
                if (forced) {
                    if (forced_i >= forced->size()) throw StateError("forced outcome list too short");
                    force = (*forced)[forced_i++];
                }
                st.outcomes.push_back(tab.measure(p, &rng, force));
                break;
            }
        }
    }
    st.group = canonical_group(tab, kept_qubits(prog.n_data));
    return st;
}

StabilizerState simulate_chain(const MeasChain& chain, uint64_t seed,
                               const std::vector<int>* forced) {
    return simulate_program(chain_to_program(chain), seed, forced);
}

CanonicalGroup ideal_measurement_group(int n_data, char basis, int outcome) {
    Tableau tab(2 * n_data);
    for (int i = 0; i < n_data; ++i) tab.bell(i, n_data + i);
    Pauli L(2 * n_data);
    for (int i = 0; i < n_data; ++i) L.mul(Pauli::single(2 * n_data, i, basis));
    tab.measure(L, nullptr, outcome);
    return canonical_group(tab, kept_qubits(n_data));
}

CanonicalGroup ideal_cnot_group(int control, int target) {
    Tableau tab(4);
    tab.bell(0, 2);
    tab.bell(1, 3);
    tab.cx(control, target);
    return canonical_group(tab, kept_qubits(2));
}

namespace {

/// Iterates Paulis supported on the data qubits of a 2m-qubit group.
bool next_data_pauli(Pauli& f, int n_data) {
    for (int q = 0; q < n_data; ++q) {
        int code = f.x[q] | (f.z[q] << 1);
        if (code < 3) {
            ++code;
            f.x[q] = code & 1;
            f.z[q] = (code >> 1) & 1;
            return true;
        }
        f.x[q] = f.z[q] = 0;
    }
    return false;
}

}  // namespace

MeasCertification certify_measurement(const StabilizerState& st, char basis) {
    MeasCertification cert;
    const int m = st.n_data;
    Pauli L(2 * m);
    for (int i = 0; i < m; ++i) L.mul(Pauli::single(2 * m, i, basis));
    auto sign = group_sign_of(st.group, L);
    if (!sign) return cert;
    cert.logical_outcome = *sign;

    const CanonicalGroup ideal = ideal_measurement_group(m, basis, cert.logical_outcome);
    Pauli f(2 * m);
    do {
        if (conjugated(st.group, f) == ideal) {
            cert.ok = true;
            cert.frame = f;
            return cert;
        }
    } while (next_data_pauli(f, m));
    return cert;
}

CnotCertification certify_cnot(const StabilizerState& st, int control, int target) {
    CnotCertification cert;
    if (st.n_data != 2) return cert;
    const CanonicalGroup ideal = ideal_cnot_group(control, target);
    Pauli f(4);
    do {
        if (conjugated(st.group, f) == ideal) {
            cert.ok = true;
            cert.frame = f;
            return cert;
        }
    } while (next_data_pauli(f, 2));
    return cert;
}

bool verify_path_action(const Path3D& path, const QubitPlane& plane, const LogicalOp& expected,
                        int n_seeds) {
    MeasChain chain = path_to_chain(path, plane);
    MeasProgram prog = chain_to_program(chain);
    for (int seed = 0; seed < n_seeds; ++seed) {
        StabilizerState st = simulate_program(prog, 0x5eed0000 + uint64_t(seed));
        bool ok = false;
        switch (expected.kind) {
            case LogicalOp::MXX: ok = certify_measurement(st, 'X').ok; break;
            case LogicalOp::MZZ: ok = certify_measurement(st, 'Z').ok; break;
            case LogicalOp::CNOT: {
                int control = expected.control_end == 0 ? 0 : 1;
                ok = certify_cnot(st, control, 1 - control).ok;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

void enumerate_branches(const MeasProgram& prog,
                        const std::function<void(const StabilizerState&)>& visit) {
    const int n_tab = 2 * prog.n_data + prog.n_anc;
    Tableau base(n_tab);
    for (int i = 0; i < prog.n_data; ++i) base.bell(i, prog.n_data + i);

    std::function<void(Tableau, size_t, std::vector<int>)> rec =
        [&](Tableau tab, size_t idx, std::vector<int> outcomes) {
            if (idx == prog.steps.size()) {
                StabilizerState st;
                st.n_data = prog.n_data;
                st.outcomes = std::move(outcomes);
                st.group = canonical_group(tab, kept_qubits(prog.n_data));
                visit(st);
                return;
            }
            const auto& step = prog.steps[idx];
            if (step.kind == MeasProgram::Step::Init) {
                if (step.init_plus) tab.h(tab_qubit(prog, step.anc));
                rec(std::move(tab), idx + 1, std::move(outcomes));
                return;
            }
            Pauli p = step_pauli(prog, step, n_tab);
            if (auto det = tab.deterministic_outcome(p)) {
                tab.measure(p, nullptr, *det);
                outcomes.push_back(*det);
                rec(std::move(tab), idx + 1, std::move(outcomes));
                return;
            }
            for (int b : {0, 1}) {
                Tableau t2 = tab;
                t2.measure(p, nullptr, b);
                auto o2 = outcomes;
                o2.push_back(b);
                rec(std::move(t2), idx + 1, std::move(o2));
            }
        };
    rec(base, 0, {});
}

}  // namespace lsr
