#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lsr {

/// Pauli operator on n qubits: X/Z bit masks plus a sign bit ((-1)^sign).
struct Pauli {
    std::vector<uint8_t> x, z;
    uint8_t sign = 0;

    explicit Pauli(int n = 0) : x(n, 0), z(n, 0) {}
    int n() const { return int(x.size()); }
    bool identity_bits() const;
    bool commutes(const Pauli& o) const;
    void mul(const Pauli& o);  // this := this * o, sign tracked via i-exponents

    static Pauli single(int n, int q, char basis, uint8_t sign = 0);
    std::string str() const;
    auto operator<=>(const Pauli&) const = default;
};

/// Stabilizer tableau with destabilizers (CHP style). Starts in |0...0>.
class Tableau {
public:
    explicit Tableau(int n);

    int n() const { return n_; }

    void h(int q);
    void s(int q);
    void cx(int c, int t);
    void x(int q);
    void y(int q);
    void z(int q);

    /// Prepares a Bell pair on (a, b) from |00>.
    void bell(int a, int b);

    /// Measures a Pauli product. Returns the outcome bit o (eigenvalue
    /// (-1)^o). When the outcome is random, `force` selects the branch if
    /// given, otherwise `rng` draws it. Forcing an impossible deterministic
    /// branch throws StateError.
    int measure(const Pauli& p, std::mt19937_64* rng, std::optional<int> force = std::nullopt);

    /// Outcome if measuring p would be deterministic, nullopt when random.
    std::optional<int> deterministic_outcome(const Pauli& p) const;

    const Pauli& stabilizer(int i) const { return rows_[n_ + i]; }

private:
    int n_;
    std::vector<Pauli> rows_;  // 0..n-1 destabilizers, n..2n-1 stabilizers
};

/// Row-reduced signed generating set of the stabilizer subgroup supported on
/// `kept` qubits, with a fixed column order; equal groups compare equal.
struct CanonicalGroup {
    std::vector<Pauli> rows;  // over kept qubits, reduced, deterministic order
    bool operator==(const CanonicalGroup&) const = default;
    std::string str() const;
};

CanonicalGroup canonical_group(const Tableau& tab, const std::vector<int>& kept);

/// Sign of p in the group if +-p is a member (0 or 1), nullopt otherwise.
/// p is given over the kept qubits of g.
std::optional<int> group_sign_of(const CanonicalGroup& g, const Pauli& p);

/// Conjugates the group by a Pauli: flips signs of anticommuting rows.
CanonicalGroup conjugated(const CanonicalGroup& g, const Pauli& p);

}  // namespace lsr
