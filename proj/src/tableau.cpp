#include "lsr/tableau.hpp"

#include <algorithm>

#include "lsr/errors.hpp"

namespace lsr {

bool Pauli::identity_bits() const {
    for (int i = 0; i < n(); ++i)
        if (x[i] || z[i]) return false;
    return true;
}

bool Pauli::commutes(const Pauli& o) const {
    int acc = 0;
    for (int i = 0; i < n(); ++i) acc ^= (x[i] & o.z[i]) ^ (z[i] & o.x[i]);
    return acc == 0;
}

namespace {

// i-exponent contribution of multiplying single-qubit Paulis (x1,z1)*(x2,z2).
int phase_g(int x1, int z1, int x2, int z2) {
    if (!x1 && !z1) return 0;
    if (x1 && z1) return z2 - x2;            // Y * P
    if (x1) return z2 * (2 * x2 - 1);        // X * P
    return x2 * (1 - 2 * z2);                // Z * P
}

}  // namespace

void Pauli::mul(const Pauli& o) {
    int iexp = 2 * sign + 2 * o.sign;
    for (int q = 0; q < n(); ++q) {
        iexp += phase_g(x[q], z[q], o.x[q], o.z[q]);
        x[q] ^= o.x[q];
        z[q] ^= o.z[q];
    }
    iexp = ((iexp % 4) + 4) % 4;
    if (iexp % 2 != 0) throw InternalError("non-Hermitian Pauli product");
    sign = uint8_t(iexp / 2);
}

Pauli Pauli::single(int n, int q, char basis, uint8_t sign_) {
    Pauli p(n);
    if (basis == 'X' || basis == 'Y') p.x[q] = 1;
    if (basis == 'Z' || basis == 'Y') p.z[q] = 1;
    p.sign = sign_;
    return p;
}

std::string Pauli::str() const {
    std::string s = sign ? "-" : "+";
    for (int q = 0; q < n(); ++q) {
        if (x[q] && z[q])
            s += 'Y';
        else if (x[q])
            s += 'X';
        else if (z[q])
            s += 'Z';
        else
            s += '_';
    }
    return s;
}

Tableau::Tableau(int n) : n_(n), rows_(2 * n, Pauli(n)) {
    for (int i = 0; i < n; ++i) {
        rows_[i].x[i] = 1;        // destabilizer X_i
        rows_[n + i].z[i] = 1;    // stabilizer Z_i
    }
}

void Tableau::h(int q) {
    for (auto& r : rows_) {
        r.sign ^= r.x[q] & r.z[q];
        std::swap(r.x[q], r.z[q]);
    }
}

void Tableau::s(int q) {
    for (auto& r : rows_) {
        r.sign ^= r.x[q] & r.z[q];
        r.z[q] ^= r.x[q];
    }
}

void Tableau::cx(int c, int t) {
    for (auto& r : rows_) {
        r.sign ^= r.x[c] & r.z[t] & (r.x[t] ^ r.z[c] ^ 1);
        r.x[t] ^= r.x[c];
        r.z[c] ^= r.z[t];
    }
}

void Tableau::x(int q) {
    for (auto& r : rows_) r.sign ^= r.z[q];
}

void Tableau::z(int q) {
    for (auto& r : rows_) r.sign ^= r.x[q];
}

void Tableau::y(int q) {
    for (auto& r : rows_) r.sign ^= r.x[q] ^ r.z[q];
}

void Tableau::bell(int a, int b) {
    h(a);
    cx(a, b);
}

std::optional<int> Tableau::deterministic_outcome(const Pauli& p) const {
    for (int i = n_; i < 2 * n_; ++i)
        if (!rows_[i].commutes(p)) return std::nullopt;
    Pauli acc(n_);
    for (int i = 0; i < n_; ++i)
        if (!rows_[i].commutes(p)) acc.mul(rows_[n_ + i]);
    if (acc.x != p.x || acc.z != p.z) throw InternalError("deterministic measurement mismatch");
    return acc.sign ^ p.sign;
}

int Tableau::measure(const Pauli& p, std::mt19937_64* rng, std::optional<int> force) {
    int pivot = -1;
    for (int i = n_; i < 2 * n_; ++i) {
        if (!rows_[i].commutes(p)) {
            pivot = i;
            break;
        }
    }
    if (pivot < 0) {
        int o = *deterministic_outcome(p);
        if (force && *force != o)
            throw StateError("forced outcome contradicts a deterministic measurement");
        return o;
    }
    for (int i = 0; i < 2 * n_; ++i) {
        if (i == pivot) continue;
        if (!rows_[i].commutes(p)) rows_[i].mul(rows_[pivot]);
    }
    rows_[pivot - n_] = rows_[pivot];
    int o = force ? *force : (rng ? int((*rng)() & 1) : 0);
    rows_[pivot] = p;
    rows_[pivot].sign = uint8_t(p.sign ^ o);
    return o;
}

namespace {

void row_reduce(std::vector<Pauli>& rows, const std::vector<std::pair<int, char>>& cols) {
    size_t rank = 0;
    auto bit = [](const Pauli& p, const std::pair<int, char>& col) -> uint8_t {
        return col.second == 'X' ? p.x[col.first] : p.z[col.first];
    };
    for (const auto& col : cols) {
        size_t pivot = rank;
        while (pivot < rows.size() && !bit(rows[pivot], col)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != rank && bit(rows[i], col)) rows[i].mul(rows[rank]);
        ++rank;
    }
}

}  // namespace

CanonicalGroup canonical_group(const Tableau& tab, const std::vector<int>& kept) {
    const int n = tab.n();
    std::vector<uint8_t> is_kept(n, 0);
    for (int q : kept) is_kept[q] = 1;

    std::vector<Pauli> rows;
    rows.reserve(n);
    for (int i = 0; i < n; ++i) rows.push_back(tab.stabilizer(i));

    // Eliminate the traced-out qubits' columns first so that generators of the
    // kept subgroup end up supported purely on the kept qubits.
    std::vector<std::pair<int, char>> cols;
    for (int q = 0; q < n; ++q)
        if (!is_kept[q]) {
            cols.push_back({q, 'X'});
            cols.push_back({q, 'Z'});
        }
    for (int q : kept) {
        cols.push_back({q, 'X'});
        cols.push_back({q, 'Z'});
    }
    row_reduce(rows, cols);

    CanonicalGroup g;
    for (const auto& r : rows) {
        bool clean = true;
        for (int q = 0; q < n && clean; ++q)
            if (!is_kept[q] && (r.x[q] || r.z[q])) clean = false;
        if (!clean) continue;
        Pauli sub(int(kept.size()));
        for (size_t j = 0; j < kept.size(); ++j) {
            sub.x[j] = r.x[kept[j]];
            sub.z[j] = r.z[kept[j]];
        }
        sub.sign = r.sign;
        if (!sub.identity_bits()) g.rows.push_back(std::move(sub));
    }
    return g;
}

std::string CanonicalGroup::str() const {
    std::string s;
    for (const auto& r : rows) {
        s += r.str();
        s += '\n';
    }
    return s;
}

std::optional<int> group_sign_of(const CanonicalGroup& g, const Pauli& p) {
    Pauli acc = p;
    // Reduce p by the canonical rows greedily; membership iff the bits vanish.
    for (const auto& row : g.rows) {
        // Find the leading bit of `row` and cancel it in acc when set.
        for (int q = 0; q < row.n(); ++q) {
            if (row.x[q]) {
                if (acc.x[q]) acc.mul(row);
                break;
            }
            if (row.z[q]) {
                if (acc.z[q]) acc.mul(row);
                break;
            }
        }
    }
    if (!acc.identity_bits()) return std::nullopt;
    // acc = p * (product of members) = (-1)^sign * I, so p has eigenvalue
    // (-1)^sign on the stabilized state.
    return int(acc.sign);
}

CanonicalGroup conjugated(const CanonicalGroup& g, const Pauli& p) {
    CanonicalGroup out = g;
    for (auto& r : out.rows)
        if (!r.commutes(p)) r.sign ^= 1;
    return out;
}

}  // namespace lsr
